# tests/test_qlb.py
# Quasi-Lie bialgebra axioms, twisting and the Casimir associator.

import pytest

from src.algebra.errors import InputError, PreconditionError
from src.algebra.scalars import RATIONALS
from src.algebra.tensors import SparseTensor, embed_wedge, multivector
from src.bialgebra.casimir import casimir_bracket, casimir_to_phi
from src.bialgebra.qlb import DELTA_SIG, check_qlb, make_qlb, residuals, twist
from src.lie.factories import abelian
from tests.helpers import random_multivector

EFH = multivector(3, 3, RATIONALS, [((0, 1, 2), 1)])


def bad_cojacobi_qlb():
    """abelian g whose dual bracket is the mutated sl2 table (no Jacobi)."""
    g = abelian(3)
    delta = SparseTensor.from_terms(3, DELTA_SIG, RATIONALS,
                                    [((0, 0, 1), 1), ((0, 0, 2), -2), ((1, 1, 2), 2)])
    return make_qlb(g, delta)


def test_zero_structure_is_a_lie_bialgebra(sl2):
    q = make_qlb(sl2)
    report = check_qlb(q)
    assert report.passed
    assert q.is_lie_bialgebra
    assert report.details["max_support"] == 0


def test_casimir_calibration(sl2, killing_c):
    assert embed_wedge(EFH) == casimir_bracket(sl2, killing_c)
    assert casimir_to_phi(sl2, killing_c) == EFH.scale("-1/4")


def test_casimir_qlb_passes(sl2, killing_c):
    q = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    assert check_qlb(q).passed
    assert not q.is_lie_bialgebra


def test_co_jacobi_failure_is_witnessed():
    report = check_qlb(bad_cojacobi_qlb())
    assert not report.passed
    assert report.witness["axiom"] == "co_jacobi"
    assert report.details["support"]["cocycle"] == 0


def test_twist_needs_a_qlb():
    with pytest.raises(PreconditionError):
        twist(bad_cojacobi_qlb(), multivector(3, 2, RATIONALS, [((0, 1), 1)]))


def test_twist_rejects_wrong_shape(sl2):
    with pytest.raises(InputError):
        twist(make_qlb(sl2), EFH)


def test_twists_stay_quasi_lie(sl2, killing_c, rng):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    for _ in range(50):
        lam = random_multivector(sl2, 2, rng)
        q = twist(base, lam)
        assert check_qlb(q).passed
        back = twist(q, lam.scale(-1))
        assert back.delta == base.delta
        assert back.phi == base.phi


def test_twists_compose(sl2, killing_c, rng):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    for _ in range(10):
        a, b = random_multivector(sl2, 2, rng), random_multivector(sl2, 2, rng)
        one = twist(twist(base, a), b)
        two = twist(base, a + b)
        assert one.delta == two.delta
        assert one.phi == two.phi


def test_twist_of_zero_gives_coboundary(sl2):
    lam = multivector(3, 2, RATIONALS, [((0, 1), "1/2")])
    q = twist(make_qlb(sl2), lam)
    # delta(e) = -1/2 e^h, delta(f) = -1/2 f^h
    assert q.delta == SparseTensor.from_terms(3, DELTA_SIG, RATIONALS,
                                              [((0, 0, 2), "-1/2"), ((1, 1, 2), "-1/2")])
    assert check_qlb(q).passed


def test_residual_names(sl2):
    assert set(residuals(make_qlb(sl2))) == {"cocycle", "co_jacobi", "compatibility"}
