# tests/test_algebra.py
# Scalars, sparse tensors, exact linear algebra and the big bracket.

import pytest
from sympy import QQ

from src.algebra import linalg
from src.algebra.errors import InputError
from src.algebra.ledger import LEDGER
from src.algebra.scalars import RATIONALS, ScalarField
from src.algebra.tensors import (DOWN, SparseTensor, alt, contract, embed_wedge, identity_tensor,
                                 is_totally_antisymmetric, multivector, outer, sym_sig, tensor_sig, wedge,
                                 wedge_sig)


# --- scalars ---------------------------------------------------------------
def test_rationals_parse_exactly():
    half = RATIONALS.parse("1/2")
    assert half + half == RATIONALS.one
    assert RATIONALS.parse("-3/6") == QQ(-1, 2)
    assert RATIONALS.format(QQ(-1, 2)) == "-1/2"


@pytest.mark.parametrize("text", ["1.5", "", "2**", "y"])
def test_bad_coefficients_rejected(text):
    with pytest.raises(InputError):
        RATIONALS.parse(text)


def test_fields_are_interned():
    assert ScalarField(["x"]) is ScalarField(("x",))
    assert ScalarField([]) is RATIONALS
    assert ScalarField(["x"]).join(RATIONALS) is ScalarField(["x"])


def test_rational_functions():
    F = ScalarField(["x"])
    v = F.parse("1/x")
    assert F.derivative(v, "x") == F.parse("-1/x^2")
    assert F.evaluate(v, {"x": 2}) == QQ(1, 2)
    with pytest.raises(ZeroDivisionError):
        F.evaluate(v, {"x": 0})
    assert not F.denominator(v).is_ground


def test_duplicate_variables_rejected():
    with pytest.raises(InputError):
        ScalarField(["x", "x"])


# --- tensors ---------------------------------------------------------------
def test_wedge_is_graded_commutative():
    e = multivector(3, 1, RATIONALS, [((0,), 1)])
    f = multivector(3, 1, RATIONALS, [((1,), 1)])
    assert wedge(e, f) == -wedge(f, e)
    assert wedge(e, e).is_zero()


def test_antisymmetric_keys_carry_signs():
    t = SparseTensor.from_terms(3, wedge_sig(2), RATIONALS, [((1, 0), 1)])
    assert t[(0, 1)] == -1
    assert t[(1, 0)] == 1
    assert t[(2, 2)] == 0


def test_embed_and_alt_have_no_factorials():
    efh = multivector(3, 3, RATIONALS, [((0, 1, 2), 1)])
    flat = embed_wedge(efh)
    assert len(flat) == 6
    assert flat[(1, 0, 2)] == -1
    assert alt(flat) == flat.scale(6)
    assert is_totally_antisymmetric(flat)


def test_contractions():
    assert contract(identity_tensor(3), [(1, 0)]).scalar() == 3
    covector = SparseTensor.from_terms(3, tensor_sig(1, DOWN), RATIONALS, [((0,), 1)])
    e0 = multivector(3, 1, RATIONALS, [((0,), 1)])
    e1 = multivector(3, 1, RATIONALS, [((1,), 1)])
    assert contract(outer(covector, e0), [(0, 1)]).scalar() == 1
    assert contract(outer(covector, e1), [(0, 1)]).scalar() == 0
    with pytest.raises(InputError):
        contract(identity_tensor(3), [(0, 1)])


def test_symmetric_components():
    c = SparseTensor.from_terms(3, sym_sig(2), RATIONALS, [((1, 0), 1)])
    assert c[(0, 1)] == c[(1, 0)] == 1
    assert len(c.flatten()) == 2


def test_conflicting_components_rejected():
    with pytest.raises(InputError):
        SparseTensor.from_components(2, sym_sig(2), RATIONALS, [((0, 1), 1), ((1, 0), 2)])


def test_regroup_checks_symmetry():
    plain = SparseTensor.from_terms(2, tensor_sig(2), RATIONALS, [((0, 1), 1)])
    with pytest.raises(InputError):
        plain.regroup(sym_sig(2))
    both = SparseTensor.from_terms(2, tensor_sig(2), RATIONALS, [((0, 1), 1), ((1, 0), 1)])
    assert both.regroup(sym_sig(2))[(0, 1)] == 1


def test_mismatched_tensors_do_not_add():
    a = SparseTensor.zero(3, wedge_sig(2))
    b = SparseTensor.zero(3, sym_sig(2))
    with pytest.raises(InputError):
        a + b


def test_out_of_range_key():
    with pytest.raises(InputError):
        multivector(2, 1, RATIONALS, [((5,), 1)])


# --- linear algebra --------------------------------------------------------
def _q(rows):
    return [[QQ(v) for v in r] for r in rows]


def test_nullspace_rank_det():
    M = linalg.from_rows(RATIONALS, _q([[1, 2], [2, 4]]))
    assert linalg.rank(M) == 1
    assert linalg.det(M) == 0
    assert linalg.nullspace(M, RATIONALS) == [[RATIONALS.one, QQ(-1, 2)]]


def test_solve_and_inconsistency():
    M = linalg.from_rows(RATIONALS, _q([[1, 1], [1, 1]]))
    assert linalg.solve(M, [QQ(1), QQ(2)], RATIONALS) is None
    x = linalg.solve(linalg.from_rows(RATIONALS, _q([[2, 0], [0, 3]])), [QQ(1), QQ(1)], RATIONALS)
    assert x == [QQ(1, 2), QQ(1, 3)]


# --- big bracket -----------------------------------------------------------
def test_differential_squares_to_zero(sl2):
    P = sl2.polyvectors(1)
    for i in range(sl2.dim):
        assert P.differential(P.differential(P.e(i))).is_zero()
        assert P.differential(P.differential(P.xi(i))).is_zero()


def test_ledger_snapshot_is_pinned():
    snap = LEDGER.snapshot()
    assert snap["associator_scale"] == "-1/4"
    assert snap["cybe_kappa"] == "-4"
    assert LEDGER.kappa == QQ(-4)
