# tests/test_manin.py
# Quadratic Lie algebras, Manin pairs and triples, doubles and their round trips.

import pytest

from src.algebra.errors import PreconditionError
from src.algebra.scalars import RATIONALS
from src.algebra.tensors import SparseTensor, multivector
from src.bialgebra.casimir import casimir_to_phi
from src.bialgebra.qlb import DELTA_SIG, check_qlb, make_qlb, twist
from src.lie.algebra import check_lie
from src.lie.cochains import coboundary_solve
from src.lie.factories import abelian
from src.lie.forms import trace_form
from src.manin.quadratic import (ManinPair, check_quadratic, is_quadratic_isomorphism, lagrangian_check,
                                 manin_pair_check, quadratic, span_vectors)
from src.manin.triples import (_dual_basis, antidiagonal, diagonal, difference_double, drinfeld_double,
                               dual_subalgebra_bplus_bminus, manin_pair_to_qlb, manin_triple,
                               manin_triple_check, quasi_double, triple_to_bialgebra)
from tests.helpers import random_multivector

STD_DELTA = SparseTensor.from_terms(3, DELTA_SIG, RATIONALS, [((0, 0, 2), "-1/2"), ((1, 1, 2), "-1/2")])


@pytest.fixture(scope="module")
def std_triple(sl2):
    return dual_subalgebra_bplus_bminus(sl2)


def test_difference_double_is_quadratic(sl2):
    q = difference_double(sl2, trace_form(sl2))
    report = check_quadratic(q)
    assert report.passed
    assert report.details == {"symmetric": True, "nondegenerate": True, "invariant": True}


def test_degenerate_pairing(sl2):
    report = check_quadratic(quadratic(sl2, [[0] * 3 for _ in range(3)]))
    assert not report.passed
    assert report.witness["identity"] == "nondegenerate"


def test_diagonal_is_lagrangian(sl2):
    q = difference_double(sl2, trace_form(sl2))
    assert manin_pair_check(ManinPair(q, diagonal(sl2))).passed
    anti = lagrangian_check(q, antidiagonal(sl2))
    assert anti.details["isotropic"]
    assert not anti.details["subalgebra"]


def test_span_vectors_accepts_labels_and_maps(sl2):
    d = difference_double(sl2, trace_form(sl2)).d
    vecs = span_vectors(d, ["e_1", 4, {"h_1": 1, "h_2": -1}])
    assert vecs[0] == {0: 1}
    assert vecs[1] == {4: 1}
    assert vecs[2] == {2: 1, 5: -1}


def test_standard_triple(std_triple):
    report = manin_triple_check(std_triple)
    assert report.passed
    assert [c.name for c in report.checks] == ["lie", "g", "gstar", "transversal"]


def test_standard_triple_sl3(sl3):
    assert manin_triple_check(dual_subalgebra_bplus_bminus(sl3)).passed


def test_standard_bialgebra_is_a_coboundary(std_triple):
    b = triple_to_bialgebra(std_triple)
    assert list(b.g.labels) == ["u1", "u2", "u3"]
    assert b.delta == STD_DELTA
    assert b.phi.is_zero()
    assert check_qlb(b).passed
    assert coboundary_solve(b.g, b.delta) == multivector(3, 2, RATIONALS, [((0, 1), "1/2")])


def test_triple_needs_chevalley_data(heis):
    with pytest.raises(PreconditionError):
        dual_subalgebra_bplus_bminus(heis)


def test_broken_triple_is_rejected(sl2):
    q = difference_double(sl2, trace_form(sl2))
    t = manin_triple(q, [{"e_1": 1, "e_2": 1}, {"f_1": 1, "f_2": 1}, {"h_1": 1, "h_2": 1}],
                     ["e_1", "f_1", "h_1"])
    assert not manin_triple_check(t).passed
    with pytest.raises(PreconditionError):
        triple_to_bialgebra(t)


def test_antidiagonal_complement_gives_casimir_associator(sl2, killing_c):
    q = difference_double(sl2, trace_form(sl2))
    out = manin_pair_to_qlb(ManinPair(q, diagonal(sl2)), antidiagonal(sl2))
    assert out.delta.is_zero()
    assert out.phi == casimir_to_phi(sl2, killing_c)
    assert check_qlb(out).passed


def test_non_isotropic_complement(sl2):
    q = difference_double(sl2, trace_form(sl2))
    second = [{3 + i: RATIONALS.one} for i in range(3)]
    with pytest.raises(PreconditionError):
        manin_pair_to_qlb(ManinPair(q, diagonal(sl2)), second)


# --- doubles ------------------------------------------------------------------
def test_quasi_double_round_trip(sl2, killing_c, rng):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    for _ in range(5):
        q = twist(base, random_multivector(sl2, 2, rng))
        pair = quasi_double(q)
        assert check_lie(pair.d).passed
        assert manin_pair_check(pair).passed
        back = manin_pair_to_qlb(pair)
        assert list(back.g.labels) == list(sl2.labels)
        assert back.delta == q.delta
        assert back.phi == q.phi


def test_double_of_the_standard_bialgebra(sl2):
    t = drinfeld_double(make_qlb(sl2, STD_DELTA))
    assert t.jacobi.passed
    assert manin_triple_check(t).passed
    assert list(t.d.labels) == ["e", "f", "h", "e*", "f*", "h*"]


def test_double_matches_the_standard_triple(std_triple):
    b = triple_to_bialgebra(std_triple)
    images = std_triple.pair.g + _dual_basis(std_triple.q, std_triple.pair.g, std_triple.gstar)
    report = is_quadratic_isomorphism(quasi_double(b).q, std_triple.q, images)
    assert report.passed, report.witness


def test_scaling_is_not_an_isomorphism(sl2):
    q = difference_double(sl2, trace_form(sl2))
    images = [{i: RATIONALS.convert(2)} for i in range(6)]
    report = is_quadratic_isomorphism(q, q, images)
    assert report.details["bijective"]
    assert not report.details["brackets"]


def test_double_fails_jacobi_without_co_jacobi():
    g = abelian(3)
    delta = SparseTensor.from_terms(3, DELTA_SIG, RATIONALS, [((0, 0, 1), 1), ((0, 0, 2), -2), ((1, 1, 2), 2)])
    t = drinfeld_double(make_qlb(g, delta))
    assert not t.jacobi.passed
    assert not manin_triple_check(t).passed


def test_double_needs_zero_associator(sl2, killing_c):
    with pytest.raises(PreconditionError):
        drinfeld_double(make_qlb(sl2, None, casimir_to_phi(sl2, killing_c)))
