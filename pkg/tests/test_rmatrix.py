# tests/test_rmatrix.py
# Classical and dynamical Yang-Baxter checks against their lambda-form criteria.

from dataclasses import replace

import pytest

from src.algebra.errors import InputError, PreconditionError
from src.algebra.ledger import LEDGER
from src.algebra.reports import ERROR
from src.algebra.scalars import RATIONALS, ScalarField
from src.algebra.tensors import SparseTensor, multivector, tensor_sig
from src.bialgebra.qlb import check_qlb
from src.lie.split import split_subalgebra
from src.rmatrix.classical import cybe, quasitriangular_check, rmatrix_bialgebra, split_r
from src.rmatrix.dynamical import cdybe, dynamical_check, lambda_form, make_dynamical

X = ScalarField(["x"])


def standard_r():
    return SparseTensor.from_terms(3, tensor_sig(2), RATIONALS, [((0, 1), 1), ((2, 2), "1/4")])


def dyn_r(coef: str):
    """coef * (e (x) f - f (x) e) over QQ(x)."""
    return SparseTensor.from_terms(3, tensor_sig(2), X, [((0, 1), coef), ((1, 0), "-" + coef)])


# --- classical --------------------------------------------------------------
def test_standard_r_split(sl2, killing_c):
    parts = split_r(sl2, standard_r())
    assert parts.lam == multivector(3, 2, RATIONALS, [((0, 1), "1/4")])
    assert parts.c == killing_c.scale("1/2")
    assert parts.invariant


def test_standard_r_is_quasitriangular(sl2):
    r = standard_r()
    assert cybe(sl2, r).is_zero()
    report = quasitriangular_check(sl2, r)
    assert report.passed
    assert report.details["lambda_form"]
    assert report.details["criteria_agree"]
    assert report.details["factorizable"]


def test_half_of_standard_r_fails(sl2):
    r = SparseTensor.from_terms(3, tensor_sig(2), RATIONALS, [((0, 1), 1)])
    report = quasitriangular_check(sl2, r)
    assert not report.passed
    assert report.witness["identity"] == "cybe"
    assert not report.details["invariant"]
    assert report.details["lambda_form"] is None


def test_pure_casimir_is_not_a_solution(sl2, killing_c):
    # r = c alone is invariant but [c12, c23] != 0
    report = quasitriangular_check(sl2, killing_c.flatten())
    assert not report.passed
    assert report.details["invariant"]
    assert report.details["lambda_form"] is False
    assert report.details["criteria_agree"]
    assert report.details["kappa_identity"]


def test_rmatrix_bialgebra(sl2):
    b = rmatrix_bialgebra(sl2, standard_r())
    assert b.phi.is_zero()
    assert check_qlb(b).passed
    assert b.provenance["lie_bialgebra"]


def test_rmatrix_bialgebra_needs_invariant_c(sl2):
    r = SparseTensor.from_terms(3, tensor_sig(2), RATIONALS, [((0, 1), 1)])
    with pytest.raises(PreconditionError):
        rmatrix_bialgebra(sl2, r)


def test_cybe_rejects_three_tensors(sl2):
    with pytest.raises(InputError):
        cybe(sl2, multivector(3, 3, RATIONALS, [((0, 1, 2), 1)]))


# --- dynamical ----------------------------------------------------------------
def test_one_over_x_solves_cdybe(sl2):
    dr = make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], dyn_r("2/x"))
    assert cdybe(dr).is_zero()
    assert lambda_form(dr).is_zero()
    report = dynamical_check(dr)
    assert report.passed
    assert report.details["locus"] == ["x"]
    assert report.details["criteria_agree"]


def test_one_over_x_squared_fails_both_ways(sl2):
    dr = make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], dyn_r("2/x^2"))
    report = dynamical_check(dr)
    assert not report.passed
    assert report.get("equivariance").passed
    assert not report.get("cdybe").passed
    assert not report.get("lambda_form").passed
    assert report.details["criteria_agree"]
    assert report.details["kappa_identity"]


def test_non_equivariant_r(sl2):
    r = SparseTensor.from_terms(3, tensor_sig(2), X, [((0, 2), "1/x"), ((2, 0), "-1/x")])
    report = dynamical_check(make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], r))
    assert not report.get("equivariance").passed
    assert report.get("equivariance").witness["identity"] == "equivariance"


def test_dynamical_symmetric_part_must_be_constant(sl2):
    r = SparseTensor.from_terms(3, tensor_sig(2), X, [((2, 2), "x")])
    report = dynamical_check(make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], r))
    assert report.get("lambda_form").status == ERROR
    assert not report.get("symmetric_part").details["constant"]


def test_evaluation_off_the_locus(sl2):
    dr = make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], dyn_r("2/x"))
    assert dr.at({"x": 2})[(0, 1)] == 1


def test_declared_locus_must_cover_poles(sl2):
    s = split_subalgebra(sl2, ["h"])
    with pytest.raises(InputError):
        make_dynamical(sl2, s, ["x"], dyn_r("2/x"), locus=["x+1"])
    dr = make_dynamical(sl2, s, ["x"], dyn_r("2/(x*(x+1))"), locus=["x", "x+1"])
    assert len(dr.locus) == 2


def test_variable_count_must_match_h(sl2):
    with pytest.raises(InputError):
        make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x", "y"], dyn_r("2/x"))


def test_lambda_form_sign_comes_from_the_ledger(sl2, monkeypatch):
    dr = make_dynamical(sl2, split_subalgebra(sl2, ["h"]), ["x"], dyn_r("2/x"))
    assert lambda_form(dr).is_zero()
    monkeypatch.setattr("src.rmatrix.dynamical.LEDGER", replace(LEDGER, dynamical_alt_sign="1"))
    assert not lambda_form(dr).is_zero()
