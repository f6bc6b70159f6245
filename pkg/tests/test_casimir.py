# tests/test_casimir.py
# Invariance of Casimir tensors and coisotropic reduction to quasi-Lie bialgebras.

from dataclasses import replace

import pytest

from src.algebra.errors import PreconditionError
from src.algebra.ledger import LEDGER
from src.algebra.scalars import RATIONALS
from src.algebra.tensors import SparseTensor, sym_sig
from src.bialgebra.casimir import (casimir_to_phi, coisotropic_casimir_check, induce_from_coisotropic,
                                   invariance_residual, verify_coisotropic_morphism)
from src.bialgebra.qlb import DELTA_SIG, check_qlb
from src.lie.cochains import ModuleSpec, d_of
from src.lie.forms import casimir_from_pairing, trace_form
from src.lie.split import split_subalgebra


def test_invariance_residual(sl2, killing_c):
    assert invariance_residual(sl2, killing_c).is_zero()
    ee = SparseTensor.from_terms(3, sym_sig(2), RATIONALS, [((0, 0), 1)])
    assert not invariance_residual(sl2, ee).is_zero()


def test_non_invariant_casimir_rejected(sl2):
    ee = SparseTensor.from_terms(3, sym_sig(2), RATIONALS, [((0, 0), 1)])
    with pytest.raises(PreconditionError):
        casimir_to_phi(sl2, ee)


def test_sl3_associator_is_invariant(sl3):
    phi = casimir_to_phi(sl3, casimir_from_pairing(sl3, trace_form(sl3)))
    assert not phi.is_zero()
    assert d_of(sl3, phi, ModuleSpec.parse("wedge3")).is_zero()


def test_borel_is_coisotropic(sl2, killing_c):
    s = split_subalgebra(sl2, ["e", "h"])
    report = coisotropic_casimir_check(sl2, s, killing_c)
    assert report.passed
    assert report.details["invariant"]


def test_cartan_is_not_coisotropic(sl2, killing_c):
    s = split_subalgebra(sl2, ["h"])
    report = coisotropic_casimir_check(sl2, s, killing_c)
    assert not report.passed
    assert report.witness["component"] == ["e", "f"]
    with pytest.raises(PreconditionError):
        induce_from_coisotropic(sl2, s, killing_c)


def test_borel_reduction(sl2, killing_c):
    q = induce_from_coisotropic(sl2, split_subalgebra(sl2, ["e", "h"]), killing_c)
    assert list(q.g.labels) == ["e", "h"]
    assert check_qlb(q).passed
    # delta(e) = 1/2 e^h, delta(h) = 0, and the associator vanishes
    assert q.delta == SparseTensor.from_terms(2, DELTA_SIG, RATIONALS, [((0, 0, 1), "1/2")])
    assert q.phi.is_zero()
    assert q.provenance["validated"]


def test_borel_morphism_checks(sl2, killing_c):
    report = verify_coisotropic_morphism(sl2, split_subalgebra(sl2, ["e", "h"]), killing_c)
    assert [c.name for c in report.checks] == ["invariance_identities", "invariance_equivalence", "f_morphism"]
    assert report.passed


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_whole_algebra_reduces_to_casimir_associator(name, sl2, sl3):
    g = sl2 if name == "sl2" else sl3
    c = casimir_from_pairing(g, trace_form(g))
    q = induce_from_coisotropic(g, split_subalgebra(g, list(g.labels)), c)
    assert q.delta.is_zero()
    assert q.phi == casimir_to_phi(g, c)
    assert check_qlb(q).passed


def test_associator_rules_follow_the_ledger(sl2, killing_c, monkeypatch):
    s = split_subalgebra(sl2, ["e", "h"])
    assert LEDGER.associator_rules == ("index", "derived")
    assert induce_from_coisotropic(sl2, s, killing_c).provenance["rules_tried"] == ["index"]
    monkeypatch.setattr("src.bialgebra.casimir.LEDGER", replace(LEDGER, coisotropic_associator="derived,index"))
    q = induce_from_coisotropic(sl2, s, killing_c)
    assert q.provenance["rules_tried"][0] == "derived"
