# tests/test_lie.py
# Bracket tables, factories, invariant forms, CE cochains and subalgebra splits.

import pytest
from sympy import QQ

from src.algebra.errors import InputError, PreconditionError
from src.algebra.scalars import RATIONALS
from src.algebra.tensors import SparseTensor, multivector
from src.bialgebra.qlb import DELTA_SIG
from src.lie.algebra import LieAlgebra, check_lie
from src.lie.cochains import ModuleSpec, coboundary_solve, cohomology_dim, d_of, invariants, kernel_on_c0
from src.lie.factories import abelian, direct_sum
from src.lie.forms import casimir_from_pairing, killing_form, trace_form
from src.lie.split import split_subalgebra


def mutated_sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets("mutated", ["e", "f", "h"], RATIONALS,
                                    [("e", "f", [("e", 1)]), ("e", "h", [("e", -2)]), ("f", "h", [("f", 2)])])


def test_shipped_algebras_are_lie(sl2, sl3, heis):
    for g in (sl2, sl3, heis, abelian(4)):
        assert check_lie(g).passed, g.name


def test_jacobi_witness():
    report = check_lie(mutated_sl2())
    assert not report.passed
    assert report.witness["identity"] == "jacobi"
    assert report.witness["triple"] == ["e", "f", "h"]


def test_sl2_brackets(sl2):
    assert list(sl2.labels) == ["e", "f", "h"]
    assert sl2.bracket_basis(0, 1) == {2: QQ(1)}
    assert sl2.bracket_basis(2, 0) == {0: QQ(2)}
    f = sl2.structure_tensor()
    assert f[(0, 1, 2)] == 1
    assert f[(1, 0, 2)] == -1
    assert len(f) == 6


def test_sl3_chevalley_data(sl3):
    assert sl3.dim == 8
    assert sl3.meta["cartan"] == [6, 7]
    assert len(sl3.meta["simple"]) == 2


def test_unknown_label_rejected():
    with pytest.raises(InputError):
        LieAlgebra.from_brackets("bad", ["x", "y"], RATIONALS, [("x", "z", [("y", 1)])])


def test_direct_sum_suffixes_labels(sl2):
    d = direct_sum(sl2, sl2)
    assert d.dim == 6
    assert list(d.labels[:3]) == ["e_1", "f_1", "h_1"]
    assert check_lie(d).passed


# --- forms ------------------------------------------------------------------
def test_killing_and_trace_forms(sl2):
    K = killing_form(sl2)
    assert K[0][1] == 4 and K[2][2] == 8 and K[0][0] == 0
    T = trace_form(sl2)
    assert T[0][1] == 1 and T[2][2] == 2


def test_trace_form_needs_matrices(heis):
    with pytest.raises(InputError):
        trace_form(heis)


def test_casimir_of_trace_form(sl2, killing_c):
    assert casimir_from_pairing(sl2, trace_form(sl2)) == killing_c


# --- cochains and cohomology ----------------------------------------------------
@pytest.mark.parametrize("module", ["sym2", "wedge3"])
def test_one_dimensional_invariants(sl2, sl3, module):
    m = ModuleSpec.parse(module)
    assert len(invariants(sl2, m)) == 1
    assert len(invariants(sl3, m)) == 1


def test_invariants_match_kernel_of_d(sl2):
    m = ModuleSpec.parse("sym2")
    assert invariants(sl2, m) == kernel_on_c0(sl2, m)


def test_killing_casimir_is_invariant(sl2, killing_c):
    assert d_of(sl2, killing_c, ModuleSpec.parse("sym2")).is_zero()


@pytest.mark.parametrize("degree,expected", [(0, 1), (1, 0), (2, 0), (3, 1)])
def test_sl2_trivial_cohomology(sl2, degree, expected):
    assert cohomology_dim(sl2, ModuleSpec.parse("trivial"), degree) == expected


@pytest.mark.parametrize("degree,expected", [(0, 1), (1, 2), (2, 2), (3, 1)])
def test_heisenberg_betti_numbers(heis, degree, expected):
    assert cohomology_dim(heis, ModuleSpec.parse("trivial"), degree) == expected


def test_abelian_cohomology_is_everything():
    assert cohomology_dim(abelian(2), ModuleSpec.parse("trivial"), 1) == 2


def test_bad_module_name():
    with pytest.raises(InputError):
        ModuleSpec.parse("spinor")


def test_coboundary_solve_recovers_bivector(sl2):
    lam = multivector(3, 2, RATIONALS, [((0, 1), "1/2"), ((1, 2), 3)])
    delta = d_of(sl2, lam, ModuleSpec.parse("wedge2"))
    assert coboundary_solve(sl2, delta) == lam


def test_coboundary_solve_reports_non_exact(sl2):
    # delta(e) = e ^ f alone is not d of any bivector
    delta = SparseTensor.from_terms(3, DELTA_SIG, RATIONALS, [((0, 0, 1), 1)])
    assert coboundary_solve(sl2, delta) is None


# --- splits ---------------------------------------------------------------------
def test_borel_split(sl2):
    s = split_subalgebra(sl2, ["e", "h"])
    assert s.h_labels == ["e", "h"]
    assert s.m_labels == ["f"]
    assert s.dim_h == 2 and s.dim_m == 1


def test_split_needs_a_subalgebra(sl2):
    with pytest.raises(PreconditionError):
        split_subalgebra(sl2, ["e", "f"])


def test_split_needs_a_partition(sl2):
    with pytest.raises(InputError):
        split_subalgebra(sl2, ["e"], ["f"])
