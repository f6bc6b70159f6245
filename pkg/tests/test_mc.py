# tests/test_mc.py
# Pol(Bg, n) in a finite window: dg Lie axioms, Maurer-Cartan residuals and gauge paths.

import pytest

from src.algebra.errors import InputError, WindowError
from src.algebra.scalars import RATIONALS
from src.algebra.tensors import multivector
from src.bialgebra.casimir import casimir_to_phi
from src.bialgebra.qlb import check_qlb, make_qlb, residuals, twist
from src.lie.forms import casimir_from_pairing, trace_form
from src.mc.dgla import GaugePath, check_dgla, gauge_verify, integrate_gauge, load_dgla, mc_residual, serialize_dgla
from src.mc.polbg import pol_bg, twist_path
from tests.helpers import random_delta, random_multivector, random_phi


@pytest.fixture(scope="module")
def pol1(sl2):
    return pol_bg(sl2, 1)


@pytest.mark.parametrize("shift", [1, 2])
def test_window_is_a_dgla(sl2, shift):
    report = check_dgla(pol_bg(sl2, shift, max_weight=3), sample=200, seed=7)
    assert report.passed, report.witness


def test_window_limits(sl2):
    with pytest.raises(WindowError):
        pol_bg(sl2, 1, max_weight=5)
    with pytest.raises(WindowError):
        pol_bg(sl2, 1, max_weight=1)
    with pytest.raises(InputError):
        pol_bg(sl2, 3)


def test_mc_residual_matches_qlb_residuals(sl2, killing_c, pol1, rng):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    samples = [twist(base, random_multivector(sl2, 2, rng)) for _ in range(5)]
    samples += [make_qlb(sl2, random_delta(sl2, rng), random_phi(sl2, rng)) for _ in range(5)]
    for q in samples:
        res = mc_residual(pol1, pol1.qlb_element(q))
        assert res.is_zero() == check_qlb(q).passed
        assert pol1.residual_tensors(res) == residuals(q)


def test_mc_candidate_must_have_degree_one(sl2, pol1):
    lam = pol1.twist_element(multivector(3, 2, RATIONALS, [((0, 1), 1)]))
    with pytest.raises(InputError):
        mc_residual(pol1, lam)


@pytest.mark.parametrize("name", ["sl2", "sl3"])
def test_casimir_is_mc_in_shift_two(name, sl2, sl3):
    g = sl2 if name == "sl2" else sl3
    L = pol_bg(g, 2, max_weight=3, max_degree=2)
    x = L.from_tensors(casimir_from_pairing(g, trace_form(g)))
    res = mc_residual(L, x)
    assert res.component(3).is_zero()
    assert res.is_zero()


def test_twist_path_is_a_gauge_equivalence(sl2, killing_c, pol1, rng):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    for _ in range(5):
        lam = random_multivector(sl2, 2, rng)
        end, path = twist_path(pol1, base, lam)
        assert end == pol1.qlb_element(twist(base, lam))
        assert gauge_verify(pol1, pol1.qlb_element(base), end, path).passed


def test_integrated_path_agrees_with_twist(sl2, killing_c, pol1):
    base = make_qlb(sl2, None, casimir_to_phi(sl2, killing_c))
    lam = multivector(3, 2, RATIONALS, [((0, 1), 1), ((1, 2), "1/3")])
    path = integrate_gauge(pol1, pol1.qlb_element(base), pol1.twist_element(lam))
    assert path.order == 2
    assert path.at(1) == pol1.qlb_element(twist(base, lam))


def test_corrupted_path_is_rejected(sl2, pol1):
    q = make_qlb(sl2)
    lam = multivector(3, 2, RATIONALS, [((0, 1), 1)])
    end, path = twist_path(pol1, q, lam)
    a0, a1, a2 = path.coeffs
    bad = GaugePath(path.lam, [a0, a1, a2.scale(2)])
    assert not gauge_verify(pol1, pol1.qlb_element(q), end, bad).passed


def test_serialized_window_reloads(sl2):
    L = pol_bg(sl2, 1, max_weight=3, max_degree=2)
    loaded = load_dgla(serialize_dgla(L))
    used = [s for s in L.slices if L.dim(s)]
    assert list(loaded.slices) == used
    for s in used:
        assert loaded.dim(s) == L.dim(s)
        for i in range(L.dim(s)):
            assert loaded.d_basis(s, i) == L.d_basis(s, i)


def test_qlb_element_round_trip(sl2, pol1, rng):
    q = make_qlb(sl2, random_delta(sl2, rng), random_phi(sl2, rng))
    back = pol1.to_qlb(pol1.qlb_element(q))
    assert back.delta == q.delta
    assert back.phi == q.phi


def test_differential_matrices_compose_to_zero(sl2):
    L = pol_bg(sl2, 1, max_weight=3, max_degree=3)
    for s in L.slices:
        t, u = (s[0] + 1, s[1]), (s[0] + 2, s[1])
        if not (L.dim(s) and L.in_window(u) and L.dim(t) and L.dim(u)):
            continue
        D1, D2 = L.d_matrix(s), L.d_matrix(t)
        assert D1.shape == (L.dim(t), L.dim(s))
        assert (D2 * D1).is_zero_matrix


def test_truncations_are_counted(sl2, killing_c):
    L = pol_bg(sl2, 1, max_weight=3)
    assert L.truncations == 0
    x = L.qlb_element(make_qlb(sl2, None, casimir_to_phi(sl2, killing_c)))
    # [phi, phi] has weight 5, outside the window
    mc_residual(L, x)
    assert L.truncations > 0
