# src/mc/polbg.py
# Pol(Bg, n) in weights >= 2, shifted by n + 1: CE cochains with coefficients
# in Sym^w(g[-n]), differential {mu, -} and the big bracket.
#
# A monomial xi^J E^W (|J| = k, |W| = w) sits in degree k + n*w - (n + 1), so
# Maurer-Cartan elements have k + n*w = n + 2 and the bracket has weight -1.

import logging
from typing import Dict, List, Optional, Tuple

from src.algebra.errors import InputError, WindowError
from src.algebra.polyvectors import Monomial, Polyvector, PolyvectorAlgebra
from src.algebra.tensors import SparseTensor
from src.bialgebra.qlb import AXIOMS, QuasiLieBialgebra, as_bivector, make_qlb
from src.lie.algebra import LieAlgebra
from src.mc.dgla import GaugePath, GradedElement, Slice, WeightGradedDGLA
from src.utils.configloader import load_config

log = logging.getLogger("mc")


class PolBG(WeightGradedDGLA):
    def __init__(self, g: LieAlgebra, shift: int, max_weight: int, max_degree: int):
        if shift not in (1, 2):
            raise InputError(f"pol_bg needs shift 1 or 2, got {shift}")
        self.g = g
        self.shift = shift
        self.max_ce_degree = min(max_degree, g.dim)
        self.max_poly_weight = max_weight
        self.P: PolyvectorAlgebra = g.polyvectors(shift)
        slices = [(self.degree_of(k, w), w) for w in range(2, max_weight + 1)
                  for k in range(self.max_ce_degree + 1) if self.P.basis(k, w)]
        self._mono: Dict[Slice, List[Monomial]] = {}
        self._pos: Dict[Slice, Dict[Monomial, int]] = {}
        super().__init__(f"Pol(B{g.name},{shift})", g.field, slices, self._basis_labels, self._d_column,
                         self._bracket_pair, bracket_weight=-1,
                         meta={"algebra": g.name, "shift": shift, "max_weight": max_weight,
                               "max_ce_degree": self.max_ce_degree,
                               "degree": "k + n*w - (n + 1)", "labels": list(g.labels)})

    # --- gradings ---------------------------------------------------------
    def degree_of(self, k: int, w: int) -> int:
        return k + self.shift * w - (self.shift + 1)

    def ce_degree(self, s: Slice) -> int:
        return s[0] - self.shift * s[1] + self.shift + 1

    def slice_of(self, k: int, w: int) -> Slice:
        return (self.degree_of(k, w), w)

    # --- providers --------------------------------------------------------
    def monomials(self, s: Slice) -> List[Monomial]:
        if s not in self._mono:
            self.require(s)
            self._mono[s] = self.P.basis(self.ce_degree(s), s[1])
            self._pos[s] = {m: i for i, m in enumerate(self._mono[s])}
        return self._mono[s]

    def _basis_labels(self, s: Slice) -> List[str]:
        lab = self.g.labels
        return [f"[{','.join(lab[i] for i in xs)}|{','.join(lab[i] for i in es)}]" for xs, es in self.monomials(s)]

    def _vector(self, s: Slice, pv: Polyvector) -> Dict[int, object]:
        self.monomials(s)
        pos = self._pos[s]
        return {pos[m]: c for m, c in pv.terms.items()}

    def _mono_pv(self, s: Slice, i: int) -> Polyvector:
        return Polyvector(self.P, {self.monomials(s)[i]: self.field.one})

    def _d_column(self, s: Slice, i: int) -> Dict[int, object]:
        t = (s[0] + 1, s[1])
        if not self.in_window(t):
            return {}
        return self._vector(t, self.P.differential(self._mono_pv(s, i)))

    def _bracket_pair(self, s1: Slice, i: int, s2: Slice, j: int) -> Dict[int, object]:
        t = self.target(s1, s2)
        if not self.in_window(t):
            return {}
        return self._vector(t, self.P.bracket(self._mono_pv(s1, i), self._mono_pv(s2, j)))

    # --- identification with polyvectors and tensors ------------------------
    def from_polyvector(self, pv: Polyvector) -> GradedElement:
        if pv.algebra != self.P:
            raise InputError("Polyvector does not belong to this algebra")
        parts: Dict[Slice, Dict[int, object]] = {}
        for (xs, es), c in pv.terms.items():
            k, w = len(xs), len(es)
            s = self.slice_of(k, w)
            if w < 2 or not self.in_window(s):
                raise WindowError(f"Component of CE degree {k} and weight {w} lies outside the window of {self.name}")
            self.monomials(s)
            parts.setdefault(s, {})[self._pos[s][(xs, es)]] = c
        return GradedElement(self, parts)

    def to_polyvector(self, x: GradedElement) -> Polyvector:
        terms = {}
        for s, vec in x.parts.items():
            monos = self.monomials(s)
            for i, c in vec.items():
                terms[monos[i]] = c
        return Polyvector(self.P, terms)

    def from_tensors(self, *tensors: SparseTensor) -> GradedElement:
        out = self.zero()
        for t in tensors:
            out = out + self.from_polyvector(self.P.from_tensor(t))
        return out

    def tensor(self, x: GradedElement, k: int, w: int) -> SparseTensor:
        return self.P.to_tensor(self.to_polyvector(x), k, w)

    # --- quasi-Lie bialgebras (shift 1) ---------------------------------------
    def _need_shift1(self) -> None:
        if self.shift != 1:
            raise InputError("Quasi-Lie bialgebras live in Pol(Bg, 1)")

    def qlb_element(self, q: QuasiLieBialgebra) -> GradedElement:
        self._need_shift1()
        if q.g is not self.g:
            raise InputError("Quasi-Lie bialgebra lives over a different Lie algebra")
        return self.from_tensors(q.delta, q.phi)

    def to_qlb(self, x: GradedElement) -> QuasiLieBialgebra:
        self._need_shift1()
        return make_qlb(self.g, self.tensor(x, 1, 2), self.tensor(x, 0, 3), {"from": self.name})

    def residual_tensors(self, res: GradedElement) -> Dict[str, SparseTensor]:
        """A degree-2 residual split into the tensors check_qlb reports."""
        self._need_shift1()
        return {name: self.tensor(res, k, w) for name, (k, w) in AXIOMS.items()}

    def twist_element(self, lam: SparseTensor) -> GradedElement:
        return self.from_polyvector(self.P.from_tensor(as_bivector(self.g, lam)))


def pol_bg(g: LieAlgebra, n: int, max_weight: Optional[int] = None, max_degree: Optional[int] = None) -> PolBG:
    cfg = load_config()["window"]
    mw = int(max_weight if max_weight is not None else cfg["max_weight"])
    md = int(max_degree if max_degree is not None else cfg["max_degree"])
    if mw > cfg["max_weight"] or md > cfg["max_degree"]:
        raise WindowError(f"Requested window (weight {mw}, CE degree {md}) exceeds the configured "
                          f"limit (weight {cfg['max_weight']}, CE degree {cfg['max_degree']})")
    if mw < 2:
        raise WindowError("The window must contain weight 2")
    L = PolBG(g, n, mw, md)
    log.debug("built %s with %d slices", L.name, len(L.slices))
    return L


def twist_path(L: PolBG, q: QuasiLieBialgebra, lam: SparseTensor) -> Tuple[GradedElement, GaugePath]:
    """The integrated path of a twist and the twist itself as (endpoint, path).

    delta(t) = delta0 + t d lam,  phi(t) = phi0 + t {delta0, lam} + t^2/2 {d lam, lam}.
    """
    L._need_shift1()
    P = L.P
    lam = as_bivector(L.g, lam)
    Lpv = P.from_tensor(lam)
    D0 = P.from_tensor(q.delta)
    dL = P.differential(Lpv)
    a0 = L.qlb_element(q)
    a1 = L.from_polyvector(dL + P.bracket(D0, Lpv))
    a2 = L.from_polyvector(P.bracket(dL, Lpv).scale(L.field.convert("1/2")))
    path = GaugePath(L.from_polyvector(Lpv), [a0, a1, a2])
    return path.at(1), path
