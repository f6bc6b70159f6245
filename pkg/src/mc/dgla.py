# src/mc/dgla.py
# Finite presentations of weight-graded dg Lie algebras, Maurer-Cartan
# residuals and polynomial gauge paths.
#
# A slice is (degree, weight). Bases, differential columns and brackets of
# basis elements come from providers and are computed on first use, so large
# windows cost nothing until touched. Brackets have weight bracket_weight
# (default -1); contributions landing outside the window are dropped.

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import linalg
from src.algebra.errors import InputError, WindowError
from src.algebra.reports import CheckReport
from src.algebra.scalars import ScalarField

log = logging.getLogger("mc")

Slice = Tuple[int, int]
SparseVec = Dict[int, object]


class GradedElement:
    """Element of a WeightGradedDGLA stored per slice."""

    __slots__ = ("dgla", "parts")

    def __init__(self, dgla: "WeightGradedDGLA", parts: Optional[Dict[Slice, SparseVec]] = None):
        self.dgla = dgla
        clean = {}
        for s, vec in (parts or {}).items():
            vec = {i: v for i, v in vec.items() if v}
            if vec:
                clean[s] = vec
        self.parts: Dict[Slice, SparseVec] = clean

    def _check(self, other: "GradedElement") -> None:
        if not isinstance(other, GradedElement) or other.dgla is not self.dgla:
            raise InputError("Elements belong to different dg Lie algebras")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        zero = self.dgla.field.zero
        out = {s: dict(v) for s, v in self.parts.items()}
        for s, vec in other.parts.items():
            tgt = out.setdefault(s, {})
            for i, v in vec.items():
                tgt[i] = tgt.get(i, zero) + v
        return GradedElement(self.dgla, out)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.dgla, {s: {i: -v for i, v in vec.items()} for s, vec in self.parts.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def scale(self, c) -> "GradedElement":
        c = self.dgla.field.convert(c)
        return GradedElement(self.dgla, {s: {i: c * v for i, v in vec.items()} for s, vec in self.parts.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        return other.dgla is self.dgla and self.parts == other.parts

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self) -> set:
        return {d for d, _ in self.parts}

    def weights(self) -> set:
        return {w for _, w in self.parts}

    def component(self, weight: int) -> "GradedElement":
        return GradedElement(self.dgla, {s: v for s, v in self.parts.items() if s[1] == weight})

    def support(self) -> int:
        return sum(len(v) for v in self.parts.values())

    def __repr__(self) -> str:
        return f"GradedElement({self.dgla.name}, slices={sorted(self.parts)}, terms={self.support()})"


MCElement = GradedElement


class WeightGradedDGLA:
    def __init__(self, name: str, field: ScalarField, slices: Iterable[Slice],
                 basis: Callable[[Slice], List[str]],
                 differential: Callable[[Slice, int], SparseVec],
                 bracket: Callable[[Slice, int, Slice, int], SparseVec],
                 bracket_weight: int = -1, meta: Optional[dict] = None):
        self.name = name
        self.field = field
        self.slices: Tuple[Slice, ...] = tuple(sorted(set(slices)))
        self._slice_set = set(self.slices)
        self._basis_fn = basis
        self._d_fn = differential
        self._bracket_fn = bracket
        self.bracket_weight = bracket_weight
        self.meta = dict(meta or {})
        self._basis: Dict[Slice, List[str]] = {}
        self._d: Dict[Tuple[Slice, int], SparseVec] = {}
        self._br: Dict[Tuple[Slice, int, Slice, int], SparseVec] = {}
        self._dropped = 0

    @classmethod
    def from_tables(cls, name: str, field: ScalarField, bases: Dict[Slice, List[str]],
                    differentials: Dict[Slice, Dict[int, SparseVec]],
                    brackets: Dict[Tuple[Slice, Slice], Dict[Tuple[int, int], SparseVec]],
                    bracket_weight: int = -1, meta: Optional[dict] = None) -> "WeightGradedDGLA":
        """A presentation given by explicit tables (e.g. read back from serialize_dgla)."""
        return cls(name, field, bases.keys(),
                   basis=lambda s: list(bases.get(s, [])),
                   differential=lambda s, i: dict(differentials.get(s, {}).get(i, {})),
                   bracket=lambda s1, i, s2, j: dict(brackets.get((s1, s2), {}).get((i, j), {})),
                   bracket_weight=bracket_weight, meta=meta)

    def __repr__(self) -> str:
        return f"WeightGradedDGLA({self.name!r}, slices={len(self.slices)})"

    # --- window -----------------------------------------------------------
    @property
    def truncations(self) -> int:
        """How many d or bracket results were cut off at the window edge so far."""
        return self._dropped

    def in_window(self, s: Slice) -> bool:
        return s in self._slice_set

    def require(self, s: Slice) -> None:
        if s not in self._slice_set:
            raise WindowError(f"Slice (degree {s[0]}, weight {s[1]}) lies outside the window of {self.name}")

    @property
    def max_weight(self) -> int:
        return max((w for _, w in self.slices), default=0)

    # --- presentation -----------------------------------------------------
    def basis(self, s: Slice) -> List[str]:
        self.require(s)
        if s not in self._basis:
            self._basis[s] = list(self._basis_fn(s))
        return self._basis[s]

    def dim(self, s: Slice) -> int:
        return len(self.basis(s)) if self.in_window(s) else 0

    def d_basis(self, s: Slice, i: int) -> SparseVec:
        key = (s, i)
        if key not in self._d:
            self._d[key] = {k: v for k, v in self._d_fn(s, i).items() if v}
        return self._d[key]

    def bracket_basis(self, s1: Slice, i: int, s2: Slice, j: int) -> SparseVec:
        key = (s1, i, s2, j)
        if key not in self._br:
            self._br[key] = {k: v for k, v in self._bracket_fn(s1, i, s2, j).items() if v}
        return self._br[key]

    def target(self, s1: Slice, s2: Slice) -> Slice:
        return (s1[0] + s2[0], s1[1] + s2[1] + self.bracket_weight)

    def d_matrix(self, s: Slice):
        t = (s[0] + 1, s[1])
        cols = [self.d_basis(s, i) for i in range(self.dim(s))]
        return linalg.from_columns(self.field, self.dim(t), cols)

    # --- elements ---------------------------------------------------------
    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def element(self, parts: Dict[Slice, SparseVec]) -> GradedElement:
        for s, vec in parts.items():
            self.require(s)
            n = self.dim(s)
            if any(not 0 <= i < n for i in vec):
                raise InputError(f"Basis index out of range in slice {s}")
        return GradedElement(self, {s: {i: self.field.convert(v) for i, v in vec.items()} for s, vec in parts.items()})

    def d(self, x: GradedElement) -> GradedElement:
        zero = self.field.zero
        out: Dict[Slice, SparseVec] = {}
        for s, vec in x.parts.items():
            t = (s[0] + 1, s[1])
            if not self.in_window(t):
                if any(self.d_basis(s, i) for i in vec):
                    self._dropped += 1
                    log.debug("d of slice %s leaves the window; dropped", s)
                continue
            tgt = out.setdefault(t, {})
            for i, a in vec.items():
                for k, v in self.d_basis(s, i).items():
                    tgt[k] = tgt.get(k, zero) + a * v
        return GradedElement(self, out)

    def bracket(self, x: GradedElement, y: GradedElement) -> GradedElement:
        zero = self.field.zero
        out: Dict[Slice, SparseVec] = {}
        for s1, v1 in x.parts.items():
            for s2, v2 in y.parts.items():
                t = self.target(s1, s2)
                if not self.in_window(t):
                    self._dropped += 1
                    log.debug("bracket %s x %s lands outside the window; truncated", s1, s2)
                    continue
                tgt = out.setdefault(t, {})
                for i, a in v1.items():
                    for j, b in v2.items():
                        for k, v in self.bracket_basis(s1, i, s2, j).items():
                            tgt[k] = tgt.get(k, zero) + a * b * v
        return GradedElement(self, out)


def _require_degree(x: GradedElement, degree: int, what: str) -> None:
    bad = x.degrees() - {degree}
    if bad:
        raise InputError(f"{what} must have degree {degree}; found components in degree {sorted(bad)}")


def mc_residual(L: WeightGradedDGLA, x: GradedElement) -> GradedElement:
    """dx + 1/2 [x, x], componentwise by weight."""
    _require_degree(x, 1, "Maurer-Cartan candidate")
    low = [w for w in x.weights() if w < 2]
    if low:
        raise InputError(f"Maurer-Cartan candidate has components of weight {low}; weights must be >= 2")
    return L.d(x) + L.bracket(x, x).scale(L.field.convert("1/2"))


@dataclass
class GaugePath:
    """alpha(t) = sum_p t^p coeffs[p], generated by the degree-0 element lam."""

    lam: GradedElement
    coeffs: List[GradedElement] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def at(self, t) -> GradedElement:
        L = self.lam.dgla
        t = L.field.convert(t)
        out, power = L.zero(), L.field.one
        for c in self.coeffs:
            out = out + c.scale(power)
            power = power * t
        return out


def _first_slice(x: GradedElement):
    s = min(x.parts)
    return {"degree": s[0], "weight": s[1], "terms": len(x.parts[s])}


def gauge_verify(L: WeightGradedDGLA, x: GradedElement, y: GradedElement, path: GaugePath) -> CheckReport:
    """alpha(0) = x, alpha(1) = y, d alpha/dt = d lam + [alpha, lam] and MC(alpha(t)) = 0 as polynomials in t."""
    _require_degree(path.lam, 0, "Gauge element")
    coeffs = path.coeffs or [L.zero()]
    for c in coeffs:
        _require_degree(c, 1, "Gauge path coefficient")
    checks = {}
    witness = None

    def fail(name, order, residual):
        nonlocal witness
        checks[name] = False
        if witness is None:
            witness = {"condition": name, "order": order, **_first_slice(residual)}

    start = coeffs[0] - x
    checks["start"] = start.is_zero()
    if not checks["start"]:
        fail("start", 0, start)
    end = path.at(1) - y
    checks["end"] = end.is_zero()
    if not checks["end"]:
        fail("end", 0, end)

    checks["ode"] = True
    dlam = L.d(path.lam)
    N = len(coeffs) - 1
    for p in range(N + 1):
        lhs = coeffs[p + 1].scale(p + 1) if p < N else L.zero()
        rhs = L.bracket(coeffs[p], path.lam)
        if p == 0:
            rhs = rhs + dlam
        diff = lhs - rhs
        if not diff.is_zero():
            fail("ode", p, diff)
            break

    checks["mc"] = True
    half = L.field.convert("1/2")
    for m in range(2 * N + 1):
        total = L.d(coeffs[m]) if m <= N else L.zero()
        for p in range(max(0, m - N), min(m, N) + 1):
            total = total + L.bracket(coeffs[p], coeffs[m - p]).scale(half)
        if not total.is_zero():
            fail("mc", m, total)
            break
    passed = all(checks.values())
    return CheckReport("gauge", passed, witness=witness, details={"conditions": checks, "order": N})


def integrate_gauge(L: WeightGradedDGLA, x: GradedElement, lam: GradedElement) -> GaugePath:
    """Solve the gauge ODE from alpha(0) = x by Picard iteration.

    alpha_{p+1} = (delta_{p0} d lam + [alpha_p, lam]) / (p + 1); terminates because
    each step raises the weight by that of lam plus the bracket weight.
    """
    _require_degree(lam, 0, "Gauge element")
    coeffs = [x]
    dlam = L.d(lam)
    for p in range(len(L.slices) + 2):
        nxt = L.bracket(coeffs[-1], lam)
        if p == 0:
            nxt = nxt + dlam
        if nxt.is_zero():
            return GaugePath(lam, coeffs)
        coeffs.append(nxt.scale(L.field.convert(1) / L.field.convert(p + 1)))
    raise WindowError(f"Gauge path from {L.name} does not terminate inside the window")


# --- whole-algebra checks and serialization -----------------------------------

def _sign(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


def check_dgla(L: WeightGradedDGLA, sample: Optional[int] = 400, seed: int = 0,
               slices: Optional[Sequence[Slice]] = None) -> CheckReport:
    """d^2 = 0, graded antisymmetry and Jacobi on basis elements.

    Exhaustive when the number of basis triples is at most `sample` (or sample
    is None); otherwise a seeded sample. Triples whose intermediate brackets
    leave the window are skipped.
    """
    use = [s for s in (slices or L.slices) if L.dim(s)]
    elems = [(s, i) for s in use for i in range(L.dim(s))]
    one = L.field.one

    def b(s, i):
        return GradedElement(L, {s: {i: one}})

    for s, i in elems:
        dd = L.d(L.d(b(s, i)))
        if not dd.is_zero():
            return CheckReport("dgla", False, witness={"identity": "d^2", "slice": list(s), "basis": L.basis(s)[i]})

    for (s1, i), (s2, j) in product(elems, repeat=2):
        if not L.in_window(L.target(s1, s2)):
            continue
        lhs = L.bracket(b(s1, i), b(s2, j))
        rhs = L.bracket(b(s2, j), b(s1, i)).scale(-_sign(s1[0], s2[0]))
        if lhs != rhs:
            return CheckReport("dgla", False, witness={"identity": "antisymmetry",
                                                       "pair": [L.basis(s1)[i], L.basis(s2)[j]]})

    rng = np.random.default_rng(seed)
    total = len(elems) ** 3
    if sample is None or total <= sample:
        triples = product(elems, repeat=3)
        checked = total
    else:
        picks = rng.integers(0, len(elems), size=(sample, 3))
        triples = ((elems[a], elems[b_], elems[c]) for a, b_, c in picks)
        checked = sample
    skipped = 0
    for (sa, ia), (sb, ib), (sc, ic) in triples:
        inner = [L.target(sb, sc), L.target(sa, sb), L.target(sa, sc)]
        outer = L.target(sa, L.target(sb, sc))
        if not all(L.in_window(t) for t in inner + [outer]):
            skipped += 1
            continue
        a, bb, c = b(sa, ia), b(sb, ib), b(sc, ic)
        lhs = L.bracket(a, L.bracket(bb, c))
        rhs = L.bracket(L.bracket(a, bb), c) + L.bracket(bb, L.bracket(a, c)).scale(_sign(sa[0], sb[0]))
        if lhs != rhs:
            return CheckReport("dgla", False, witness={"identity": "jacobi", "triple": [
                L.basis(sa)[ia], L.basis(sb)[ib], L.basis(sc)[ic]]})
    return CheckReport("dgla", True, details={"basis": len(elems), "triples": checked, "skipped": skipped})


def serialize_dgla(L: WeightGradedDGLA, slices: Optional[Sequence[Slice]] = None) -> dict:
    """Bases, differential matrices and bracket tensors of the chosen slices."""
    use = [s for s in (slices or L.slices) if L.dim(s)]
    fmt = L.field.format
    out_slices = []
    for s in use:
        t = (s[0] + 1, s[1])
        entries = []
        if L.in_window(t):
            for i in range(L.dim(s)):
                for k, v in sorted(L.d_basis(s, i).items()):
                    entries.append([k, i, fmt(v)])
        out_slices.append({"degree": s[0], "weight": s[1], "basis": L.basis(s), "differential": entries})
    brackets = []
    for s1, s2 in product(use, repeat=2):
        t = L.target(s1, s2)
        if not L.in_window(t):
            continue
        terms = []
        for i in range(L.dim(s1)):
            for j in range(L.dim(s2)):
                for k, v in sorted(L.bracket_basis(s1, i, s2, j).items()):
                    terms.append([i, j, k, fmt(v)])
        if terms:
            brackets.append({"left": list(s1), "right": list(s2), "terms": terms})
    return {"name": L.name, "field": L.field.describe(), "bracket_weight": L.bracket_weight,
            "meta": L.meta, "slices": out_slices, "brackets": brackets}


def load_dgla(doc: dict) -> WeightGradedDGLA:
    try:
        info = doc["field"]
        field_ = ScalarField(info.get("vars", ()))
        bases, diffs, brackets = {}, {}, {}
        for sl in doc["slices"]:
            s = (int(sl["degree"]), int(sl["weight"]))
            bases[s] = list(sl["basis"])
            cols: Dict[int, SparseVec] = {}
            for k, i, v in sl["differential"]:
                cols.setdefault(int(i), {})[int(k)] = field_.convert(v)
            diffs[s] = cols
        for br in doc["brackets"]:
            key = (tuple(br["left"]), tuple(br["right"]))
            table: Dict[Tuple[int, int], SparseVec] = {}
            for i, j, k, v in br["terms"]:
                table.setdefault((int(i), int(j)), {})[int(k)] = field_.convert(v)
            brackets[key] = table
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed dg Lie algebra document: {e}") from e
    return WeightGradedDGLA.from_tables(doc.get("name", "loaded"), field_, bases, diffs, brackets,
                                        int(doc.get("bracket_weight", -1)), doc.get("meta"))
