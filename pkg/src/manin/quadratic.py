# src/manin/quadratic.py
# Quadratic Lie algebras (d, <,>), subspaces of d given by coordinate vectors,
# Manin pairs and isomorphisms of quadratic Lie algebras.

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Union

from src.algebra import linalg
from src.algebra.errors import InputError
from src.algebra.reports import CheckReport
from src.algebra.tensors import DOWN, SparseTensor, tensor_sig
from src.lie.algebra import LieAlgebra
from src.lie.forms import pairing_matrix

log = logging.getLogger("manin")

Vec = Dict[int, object]
SpanItem = Union[int, str, Mapping]


@dataclass
class QuadraticLieAlgebra:
    d: LieAlgebra
    pairing: List[List[object]]

    @property
    def dim(self) -> int:
        return self.d.dim

    def form(self, x: Mapping[int, object], y: Mapping[int, object]):
        acc = self.d.field.zero
        for i, a in x.items():
            row = self.pairing[i]
            for j, b in y.items():
                if row[j]:
                    acc += a * row[j] * b
        return acc

    def matrix(self):
        return linalg.from_rows(self.d.field, self.pairing, self.dim)


def quadratic(d: LieAlgebra, pairing: Sequence[Sequence[object]]) -> QuadraticLieAlgebra:
    return QuadraticLieAlgebra(d, pairing_matrix(d, pairing))


def pairing_invariance(q: QuadraticLieAlgebra) -> SparseTensor:
    """<[x, y], z> + <y, [x, z]> on basis triples, keyed (x, y, z)."""
    d = q.d
    one = d.field.one
    acc = {}
    for x in range(d.dim):
        for y in range(d.dim):
            bxy = d.bracket_basis(x, y)
            for z in range(d.dim):
                v = q.form(bxy, {z: one}) + q.form({y: one}, d.bracket_basis(x, z))
                if v:
                    acc[(x, y, z)] = v
    return SparseTensor(d.dim, tensor_sig(3, DOWN), d.field, acc)


def check_quadratic(q: QuadraticLieAlgebra) -> CheckReport:
    d, B, lab = q.d, q.pairing, q.d.labels
    fmt = d.field.format
    witness = None
    asym = next(((j, i) for i in range(d.dim) for j in range(i) if B[i][j] != B[j][i]), None)
    details = {"symmetric": asym is None}
    if asym:
        witness = {"identity": "symmetric", "pair": [lab[asym[0]], lab[asym[1]]]}
    kernel = linalg.nullspace(q.matrix(), d.field) if d.dim else []
    details["nondegenerate"] = not kernel
    if kernel and witness is None:
        witness = {"identity": "nondegenerate", "kernel": {lab[i]: fmt(v) for i, v in enumerate(kernel[0]) if v}}
    res = pairing_invariance(q)
    details["invariant"] = res.is_zero()
    if not res.is_zero() and witness is None:
        key, value = res.items()[0]
        witness = {"identity": "invariance", "triple": [lab[i] for i in key], "value": fmt(value)}
    return CheckReport("quadratic", all(details.values()), witness=witness,
                       residuals={"invariance": res}, details=details)


# --- subspaces ------------------------------------------------------------------
def span_vectors(d: LieAlgebra, items: Sequence[SpanItem]) -> List[Vec]:
    """Basis vectors of a subspace from labels, indices or {label: coefficient} maps."""

    def idx(k) -> int:
        if isinstance(k, str):
            return d.index(k)
        if not 0 <= int(k) < d.dim:
            raise InputError(f"Basis index {k} out of range for {d.name}")
        return int(k)

    out: List[Vec] = []
    for it in items:
        if isinstance(it, Mapping):
            vec: Vec = {}
            for k, v in it.items():
                i = idx(k)
                vec[i] = vec.get(i, d.field.zero) + d.field.convert(v)
            out.append({i: v for i, v in vec.items() if v})
        elif isinstance(it, (int, str)):
            out.append({idx(it): d.field.one})
        else:
            raise InputError(f"Cannot read a subspace vector from {it!r}")
    return out


def span_rank(d: LieAlgebra, vecs: Sequence[Vec]) -> int:
    return linalg.rank(linalg.from_columns(d.field, d.dim, vecs))


def in_span(d: LieAlgebra, vecs: Sequence[Vec], w: Vec) -> bool:
    return not w or span_rank(d, list(vecs) + [w]) == span_rank(d, vecs)


def describe_vector(d: LieAlgebra, v: Vec) -> Dict[str, str]:
    return {d.labels[i]: d.field.format(c) for i, c in sorted(v.items())}


@dataclass
class ManinPair:
    q: QuadraticLieAlgebra
    g: List[Vec]
    complement: Optional[List[Vec]] = None

    @property
    def d(self) -> LieAlgebra:
        return self.q.d


def manin_pair(q: QuadraticLieAlgebra, g: Sequence[SpanItem],
               complement: Optional[Sequence[SpanItem]] = None) -> ManinPair:
    return ManinPair(q, span_vectors(q.d, g), span_vectors(q.d, complement) if complement is not None else None)


def lagrangian_check(q: QuadraticLieAlgebra, vecs: Sequence[Vec], name: str = "lagrangian") -> CheckReport:
    """Independent, closed under the bracket, isotropic and of half the dimension of d."""
    d = q.d
    details = {"independent": span_rank(d, vecs) == len(vecs), "half_dimension": 2 * len(vecs) == d.dim}
    witness = None
    if not details["independent"]:
        witness = {"identity": "independent"}
    elif not details["half_dimension"]:
        witness = {"identity": "half_dimension", "dim": len(vecs), "ambient": d.dim}
    closed = True
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            if not in_span(d, vecs, d.bracket(vecs[a], vecs[b])):
                closed = False
                if witness is None:
                    witness = {"identity": "subalgebra", "pair": [describe_vector(d, vecs[a]),
                                                                  describe_vector(d, vecs[b])]}
                break
        if not closed:
            break
    details["subalgebra"] = closed
    isotropic = True
    for a in range(len(vecs)):
        for b in range(a, len(vecs)):
            v = q.form(vecs[a], vecs[b])
            if v:
                isotropic = False
                if witness is None:
                    witness = {"identity": "isotropic", "pair": [describe_vector(d, vecs[a]),
                                                                 describe_vector(d, vecs[b])],
                               "value": d.field.format(v)}
                break
        if not isotropic:
            break
    details["isotropic"] = isotropic
    return CheckReport(name, all(details.values()), witness=witness, details=details)


def manin_pair_check(pair: ManinPair, name: str = "manin_pair") -> CheckReport:
    qr = check_quadratic(pair.q)
    if not qr.passed:
        return CheckReport(name, False, witness=qr.witness, residuals=qr.residuals,
                           details={"quadratic": False, **qr.details})
    out = lagrangian_check(pair.q, pair.g, name)
    out.details["quadratic"] = True
    return out


def is_quadratic_isomorphism(a: QuadraticLieAlgebra, b: QuadraticLieAlgebra,
                             images: Sequence[Vec]) -> CheckReport:
    """Whether e_i -> images[i] is a bijection preserving brackets and pairings."""
    if len(images) != a.dim:
        raise InputError(f"Need {a.dim} images, got {len(images)}")
    if a.d.field is not b.d.field:
        raise InputError("Quadratic Lie algebras live over different fields")
    d, e = a.d, b.d
    zero = d.field.zero
    details = {"bijective": a.dim == b.dim and span_rank(e, images) == b.dim}
    witness = None if details["bijective"] else {"identity": "bijective"}

    def image(v: Mapping[int, object]) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            for k, x in images[i].items():
                out[k] = out.get(k, zero) + c * x
        return {k: x for k, x in out.items() if x}

    brackets = pairings = True
    for i in range(a.dim):
        for j in range(i, a.dim):
            if brackets and j > i and image(d.bracket_basis(i, j)) != e.bracket(images[i], images[j]):
                brackets = False
                witness = witness or {"identity": "bracket", "pair": [d.labels[i], d.labels[j]]}
            if pairings and a.pairing[i][j] != b.form(images[i], images[j]):
                pairings = False
                witness = witness or {"identity": "pairing", "pair": [d.labels[i], d.labels[j]]}
    details.update(brackets=brackets, pairings=pairings)
    return CheckReport("isomorphism", all(details.values()), witness=witness, details=details)
