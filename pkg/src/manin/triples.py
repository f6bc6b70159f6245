# src/manin/triples.py
# Manin triples, the standard triple g* = b+ x_h b- inside g + g, and the
# passage between Manin pairs and quasi-Lie bialgebras in both directions.
#
# For a Manin pair (d, g) with isotropic complement W, the dual basis eps^a of W
# (<eps^a, u_i> = delta^a_i) gives
#   [u_i, u_j]     = f^k_ij u_k
#   [eps^a, eps^b] = delta_k^{ab} eps^k + phi^{iab} u_i
#   [u_i, eps^j]   = delta_i^{jk} u_k - f^j_ik eps^k
# which is how quasi_double builds d and manin_pair_to_qlb reads it back.

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra import linalg
from src.algebra.errors import PreconditionError
from src.algebra.reports import CheckReport, ReportGroup
from src.algebra.tensors import SparseTensor
from src.bialgebra.qlb import DELTA_SIG, PHI_SIG, QuasiLieBialgebra, check_qlb, make_qlb
from src.lie.algebra import LieAlgebra, check_lie
from src.lie.factories import direct_sum
from src.lie.forms import trace_form
from src.manin.quadratic import (ManinPair, QuadraticLieAlgebra, SpanItem, Vec, describe_vector,
                                 lagrangian_check, manin_pair_check, span_rank, span_vectors)

log = logging.getLogger("manin")


@dataclass
class ManinTriple:
    pair: ManinPair
    gstar: List[Vec]
    jacobi: Optional[CheckReport] = None
    provenance: dict = field(default_factory=dict)

    @property
    def q(self) -> QuadraticLieAlgebra:
        return self.pair.q

    @property
    def d(self) -> LieAlgebra:
        return self.pair.q.d


def manin_triple(q: QuadraticLieAlgebra, g: Sequence[SpanItem], gstar: Sequence[SpanItem]) -> ManinTriple:
    return ManinTriple(ManinPair(q, span_vectors(q.d, g)), span_vectors(q.d, gstar))


def manin_triple_check(t: ManinTriple) -> ReportGroup:
    report = ReportGroup("manin_triple", details={"dim_d": t.d.dim, "dim_g": len(t.pair.g),
                                                  "dim_gstar": len(t.gstar)})
    report.add(check_lie(t.d))
    report.add(manin_pair_check(t.pair, "g"))
    report.add(lagrangian_check(t.q, t.gstar, "gstar"))
    both = span_rank(t.d, t.pair.g + t.gstar)
    ok = both == len(t.pair.g) + len(t.gstar) == t.d.dim
    report.add(CheckReport("transversal", ok, witness=None if ok else {"identity": "transversal", "rank": both},
                           details={"rank": both}))
    return report


# --- g + g with the difference pairing ---------------------------------------------
def difference_double(g: LieAlgebra, pairing: Sequence[Sequence[object]]) -> QuadraticLieAlgebra:
    """g + g with <(x, x'), (y, y')> = B(x, y) - B(x', y')."""
    n = g.dim
    zero = g.field.zero
    P = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b = g.field.convert(pairing[i][j])
            P[i][j], P[n + i][n + j] = b, -b
    return QuadraticLieAlgebra(direct_sum(g, g, f"{g.name}+{g.name}"), P)


def diagonal(g: LieAlgebra) -> List[Vec]:
    one = g.field.one
    return [{i: one, g.dim + i: one} for i in range(g.dim)]


def antidiagonal(g: LieAlgebra) -> List[Vec]:
    one = g.field.one
    return [{i: one, g.dim + i: -one} for i in range(g.dim)]


def dual_subalgebra_bplus_bminus(g: LieAlgebra) -> ManinTriple:
    """(g + g, diagonal, {(x+, x-) in b+ + b- : h-components add up to zero})."""
    meta = g.meta
    if not all(meta.get(k) for k in ("positive", "negative", "cartan")) or not meta.get("matrices"):
        raise PreconditionError(f"{g.name} carries no Chevalley data (positive/negative root vectors, Cartan)")
    n, one = g.dim, g.field.one
    q = difference_double(g, trace_form(g))
    gstar = ([{p: one} for p in meta["positive"]] + [{n + m: one} for m in meta["negative"]]
             + [{h: one, n + h: -one} for h in meta["cartan"]])
    log.debug("standard triple for %s: dim d = %d", g.name, q.dim)
    return ManinTriple(ManinPair(q, diagonal(g)), gstar, provenance={"construction": "b+ x_h b-", "algebra": g.name})


# --- Manin pairs -> quasi-Lie bialgebras ------------------------------------------------
def _coordinates(d: LieAlgebra, basis: List[Vec]):
    """v -> coordinates of v in `basis` (a basis of d)."""
    M = linalg.from_columns(d.field, d.dim, basis)
    if linalg.rank(M) != d.dim or len(basis) != d.dim:
        raise PreconditionError("g and its complement do not span d")
    inv = linalg.inverse(M, d.field)
    zero = d.field.zero

    def coords(v: Vec) -> List[object]:
        return [sum((row[j] * c for j, c in v.items() if row[j]), zero) for row in inv]

    return coords


def _dual_basis(q: QuadraticLieAlgebra, U: List[Vec], W: List[Vec]) -> List[Vec]:
    d = q.d
    P = [[q.form(w, u) for u in U] for w in W]
    M = linalg.from_rows(d.field, P, len(U))
    if not len(W) or linalg.det(M) == d.field.zero:
        raise PreconditionError("The complement is not dual to g under the pairing")
    inv = linalg.inverse(M, d.field)
    zero = d.field.zero
    out = []
    for a in range(len(W)):
        vec: Vec = {}
        for b, w in enumerate(W):
            if inv[a][b]:
                for k, x in w.items():
                    vec[k] = vec.get(k, zero) + inv[a][b] * x
        out.append({k: x for k, x in vec.items() if x})
    return out


def manin_pair_to_qlb(pair: ManinPair, complement: Optional[Sequence[SpanItem]] = None,
                      labels: Optional[Sequence[str]] = None) -> QuasiLieBialgebra:
    """Read (delta, phi) on g off an isotropic complement W identified with g* by the pairing."""
    q, d = pair.q, pair.q.d
    U = pair.g
    W = span_vectors(d, complement) if complement is not None else pair.complement
    if W is None:
        raise PreconditionError("A complement of g in d is needed")
    n = len(U)
    if len(W) != n:
        raise PreconditionError(f"Complement has dimension {len(W)}, g has {n}")
    for a in range(n):
        for b in range(a, n):
            if q.form(W[a], W[b]):
                raise PreconditionError("The complement is not isotropic")
    E = _dual_basis(q, U, W)
    coords = _coordinates(d, U + E)
    if labels is None:
        unit = all(len(u) == 1 and next(iter(u.values())) == d.field.one for u in U)
        labels = [d.labels[next(iter(u))] for u in U] if unit else [f"u{i + 1}" for i in range(n)]

    table: Dict[Tuple[int, int], Dict[int, object]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = coords(d.bracket(U[i], U[j]))
            if any(c[n:]):
                raise PreconditionError(f"g is not a subalgebra: [{labels[i]}, {labels[j]}] leaves it")
            table[(i, j)] = {k: v for k, v in enumerate(c[:n]) if v}
    g = LieAlgebra(f"{d.name}/{','.join(labels)}", labels, d.field, table)

    delta, phi = {}, {}
    for a in range(n):
        for b in range(a + 1, n):
            br = d.bracket(E[a], E[b])
            for k in range(n):
                v = q.form(br, U[k])
                if v:
                    delta[(k, a, b)] = v
            for i in range(a):
                v = q.form(br, E[i])
                if v:
                    phi[(i, a, b)] = v
    prov = {"manin_pair": d.name, "g": [describe_vector(d, u) for u in U],
            "complement": [describe_vector(d, w) for w in W]}
    return make_qlb(g, SparseTensor(n, DELTA_SIG, d.field, delta), SparseTensor(n, PHI_SIG, d.field, phi), prov)


def triple_to_bialgebra(t: ManinTriple) -> QuasiLieBialgebra:
    report = manin_triple_check(t)
    if not report.passed:
        bad = next(c.name for c in report.checks if not c.passed)
        raise PreconditionError(f"Not a Manin triple: the {bad} check fails")
    return manin_pair_to_qlb(t.pair, t.gstar)


# --- quasi-Lie bialgebras -> doubles ---------------------------------------------------
def quasi_double(q: QuasiLieBialgebra) -> ManinPair:
    """g + g* with the canonical pairing; a Lie algebra iff q passes check_qlb."""
    g = q.g
    n, zero, one = g.dim, g.field.zero, g.field.one
    delta, phi = q.delta, q.phi
    table: Dict[Tuple[int, int], Dict[int, object]] = {}
    for (i, j), out in g.structure.items():
        table[(i, j)] = dict(out)
    for a in range(n):
        for b in range(a + 1, n):
            out = {n + k: delta[(k, a, b)] for k in range(n)}
            out.update({i: phi[(i, a, b)] for i in range(n)})
            table[(n + a, n + b)] = {k: v for k, v in out.items() if v}
    for i in range(n):
        for j in range(n):
            out = {k: delta[(i, j, k)] for k in range(n)}
            for k in range(n):
                f = g.constant(j, i, k)
                if f:
                    out[n + k] = -f
            table[(i, n + j)] = {k: v for k, v in out.items() if v}
    labels = list(g.labels) + [f"{l}*" for l in g.labels]
    D = LieAlgebra(f"D({g.name})", labels, g.field, table, {"double_of": g.name})
    P = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        P[i][n + i] = P[n + i][i] = one
    units = [{i: one} for i in range(n)]
    return ManinPair(QuadraticLieAlgebra(D, P), units, [{n + i: one} for i in range(n)])


def drinfeld_double(b: QuasiLieBialgebra) -> ManinTriple:
    """The double of a Lie bialgebra; its Jacobi report decides whether b really is one."""
    if not b.phi.is_zero():
        raise PreconditionError(f"drinfeld_double needs phi = 0; phi has {len(b.phi)} nonzero components")
    pair = quasi_double(b)
    jacobi = check_lie(pair.d)
    if not jacobi.passed:
        log.info("double of %s fails Jacobi at %s", b.g.name, jacobi.witness.get("triple"))
    return ManinTriple(ManinPair(pair.q, pair.g), pair.complement, jacobi=jacobi,
                       provenance={"double_of": b.g.name, "qlb": check_qlb(b).passed})
