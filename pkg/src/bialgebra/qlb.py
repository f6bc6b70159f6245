# src/bialgebra/qlb.py
# Quasi-Lie bialgebras (delta, phi) over g, the big bracket on C(g, Sym(g[-n])),
# the Schouten bracket on multivectors and twists by bivectors.
#
# delta is stored as a tensor in g* (x) wedge^2 g: component (p, s, i) is the
# coefficient of e_s ^ e_i in delta(e_p).

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.algebra.errors import InputError, PreconditionError
from src.algebra.polyvectors import Polyvector
from src.algebra.reports import CheckReport
from src.algebra.tensors import SparseTensor, cochain_sig, wedge_sig
from src.lie.algebra import LieAlgebra

log = logging.getLogger("qlb")

DELTA_SIG = cochain_sig(1, wedge_sig(2))
PHI_SIG = wedge_sig(3)

# residual name -> (CE degree, weight) of the component of the MC residual it is
AXIOMS = {"cocycle": (2, 2), "co_jacobi": (1, 3), "compatibility": (0, 4)}

BigBracketElement = Polyvector


@dataclass
class QuasiLieBialgebra:
    g: LieAlgebra
    delta: SparseTensor
    phi: SparseTensor
    provenance: dict = field(default_factory=dict)

    @property
    def is_lie_bialgebra(self) -> bool:
        return self.phi.is_zero()

    def element(self) -> Polyvector:
        """delta + phi inside the polyvector algebra of g (shift 1), without mu."""
        P = self.g.polyvectors(1)
        return P.from_tensor(self.delta) + P.from_tensor(self.phi)


def _shape(g: LieAlgebra, t: Optional[SparseTensor], sig, what: str) -> SparseTensor:
    if t is None:
        return SparseTensor.zero(g.dim, sig, g.field)
    if t.dim != g.dim:
        raise InputError(f"{what} has dimension {t.dim}, {g.name} has {g.dim}")
    if t.field is not g.field:
        t = t.over(g.field)
    if t.signature != sig:
        t = t.regroup(sig)
    return t


def make_qlb(g: LieAlgebra, delta: Optional[SparseTensor] = None, phi: Optional[SparseTensor] = None,
             provenance: Optional[dict] = None) -> QuasiLieBialgebra:
    return QuasiLieBialgebra(g, _shape(g, delta, DELTA_SIG, "delta"), _shape(g, phi, PHI_SIG, "phi"),
                             dict(provenance or {}))


def as_bivector(g: LieAlgebra, lam: SparseTensor) -> SparseTensor:
    return _shape(g, lam, wedge_sig(2), "lambda")


def big_bracket(a: Polyvector, b: Polyvector) -> Polyvector:
    if a.algebra.shift != b.algebra.shift:
        raise InputError(f"Shift mismatch in big bracket: {a.algebra.shift} vs {b.algebra.shift}")
    if a.algebra != b.algebra:
        raise InputError("Big bracket arguments live over different spaces or fields")
    return a.algebra.bracket(a, b)


def schouten(g: LieAlgebra, a: SparseTensor, b: SparseTensor) -> SparseTensor:
    """[[a, b]] = (-1)^p {a, d b} for a p-vector a and q-vector b; a (p+q-1)-vector."""
    for t, what in ((a, "first argument"), (b, "second argument")):
        if not t.is_multivector:
            raise InputError(f"schouten {what} must be a multivector")
    p, q = a.arity, b.arity
    if p == 0 or q == 0:
        return SparseTensor.zero(g.dim, wedge_sig(max(p + q - 1, 0)), g.field)
    P = g.polyvectors(1)
    A = P.from_tensor(_shape(g, a, wedge_sig(p), "schouten argument"))
    B = P.from_tensor(_shape(g, b, wedge_sig(q), "schouten argument"))
    out = P.bracket(A, P.differential(B))
    if p % 2:
        out = -out
    return P.to_tensor(out, 0, p + q - 1)


def residuals(q: QuasiLieBialgebra) -> Dict[str, SparseTensor]:
    P = q.g.polyvectors(1)
    D, F = P.from_tensor(q.delta), P.from_tensor(q.phi)
    half = q.g.field.convert("1/2")
    parts = {
        "cocycle": P.differential(D),
        "co_jacobi": P.bracket(D, D).scale(half) + P.differential(F),
        "compatibility": P.bracket(D, F),
    }
    return {name: P.to_tensor(parts[name], k, w) for name, (k, w) in AXIOMS.items()}


def check_qlb(q: QuasiLieBialgebra) -> CheckReport:
    res = residuals(q)
    support = {name: len(t) for name, t in res.items()}
    failing = [name for name in AXIOMS if support[name]]
    witness = None
    if failing:
        name = failing[0]
        key, value = res[name].items()[0]
        witness = {"axiom": name, "component": [q.g.labels[i] for i in key], "value": q.g.field.format(value)}
    log.debug("check_qlb on %s: support %s", q.g.name, support)
    return CheckReport("qlb", not failing, witness=witness, residuals=res,
                       details={"support": support, "max_support": max(support.values())})


def twist(q: QuasiLieBialgebra, lam: SparseTensor) -> QuasiLieBialgebra:
    """delta' = delta + d lam, phi' = phi + {delta, lam} - 1/2 [[lam, lam]]."""
    report = check_qlb(q)
    if not report.passed:
        axiom = report.witness["axiom"]
        raise PreconditionError(f"twist needs a quasi-Lie bialgebra; the {axiom} residual has "
                                f"{report.details['support'][axiom]} nonzero components")
    g = q.g
    lam = as_bivector(g, lam)
    P = g.polyvectors(1)
    L, D = P.from_tensor(lam), P.from_tensor(q.delta)
    dL = P.differential(L)
    delta = q.delta + P.to_tensor(dL, 1, 2)
    phi = q.phi + P.to_tensor(P.bracket(D, L), 0, 3) - schouten(g, lam, lam).scale("1/2")
    prov = {"twist_of": q.provenance or {"delta_terms": len(q.delta), "phi_terms": len(q.phi)},
            "lambda": lam.to_literal(g.labels)}
    return QuasiLieBialgebra(g, delta, phi, prov)
