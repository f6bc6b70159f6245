# src/rmatrix/classical.py
# Constant r-matrices: the CYBE residual, the split r = 2 lam + c and the
# lambda-form of quasi-triangularity.

import logging
from dataclasses import dataclass
from typing import Dict

from src.algebra import linalg
from src.algebra.errors import InputError, PreconditionError
from src.algebra.ledger import LEDGER
from src.algebra.reports import CheckReport
from src.algebra.tensors import Key, SparseTensor, embed_wedge, sym_sig, tensor_sig, wedge_sig
from src.bialgebra.casimir import casimir_to_phi, invariance_residual
from src.bialgebra.qlb import QuasiLieBialgebra, make_qlb, schouten, twist
from src.lie.algebra import LieAlgebra

log = logging.getLogger("rmatrix")


def as_two_tensor(g: LieAlgebra, r: SparseTensor) -> SparseTensor:
    if r.dim != g.dim:
        raise InputError(f"r has dimension {r.dim}, {g.name} has {g.dim}")
    if r.arity != 2:
        raise InputError(f"r must be a 2-tensor, got arity {r.arity}")
    if r.field is not g.field:
        r = r.over(g.field)
    return r.flatten()


def cybe(g: LieAlgebra, r: SparseTensor) -> SparseTensor:
    """[r12, r13] + [r12, r23] + [r13, r23] as a plain 3-tensor."""
    r = as_two_tensor(g, r)
    zero = g.field.zero
    acc: Dict[Key, object] = {}

    def add(key, v):
        acc[key] = acc.get(key, zero) + v

    terms = r.items()
    for (a, b), x in terms:
        for (c, d), y in terms:
            xy = x * y
            for m, f in g.bracket_basis(a, c).items():
                add((m, b, d), xy * f)
            for m, f in g.bracket_basis(b, c).items():
                add((a, m, d), xy * f)
            for m, f in g.bracket_basis(b, d).items():
                add((a, c, m), xy * f)
    return SparseTensor(g.dim, tensor_sig(3), g.field, acc)


@dataclass
class RSplit:
    lam: SparseTensor
    c: SparseTensor
    invariance: SparseTensor

    @property
    def invariant(self) -> bool:
        return self.invariance.is_zero()


def split_r(g: LieAlgebra, r: SparseTensor) -> RSplit:
    """c = 1/2 (r + r^T); lam with embed_wedge(2 lam) = r - c, i.e. lam^{ij} = 1/4 (r^{ij} - r^{ji})."""
    r = as_two_tensor(g, r)
    half, quarter = g.field.convert("1/2"), g.field.convert("1/4")
    keys = set(r.keys()) | {(j, i) for i, j in r.keys()}
    sym = {(i, j): half * (r[(i, j)] + r[(j, i)]) for i, j in keys}
    anti = {(i, j): quarter * (r[(i, j)] - r[(j, i)]) for i, j in keys}
    c = SparseTensor.project(g.dim, sym_sig(2), g.field, sym)
    lam = SparseTensor.project(g.dim, wedge_sig(2), g.field, anti)
    return RSplit(lam, c, invariance_residual(g, c))


def lambda_form_residual(g: LieAlgebra, lam: SparseTensor, phi: SparseTensor) -> SparseTensor:
    """1/2 [[lam, lam]] - phi."""
    return schouten(g, lam, lam).scale("1/2") - phi


def matrix_of(g: LieAlgebra, c: SparseTensor):
    return linalg.from_rows(g.field, [[c[(i, j)] for j in range(g.dim)] for i in range(g.dim)])


def quasitriangular_check(g: LieAlgebra, r: SparseTensor) -> CheckReport:
    r = as_two_tensor(g, r)
    cy = cybe(g, r)
    parts = split_r(g, r)
    details = {"cybe_zero": cy.is_zero(), "invariant": parts.invariant,
               "factorizable": bool(linalg.det(matrix_of(g, parts.c))) if g.dim else False,
               "lambda_form": None, "criteria_agree": None, "kappa_identity": None}
    residuals = {"cybe": cy, "invariance": parts.invariance}
    if parts.invariant:
        phi = casimir_to_phi(g, parts.c)
        lf = lambda_form_residual(g, parts.lam, phi)
        residuals["lambda_form"] = lf
        details["lambda_form"] = lf.is_zero()
        details["criteria_agree"] = details["lambda_form"] == details["cybe_zero"]
        details["kappa_identity"] = cy == embed_wedge(lf).scale(g.field.convert(LEDGER.kappa))
        if not details["criteria_agree"]:
            log.warning("CYBE and lambda-form criteria disagree on %s", g.name)
    passed = details["cybe_zero"] and parts.invariant
    witness = None
    if not passed:
        if not cy.is_zero():
            key, value = cy.items()[0]
            witness = {"identity": "cybe", "component": [g.labels[i] for i in key], "value": g.field.format(value)}
        else:
            witness = {"identity": "invariance", "terms": len(parts.invariance)}
    return CheckReport("quasitriangular", passed, witness=witness, residuals=residuals, details=details)


def rmatrix_bialgebra(g: LieAlgebra, r: SparseTensor) -> QuasiLieBialgebra:
    """twist((0, phi_c), lam) for r = 2 lam + c; a Lie bialgebra when r solves the CYBE."""
    parts = split_r(g, r)
    if not parts.invariant:
        raise PreconditionError("The symmetric part of r is not invariant")
    base = make_qlb(g, None, casimir_to_phi(g, parts.c), {"casimir_of": "r"})
    out = twist(base, parts.lam)
    out.provenance = {"r_matrix": as_two_tensor(g, r).to_literal(g.labels), "lie_bialgebra": out.phi.is_zero()}
    return out
