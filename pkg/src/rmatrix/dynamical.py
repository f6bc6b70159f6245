# src/rmatrix/dynamical.py
# Dynamical r-matrices r: h* -> g (x) g with rational coefficients in one
# variable per basis element of h, and the classical dynamical Yang-Baxter check.

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from src.algebra.errors import InputError, PreconditionError
from src.algebra.ledger import LEDGER
from src.algebra.reports import CheckReport, ReportGroup, error_report
from src.algebra.scalars import ScalarField
from src.algebra.tensors import (NONE, UP, Key, SlotGroup, SparseTensor, alt, embed_wedge, multivector,
                                 normalize_signature, wedge, wedge_sig)
from src.bialgebra.casimir import casimir_to_phi
from src.bialgebra.qlb import schouten
from src.lie.algebra import LieAlgebra
from src.lie.cochains import act
from src.lie.split import SplitSubalgebra
from src.rmatrix.classical import cybe, split_r

log = logging.getLogger("rmatrix")


def _divides_locus(den, locus: Sequence) -> bool:
    d = den
    changed = True
    while not d.is_ground and changed:
        changed = False
        for p in locus:
            common = d.gcd(p)
            if not common.is_ground:
                d = d.exquo(common)
                changed = True
    return d.is_ground


@dataclass
class DynamicalRMatrix:
    g: LieAlgebra
    split: SplitSubalgebra
    variables: List[str]
    r: SparseTensor
    locus: List = field(default_factory=list)

    @property
    def coeff_field(self) -> ScalarField:
        return self.r.field

    @property
    def algebra(self) -> LieAlgebra:
        """g over the coefficient field of r."""
        return self.g.over(self.coeff_field)

    def d_dr(self, t: SparseTensor) -> SparseTensor:
        return d_dr(self.split, self.variables, t)

    def at(self, point: Dict[str, object]) -> SparseTensor:
        """r evaluated at a point of h* away from the singular locus."""
        F = self.coeff_field
        return SparseTensor(self.g.dim, self.r.signature, self.g.field,
                            {k: self.g.field.convert(F.evaluate(v, point)) for k, v in self.r.items()})


def make_dynamical(g: LieAlgebra, s: SplitSubalgebra, variables: Sequence[str], r: SparseTensor,
                   locus: Optional[Sequence[str]] = None) -> DynamicalRMatrix:
    variables = list(variables)
    if s.g is not g:
        raise InputError("The splitting belongs to a different Lie algebra")
    if len(variables) != s.dim_h:
        raise InputError(f"Need one variable per basis element of h ({s.dim_h}), got {len(variables)}")
    if r.arity != 2 or r.dim != g.dim:
        raise InputError("A dynamical r-matrix is a 2-tensor over g")
    extra = set(r.field.variables) - set(variables)
    if extra:
        raise InputError(f"r uses variables {sorted(extra)} that are not coordinates on h*")
    F = ScalarField(variables).join(g.field)
    r = r.over(F).flatten()
    dens = [F.denominator(v) for _, v in r.items()]
    dens = [d for d in dens if d is not None and not d.is_ground]
    if locus is None or F.is_rational:
        polys = []
        for d in dens:
            if not any(d == p for p in polys):
                polys.append(d)
    else:
        polys = [F.parse(p).numer for p in locus]
        for d in dens:
            if not _divides_locus(d, polys):
                raise InputError(f"A coefficient of r has a pole off the declared locus: {d.as_expr()} = 0")
    return DynamicalRMatrix(g, s, variables, r, polys)


def d_dr(s: SplitSubalgebra, variables: Sequence[str], t: SparseTensor) -> SparseTensor:
    """sum_i h_i (x) d t / d x_i, with the h slot first."""
    if len(variables) != s.dim_h:
        raise InputError(f"Need {s.dim_h} variables, got {len(variables)}")
    F = t.field
    sig = normalize_signature([SlotGroup(NONE, 1, UP)] + list(t.flatten().signature))
    acc: Dict[Key, object] = {}
    for key, v in t.flatten().items():
        for i, var in enumerate(variables):
            if var not in F.variables:
                continue
            dv = F.derivative(v, var)
            if dv:
                acc[(s.h_idx[i],) + key] = dv
    return SparseTensor(t.dim, sig, F, acc)


def alt_ddr(t: SparseTensor) -> SparseTensor:
    """Alt of a 3-tensor whose first slot came from d_dr."""
    if t.arity != 3:
        raise InputError(f"alt_ddr expects a 3-tensor, got arity {t.arity}")
    return alt(t)


def cdybe(dr: DynamicalRMatrix) -> SparseTensor:
    """CYBE(r) + Alt(d_dR r)."""
    g = dr.algebra
    return cybe(g, dr.r) + alt_ddr(dr.d_dr(dr.r))


def lambda_form(dr: DynamicalRMatrix) -> SparseTensor:
    """1/2 [[lam, lam]] + s sum_i h_i ^ d lam / d x_i - phi_c for r = 2 lam + c, s the ledger alt sign."""
    g = dr.algebra
    parts = split_r(g, dr.r)
    phi = casimir_to_phi(g, parts.c)
    dl = dr.d_dr(parts.lam)
    hw = SparseTensor.zero(g.dim, wedge_sig(3), g.field)
    for i, hi in enumerate(dr.split.h_idx):
        piece = SparseTensor(g.dim, wedge_sig(2), g.field,
                             {k[1:]: v for k, v in dl.items() if k[0] == hi and k[1] < k[2]})
        hw = hw + wedge(multivector(g.dim, 1, g.field, [((hi,), 1)]), piece)
    return schouten(g, parts.lam, parts.lam).scale("1/2") + hw.scale(g.field.convert(LEDGER.alt_sign)) - phi


def equivariance_residuals(dr: DynamicalRMatrix) -> Dict[str, SparseTensor]:
    """(ad_z (x) 1 + 1 (x) ad_z) r + sum_{i,k} f^k_{z,h_i} x_k dr/dx_i for each z in h."""
    g, s, F = dr.algebra, dr.split, dr.coeff_field
    out = {}
    for p, z in enumerate(s.h_idx):
        res = act(g, z, dr.r)
        for i in range(s.dim_h):
            for k in range(s.dim_h):
                f = s.const("f", k, p, i)
                if f and dr.variables[k] in F.variables:
                    xk = F.gen(dr.variables[k])
                    dr_i = SparseTensor(g.dim, dr.r.signature, F,
                                        {key: F.derivative(v, dr.variables[i]) for key, v in dr.r.items()})
                    res = res + dr_i.scale(F.convert(f) * xk)
        out[g.labels[z]] = res
    return out


def _witness(g: LieAlgebra, name: str, t: SparseTensor) -> Optional[dict]:
    if t.is_zero():
        return None
    key, value = t.items()[0]
    return {"identity": name, "component": [g.labels[i] for i in key], "value": t.field.format(value)}


def dynamical_check(dr: DynamicalRMatrix) -> ReportGroup:
    g = dr.algebra
    report = ReportGroup("dynamical", details={"h": dr.split.h_labels, "variables": dr.variables,
                                               "locus": [str(p.as_expr()) for p in dr.locus]})

    eq = equivariance_residuals(dr)
    bad = next((z for z, t in eq.items() if not t.is_zero()), None)
    report.add(CheckReport("equivariance", bad is None, witness=_witness(g, "equivariance", eq[bad]) if bad else None,
                           residuals=eq))

    parts = split_r(g, dr.r)
    dc = dr.d_dr(parts.c)
    constant, invariant = dc.is_zero(), parts.invariant
    report.add(CheckReport("symmetric_part", constant and invariant,
                           witness=None if constant and invariant else
                           {"identity": "constant" if not constant else "invariance"},
                           residuals={"derivative": dc, "invariance": parts.invariance},
                           details={"constant": constant, "invariant": invariant}))

    cd = cdybe(dr)
    report.add(CheckReport("cdybe", cd.is_zero(), witness=_witness(g, "cdybe", cd), residuals={"cdybe": cd}))

    try:
        if not constant:
            raise PreconditionError("The symmetric part of r depends on the dynamical variables")
        lf = lambda_form(dr)
    except PreconditionError as e:
        report.add(error_report("lambda_form", str(e)))
    else:
        report.add(CheckReport("lambda_form", lf.is_zero(), witness=_witness(g, "lambda_form", lf),
                               residuals={"lambda_form": lf}))
        agree = cd.is_zero() == lf.is_zero()
        report.details["criteria_agree"] = agree
        report.details["kappa_identity"] = cd == embed_wedge(lf).scale(g.field.convert(LEDGER.kappa))
        if not agree:
            log.warning("CDYBE and lambda-form criteria disagree for r over %s", dr.g.name)
    return report
