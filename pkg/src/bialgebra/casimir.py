# src/bialgebra/casimir.py
# Associators induced by an invariant symmetric tensor c: on g itself
# (phi = scale * [c12, c23]) and on a subalgebra h for which c is coisotropic.

import logging
from typing import Dict, List, Tuple

from src.algebra.errors import PreconditionError
from src.algebra.ledger import LEDGER
from src.algebra.reports import CheckReport, ReportGroup
from src.algebra.tensors import (Key, SparseTensor, alt, antisymmetric_part_as_multivector, cochain_sig, sym_sig,
                                 tensor_sig)
from src.bialgebra.qlb import DELTA_SIG, QuasiLieBialgebra, check_qlb, make_qlb
from src.lie.algebra import LieAlgebra
from src.lie.cochains import ModuleSpec, d_of
from src.lie.split import SplitSubalgebra

log = logging.getLogger("qlb")

SYM2 = ModuleSpec("sym", 2)

# the five split identities that make up invariance of c when R = 0
INVARIANCE_BLOCKS = ("ad_h:hh", "ad_h:hm", "ad_m:hh", "ad_m:hm", "ad_m:mm")


def as_symmetric(g: LieAlgebra, c: SparseTensor) -> SparseTensor:
    if c.field is not g.field:
        c = c.over(g.field)
    return c if c.signature == sym_sig(2) else c.regroup(sym_sig(2))


def invariance_residual(g: LieAlgebra, c: SparseTensor) -> SparseTensor:
    """d c in C^1(g, Sym^2 g); zero iff c is invariant."""
    return d_of(g, as_symmetric(g, c), SYM2)


def casimir_bracket(g: LieAlgebra, c: SparseTensor) -> SparseTensor:
    """[c12, c23] as a plain 3-tensor: T^{iml} = sum c^{ij} c^{kl} f^m_{jk}."""
    c = as_symmetric(g, c)
    rows: Dict[int, List[Tuple[int, object]]] = {}
    for (a, b), v in c.items():
        rows.setdefault(a, []).append((b, v))
        if a != b:
            rows.setdefault(b, []).append((a, v))
    zero = g.field.zero
    acc: Dict[Key, object] = {}
    for i, row_i in rows.items():
        for j, cij in row_i:
            for k, row_k in rows.items():
                out = g.bracket_basis(j, k)
                if not out:
                    continue
                for l, ckl in row_k:
                    for m, f in out.items():
                        key = (i, m, l)
                        acc[key] = acc.get(key, zero) + cij * ckl * f
    return SparseTensor(g.dim, tensor_sig(3), g.field, acc)


def casimir_to_phi(g: LieAlgebra, c: SparseTensor) -> SparseTensor:
    res = invariance_residual(g, c)
    if not res.is_zero():
        key, value = res.items()[0]
        raise PreconditionError(
            f"Casimir tensor is not invariant: d c has {len(res)} nonzero components, e.g. "
            f"({', '.join(g.labels[i] for i in key)}) = {g.field.format(value)}")
    phi = antisymmetric_part_as_multivector(casimir_bracket(g, c))
    return phi.scale(g.field.convert(LEDGER.associator_factor))


# --- coisotropic reduction ----------------------------------------------------

def casimir_blocks(s: SplitSubalgebra, c: SparseTensor):
    """P (h,h), Q (h,m) and R (m,m) pieces of c in local indices."""
    H, M = s.h_idx, s.m_idx
    c = as_symmetric(s.g, c)
    P = {(i, j): c[(H[i], H[j])] for i in range(len(H)) for j in range(len(H)) if c[(H[i], H[j])]}
    Q = {(i, a): c[(H[i], M[a])] for i in range(len(H)) for a in range(len(M)) if c[(H[i], M[a])]}
    R = {(a, b): c[(M[a], M[b])] for a in range(len(M)) for b in range(len(M)) if c[(M[a], M[b])]}
    return P, Q, R


def coisotropic_casimir_check(g: LieAlgebra, s: SplitSubalgebra, c: SparseTensor) -> CheckReport:
    """Passes iff the image of c in Sym^2(g/h) vanishes."""
    c = as_symmetric(g, c)
    _, _, R = casimir_blocks(s, c)
    M = s.m_idx
    residual = SparseTensor.project(g.dim, sym_sig(2), g.field, {(M[a], M[b]): v for (a, b), v in R.items()})
    witness = None
    if R:
        a, b = min(R)
        witness = {"component": [g.labels[M[a]], g.labels[M[b]]], "value": g.field.format(R[(a, b)])}
    return CheckReport("coisotropic", not R, witness=witness, residuals={"quotient": residual},
                       details={"invariant": invariance_residual(g, c).is_zero(), "h": s.h_labels, "m": s.m_labels})


def _full_to_delta(nh: int, field, full: Dict[Key, object]) -> SparseTensor:
    return SparseTensor.project(nh, DELTA_SIG, field, full)


def _full_to_phi(nh: int, field, full: Dict[Key, object]) -> SparseTensor:
    """Antisymmetrize a 3-tensor (with weight 1/6 over S_3) and read it as a 3-vector."""
    flat = SparseTensor(nh, tensor_sig(3), field, full)
    return antisymmetric_part_as_multivector(alt(flat).scale(field.convert("1/6")))


def induced_structure(s: SplitSubalgebra, c: SparseTensor):
    """(delta, phi from the index formula, phi from the morphism equation) on h.

    delta_p^{si} = 1/2 (A^i_pa Q^{sa} - A^s_pa Q^{ia}).
    """
    F = s.g.field
    nh, nm = s.dim_h, s.dim_m
    P, Q, _ = casimir_blocks(s, c)
    half, quarter = F.convert("1/2"), F.convert("1/4")
    zero = F.zero

    def add(acc, key, v):
        if v:
            acc[key] = acc.get(key, zero) + v

    dfull: Dict[Key, object] = {}
    for (p, a), out in s.A.items():
        for i, A in out.items():
            for sidx in range(nh):
                q = Q.get((sidx, a))
                if q:
                    add(dfull, (p, sidx, i), half * A * q)
                    add(dfull, (p, i, sidx), -half * A * q)
    delta = _full_to_delta(nh, F, dfull)

    def dval(j, r, t):
        return delta[(j, r, t)]

    derived: Dict[Key, object] = {}
    index: Dict[Key, object] = {}
    for i in range(nh):
        for r in range(nh):
            for t in range(nh):
                if r == t:
                    continue
                v = zero
                for (p, q), out in s.f.items():
                    fi = out.get(i)
                    if fi and P.get((p, r)) and P.get((q, t)):
                        v += quarter * fi * P[(p, r)] * P[(q, t)]
                w = v
                for (p, a), out in s.A.items():
                    Ai = out.get(i)
                    if not Ai:
                        continue
                    v += half * Ai * (P.get((p, r), zero) * Q.get((t, a), zero)
                                      - P.get((p, t), zero) * Q.get((r, a), zero))
                for (a, b), out in s.C.items():
                    Ci = out.get(i)
                    if Ci:
                        v += Ci * Q.get((r, a), zero) * Q.get((t, b), zero)
                for j in range(nh):
                    if P.get((i, j)):
                        v -= half * P[(i, j)] * dval(j, r, t)
                add(derived, (i, r, t), v)
                # index formula: C pairs two quotient slots to h, A an h slot and a quotient slot
                for a in range(nm):
                    qa = Q.get((i, a))
                    if not qa:
                        continue
                    for b in range(nm):
                        w += half * qa * (s.const("C", t, a, b) * Q.get((r, b), zero)
                                          - s.const("C", r, a, b) * Q.get((t, b), zero))
                for a in range(nh):
                    pa = P.get((i, a))
                    if not pa:
                        continue
                    for b in range(nm):
                        w += quarter * pa * (s.const("A", t, a, b) * Q.get((r, b), zero)
                                             - s.const("A", r, a, b) * Q.get((t, b), zero))
                add(index, (i, r, t), w)
    return delta, _full_to_phi(nh, F, index), _full_to_phi(nh, F, derived)


def invariance_blocks(s: SplitSubalgebra, c: SparseTensor) -> Dict[str, Dict[Key, object]]:
    """(ad_z c)^{XY} split by where z, X and Y live; every key of each block is present.

    Keys are global (z, X, Y). ad_h:mm is included for the comparison with d c
    but vanishes identically once c is coisotropic.
    """
    g, F = s.g, s.g.field
    H, M = s.h_idx, s.m_idx
    nh, nm = s.dim_h, s.dim_m
    P, Q, R = casimir_blocks(s, c)
    zero = F.zero
    k_ = s.const
    Pg = lambda i, j: P.get((i, j), zero)
    Qg = lambda i, a: Q.get((i, a), zero)
    Rg = lambda a, b: R.get((a, b), zero)
    out: Dict[str, Dict[Key, object]] = {n: {} for n in INVARIANCE_BLOCKS + ("ad_h:mm",)}

    def sum_h(fn):
        return sum((fn(k) for k in range(nh)), zero)

    def sum_m(fn):
        return sum((fn(a) for a in range(nm)), zero)

    for p in range(nh):
        for i in range(nh):
            for j in range(nh):
                v = (sum_h(lambda k: k_("f", i, p, k) * Pg(k, j)) + sum_m(lambda a: k_("A", i, p, a) * Qg(j, a))
                     + sum_h(lambda k: k_("f", j, p, k) * Pg(i, k)) + sum_m(lambda a: k_("A", j, p, a) * Qg(i, a)))
                out["ad_h:hh"][(H[p], H[i], H[j])] = v
            for b in range(nm):
                v = (sum_h(lambda k: k_("f", i, p, k) * Qg(k, b)) + sum_m(lambda a: k_("A", i, p, a) * Rg(a, b))
                     + sum_m(lambda a: k_("B", b, p, a) * Qg(i, a)))
                out["ad_h:hm"][(H[p], H[i], M[b])] = v
        for a in range(nm):
            for b in range(nm):
                v = sum_m(lambda d: k_("B", a, p, d) * Rg(d, b) + k_("B", b, p, d) * Rg(a, d))
                out["ad_h:mm"][(H[p], M[a], M[b])] = v
    for d in range(nm):
        for i in range(nh):
            for j in range(nh):
                v = (sum_h(lambda k: -k_("A", i, k, d) * Pg(k, j)) + sum_m(lambda e: k_("C", i, d, e) * Qg(j, e))
                     + sum_h(lambda k: -k_("A", j, k, d) * Pg(k, i)) + sum_m(lambda e: k_("C", j, d, e) * Qg(i, e)))
                out["ad_m:hh"][(M[d], H[i], H[j])] = v
            for b in range(nm):
                v = (sum_h(lambda k: -k_("A", i, k, d) * Qg(k, b)) + sum_m(lambda e: k_("C", i, d, e) * Rg(e, b))
                     - sum_h(lambda k: k_("B", b, k, d) * Pg(i, k)) + sum_m(lambda e: k_("D", b, d, e) * Qg(i, e)))
                out["ad_m:hm"][(M[d], H[i], M[b])] = v
        for a in range(nm):
            for b in range(nm):
                v = (sum_h(lambda k: -k_("B", a, k, d) * Qg(k, b)) + sum_m(lambda e: k_("D", a, d, e) * Rg(e, b))
                     + sum_h(lambda k: -k_("B", b, k, d) * Qg(k, a)) + sum_m(lambda e: k_("D", b, d, e) * Rg(e, a)))
                out["ad_m:mm"][(M[d], M[a], M[b])] = v
    return out


def _block_tensor(g: LieAlgebra, values: Dict[Key, object]) -> SparseTensor:
    return SparseTensor(g.dim, cochain_sig(1, tensor_sig(2)), g.field, values)


def _f_morphism(s: SplitSubalgebra, c: SparseTensor, q: QuasiLieBialgebra) -> CheckReport:
    """F(xi^i) = xi^i + 1/2 P^{ij} E_j, F(eta^a) = Q^{ja} E_j must intertwine the differentials."""
    g = s.g
    P, Q, _ = casimir_blocks(s, c)
    S, T = g.polyvectors(1), q.g.polyvectors(1)
    half = g.field.convert("1/2")
    images = {}
    for i, u in enumerate(s.h_idx):
        img = T.xi(i)
        for j in range(s.dim_h):
            if P.get((i, j)):
                img = img + T.e(j).scale(half * P[(i, j)])
        images[u] = img
    for a, u in enumerate(s.m_idx):
        img = T.zero()
        for j in range(s.dim_h):
            if Q.get((j, a)):
                img = img + T.e(j).scale(Q[(j, a)])
        images[u] = img
    total = T.mu + q.element()
    for u in list(s.h_idx) + list(s.m_idx):
        lhs = S.substitute_xi(S.differential(S.xi(u)), images, T)
        rhs = T.bracket(total, images[u])
        diff = lhs - rhs
        if not diff.is_zero():
            return CheckReport("f_morphism", False, witness={"generator": g.labels[u], "terms": len(diff.terms),
                                                             "residual": repr(diff)})
    return CheckReport("f_morphism", True, details={"generators": g.dim})


def _select_associator(s: SplitSubalgebra, c: SparseTensor):
    """Tries the associator formulas in ledger order; the first that validates wins."""
    delta, phi_index, phi_derived = induced_structure(s, c)
    hs = s.subalgebra()
    tried = []
    q = morph = None
    candidates = {"index": phi_index, "derived": phi_derived}
    for rule in LEDGER.associator_rules:
        phi = candidates[rule]
        q = make_qlb(hs, delta, phi, {"induced_from": s.g.name, "h": s.h_labels, "m": s.m_labels,
                                      "associator_rule": rule})
        morph = _f_morphism(s, c, q)
        ok = morph.passed and check_qlb(q).passed
        tried.append(rule)
        if ok:
            q.provenance["validated"] = True
            q.provenance["rules_tried"] = tried
            log.info("coisotropic associator on %s accepted with the %s rule", hs.name, rule)
            return q, morph
        log.info("coisotropic associator rule %s rejected on %s", rule, hs.name)
    q.provenance["validated"] = False
    q.provenance["rules_tried"] = tried
    log.warning("no associator rule validated for %s", hs.name)
    return q, morph


def induce_from_coisotropic(g: LieAlgebra, s: SplitSubalgebra, c: SparseTensor) -> QuasiLieBialgebra:
    c = as_symmetric(g, c)
    res = invariance_residual(g, c)
    if not res.is_zero():
        raise PreconditionError(f"Casimir tensor is not invariant ({len(res)} nonzero components of d c)")
    coiso = coisotropic_casimir_check(g, s, c)
    if not coiso.passed:
        raise PreconditionError(f"c is not coisotropic for h = {s.h_labels}: component "
                                f"{coiso.witness['component']} survives in Sym^2(g/h)")
    q, _ = _select_associator(s, c)
    return q


def verify_coisotropic_morphism(g: LieAlgebra, s: SplitSubalgebra, c: SparseTensor) -> ReportGroup:
    c = as_symmetric(g, c)
    group = ReportGroup("coisotropic_morphism", details={"h": s.h_labels, "m": s.m_labels})
    blocks = invariance_blocks(s, c)

    residuals = {name: _block_tensor(g, blocks[name]) for name in INVARIANCE_BLOCKS}
    failing = [name for name in INVARIANCE_BLOCKS if not residuals[name].is_zero()]
    witness = None
    if failing:
        key, value = residuals[failing[0]].items()[0]
        witness = {"identity": failing[0], "component": [g.labels[i] for i in key], "value": g.field.format(value)}
    group.add(CheckReport("invariance_identities", not failing, witness=witness, residuals=residuals,
                          details={"failing": failing}))

    dc = invariance_residual(g, c)
    mismatch = None
    covered = set()
    for name, values in blocks.items():
        for (z, x, y), v in values.items():
            covered.add((z,) + tuple(sorted((x, y))))
            if v != -dc[(z, x, y)]:
                mismatch = mismatch or {"identity": name, "component": [g.labels[z], g.labels[x], g.labels[y]]}
    uncovered = [k for k in dc.keys() if k not in covered]
    if uncovered and mismatch is None:
        mismatch = {"identity": "uncovered", "component": [g.labels[i] for i in uncovered[0]]}
    group.add(CheckReport("invariance_equivalence", mismatch is None, witness=mismatch,
                          residuals={"dc": dc}, details={"invariant": dc.is_zero()}))

    _, morph = _select_associator(s, c)
    morph.details["coisotropic"] = coisotropic_casimir_check(g, s, c).passed
    group.add(morph)
    return group
