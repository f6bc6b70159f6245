# src/lie/cochains.py
# Chevalley-Eilenberg cochains of g with coefficients in tensor constructions
# on the adjoint: trivial, adjoint, wedge^p, Sym^p and plain g^(x)p.
#
# Sign: minus the standard alternating sum, so (dx)(y) = -[y, x] on C^0 and
# ker(d | C^0) is exactly the invariants. This is the differential {mu, -} of
# the polyvector algebra, written directly for any module.

import logging
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, List, Optional, Tuple

from src.algebra import linalg
from src.algebra.errors import InputError
from src.algebra.tensors import (Key, Signature, SparseTensor, _group_orbit, _sort_sign,
                                 cochain_sig, sym_sig, tensor_sig, wedge_sig)
from src.lie.algebra import LieAlgebra

log = logging.getLogger("lie")


@dataclass(frozen=True)
class ModuleSpec:
    kind: str  # trivial | adjoint | wedge | sym | tensor
    power: int = 0

    @classmethod
    def parse(cls, text: str) -> "ModuleSpec":
        t = text.strip().lower()
        if t in ("trivial", "triv", "k"):
            return cls("trivial", 0)
        if t in ("adjoint", "g"):
            return cls("adjoint", 1)
        for kind in ("wedge", "sym", "tensor"):
            if t.startswith(kind) and t[len(kind):].isdigit():
                p = int(t[len(kind):])
                return cls(kind, p) if p > 0 else cls("trivial", 0)
        raise InputError(f"Unknown module {text!r}; use trivial, adjoint, wedgeP, symP or tensorP")

    @property
    def signature(self) -> Signature:
        if self.kind == "trivial":
            return ()
        if self.kind == "adjoint":
            return wedge_sig(1)
        if self.kind == "wedge":
            return wedge_sig(self.power)
        if self.kind == "sym":
            return sym_sig(self.power)
        if self.kind == "tensor":
            return tensor_sig(self.power)
        raise InputError(f"Unsupported module {self.kind!r}")

    @property
    def name(self) -> str:
        return self.kind if self.kind in ("trivial", "adjoint") else f"{self.kind}{self.power}"

    def basis_keys(self, dim: int) -> List[Key]:
        p = self.power
        if self.kind == "trivial":
            return [()]
        if self.kind == "adjoint":
            return [(i,) for i in range(dim)]
        if self.kind == "wedge":
            return list(combinations(range(dim), p))
        if self.kind == "sym":
            return list(combinations_with_replacement(range(dim), p))
        return list(product(range(dim), repeat=p))


@dataclass(frozen=True)
class CECochain:
    degree: int
    module: ModuleSpec
    tensor: SparseTensor

    def __post_init__(self):
        want = cochain_sig(self.degree, self.module.signature)
        if self.tensor.signature != want:
            raise InputError(f"Cochain tensor has the wrong slot signature for C^{self.degree}(g, {self.module.name})")

    def is_zero(self) -> bool:
        return self.tensor.is_zero()


def cochain(g: LieAlgebra, degree: int, module: ModuleSpec, tensor: SparseTensor) -> CECochain:
    if tensor.dim != g.dim:
        raise InputError(f"Cochain dimension {tensor.dim} does not match {g.name} (dim {g.dim})")
    want = cochain_sig(degree, module.signature)
    if tensor.signature != want:
        tensor = tensor.regroup(want)
    return CECochain(degree, module, tensor)


def _module_orbit(sig: Signature, key: Key):
    """Full component keys of a canonical module key, with signs."""
    options = []
    pos = 0
    for grp in sig:
        part = key[pos:pos + grp.size]
        options.append(list(_group_orbit(grp.kind, part)))
        pos += grp.size
    out = [(1, ())]
    for opts in options:
        out = [(s1 * s2, k1 + k2) for s1, k1 in out for s2, k2 in opts]
    return out


def act(g: LieAlgebra, z: int, t: SparseTensor, offset: int = 0) -> SparseTensor:
    """ad(e_z) acting on the slots of t from `offset` on, computed on components."""
    sig = t.signature
    head = sum(grp.size for grp in sig[:_group_at(sig, offset)])
    zero = g.field.zero
    full: Dict[Key, object] = {}
    for key, v in t.items():
        for sgn, mk in _module_orbit(sig[_group_at(sig, offset):], key[head:]):
            val = v if sgn > 0 else -v
            prefix = key[:head]
            for s, u in enumerate(mk):
                for x, f in g.bracket_basis(z, u).items():
                    nk = prefix + mk[:s] + (x,) + mk[s + 1:]
                    full[nk] = full.get(nk, zero) + f * val
    return SparseTensor.project(t.dim, sig, t.field, full)


def _group_at(sig: Signature, offset: int) -> int:
    pos = 0
    for gi, grp in enumerate(sig):
        if pos == offset:
            return gi
        pos += grp.size
    if pos == offset:
        return len(sig)
    raise InputError(f"Slot offset {offset} does not start a slot group")


def _d_exterior(g: LieAlgebra, J: Tuple[int, ...], cache: dict) -> Dict[Tuple[int, ...], object]:
    """d(xi^J) with d xi^k = sum_{a<b} f^k_ab xi^a xi^b, extended as an odd derivation."""
    if J in cache:
        return cache[J]
    zero = g.field.zero
    out: Dict[Tuple[int, ...], object] = {}
    for t, j in enumerate(J):
        for (a, b), vec in g.structure.items():
            f = vec.get(j)
            if not f:
                continue
            s, key = _sort_sign(J[:t] + (a, b) + J[t + 1:])
            if s == 0:
                continue
            val = f if (s * (-1) ** t) > 0 else -f
            out[key] = out.get(key, zero) + val
    cache[J] = {k: v for k, v in out.items() if v}
    return cache[J]


def ce_differential(g: LieAlgebra, x: CECochain) -> CECochain:
    k, module = x.degree, x.module
    msig = module.signature
    if x.tensor.field is not g.field:
        raise InputError("Cochain and Lie algebra live over different fields")
    zero = g.field.zero
    full: Dict[Key, object] = {}
    cache: dict = {}
    for key, v in x.tensor.items():
        J, K = key[:k], key[k:]
        for sgn, mk in _module_orbit(msig, K):
            val = v if sgn > 0 else -v
            for J2, c in _d_exterior(g, J, cache).items():
                nk = J2 + mk
                full[nk] = full.get(nk, zero) + c * val
            for c in range(g.dim):
                if c in J:
                    continue
                s, J2 = _sort_sign(J + (c,))
                # (-1)^|J| from passing xi^J, and the minus sign of -ad
                sign = -s * (-1) ** k
                for slot, u in enumerate(mk):
                    for X, f in g.bracket_basis(c, u).items():
                        nk = J2 + mk[:slot] + (X,) + mk[slot + 1:]
                        term = f * val
                        full[nk] = full.get(nk, zero) + (term if sign > 0 else -term)
    sig = cochain_sig(k + 1, msig)
    return CECochain(k + 1, module, SparseTensor.project(g.dim, sig, g.field, full))


def cochain_basis(g: LieAlgebra, module: ModuleSpec, degree: int) -> List[Key]:
    mkeys = module.basis_keys(g.dim)
    return [J + K for J in combinations(range(g.dim), degree) for K in mkeys]


def differential_matrix(g: LieAlgebra, module: ModuleSpec, degree: int):
    """Matrix of d: C^degree -> C^(degree+1) in the canonical cochain bases."""
    src = cochain_basis(g, module, degree)
    dst = {key: i for i, key in enumerate(cochain_basis(g, module, degree + 1))}
    sig = cochain_sig(degree, module.signature)
    columns = []
    for key in src:
        t = SparseTensor(g.dim, sig, g.field, {key: g.field.one})
        dx = ce_differential(g, CECochain(degree, module, t))
        columns.append({dst[k]: v for k, v in dx.tensor.items()})
    return linalg.from_columns(g.field, len(dst), columns)


def invariants(g: LieAlgebra, module: ModuleSpec) -> List[SparseTensor]:
    """Basis of M^g, solved from the stacked action matrices ad(e_z)."""
    keys = module.basis_keys(g.dim)
    pos = {k: i for i, k in enumerate(keys)}
    sig = module.signature
    columns = []
    for key in keys:
        t = SparseTensor(g.dim, sig, g.field, {key: g.field.one})
        col = {}
        for z in range(g.dim):
            for k2, v in act(g, z, t).items():
                col[z * len(keys) + pos[k2]] = v
        columns.append(col)
    M = linalg.from_columns(g.field, g.dim * len(keys), columns)
    basis = []
    for vec in linalg.nullspace(M, g.field):
        basis.append(SparseTensor(g.dim, sig, g.field, {keys[i]: v for i, v in enumerate(vec) if v}))
    log.debug("invariants of %s in %s: dimension %d", g.name, module.name, len(basis))
    return basis


def kernel_on_c0(g: LieAlgebra, module: ModuleSpec) -> List[SparseTensor]:
    """ker(d | C^0) through ce_differential; agrees with invariants()."""
    keys = module.basis_keys(g.dim)
    M = differential_matrix(g, module, 0)
    return [SparseTensor(g.dim, module.signature, g.field, {keys[i]: v for i, v in enumerate(vec) if v})
            for vec in linalg.nullspace(M, g.field)]


def cohomology_dim(g: LieAlgebra, module: ModuleSpec, degree: int) -> int:
    if degree < 0 or degree > g.dim:
        return 0
    size = len(cochain_basis(g, module, degree))
    rank_out = linalg.rank(differential_matrix(g, module, degree)) if degree < g.dim else 0
    rank_in = linalg.rank(differential_matrix(g, module, degree - 1)) if degree > 0 else 0
    return size - rank_out - rank_in


def coboundary_solve(g: LieAlgebra, delta: SparseTensor) -> Optional[SparseTensor]:
    """A bivector lam with d lam = delta, or None if delta is not exact."""
    module = ModuleSpec("wedge", 2)
    target = cochain(g, 1, module, delta)
    dst = {key: i for i, key in enumerate(cochain_basis(g, module, 1))}
    rhs = [g.field.zero] * len(dst)
    for key, v in target.tensor.items():
        rhs[dst[key]] = v
    sol = linalg.solve(differential_matrix(g, module, 0), rhs, g.field)
    if sol is None:
        return None
    keys = module.basis_keys(g.dim)
    return SparseTensor(g.dim, wedge_sig(2), g.field, {keys[i]: v for i, v in enumerate(sol) if v})


def d_of(g: LieAlgebra, t: SparseTensor, module: ModuleSpec) -> SparseTensor:
    """d on a C^0 element given as a plain module tensor; returns the C^1 tensor."""
    return ce_differential(g, cochain(g, 0, module, t)).tensor
