# src/lie/split.py
# A subalgebra h of g together with a chosen complement m (standing in for g/h),
# and the bracket blocks in the split basis:
#   [e_p, e_q] = f^k_pq e_k
#   [e_p, m_a] = A^k_pa e_k + B^b_pa m_b
#   [m_a, m_b] = C^k_ab e_k + D^c_ab m_c
# All block indices are local (position inside h or inside m).

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.algebra.errors import InputError, PreconditionError
from src.lie.algebra import LieAlgebra

log = logging.getLogger("lie")

Block = Dict[Tuple[int, int], Dict[int, object]]


@dataclass
class SplitSubalgebra:
    g: LieAlgebra
    h_idx: Tuple[int, ...]
    m_idx: Tuple[int, ...]
    f: Block = field(default_factory=dict)
    A: Block = field(default_factory=dict)
    B: Block = field(default_factory=dict)
    C: Block = field(default_factory=dict)
    D: Block = field(default_factory=dict)

    @property
    def dim_h(self) -> int:
        return len(self.h_idx)

    @property
    def dim_m(self) -> int:
        return len(self.m_idx)

    @property
    def h_labels(self) -> List[str]:
        return [self.g.labels[i] for i in self.h_idx]

    @property
    def m_labels(self) -> List[str]:
        return [self.g.labels[i] for i in self.m_idx]

    def const(self, block: str, out: int, i: int, j: int):
        return getattr(self, block).get((i, j), {}).get(out, self.g.field.zero)

    def subalgebra(self) -> LieAlgebra:
        """h as a Lie algebra in its own right, labels inherited from g."""
        return LieAlgebra(f"{self.g.name}|{','.join(self.h_labels)}", self.h_labels, self.g.field,
                          {p: dict(v) for p, v in self.f.items() if p[0] < p[1]})

    def reassemble(self) -> Dict[Tuple[int, int], Dict[int, object]]:
        """Full ambient table rebuilt from the blocks, in global indices."""
        H, M = self.h_idx, self.m_idx
        zero = self.g.field.zero
        table: Dict[Tuple[int, int], Dict[int, object]] = {}

        def put(i, j, parts):
            vec: Dict[int, object] = {}
            for index_map, out in parts:
                for k, v in out.items():
                    vec[index_map[k]] = vec.get(index_map[k], zero) + v
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                table[(i, j)] = vec
                table[(j, i)] = {k: -v for k, v in vec.items()}

        for p in range(len(H)):
            for q in range(p + 1, len(H)):
                put(H[p], H[q], [(H, self.f.get((p, q), {}))])
            for a in range(len(M)):
                put(H[p], M[a], [(H, self.A.get((p, a), {})), (M, self.B.get((p, a), {}))])
        for a in range(len(M)):
            for b in range(a + 1, len(M)):
                put(M[a], M[b], [(H, self.C.get((a, b), {})), (M, self.D.get((a, b), {}))])
        return table


def _resolve(g: LieAlgebra, items: Sequence[Union[int, str]]) -> Tuple[int, ...]:
    out = []
    for it in items:
        if isinstance(it, str):
            out.append(g.index(it))
        else:
            if not 0 <= int(it) < g.dim:
                raise InputError(f"Basis index {it} out of range for {g.name}")
            out.append(int(it))
    return tuple(out)


def split_subalgebra(g: LieAlgebra, h: Sequence[Union[int, str]],
                     m: Optional[Sequence[Union[int, str]]] = None) -> SplitSubalgebra:
    h_idx = _resolve(g, h)
    m_idx = _resolve(g, m) if m is not None else tuple(i for i in range(g.dim) if i not in h_idx)
    if len(set(h_idx)) != len(h_idx) or len(set(m_idx)) != len(m_idx):
        raise InputError("Repeated basis element in the split")
    if sorted(h_idx + m_idx) != list(range(g.dim)):
        raise InputError(f"h {list(h_idx)} and m {list(m_idx)} do not partition the basis of {g.name}")
    h_local = {i: p for p, i in enumerate(h_idx)}
    m_local = {i: a for a, i in enumerate(m_idx)}

    def split_vec(vec):
        hv = {h_local[k]: v for k, v in vec.items() if k in h_local}
        mv = {m_local[k]: v for k, v in vec.items() if k in m_local}
        return hv, mv

    s = SplitSubalgebra(g, h_idx, m_idx)
    for p, i in enumerate(h_idx):
        for q, j in enumerate(h_idx):
            hv, mv = split_vec(g.bracket_basis(i, j))
            if mv:
                raise PreconditionError(
                    f"h is not a subalgebra: [{g.labels[i]}, {g.labels[j]}] has a component along "
                    f"{', '.join(g.labels[m_idx[a]] for a in sorted(mv))}")
            if hv:
                s.f[(p, q)] = hv
        for a, j in enumerate(m_idx):
            hv, mv = split_vec(g.bracket_basis(i, j))
            if hv:
                s.A[(p, a)] = hv
            if mv:
                s.B[(p, a)] = mv
    for a, i in enumerate(m_idx):
        for b, j in enumerate(m_idx):
            hv, mv = split_vec(g.bracket_basis(i, j))
            if hv:
                s.C[(a, b)] = hv
            if mv:
                s.D[(a, b)] = mv
    if s.reassemble() != g.table():
        raise InputError(f"Split blocks of {g.name} do not reproduce its bracket table")
    log.debug("split %s: h=%s m=%s", g.name, s.h_labels, s.m_labels)
    return s
