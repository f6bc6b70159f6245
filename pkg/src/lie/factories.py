# src/lie/factories.py
# Shipped Lie algebras: abelian(n), heisenberg, sl_n from matrix units and the
# A_{n-1} Cartan matrix, and direct sums.

from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.errors import InputError
from src.algebra.scalars import RATIONALS
from src.lie.algebra import LieAlgebra


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(f"abelian{n}", [f"a{i + 1}" for i in range(n)], RATIONALS, {})


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets("heisenberg", ["x", "y", "z"], RATIONALS, [("x", "y", [("z", 1)])])


def cartan_matrix(rank: int) -> np.ndarray:
    """Cartan matrix of type A_rank."""
    a = 2 * np.eye(rank, dtype=np.int64)
    idx = np.arange(rank - 1)
    a[idx, idx + 1] = -1
    a[idx + 1, idx] = -1
    return a


def _positive_roots(n: int) -> List[Tuple[int, int]]:
    """Matrix positions (i, j), i < j, ordered by height then row."""
    return sorted(((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p[0]))


def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    m[i, j] = 1
    return m


def sl(n: int) -> LieAlgebra:
    """sl_n in the Chevalley basis: positive root vectors, negative ones, then h_i = E_ii - E_i+1,i+1."""
    if n < 2:
        raise InputError(f"sl_n needs n >= 2, got {n}")
    roots = _positive_roots(n)
    if n == 2:
        pos_labels, neg_labels, h_labels = ["e"], ["f"], ["h"]
    else:
        pos_labels = [f"e{k + 1}" for k in range(len(roots))]
        neg_labels = [f"f{k + 1}" for k in range(len(roots))]
        h_labels = [f"h{k + 1}" for k in range(n - 1)]
    mats = [_unit(n, i, j) for i, j in roots] + [_unit(n, j, i) for i, j in roots]
    mats += [_unit(n, k, k) - _unit(n, k + 1, k + 1) for k in range(n - 1)]
    labels = pos_labels + neg_labels + h_labels
    position = {}
    for idx, (i, j) in enumerate(roots):
        position[(i, j)] = idx
        position[(j, i)] = len(roots) + idx
    h0 = 2 * len(roots)

    def decompose(m: np.ndarray) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (i, j), idx in position.items():
            if m[i, j]:
                out[idx] = int(m[i, j])
        # diag(d) = sum_k c_k h_k with c_k = d_1 + ... + d_k
        partial = np.cumsum(np.diag(m))
        if partial[-1] != 0:
            raise InputError("Bracket left the traceless matrices")
        for k in range(n - 1):
            if partial[k]:
                out[h0 + k] = int(partial[k])
        return out

    table = {}
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            out = decompose(comm)
            if out:
                table[(a, b)] = out

    meta = {
        "family": "sl",
        "n": n,
        "positive": list(range(len(roots))),
        "negative": list(range(len(roots), h0)),
        "cartan": list(range(h0, h0 + n - 1)),
        "simple": [position[(k, k + 1)] for k in range(n - 1)],
        "matrices": [m.tolist() for m in mats],
    }
    g = LieAlgebra(f"sl{n}", labels, RATIONALS, table, meta)
    _check_cartan(g, cartan_matrix(n - 1))
    return g


def _check_cartan(g: LieAlgebra, a: np.ndarray) -> None:
    """[h_i, e_j] = a_ij e_j on simple root vectors."""
    for i, h in enumerate(g.meta["cartan"]):
        for j, e in enumerate(g.meta["simple"]):
            got = g.bracket_basis(h, e)
            want = {e: g.field.convert(int(a[i, j]))} if a[i, j] else {}
            if got != want:
                raise InputError(f"Chevalley basis of {g.name} disagrees with its Cartan matrix at ({i}, {j})")


def sl2() -> LieAlgebra:
    return sl(2)


def sl3() -> LieAlgebra:
    return sl(3)


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    if a.field is not b.field:
        raise InputError("direct_sum needs algebras over the same field")
    if set(a.labels) & set(b.labels):
        labels = [f"{l}_1" for l in a.labels] + [f"{l}_2" for l in b.labels]
    else:
        labels = list(a.labels) + list(b.labels)
    shift = a.dim
    table = dict(a.table())
    for (i, j), out in b.table().items():
        table[(i + shift, j + shift)] = {k + shift: v for k, v in out.items()}
    return LieAlgebra(name or f"{a.name}+{b.name}", labels, a.field, table, {"summands": [a.dim, b.dim]})


FACTORIES = {
    "sl2": sl2,
    "sl3": sl3,
    "heisenberg": heisenberg,
    "abelian2": lambda: abelian(2),
    "abelian4": lambda: abelian(4),
}
