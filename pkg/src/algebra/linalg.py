# src/algebra/linalg.py
# Exact linear algebra over a ScalarField through sympy's DomainMatrix.
# Elimination is fraction-free (rref_den with method="FF").

from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra.errors import InputError
from src.algebra.scalars import ScalarField

Vector = List[object]


def from_columns(field: ScalarField, nrows: int, columns: Sequence[Dict[int, object]]) -> DomainMatrix:
    """Matrix whose j-th column is the sparse vector columns[j]."""
    dod: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                dod.setdefault(i, {})[j] = v
    return DomainMatrix.from_dod(dod, (nrows, len(columns)), field.domain)


def from_rows(field: ScalarField, rows: Sequence[Sequence[object]], ncols: Optional[int] = None) -> DomainMatrix:
    n = len(rows[0]) if rows else (ncols or 0)
    dod = {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(rows)}
    return DomainMatrix.from_dod({i: r for i, r in dod.items() if r}, (len(rows), n), field.domain)


def _rref(M: DomainMatrix) -> Tuple[Dict[int, Dict[int, object]], object, Tuple[int, ...]]:
    R, den, pivots = M.rref_den(method="FF")
    return R.to_dod(), den, tuple(pivots)


def rank(M: DomainMatrix) -> int:
    m, n = M.shape
    if m == 0 or n == 0:
        return 0
    return len(_rref(M)[2])


def nullspace(M: DomainMatrix, field: ScalarField) -> List[Vector]:
    """Kernel basis; each vector scaled so its first nonzero entry is 1."""
    m, n = M.shape
    zero, one = field.zero, field.one
    if n == 0:
        return []
    if m == 0:
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    R, den, pivots = _rref(M)
    pivot_row = {p: i for i, p in enumerate(pivots)}
    basis = []
    for free in range(n):
        if free in pivot_row:
            continue
        v = [zero] * n
        v[free] = den
        for p, i in pivot_row.items():
            entry = R.get(i, {}).get(free)
            if entry:
                v[p] = -entry
        basis.append(_normalize(v))
    return basis


def _normalize(v: Vector) -> Vector:
    lead = next(x for x in v if x)
    return [x / lead if x else x for x in v]


def solve(M: DomainMatrix, rhs: Sequence[object], field: ScalarField) -> Optional[Vector]:
    """One solution of M x = rhs (free variables set to zero), or None when inconsistent."""
    m, n = M.shape
    if len(rhs) != m:
        raise InputError(f"Right-hand side has length {len(rhs)}, expected {m}")
    zero = field.zero
    if m == 0:
        return [zero] * n
    column = DomainMatrix.from_dod({i: {0: v} for i, v in enumerate(rhs) if v}, (m, 1), field.domain)
    aug = M.hstack(column)
    R, den, pivots = _rref(aug)
    if n in pivots:
        return None
    x = [zero] * n
    for i, p in enumerate(pivots):
        entry = R.get(i, {}).get(n)
        if entry:
            x[p] = entry / den
    return x


def det(M: DomainMatrix):
    m, n = M.shape
    if m != n:
        raise InputError(f"Determinant of a non-square {m}x{n} matrix")
    if m == 0:
        return M.domain.one
    return M.det()


def inverse(M: DomainMatrix, field: ScalarField) -> List[Vector]:
    n = M.shape[0]
    if not det(M):
        raise InputError("Matrix is singular")
    return M.to_field().inv().to_list() if n else []
