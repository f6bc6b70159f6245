# src/lie/forms.py
# Invariant bilinear forms and the Casimir tensor they determine.

from typing import List, Sequence

from src.algebra import linalg
from src.algebra.errors import InputError
from src.algebra.tensors import SparseTensor, sym_sig
from src.lie.algebra import LieAlgebra

Matrix = List[List[object]]


def killing_form(g: LieAlgebra) -> Matrix:
    """kappa(e_i, e_j) = tr(ad e_i ad e_j)."""
    n = g.dim
    zero = g.field.zero
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = zero
            for k in range(n):
                # (ad_i ad_j)(e_k) = [e_i, [e_j, e_k]]; take its e_k component
                for l, a in g.bracket_basis(j, k).items():
                    b = g.constant(k, i, l)
                    if b:
                        acc += a * b
            out[i][j] = out[j][i] = acc
    return out


def trace_form(g: LieAlgebra) -> Matrix:
    """tr(XY) in the defining representation; needs the matrices an sl_n factory records."""
    mats = g.meta.get("matrices")
    if not mats:
        raise InputError(f"{g.name} carries no defining representation; use killing_form")
    n = g.dim
    out = [[g.field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a, b = mats[i], mats[j]
            tr = sum(a[r][s] * b[s][r] for r in range(len(a)) for s in range(len(a)))
            out[i][j] = out[j][i] = g.field.convert(int(tr))
    return out


def pairing_matrix(g: LieAlgebra, rows: Sequence[Sequence[object]]) -> Matrix:
    if len(rows) != g.dim or any(len(r) != g.dim for r in rows):
        raise InputError(f"Pairing must be a {g.dim}x{g.dim} matrix")
    return [[g.field.convert(v) for v in r] for r in rows]


def casimir_from_pairing(g: LieAlgebra, pairing: Sequence[Sequence[object]]) -> SparseTensor:
    """c^{ij} = (B^{-1})_{ij}, a symmetric 2-tensor; invariant whenever B is."""
    B = pairing_matrix(g, pairing)
    for i in range(g.dim):
        for j in range(i):
            if B[i][j] != B[j][i]:
                raise InputError(f"Pairing is not symmetric at ({g.labels[j]}, {g.labels[i]})")
    inv = linalg.inverse(linalg.from_rows(g.field, B), g.field)
    data = {(i, j): inv[i][j] for i in range(g.dim) for j in range(i, g.dim) if inv[i][j]}
    return SparseTensor(g.dim, sym_sig(2), g.field, data)
