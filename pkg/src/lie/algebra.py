# src/lie/algebra.py
# Lie algebras by exact structure constants, and the exhaustive Lie check.

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra.errors import InputError
from src.algebra.polyvectors import PolyvectorAlgebra
from src.algebra.reports import CheckReport
from src.algebra.scalars import RATIONALS, ScalarField
from src.algebra.tensors import DOWN, NONE, UP, SlotGroup, SparseTensor, normalize_signature

log = logging.getLogger("lie")

Vec = Dict[int, object]


class LieAlgebra:
    """Basis labels plus the full bracket table [e_i, e_j] = sum_k f^k_ij e_k.

    The table is kept exactly as given (the missing orientation of a pair is
    filled in by antisymmetry), so check_lie can see malformed input.
    """

    def __init__(self, name: str, labels: Sequence[str], field: ScalarField = RATIONALS,
                 table: Optional[Mapping[Tuple[int, int], Mapping[int, object]]] = None,
                 meta: Optional[dict] = None):
        labels = list(labels)
        if len(set(labels)) != len(labels):
            raise InputError(f"Duplicate basis labels in {labels}")
        self.name = name
        self.labels: Tuple[str, ...] = tuple(labels)
        self.field = field
        self.meta = dict(meta or {})
        self._index = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        full: Dict[Tuple[int, int], Vec] = {}
        for (i, j), out in (table or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"Bracket pair ({i}, {j}) out of range")
            vec = {k: field.convert(v) for k, v in out.items()}
            if any(not 0 <= k < n for k in vec):
                raise InputError(f"Bracket [{labels[i]}, {labels[j]}] has an output index out of range")
            full[(i, j)] = {k: v for k, v in vec.items() if v}
        for (i, j), vec in list(full.items()):
            if (j, i) not in full:
                full[(j, i)] = {k: -v for k, v in vec.items()}
        self._table = {p: v for p, v in full.items() if v}
        self._pv: Dict[int, PolyvectorAlgebra] = {}

    @classmethod
    def from_brackets(cls, name: str, labels: Sequence[str], field: ScalarField,
                      entries: Iterable[Tuple[str, str, Iterable[Tuple[str, object]]]],
                      meta: Optional[dict] = None) -> "LieAlgebra":
        index = {l: i for i, l in enumerate(labels)}
        table: Dict[Tuple[int, int], Vec] = {}
        for x, y, out in entries:
            for lab in (x, y):
                if lab not in index:
                    raise InputError(f"Unknown basis label {lab!r} in bracket [{x}, {y}]")
            key = (index[x], index[y])
            if key in table:
                raise InputError(f"Bracket [{x}, {y}] listed twice")
            vec: Vec = {}
            for z, coef in out:
                if z not in index:
                    raise InputError(f"Unknown basis label {z!r} in bracket [{x}, {y}]")
                vec[index[z]] = vec.get(index[z], field.zero) + field.convert(coef)
            table[key] = vec
        return cls(name, labels, field, table, meta)

    # --- basic data -----------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        if label not in self._index:
            raise InputError(f"Unknown basis label {label!r} for {self.name}")
        return self._index[label]

    def indices(self, labels: Iterable[str]) -> List[int]:
        return [self.index(l) for l in labels]

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim}, field={self.field!r})"

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self._table.get((i, j), {})

    def constant(self, k: int, i: int, j: int):
        return self._table.get((i, j), {}).get(k, self.field.zero)

    def bracket(self, x: Mapping[int, object], y: Mapping[int, object]) -> Vec:
        zero = self.field.zero
        out: Vec = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b:
                    continue
                for k, v in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, zero) + a * b * v
        return {k: v for k, v in out.items() if v}

    @property
    def structure(self) -> Dict[Tuple[int, int], Vec]:
        """Constants for i < j."""
        return {(i, j): v for (i, j), v in self._table.items() if i < j}

    def table(self) -> Dict[Tuple[int, int], Vec]:
        return dict(self._table)

    def structure_tensor(self) -> SparseTensor:
        """f as an element of g* (x) g* (x) g, keyed (i, j, k)."""
        sig = normalize_signature([SlotGroup(NONE, 2, DOWN), SlotGroup(NONE, 1, UP)])
        data = {(i, j, k): v for (i, j), out in self._table.items() for k, v in out.items()}
        return SparseTensor(self.dim, sig, self.field, data)

    def ad(self, i: int) -> Dict[int, Vec]:
        """Columns of ad(e_i): j -> [e_i, e_j]."""
        return {j: self.bracket_basis(i, j) for j in range(self.dim) if self.bracket_basis(i, j)}

    def over(self, field: ScalarField) -> "LieAlgebra":
        if field is self.field:
            return self
        table = {p: {k: field.lift(v, self.field) for k, v in out.items()} for p, out in self._table.items()}
        return LieAlgebra(self.name, self.labels, field, table, self.meta)

    def polyvectors(self, shift: int) -> PolyvectorAlgebra:
        if shift not in self._pv:
            self._pv[shift] = PolyvectorAlgebra(self.dim, shift, self.field, self.structure)
        return self._pv[shift]

    def vector(self, coeffs: Mapping[str, object]) -> Vec:
        return {self.index(l): self.field.convert(c) for l, c in coeffs.items()}

    def describe(self) -> dict:
        brackets = []
        for (i, j), out in sorted(self.structure.items()):
            brackets.append([self.labels[i], self.labels[j],
                             [[self.labels[k], self.field.format(v)] for k, v in sorted(out.items())]])
        return {"name": self.name, "field": self.field.describe(), "basis": list(self.labels), "brackets": brackets}


def check_lie(g: LieAlgebra) -> CheckReport:
    """Antisymmetry of the table, then Jacobi on every triple of basis vectors."""
    labels = g.labels
    zero = g.field.zero
    for i in range(g.dim):
        if g.bracket_basis(i, i):
            return CheckReport("lie", False, witness={"identity": "antisymmetry", "pair": [labels[i], labels[i]]})
    for i, j in combinations(range(g.dim), 2):
        a, b = g.bracket_basis(i, j), g.bracket_basis(j, i)
        for k in set(a) | set(b):
            if a.get(k, zero) + b.get(k, zero):
                return CheckReport("lie", False, witness={"identity": "antisymmetry",
                                                          "pair": [labels[i], labels[j]], "component": labels[k]})
    for i, j, k in combinations(range(g.dim), 3):
        total: Vec = {}
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            for m, v in g.bracket({x: g.field.one}, g.bracket_basis(y, z)).items():
                total[m] = total.get(m, zero) + v
        bad = {m: v for m, v in total.items() if v}
        if bad:
            m = min(bad)
            log.debug("Jacobi fails on (%s, %s, %s)", labels[i], labels[j], labels[k])
            return CheckReport("lie", False, witness={
                "identity": "jacobi", "triple": [labels[i], labels[j], labels[k]],
                "component": labels[m], "value": g.field.format(bad[m])})
    return CheckReport("lie", True, details={"dim": g.dim})
