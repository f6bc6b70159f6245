# src/algebra/tensors.py
# Sparse exact tensors on a fixed finite-dimensional space, with declared
# antisymmetric / symmetric slot groups. Values live only on canonical keys.

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.algebra.errors import InputError
from src.algebra.scalars import RATIONALS, ScalarField

NONE, ANTI, SYM = "none", "anti", "sym"
UP, DOWN = "up", "down"

Key = Tuple[int, ...]


@dataclass(frozen=True)
class SlotGroup:
    kind: str
    size: int
    variance: str = UP


Signature = Tuple[SlotGroup, ...]


def normalize_signature(groups: Iterable[SlotGroup]) -> Signature:
    """Split plain groups into single slots and drop empty groups."""
    out: List[SlotGroup] = []
    for g in groups:
        if g.kind not in (NONE, ANTI, SYM) or g.variance not in (UP, DOWN):
            raise InputError(f"Bad slot group {g}")
        if g.size <= 0:
            continue
        if g.kind == NONE or g.size == 1:
            out.extend(SlotGroup(NONE, 1, g.variance) for _ in range(g.size))
        else:
            out.append(g)
    return tuple(out)


def wedge_sig(p: int) -> Signature:
    return normalize_signature([SlotGroup(ANTI, p)])


def sym_sig(p: int) -> Signature:
    return normalize_signature([SlotGroup(SYM, p)])


def tensor_sig(p: int, variance: str = UP) -> Signature:
    return normalize_signature([SlotGroup(NONE, p, variance)])


def cochain_sig(degree: int, module: Signature = ()) -> Signature:
    return normalize_signature([SlotGroup(ANTI, degree, DOWN), *module])


def describe_signature(sig: Signature) -> str:
    parts = []
    for g in sig:
        name = {NONE: "g", ANTI: f"wedge{g.size}", SYM: f"sym{g.size}"}[g.kind]
        parts.append(name + ("*" if g.variance == DOWN else ""))
    return ",".join(parts) or "scalar"


def arity(sig: Signature) -> int:
    return sum(g.size for g in sig)


def _spans(sig: Signature) -> List[Tuple[int, int, str]]:
    spans, pos = [], 0
    for g in sig:
        spans.append((pos, pos + g.size, g.kind))
        pos += g.size
    return spans


def _sort_sign(items: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the sorting permutation (0 on repeats) and the sorted tuple."""
    arr = list(items)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(arr)):
        if arr[i] == arr[i - 1]:
            return 0, tuple(arr)
    return sign, tuple(arr)


def perm_sign(perm: Sequence[int]) -> int:
    return _sort_sign(perm)[0]


def canonical(sig: Signature, key: Key) -> Tuple[int, Key]:
    """Return (sign, canonical key); sign 0 means the component vanishes identically."""
    sign = 1
    out: List[int] = []
    for start, end, kind in _spans(sig):
        part = key[start:end]
        if kind == ANTI:
            s, part = _sort_sign(part)
            if s == 0:
                return 0, key
            sign *= s
        elif kind == SYM:
            part = tuple(sorted(part))
        out.extend(part)
    return sign, tuple(out)


def _group_orbit(kind: str, part: Tuple[int, ...]) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """All distinct rearrangements of a canonical group part with their component signs."""
    if kind == NONE:
        yield 1, part
        return
    seen = set()
    for perm in permutations(range(len(part))):
        image = tuple(part[i] for i in perm)
        if image in seen:
            continue
        seen.add(image)
        yield (perm_sign(perm) if kind == ANTI else 1), image


class SparseTensor:
    """Exact sparse tensor; immutable once built.

    The value stored on a canonical key is the tensor component there. For an
    antisymmetric group that is also the coefficient of the wedge monomial.
    """

    __slots__ = ("dim", "signature", "field", "_data")

    def __init__(self, dim: int, signature: Signature, field: ScalarField = RATIONALS,
                 data: Optional[Dict[Key, object]] = None):
        self.dim = int(dim)
        self.signature = normalize_signature(signature)
        self.field = field
        self._data: Dict[Key, object] = {k: v for k, v in (data or {}).items() if v}

    # --- construction ---------------------------------------------------
    @classmethod
    def from_terms(cls, dim: int, signature: Signature, field: ScalarField,
                   terms: Iterable[Tuple[Key, object]]) -> "SparseTensor":
        """Sum of basis terms; keys may be non-canonical (antisymmetric groups pick up signs)."""
        sig = normalize_signature(signature)
        n = arity(sig)
        acc: Dict[Key, object] = {}
        for key, coef in terms:
            key = tuple(key)
            if len(key) != n:
                raise InputError(f"Key {key} has arity {len(key)}, expected {n}")
            if any(not 0 <= i < dim for i in key):
                raise InputError(f"Key {key} out of range for dimension {dim}")
            sign, ck = canonical(sig, key)
            if sign == 0:
                continue
            value = field.convert(coef)
            acc[ck] = acc.get(ck, field.zero) + (value if sign > 0 else -value)
        return cls(dim, sig, field, acc)

    @classmethod
    def from_components(cls, dim: int, signature: Signature, field: ScalarField,
                        entries: Iterable[Tuple[Key, object]]) -> "SparseTensor":
        """Set components by key; repeated (or permuted) keys must agree."""
        sig = normalize_signature(signature)
        n = arity(sig)
        seen: Dict[Key, object] = {}
        for key, coef in entries:
            key = tuple(key)
            if len(key) != n:
                raise InputError(f"Key {key} has arity {len(key)}, expected {n}")
            if any(not 0 <= i < dim for i in key):
                raise InputError(f"Key {key} out of range for dimension {dim}")
            value = field.convert(coef)
            sign, ck = canonical(sig, key)
            if sign == 0:
                if value:
                    raise InputError(f"Component {key} must vanish for signature {describe_signature(sig)}")
                continue
            value = value if sign > 0 else -value
            if ck in seen and seen[ck] != value:
                raise InputError(f"Conflicting values for component {key}")
            seen[ck] = value
        return cls(dim, sig, field, seen)

    @classmethod
    def zero(cls, dim: int, signature: Signature, field: ScalarField = RATIONALS) -> "SparseTensor":
        return cls(dim, signature, field, {})

    @classmethod
    def project(cls, dim: int, signature: Signature, field: ScalarField,
                full: Dict[Key, object]) -> "SparseTensor":
        """Keep only canonical keys of a fully expanded component dict."""
        sig = normalize_signature(signature)
        data = {}
        for key, v in full.items():
            sign, ck = canonical(sig, key)
            if sign == 1 and ck == key and v:
                data[key] = v
        return cls(dim, sig, field, data)

    # --- access ---------------------------------------------------------
    @property
    def arity(self) -> int:
        return arity(self.signature)

    @property
    def is_multivector(self) -> bool:
        return all(g.variance == UP for g in self.signature) and (
            self.arity <= 1 or (len(self.signature) == 1 and self.signature[0].kind == ANTI))

    def __getitem__(self, key: Key):
        sign, ck = canonical(self.signature, tuple(key))
        if sign == 0:
            return self.field.zero
        v = self._data.get(ck, self.field.zero)
        return v if sign > 0 else -v

    def items(self) -> List[Tuple[Key, object]]:
        return sorted(self._data.items())

    def keys(self) -> List[Key]:
        return sorted(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def scalar(self):
        if self.arity != 0:
            raise InputError("Not a scalar tensor")
        return self._data.get((), self.field.zero)

    def components(self) -> Iterator[Tuple[Key, object]]:
        """Every nonzero component on every key (canonical or not)."""
        spans = _spans(self.signature)
        for key, v in self._data.items():
            options = [list(_group_orbit(kind, key[s:e])) for s, e, kind in spans]
            yield from _expand(options, v)

    # --- arithmetic -----------------------------------------------------
    def _check_compatible(self, other: "SparseTensor") -> None:
        if not isinstance(other, SparseTensor):
            raise InputError(f"Expected a SparseTensor, got {type(other).__name__}")
        if self.dim != other.dim:
            raise InputError(f"Dimension mismatch: {self.dim} vs {other.dim}")
        if self.signature != other.signature:
            raise InputError(f"Signature mismatch: {describe_signature(self.signature)} "
                             f"vs {describe_signature(other.signature)}")
        if self.field is not other.field:
            raise InputError(f"Field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        self._check_compatible(other)
        data = dict(self._data)
        for k, v in other._data.items():
            data[k] = data.get(k, self.field.zero) + v
        return SparseTensor(self.dim, self.signature, self.field, data)

    def __neg__(self) -> "SparseTensor":
        return SparseTensor(self.dim, self.signature, self.field, {k: -v for k, v in self._data.items()})

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + (-other)

    def scale(self, s) -> "SparseTensor":
        s = self.field.convert(s)
        return SparseTensor(self.dim, self.signature, self.field, {k: s * v for k, v in self._data.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.dim == other.dim and self.signature == other.signature
                and self.field is other.field and self._data == other._data)

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {self.field.format(v)}" for k, v in self.items()[:8])
        more = "" if len(self) <= 8 else f", ... ({len(self)} terms)"
        return f"SparseTensor[{describe_signature(self.signature)}; dim={self.dim}]({{{body}{more}}})"

    def over(self, field: ScalarField) -> "SparseTensor":
        if field is self.field:
            return self
        return SparseTensor(self.dim, self.signature, field,
                            {k: field.lift(v, self.field) for k, v in self._data.items()})

    # --- reshaping ------------------------------------------------------
    def flatten(self) -> "SparseTensor":
        """Same tensor with every slot group dissolved into plain slots."""
        flat_sig = normalize_signature(SlotGroup(NONE, g.size, g.variance) for g in self.signature)
        return SparseTensor(self.dim, flat_sig, self.field, dict(self.components()))

    def regroup(self, signature: Signature) -> "SparseTensor":
        """Reinterpret under a grouped signature; fails unless the symmetries actually hold."""
        sig = normalize_signature(signature)
        if arity(sig) != self.arity:
            raise InputError("Arity mismatch in regroup")
        full = dict(self.components())
        out = SparseTensor.project(self.dim, sig, self.field, full)
        if dict(out.components()) != full:
            raise InputError(f"Tensor does not have the symmetries of {describe_signature(sig)}")
        return out

    def permute(self, perm: Sequence[int]) -> "SparseTensor":
        """New tensor whose slot s carries old slot perm[s]; result has plain slots."""
        flat = self.flatten()
        if sorted(perm) != list(range(flat.arity)):
            raise InputError(f"Bad slot permutation {perm}")
        sig = tuple(flat.signature[p] for p in perm)
        return SparseTensor(self.dim, sig, self.field,
                            {tuple(k[p] for p in perm): v for k, v in flat._data.items()})

    def to_literal(self, labels: Sequence[str]) -> List[dict]:
        return [{"idx": [labels[i] for i in k], "coef": self.field.format(v)} for k, v in self.items()]


def _expand(options: List[List[Tuple[int, Tuple[int, ...]]]], value) -> Iterator[Tuple[Key, object]]:
    if not options:
        yield (), value
        return
    head, rest = options[0], options[1:]
    for sign, part in head:
        for key, v in _expand(rest, value):
            yield part + key, (v if sign > 0 else -v)


# --- module-level operations -------------------------------------------------

def multivector(dim: int, p: int, field: ScalarField, terms: Iterable[Tuple[Key, object]]) -> SparseTensor:
    return SparseTensor.from_terms(dim, wedge_sig(p), field, terms)


def _require_multivector(t: SparseTensor, what: str) -> None:
    if not t.is_multivector:
        raise InputError(f"{what} must be a multivector, got {describe_signature(t.signature)}")


def wedge(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    """Exterior product of multivectors; no normalization factors."""
    _require_multivector(a, "wedge argument")
    _require_multivector(b, "wedge argument")
    if a.dim != b.dim:
        raise InputError(f"Dimension mismatch: {a.dim} vs {b.dim}")
    if a.field is not b.field:
        raise InputError(f"Field mismatch: {a.field!r} vs {b.field!r}")
    sig = wedge_sig(a.arity + b.arity)
    acc: Dict[Key, object] = {}
    for ka, va in a._data.items():
        for kb, vb in b._data.items():
            sign, key = _sort_sign(ka + kb)
            if sign == 0:
                continue
            term = va * vb
            acc[key] = acc.get(key, a.field.zero) + (term if sign > 0 else -term)
    return SparseTensor(a.dim, sig, a.field, acc)


def embed_wedge(t: SparseTensor) -> SparseTensor:
    """x1^...^xp -> sum over S_p of sgn(s) x_s(1) (x) ... (x) x_s(p), without 1/p!."""
    _require_multivector(t, "embed_wedge argument")
    return t.flatten()


def embed_sym(t: SparseTensor) -> SparseTensor:
    """Symmetric tensor (stored by component) as a plain tensor."""
    if len(t.signature) == 1 and t.signature[0].kind == SYM or t.arity <= 1:
        return t.flatten()
    raise InputError(f"embed_sym expects a symmetric tensor, got {describe_signature(t.signature)}")


def outer(a: SparseTensor, b: SparseTensor) -> SparseTensor:
    if a.dim != b.dim or a.field is not b.field:
        raise InputError("outer: dimension or field mismatch")
    data = {}
    for ka, va in a._data.items():
        for kb, vb in b._data.items():
            data[ka + kb] = va * vb
    return SparseTensor(a.dim, a.signature + b.signature, a.field, data)


def contract(t: SparseTensor, slot_pairs: Sequence[Tuple[int, int]]) -> SparseTensor:
    """Trace over each (covariant slot, contravariant slot) pair; remaining slots stay plain."""
    flat = t.flatten()
    used: List[int] = []
    for lo, up in slot_pairs:
        for s in (lo, up):
            if not 0 <= s < flat.arity:
                raise InputError(f"Slot {s} out of range for arity {flat.arity}")
        if flat.signature[lo].variance != DOWN or flat.signature[up].variance != UP:
            raise InputError(f"Slots ({lo}, {up}) are not a (covariant, contravariant) pair")
        used.extend((lo, up))
    if len(set(used)) != len(used):
        raise InputError("A slot appears in more than one contraction pair")
    keep = [s for s in range(flat.arity) if s not in used]
    acc: Dict[Key, object] = {}
    for key, v in flat._data.items():
        if all(key[lo] == key[up] for lo, up in slot_pairs):
            nk = tuple(key[s] for s in keep)
            acc[nk] = acc.get(nk, t.field.zero) + v
    return SparseTensor(t.dim, tuple(flat.signature[s] for s in keep), t.field, acc)


def identity_tensor(dim: int, field: ScalarField = RATIONALS) -> SparseTensor:
    """id as an element of g (x) g*."""
    sig = normalize_signature([SlotGroup(NONE, 1, UP), SlotGroup(NONE, 1, DOWN)])
    return SparseTensor(dim, sig, field, {(i, i): field.one for i in range(dim)})


def alt(t: SparseTensor) -> SparseTensor:
    """Sum over S_p of sgn(s) s(T) on a plain tensor, without 1/p!."""
    flat = t.flatten()
    acc: Dict[Key, object] = {}
    for perm in permutations(range(flat.arity)):
        sign = perm_sign(perm)
        for key, v in flat._data.items():
            nk = tuple(key[p] for p in perm)
            acc[nk] = acc.get(nk, t.field.zero) + (v if sign > 0 else -v)
    return SparseTensor(t.dim, flat.signature, t.field, acc)


def antisymmetric_part_as_multivector(t: SparseTensor) -> SparseTensor:
    """Read a totally antisymmetric plain tensor back as a multivector."""
    return t.flatten().regroup(wedge_sig(t.arity))


def swap_slots(t: SparseTensor, i: int, j: int) -> SparseTensor:
    perm = list(range(t.arity))
    perm[i], perm[j] = perm[j], perm[i]
    return t.permute(perm)


def is_totally_antisymmetric(t: SparseTensor) -> bool:
    flat = t.flatten()
    for i in range(flat.arity - 1):
        if swap_slots(flat, i, i + 1) != -flat:
            return False
    return True
