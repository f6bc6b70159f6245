# src/algebra/polyvectors.py
# The big bracket: the free graded-commutative algebra on g* (odd, xi^i) and
# g[-n] (E_i, parity n) with the Poisson bracket generated by {xi^i, E_j} = delta.
#
# A monomial is (xs, es): xi indices strictly increasing, then E indices
# (strictly increasing for odd n, weakly increasing for even n).

from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from src.algebra.errors import InputError
from src.algebra.scalars import ScalarField
from src.algebra.tensors import DOWN, SparseTensor, _sort_sign, cochain_sig, sym_sig, wedge_sig

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Structure = Mapping[Tuple[int, int], Mapping[int, object]]


class Polyvector:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "PolyvectorAlgebra", terms: Optional[Dict[Monomial, object]] = None):
        self.algebra = algebra
        self.terms: Dict[Monomial, object] = {m: c for m, c in (terms or {}).items() if c}

    def _coerce(self, other: "Polyvector") -> None:
        if not isinstance(other, Polyvector) or other.algebra != self.algebra:
            raise InputError("Polyvectors live in different algebras (dimension, shift or field)")

    def __add__(self, other: "Polyvector") -> "Polyvector":
        self._coerce(other)
        out = dict(self.terms)
        zero = self.algebra.field.zero
        for m, c in other.terms.items():
            out[m] = out.get(m, zero) + c
        return Polyvector(self.algebra, out)

    def __neg__(self) -> "Polyvector":
        return Polyvector(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polyvector") -> "Polyvector":
        return self + (-other)

    def __mul__(self, other: "Polyvector") -> "Polyvector":
        return self.algebra.mul(self, other)

    def scale(self, s) -> "Polyvector":
        s = self.algebra.field.convert(s)
        return Polyvector(self.algebra, {m: s * c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polyvector):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, degree: int, weight: int) -> "Polyvector":
        return Polyvector(self.algebra, {m: c for m, c in self.terms.items()
                                         if len(m[0]) == degree and len(m[1]) == weight})

    def __repr__(self) -> str:
        f = self.algebra.field
        parts = []
        for (xs, es), c in sorted(self.terms.items()):
            mono = "".join(f"x{i}" for i in xs) + "".join(f"E{i}" for i in es)
            parts.append(f"{f.format(c)}*{mono or '1'}")
        return " + ".join(parts) or "0"


class PolyvectorAlgebra:
    """C(g, Sym(g[-n])) with its big bracket, optionally carrying the Lie element mu of g."""

    def __init__(self, dim: int, shift: int, field: ScalarField, structure: Optional[Structure] = None):
        if shift not in (1, 2):
            raise InputError(f"Shift must be 1 or 2, got {shift}")
        self.dim = dim
        self.shift = shift
        self.field = field
        self.odd = shift % 2 == 1
        self._mu: Optional[Polyvector] = None
        if structure is not None:
            sigma = field.one if shift == 1 else -field.one
            terms = {}
            for (i, j), out in structure.items():
                if i >= j:
                    continue
                for k, v in out.items():
                    if v:
                        terms[((i, j), (k,))] = sigma * v
            self._mu = Polyvector(self, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyvectorAlgebra):
            return NotImplemented
        return (self.dim, self.shift, self.field) == (other.dim, other.shift, other.field)

    def __hash__(self) -> int:
        return hash((self.dim, self.shift, self.field.variables))

    # --- generators -----------------------------------------------------
    def zero(self) -> Polyvector:
        return Polyvector(self, {})

    def one(self) -> Polyvector:
        return Polyvector(self, {((), ()): self.field.one})

    def xi(self, i: int) -> Polyvector:
        return Polyvector(self, {((i,), ()): self.field.one})

    def e(self, i: int) -> Polyvector:
        return Polyvector(self, {((), (i,)): self.field.one})

    def monomial(self, xs: Sequence[int], es: Sequence[int], coef=1) -> Polyvector:
        """Product xi^xs E^es in the given (possibly unsorted) order."""
        out = self.one().scale(coef)
        for i in xs:
            out = self.mul(out, self.xi(i))
        for i in es:
            out = self.mul(out, self.e(i))
        return out

    @property
    def mu(self) -> Polyvector:
        if self._mu is None:
            raise InputError("This polyvector algebra carries no Lie structure")
        return self._mu

    # --- product --------------------------------------------------------
    def _mul_mono(self, m1: Monomial, m2: Monomial) -> Tuple[int, Optional[Monomial]]:
        x1, e1 = m1
        x2, e2 = m2
        sign = -1 if self.odd and (len(x2) * len(e1)) % 2 else 1
        s, xs = _sort_sign(x1 + x2)
        if s == 0:
            return 0, None
        sign *= s
        if self.odd:
            s, es = _sort_sign(e1 + e2)
            if s == 0:
                return 0, None
            sign *= s
        else:
            es = tuple(sorted(e1 + e2))
        return sign, (xs, es)

    def mul(self, a: Polyvector, b: Polyvector) -> Polyvector:
        zero = self.field.zero
        out: Dict[Monomial, object] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                sign, m = self._mul_mono(m1, m2)
                if sign == 0:
                    continue
                c = c1 * c2
                out[m] = out.get(m, zero) + (c if sign > 0 else -c)
        return Polyvector(self, out)

    def _times(self, c, k: int):
        if k == 1:
            return c
        if k == -1:
            return -c
        return c * self.field.convert(k)

    # --- derivatives on monomials: (integer factor, monomial) or None ------
    def _left_xi(self, i: int, m: Monomial):
        xs, es = m
        if i not in xs:
            return None
        t = xs.index(i)
        return (-1) ** t, (xs[:t] + xs[t + 1:], es)

    def _right_xi(self, i: int, m: Monomial):
        xs, es = m
        if i not in xs:
            return None
        t = xs.index(i)
        power = (len(xs) - t - 1) + (self.shift * len(es))
        return (-1) ** power, (xs[:t] + xs[t + 1:], es)

    def _left_e(self, i: int, m: Monomial):
        xs, es = m
        if i not in es:
            return None
        t = es.index(i)
        rest = es[:t] + es[t + 1:]
        if self.odd:
            return (-1) ** (len(xs) + t), (xs, rest)
        return es.count(i), (xs, rest)

    def _right_e(self, i: int, m: Monomial):
        xs, es = m
        if i not in es:
            return None
        t = es.index(i)
        rest = es[:t] + es[t + 1:]
        if self.odd:
            return (-1) ** (len(es) - t - 1), (xs, rest)
        return es.count(i), (xs, rest)

    # --- bracket --------------------------------------------------------
    def bracket(self, a: Polyvector, b: Polyvector) -> Polyvector:
        """{a, b} = sum_i (a <-d/dxi^i)(d/dE_i-> b) + s_n (a <-d/dE_i)(d/dxi^i-> b)."""
        if a.algebra != self or b.algebra != self:
            raise InputError("Bracket arguments live in a different polyvector algebra")
        s_n = 1 if self.odd else -1
        zero = self.field.zero
        out: Dict[Monomial, object] = {}

        def accumulate(left, right, factor, c):
            sign, m = self._mul_mono(left, right)
            if sign == 0:
                return
            out[m] = out.get(m, zero) + self._times(c, factor * sign)

        for ma, ca in a.terms.items():
            xa, ea = ma
            for mb, cb in b.terms.items():
                xb, eb = mb
                for i in set(xa).intersection(eb):
                    l, r = self._right_xi(i, ma), self._left_e(i, mb)
                    accumulate(l[1], r[1], l[0] * r[0], ca * cb)
                for i in set(ea).intersection(xb):
                    l, r = self._right_e(i, ma), self._left_xi(i, mb)
                    accumulate(l[1], r[1], s_n * l[0] * r[0], ca * cb)
        return Polyvector(self, out)

    def differential(self, x: Polyvector) -> Polyvector:
        """Chevalley-Eilenberg differential {mu, x}."""
        return self.bracket(self.mu, x)

    # --- morphisms ------------------------------------------------------
    def substitute_xi(self, x: Polyvector, images: Mapping[int, Polyvector], target: "PolyvectorAlgebra") -> Polyvector:
        """Algebra map sending xi^i to images[i]; x must have no E factors."""
        out = target.zero()
        for (xs, es), c in x.terms.items():
            if es:
                raise InputError("substitute_xi only maps pure cochains")
            term = target.one().scale(target.field.lift(c, self.field))
            for i in xs:
                term = target.mul(term, images[i])
            out = out + term
        return out

    # --- tensors --------------------------------------------------------
    def module_signature(self, weight: int):
        return wedge_sig(weight) if self.odd else sym_sig(weight)

    def tensor_signature(self, degree: int, weight: int):
        return cochain_sig(degree, self.module_signature(weight))

    def from_tensor(self, t: SparseTensor) -> Polyvector:
        """Cochain tensor (lower antisymmetric slots, then the module slots) to a polyvector."""
        if t.dim != self.dim or t.field is not self.field:
            raise InputError("Tensor does not match the polyvector algebra (dimension or field)")
        degree = sum(g.size for g in t.signature if g.variance == DOWN)
        weight = t.arity - degree
        expected = self.tensor_signature(degree, weight)
        if t.signature != expected:
            t = t.regroup(expected)
        terms = {}
        for key, v in t.items():
            xs, es = key[:degree], key[degree:]
            if not self.odd:
                v = v / self.field.convert(_multiplicity_factor(es))
            terms[(xs, es)] = v
        return Polyvector(self, terms)

    def to_tensor(self, x: Polyvector, degree: int, weight: int) -> SparseTensor:
        data = {}
        for (xs, es), c in x.terms.items():
            if len(xs) != degree or len(es) != weight:
                continue
            if not self.odd:
                c = self._times(c, _multiplicity_factor(es))
            data[xs + es] = c
        return SparseTensor(self.dim, self.tensor_signature(degree, weight), self.field, data)

    def basis(self, degree: int, weight: int):
        """Canonical monomials of a bidegree, in lexicographic order."""
        xs_all = list(combinations(range(self.dim), degree))
        es_all = list(combinations(range(self.dim), weight) if self.odd
                      else combinations_with_replacement(range(self.dim), weight))
        return [(xs, es) for xs in xs_all for es in es_all]


def _multiplicity_factor(es: Iterable[int]) -> int:
    counts: Dict[int, int] = {}
    for i in es:
        counts[i] = counts.get(i, 0) + 1
    out = 1
    for m in counts.values():
        out *= factorial(m)
    return out
