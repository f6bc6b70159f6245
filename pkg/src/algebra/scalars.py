# src/algebra/scalars.py
# Exact scalar fields: the rationals, or rational functions over the rationals
# in an ordered list of variables. Elements are sympy domain elements.

import re
from functools import lru_cache
from typing import Dict, Sequence, Tuple

import sympy
from sympy import QQ
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from src.algebra.errors import InputError

_ALLOWED = re.compile(r"^[A-Za-z0-9_+\-*/^() ]+$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ScalarField:
    """QQ when `variables` is empty, otherwise QQ(x1, ..., xm).

    Instances are interned per variable tuple, so `is` and `==` agree.
    """

    def __new__(cls, variables: Sequence[str] = ()):
        return _field_for(tuple(variables))

    def __init__(self, variables: Sequence[str] = ()):
        pass

    @classmethod
    def _build(cls, variables: Tuple[str, ...]) -> "ScalarField":
        self = object.__new__(cls)
        for v in variables:
            if not _NAME.fullmatch(v):
                raise InputError(f"Invalid variable name: {v!r}")
        if len(set(variables)) != len(variables):
            raise InputError(f"Duplicate variables in {list(variables)}")
        self.variables = variables
        self.symbols = tuple(sympy.Symbol(v) for v in variables)
        self.domain = QQ.frac_field(*self.symbols) if variables else QQ
        self.zero = self.domain.zero
        self.one = self.domain.one
        return self

    def __repr__(self) -> str:
        if not self.variables:
            return "ScalarField(QQ)"
        return f"ScalarField(QQ({', '.join(self.variables)}))"

    def __reduce__(self):
        return (ScalarField, (self.variables,))

    @property
    def is_rational(self) -> bool:
        return not self.variables

    def describe(self) -> dict:
        if self.is_rational:
            return {"type": "rational"}
        return {"type": "ratfun", "vars": list(self.variables)}

    def gen(self, name: str):
        if name not in self.variables:
            raise InputError(f"{name!r} is not a variable of {self!r}")
        return self.domain.gens[self.variables.index(name)]

    def __call__(self, value):
        return self.convert(value)

    def convert(self, value):
        """Coerce ints, strings, rationals and elements of QQ into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise InputError("Booleans are not scalars")
        if self.domain.of_type(value):
            return value
        if isinstance(value, int):
            return self.domain.convert_from(QQ(value), QQ)
        if QQ.of_type(value):
            return self.domain.convert_from(value, QQ)
        if isinstance(value, sympy.Basic):
            return self._from_expr(value)
        try:
            return self.domain.convert(value)
        except Exception as e:
            raise InputError(f"Cannot convert {value!r} into {self!r}: {e}") from e

    def lift(self, value, source: "ScalarField"):
        """Move an element of `source` into this field (source variables must be ours)."""
        if source is self:
            return value
        if source.is_rational:
            return self.domain.convert_from(value, QQ)
        if not set(source.variables) <= set(self.variables):
            raise InputError(f"Cannot lift from {source!r} into {self!r}")
        return self._from_expr(source.domain.to_sympy(value))

    def parse(self, text: str):
        s = text.strip()
        if not s:
            raise InputError("Empty coefficient")
        if "." in s or not _ALLOWED.match(s):
            raise InputError(f"Bad coefficient {text!r}: only integers, variables, + - * / ^ and parentheses")
        unknown = sorted({m for m in _NAME.findall(s) if m not in self.variables})
        if unknown:
            raise InputError(f"Unknown names {unknown} in coefficient {text!r}")
        local = dict(zip(self.variables, self.symbols))
        try:
            expr = parse_expr(s.replace("^", "**"), local_dict=local, transformations=standard_transformations)
        except Exception as e:
            raise InputError(f"Cannot parse coefficient {text!r}: {e}") from e
        return self._from_expr(expr)

    def _from_expr(self, expr):
        if expr.has(sympy.zoo, sympy.nan, sympy.oo):
            raise InputError(f"Coefficient {expr} is not finite")
        if not expr.free_symbols <= set(self.symbols):
            raise InputError(f"Coefficient {expr} uses undeclared variables")
        if not expr.is_rational_function(*self.symbols):
            raise InputError(f"Coefficient {expr} is not a rational function")
        try:
            return self.domain.from_sympy(sympy.together(expr))
        except Exception as e:
            raise InputError(f"Coefficient {expr} is not in {self!r}: {e}") from e

    def format(self, value) -> str:
        return sympy.sstr(self.domain.to_sympy(value)).replace("**", "^")

    def derivative(self, value, var: str):
        if self.is_rational:
            return self.zero
        return value.diff(self.gen(var))

    def evaluate(self, value, point: Dict[str, object]):
        """Evaluate at a point given as {variable: rational}; raises ZeroDivisionError at a pole."""
        if self.is_rational:
            return value
        subs = {sym: sympy.Rational(QQ.to_sympy(QQ.convert(point[v]))) for v, sym in zip(self.variables, self.symbols)}
        expr = self.domain.to_sympy(value)
        num, den = sympy.fraction(sympy.together(expr))
        d = den.subs(subs)
        if d == 0:
            raise ZeroDivisionError(f"{self.format(value)} has a pole at {point}")
        return QQ.from_sympy(num.subs(subs) / d)

    def denominator(self, value):
        """Denominator as a sympy polynomial ring element, None over QQ."""
        if self.is_rational:
            return None
        return value.denom

    def join(self, other: "ScalarField") -> "ScalarField":
        if other is self:
            return self
        merged = list(self.variables) + [v for v in other.variables if v not in self.variables]
        return ScalarField(merged)


@lru_cache(maxsize=None)
def _field_for(variables: Tuple[str, ...]) -> ScalarField:
    return ScalarField._build(variables)


RATIONALS = ScalarField(())
