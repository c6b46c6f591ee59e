"""Exact rational scalars and multivariate polynomials over Q.

Scalars are :class:`fractions.Fraction`.  A :class:`MultiPoly` is an immutable
map from exponent multi-indices to nonzero rational coefficients, so two
polynomials are equal exactly when their term maps are equal.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DimensionError, ParseError

Scalar = Union[int, Fraction]

__all__ = [
    "MultiPoly",
    "to_scalar",
    "format_scalar",
    "poly_arith",
    "partial_derivative",
]


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def format_scalar(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _grlex_key(exp: tuple[int, ...]):
    # descending total degree, then lexicographic with x1 dominant
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Polynomial in ``nvars`` variables ``x1..xn`` with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        if nvars < 0:
            raise DimensionError("number of variables must be non-negative")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise DimensionError(f"bad exponent {exp} for {nvars} variables")
            c = to_scalar(coeff)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "MultiPoly":
        c = to_scalar(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        """The coordinate ``x_{index+1}`` (``index`` is 0-based)."""
        if not 0 <= index < nvars:
            raise DimensionError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: Scalar = 1) -> "MultiPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "MultiPoly":
        return _parse(text, nvars)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises if it is not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def evaluate(self, point: Iterable[Scalar]) -> Fraction:
        point = [to_scalar(p) for p in point]
        if len(point) != self.nvars:
            raise DimensionError("point has wrong number of coordinates")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x ** e
            total += term
        return total

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"polynomials in {self.nvars} and {other.nvars} variables cannot be combined"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v += c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: Scalar) -> "MultiPoly":
        f = to_scalar(factor)
        if not f:
            return MultiPoly.zero(self.nvars)
        if f == 1:
            return self
        return MultiPoly._raw(self.nvars, {e: c * f for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MultiPoly.zero(self.nvars)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(exp)
                out[exp] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, index: int) -> "MultiPoly":
        """Formal partial derivative in ``x_{index+1}``."""
        if not 0 <= index < self.nvars:
            raise DimensionError(f"variable index {index} out of range for {self.nvars} variables")
        out = {}
        for exp, c in self._terms.items():
            e = exp[index]
            if e:
                new = list(exp)
                new[index] = e - 1
                out[tuple(new)] = c * e
        return MultiPoly._raw(self.nvars, out)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            mag = abs(c)
            if not mono:
                body = format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)(?:/(\d+))?|x(\d+)(?:\^(\d+))?|([+\-*]))")


def _parse(text: str, nvars: int) -> MultiPoly:
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        tokens.append((m.start(), m.groups()))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if not tokens:
        raise ParseError("empty polynomial")

    result = MultiPoly.zero(nvars)
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        where, (num, den, var, exp, op) = tokens[i]
        if op in ("+", "-"):
            if expect_term and i > 0:
                raise ParseError(f"dangling operator at position {where} in {text!r}")
            sign = 1 if op == "+" else -1
            expect_term = True
            i += 1
            continue
        if not expect_term:
            raise ParseError(f"missing operator before position {where} in {text!r}")
        coeff = Fraction(1)
        exps = [0] * nvars
        seen = False
        if num is not None:
            if den is not None and int(den) == 0:
                raise ParseError(f"zero denominator at position {where}")
            coeff = Fraction(int(num), int(den) if den else 1)
            seen = True
            i += 1
        while i < len(tokens):
            where, (num, den, var, exp, op) = tokens[i]
            if op == "*":
                if not seen:
                    raise ParseError(f"'*' without a left operand at position {where}")
                i += 1
                if i >= len(tokens) or tokens[i][1][2] is None:
                    raise ParseError(f"'*' must be followed by a variable at position {where}")
                continue
            if var is None:
                break
            k = int(var)
            if not 1 <= k <= nvars:
                raise DimensionError(f"variable x{k} out of range for {nvars} variables")
            exps[k - 1] += int(exp) if exp else 1
            seen = True
            i += 1
        if not seen:
            raise ParseError(f"expected a term at position {where} in {text!r}")
        result = result + MultiPoly._raw(nvars, {tuple(exps): sign * coeff} if coeff else {})
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"polynomial {text!r} ends with an operator")
    return result


def poly_arith(op: str, p: MultiPoly, q) -> MultiPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` by name."""
    if op == "scale":
        return p.scale(q)
    if not isinstance(q, MultiPoly) or q.nvars != p.nvars:
        raise DimensionError("operands must be polynomials in the same number of variables")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MultiPoly, var_index: int) -> MultiPoly:
    return p.diff(var_index)
