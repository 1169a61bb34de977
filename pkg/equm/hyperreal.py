"""Exact nonstandard reals as finite Laurent polynomials in a positive infinitesimal.

A value is a sparse sum of ``c * e**k`` terms with rational ``c`` and integer ``k``,
where ``e`` stands for the fixed infinitesimal epsilon. Two orders are provided:
the usual total order and the qualitative order, in which ``x`` beats ``y`` only
when the relative difference ``(x - y) / x`` is bounded below by a standard
positive number. Every predicate is decided on leading terms, so no series
division ever happens.
"""
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
import functools
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .exceptions import (
    EqumError,
    InfiniteArgument,
    ParseError,
    ZeroArgument,
    ZeroDivisor,
)

Rational = Fraction
Term = Tuple[int, Fraction]
Coercible = Union["Hyperreal", int, Fraction]


class Ordering(IntEnum):
    """Result of the usual total order."""

    LT = -1
    EQ = 0
    GT = 1


class QualOrdering(Enum):
    """Result of the qualitative order."""

    QLT = "QLT"
    QEQ = "QEQ"
    QGT = "QGT"


class RatioKind(Enum):
    INFINITESIMAL = "Infinitesimal"
    APPRECIABLE = "Appreciable"
    INFINITE = "Infinite"


@dataclass(frozen=True)
class RatioClass:
    """Size class of a quotient ``x / y``.

    ``standard_part`` is set, and nonzero, only for appreciable ratios.
    """

    kind: RatioKind
    standard_part: Optional[Fraction] = None

    def __post_init__(self):
        if (self.kind is RatioKind.APPRECIABLE) != (self.standard_part is not None):
            raise ValueError("only appreciable ratios carry a standard part")
        if self.standard_part == 0:
            raise ValueError("an appreciable ratio has a nonzero standard part")

    @property
    def is_infinite(self) -> bool:
        return self.kind is RatioKind.INFINITE

    @property
    def is_appreciable(self) -> bool:
        return self.kind is RatioKind.APPRECIABLE

    @property
    def is_infinitesimal(self) -> bool:
        return self.kind is RatioKind.INFINITESIMAL

    def __str__(self) -> str:
        if self.standard_part is None:
            return self.kind.value
        return f"{self.kind.value}({self.standard_part})"


INFINITESIMAL = RatioClass(RatioKind.INFINITESIMAL)
INFINITE = RatioClass(RatioKind.INFINITE)


def _as_rational(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, _RationalABC):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    return Fraction(value)


@functools.total_ordering
class Hyperreal:
    """Immutable element of the Laurent subfield ``Q((e))`` restricted to finite sums."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[Tuple[int, Union[int, Fraction]]] = ()):
        merged: Dict[int, Fraction] = {}
        for exponent, coefficient in terms:
            if isinstance(exponent, bool) or not isinstance(exponent, int):
                raise TypeError("exponents must be integers")
            merged[exponent] = merged.get(exponent, Fraction(0)) + _as_rational(
                coefficient
            )
        self._terms: Tuple[Term, ...] = tuple(
            (exponent, coefficient)
            for exponent, coefficient in sorted(merged.items())
            if coefficient != 0
        )

    @classmethod
    def _from_canonical(cls, terms: Tuple[Term, ...]) -> "Hyperreal":
        value = cls.__new__(cls)
        value._terms = terms
        return value

    @classmethod
    def coerce(cls, value: Coercible) -> "Hyperreal":
        if isinstance(value, Hyperreal):
            return value
        return cls.monomial(_as_rational(value), 0)

    @classmethod
    def monomial(cls, coefficient: Union[int, Fraction], exponent: int = 0) -> "Hyperreal":
        coefficient = _as_rational(coefficient)
        if coefficient == 0:
            return cls._from_canonical(())
        return cls._from_canonical(((exponent, coefficient),))

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_standard(self) -> bool:
        """True when the value is a plain rational (no epsilon terms)."""
        return all(exponent == 0 for exponent, _ in self._terms)

    def coefficient(self, exponent: int) -> Fraction:
        for k, c in self._terms:
            if k == exponent:
                return c
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __hash__(self) -> int:
        if self.is_standard():
            return hash(self.coefficient(0))
        return hash(self._terms)

    def __eq__(self, other) -> bool:
        try:
            other = Hyperreal.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other) -> bool:
        try:
            other = Hyperreal.coerce(other)
        except TypeError:
            return NotImplemented
        return compare_total(self, other) is Ordering.LT

    def __neg__(self) -> "Hyperreal":
        return negate(self)

    def __pos__(self) -> "Hyperreal":
        return self

    def __add__(self, other) -> "Hyperreal":
        try:
            return add(self, Hyperreal.coerce(other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "Hyperreal":
        try:
            return add(self, negate(Hyperreal.coerce(other)))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "Hyperreal":
        try:
            return add(Hyperreal.coerce(other), negate(self))
        except TypeError:
            return NotImplemented

    def __mul__(self, other) -> "Hyperreal":
        try:
            return mul(self, Hyperreal.coerce(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Hyperreal":
        try:
            other = Hyperreal.coerce(other)
        except TypeError:
            return NotImplemented
        return divide_by_monomial(self, other)

    def __repr__(self) -> str:
        return f"Hyperreal({format_literal(self)!r})"

    def __str__(self) -> str:
        return format_literal(self)


ZERO = Hyperreal()
ONE = Hyperreal.monomial(1, 0)
EPSILON = Hyperreal.monomial(1, 1)


def epsilon_power(exponent: int) -> Hyperreal:
    return Hyperreal.monomial(1, exponent)


def normalize(raw: Iterable[Tuple[int, Union[int, Fraction]]]) -> Hyperreal:
    """Build the canonical value from raw ``(exponent, coefficient)`` pairs."""
    return Hyperreal(raw)


def add(x: Hyperreal, y: Hyperreal) -> Hyperreal:
    if not x:
        return y
    if not y:
        return x
    return Hyperreal(x.terms + y.terms)


def negate(x: Hyperreal) -> Hyperreal:
    return Hyperreal._from_canonical(tuple((k, -c) for k, c in x.terms))


def mul(x: Hyperreal, y: Hyperreal) -> Hyperreal:
    return Hyperreal(
        (kx + ky, cx * cy) for kx, cx in x.terms for ky, cy in y.terms
    )


def scale(x: Hyperreal, factor: Union[int, Fraction]) -> Hyperreal:
    factor = _as_rational(factor)
    if factor == 0:
        return ZERO
    return Hyperreal._from_canonical(tuple((k, c * factor) for k, c in x.terms))


def divide_by_monomial(x: Hyperreal, divisor: Hyperreal) -> Hyperreal:
    """Exact ``x / divisor`` for a single-term divisor ``c * e**k``."""
    if not divisor:
        raise ZeroDivisor(value=format_literal(x))
    if len(divisor.terms) != 1:
        raise EqumError("non_monomial_divisor", divisor=format_literal(divisor))
    (k, c), = divisor.terms
    return Hyperreal._from_canonical(tuple((kx - k, cx / c) for kx, cx in x.terms))


def order_of(x: Hyperreal) -> int:
    """Smallest exponent with a nonzero coefficient."""
    if not x:
        raise ZeroArgument(operation="order_of")
    return x.terms[0][0]


def leading_coefficient(x: Hyperreal) -> Fraction:
    if not x:
        raise ZeroArgument(operation="leading_coefficient")
    return x.terms[0][1]


def sign(x: Hyperreal) -> int:
    if not x:
        return 0
    return 1 if x.terms[0][1] > 0 else -1


def compare_total(x: Hyperreal, y: Hyperreal) -> Ordering:
    """The usual order: the lowest-exponent term of ``x - y`` decides."""
    return Ordering(sign(add(x, negate(y))))


def standard_part(x: Hyperreal) -> Fraction:
    if x and order_of(x) < 0:
        raise InfiniteArgument(operation="standard_part", value=format_literal(x))
    return x.coefficient(0)


def classify_ratio(x: Hyperreal, y: Hyperreal) -> RatioClass:
    """Size class of ``x / y`` from leading terms alone."""
    if not y:
        raise ZeroDivisor(value=format_literal(x))
    if not x:
        return INFINITESIMAL
    difference = order_of(x) - order_of(y)
    if difference > 0:
        return INFINITESIMAL
    if difference < 0:
        return INFINITE
    return RatioClass(
        RatioKind.APPRECIABLE, leading_coefficient(x) / leading_coefficient(y)
    )


def ratio_standard_part(x: Hyperreal, y: Hyperreal) -> Fraction:
    """Standard part of a finite ratio ``x / y``; infinitesimal ratios give 0."""
    ratio = classify_ratio(x, y)
    if ratio.is_infinite:
        raise InfiniteArgument(
            operation="ratio_standard_part",
            value=f"({format_literal(x)}) / ({format_literal(y)})",
        )
    return ratio.standard_part if ratio.is_appreciable else Fraction(0)


def _qualitatively_greater(x: Hyperreal, y: Hyperreal) -> bool:
    # x, y >= 0; the witness r of the definition exists iff x - y keeps x's order
    if compare_total(x, y) is not Ordering.GT:
        return False
    return order_of(add(x, negate(y))) == order_of(x)


def qual_compare(x: Hyperreal, y: Hyperreal) -> QualOrdering:
    """Qualitative comparison, extended to negative values by symmetry."""
    sx, sy = sign(x), sign(y)
    if sx >= 0 and sy >= 0:
        if _qualitatively_greater(x, y):
            return QualOrdering.QGT
        if _qualitatively_greater(y, x):
            return QualOrdering.QLT
        return QualOrdering.QEQ
    if sx >= 0:
        return QualOrdering.QGT
    if sy >= 0:
        return QualOrdering.QLT
    return qual_compare(negate(y), negate(x))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_literal(x: Hyperreal) -> str:
    """Canonical literal, ascending exponents: ``1/2 + 1e1 - 3e2``."""
    if not x:
        return "0"
    parts: List[str] = []
    for index, (exponent, coefficient) in enumerate(x.terms):
        magnitude = format_rational(abs(coefficient))
        term = magnitude if exponent == 0 else f"{magnitude}e{exponent}"
        if index == 0:
            parts.append(term if coefficient > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if coefficient > 0 else '-'} {term}")
    return " ".join(parts)


class _LiteralScanner:
    """Recursive-descent reader for the literal grammar.

    literal  := term (("+" | "-") term)*
    term     := rational ["e" integer]
    rational := integer ["/" positive-integer]
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, position=self.pos)

    def skip_space(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def digits(self) -> int:
        self.skip_space()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected digits")
        return int(self.text[start:self.pos])

    def integer(self) -> int:
        negative = False
        if self.peek() in ("+", "-"):
            negative = self.text[self.pos] == "-"
            self.pos += 1
        value = self.digits()
        return -value if negative else value

    def rational(self) -> Fraction:
        numerator = self.integer()
        if self.peek() == "/":
            self.pos += 1
            denominator = self.digits()
            if denominator == 0:
                raise self.error("denominator must be positive")
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def term(self) -> Term:
        coefficient = self.rational()
        exponent = 0
        if self.peek() == "e":
            self.pos += 1
            exponent = self.integer()
        return exponent, coefficient

    def literal(self) -> Hyperreal:
        terms = [self.term()]
        while self.peek() in ("+", "-"):
            negative = self.text[self.pos] == "-"
            self.pos += 1
            exponent, coefficient = self.term()
            terms.append((exponent, -coefficient if negative else coefficient))
        if self.peek():
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        return Hyperreal(terms)


def parse_literal(text: str) -> Hyperreal:
    """Parse ``"2e1 + 3"``-style literals; ``e`` denotes epsilon."""
    return _LiteralScanner(text).literal()
