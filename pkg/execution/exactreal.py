#!/usr/bin/env python3
"""
Exact real arithmetic over the fixed basis (1, √5, √2, √3).

A QLin is q0 + q1·√5 + q2·√2 + q3·√3 with rational coefficients. Equality is
coefficient equality (the basis is linearly independent over the rationals);
order is decided by refining rational enclosures until they separate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import floor, isqrt
from typing import Iterable, Sequence, Union

BASIS = ('1', '√5', '√2', '√3')
SURDS = (1, 5, 2, 3)

DEFAULT_PRECISION = Fraction(1, 10**6)
PRECISION_ENV = 'SUSPFACTOR_PRECISION'

Rational = Union[int, Fraction]


def starting_precision() -> Fraction:
    """Starting enclosure width, overridable through SUSPFACTOR_PRECISION."""
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        width = Fraction(raw.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{PRECISION_ENV}={raw!r} is not a rational number") from e
    if width <= 0:
        raise ValueError(f"{PRECISION_ENV} must be positive, got {raw!r}")
    return width


class Ordering(Enum):
    LESS = 'Less'
    EQUAL = 'Equal'
    GREATER = 'Greater'


@dataclass(frozen=True, slots=True)
class Enclosure:
    """Closed rational interval [lo, hi]."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q: Rational) -> bool:
        """Closed-interval membership."""
        return self.lo <= q <= self.hi

    def __add__(self, other: Enclosure) -> Enclosure:
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def scaled(self, q: Fraction) -> Enclosure:
        if q >= 0:
            return Enclosure(q * self.lo, q * self.hi)
        return Enclosure(q * self.hi, q * self.lo)


@lru_cache(maxsize=None)
def surd_enclosure(n: int, digits: int) -> Enclosure:
    """Decimal bracket of √n of width at most 10^-digits, exact when n is a square."""
    scale = 10**digits
    root = isqrt(n * scale * scale)
    if root * root == n * scale * scale:
        return Enclosure(Fraction(root, scale), Fraction(root, scale))
    return Enclosure(Fraction(root, scale), Fraction(root + 1, scale))


def _as_fraction(q: Rational | str) -> Fraction:
    """Fraction from an int, a Fraction or a 'p/q' string. Floats are refused."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, float):
        raise TypeError("Floats are not exact; pass a Fraction or a string")
    return Fraction(q)


@total_ordering
@dataclass(frozen=True, slots=True)
class QLin:
    """Exact element of the rational span of (1, √5, √2, √3)."""
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError(f"QLin needs 4 coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, 'coeffs', tuple(_as_fraction(q) for q in self.coeffs))

    @classmethod
    def of(cls, one: Rational | str = 0, sqrt5: Rational | str = 0,
           sqrt2: Rational | str = 0, sqrt3: Rational | str = 0) -> QLin:
        """q0 + q1·√5 + q2·√2 + q3·√3"""
        return cls((one, sqrt5, sqrt2, sqrt3))

    @classmethod
    def rational(cls, q: Rational | str) -> QLin:
        return cls.of(q)

    @classmethod
    def coerce(cls, value: QLin | Rational) -> QLin:
        """Lift ints and Fractions; anything else gives NotImplemented."""
        if isinstance(value, QLin):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        return NotImplemented

    # Arithmetic

    def __add__(self, other: QLin | Rational) -> QLin:
        other = QLin.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QLin(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> QLin:
        return QLin(tuple(-a for a in self.coeffs))

    def __sub__(self, other: QLin | Rational) -> QLin:
        other = QLin.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QLin(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other: QLin | Rational) -> QLin:
        return (-self) + other

    def __mul__(self, q: Rational) -> QLin:
        if isinstance(q, QLin):
            # Products of surds leave the basis.
            return NotImplemented
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return QLin(tuple(a * q for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> QLin:
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / Fraction(q))

    # Order

    def __eq__(self, other: object) -> bool:
        other = QLin.coerce(other) if isinstance(other, (int, Fraction, QLin)) else other
        if not isinstance(other, QLin):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __lt__(self, other: QLin | Rational) -> bool:
        other = QLin.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ql_compare(self, other) is Ordering.LESS

    # Inspection

    @property
    def rational_part(self) -> Fraction:
        return self.coeffs[0]

    def is_rational(self) -> bool:
        """True when every surd coefficient is zero."""
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sign(self) -> int:
        """-1, 0 or 1."""
        order = ql_compare(self, ZERO)
        return {Ordering.LESS: -1, Ordering.EQUAL: 0, Ordering.GREATER: 1}[order]

    def __abs__(self) -> QLin:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        # For drawing only; never used for decisions.
        e = ql_enclose(self, Fraction(1, 10**12))
        return float((e.lo + e.hi) / 2)

    def __str__(self) -> str:
        terms = []
        for q, name in zip(self.coeffs, BASIS):
            if q == 0:
                continue
            if name == '1':
                terms.append(str(q))
            elif q == 1:
                terms.append(name)
            elif q == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{q}{name}")
        if not terms:
            return '0'
        text = terms[0]
        for term in terms[1:]:
            text += f" - {term[1:]}" if term.startswith('-') else f" + {term}"
        return text

    def __repr__(self) -> str:
        return f"QLin({', '.join(str(q) for q in self.coeffs)})"

    # Serialization: four "p/q" strings

    def to_json(self) -> list[str]:
        return [f"{q.numerator}/{q.denominator}" for q in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> QLin:
        if len(data) != 4:
            raise ValueError(f"Expected 4 coefficient strings, got {len(data)}")
        return cls(tuple(Fraction(str(s)) for s in data))


ZERO = QLin.of()
ONE = QLin.of(1)
SQRT5 = QLin.of(sqrt5=1)
SQRT2 = QLin.of(sqrt2=1)
SQRT3 = QLin.of(sqrt3=1)


def ql_arith(a: QLin, b: QLin, op: str) -> QLin:
    """'add' or 'sub'."""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    raise ValueError(f"Unknown operation: {op}")


def ql_scale(a: QLin, q: Rational) -> QLin:
    """Multiply by a rational."""
    return a * _as_fraction(q)


def ql_enclose(a: QLin, width: Rational) -> Enclosure:
    """Rational enclosure of `a` of width at most `width`."""
    width = _as_fraction(width)
    if width <= 0:
        raise ValueError(f"Enclosure width must be positive, got {width}")
    base = Enclosure(a.coeffs[0], a.coeffs[0])
    weight = sum(abs(q) for q in a.coeffs[1:])
    if weight == 0:
        return base

    digits = 1
    while weight / Fraction(10**digits) > width:
        digits += 1

    total = base
    for q, n in zip(a.coeffs[1:], SURDS[1:]):
        if q:
            total = total + surd_enclosure(n, digits).scaled(q)
    return total


def ql_compare(a: QLin, b: QLin) -> Ordering:
    """
    Order two numbers exactly.

    Equal coefficients short-circuit; otherwise the difference is enclosed at
    shrinking widths until the enclosure misses 0.
    """
    if a.coeffs == b.coeffs:
        return Ordering.EQUAL
    diff = a - b
    if diff.is_rational():
        return Ordering.GREATER if diff.rational_part > 0 else Ordering.LESS

    width = starting_precision()
    while True:
        e = ql_enclose(diff, width)
        if e.lo > 0:
            return Ordering.GREATER
        if e.hi < 0:
            return Ordering.LESS
        # Unequal coefficients never denote zero, so this terminates.
        width = width * width if width < 1 else width / 10


def ql_floor(a: QLin) -> int:
    """Exact floor: a coarse enclosure decides unless an integer falls inside it."""
    if a.is_rational():
        return floor(a.rational_part)
    e = ql_enclose(a, Fraction(1, 2))
    low, high = floor(e.lo), floor(e.hi)
    if low == high:
        return low
    # Exactly one integer boundary (high) lies in (lo, hi].
    return high if a >= high else low


def ql_frac(a: QLin) -> QLin:
    """Fractional part a - floor(a), always in [0, 1)."""
    return a - ql_floor(a)


def qmin(a: QLin, b: QLin) -> QLin:
    return a if a <= b else b


def qmax(a: QLin, b: QLin) -> QLin:
    return a if a >= b else b


def rational_between(a: QLin, b: QLin) -> Fraction:
    """A rational strictly between a < b."""
    if not a < b:
        raise ValueError(f"Empty interval: {a} is not below {b}")
    width = starting_precision()
    while True:
        ea, eb = ql_enclose(a, width), ql_enclose(b, width)
        if ea.hi < eb.lo:
            return (ea.hi + eb.lo) / 2
        width /= 16


def linearly_independent(values: Iterable[QLin]) -> bool:
    """True iff the coefficient vectors are independent over the rationals."""
    rows = [list(v.coeffs) for v in values]
    rank = 0
    for col in range(4):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank == len(rows)


# Standard constants: α = (√5 − 1)/2, η₁ = 5 + √2, η₂ = 5 + √3.
ALPHA = QLin.of(Fraction(-1, 2), Fraction(1, 2))
ETA1 = QLin.of(5, 0, 1)
ETA2 = QLin.of(5, 0, 0, 1)
