"""Exact numeric foundation: rationals, extended reals, points, segments.

All exact analyses run on ``fractions.Fraction`` values (arbitrary-precision
rationals); extended reals add two infinities with a total order.  Floating
point only appears in black-box mode and in report decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import (
    DegenerateSegmentError,
    DimensionMismatchError,
    ParameterRangeError,
)

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or rational string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"n"`` or a decimal string into a Fraction.

    Fraction's own parser already handles all three forms exactly.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterRangeError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render a Fraction as ``"p/q"`` in lowest terms (``"p"`` for integers)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_FINITE = 0
_PLUS = 1
_MINUS = -1


@total_ordering
class XReal:
    """An extended real: a finite rational, ``+inf`` or ``-inf``.

    The order is total: ``-inf < finite(a) < +inf`` for every finite ``a``,
    finite values ordered as rationals.  Instances are immutable and
    hashable.  Arithmetic is deliberately minimal (negation only); the
    analyses never add infinite values.
    """

    __slots__ = ("_kind", "_value")

    def __init__(self, value: RationalLike):
        object.__setattr__(self, "_kind", _FINITE)
        object.__setattr__(self, "_value", as_rational(value))

    @classmethod
    def _make(cls, kind: int, value: Fraction) -> "XReal":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_kind", kind)
        object.__setattr__(obj, "_value", value)
        return obj

    @classmethod
    def coerce(cls, value) -> "XReal":
        """Coerce XReal, rational-like or float (incl. inf) to an XReal."""
        if isinstance(value, XReal):
            return value
        if isinstance(value, float):
            if value == float("inf"):
                return PLUS_INF
            if value == float("-inf"):
                return MINUS_INF
            return cls(Fraction(value))
        return cls(value)

    @classmethod
    def from_string(cls, text: str) -> "XReal":
        text = text.strip()
        if text == "inf":
            return PLUS_INF
        if text == "-inf":
            return MINUS_INF
        return cls(parse_rational(text))

    @property
    def is_finite(self) -> bool:
        return self._kind == _FINITE

    @property
    def is_plus_infinity(self) -> bool:
        return self._kind == _PLUS

    @property
    def is_minus_infinity(self) -> bool:
        return self._kind == _MINUS

    @property
    def finite_value(self) -> Fraction:
        if self._kind != _FINITE:
            raise ParameterRangeError("infinite value has no finite part")
        return self._value

    def _key(self):
        return (self._kind, self._value)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XReal):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other) -> bool:
        if not isinstance(other, XReal):
            return NotImplemented
        if self._kind != other._kind:
            return self._kind < other._kind
        return self._value < other._value

    def __hash__(self):
        return hash(self._key())

    def __neg__(self) -> "XReal":
        if self._kind == _FINITE:
            return XReal(-self._value)
        return MINUS_INF if self._kind == _PLUS else PLUS_INF

    def __float__(self) -> float:
        if self._kind == _PLUS:
            return float("inf")
        if self._kind == _MINUS:
            return float("-inf")
        return self._value.numerator / self._value.denominator

    def __repr__(self) -> str:
        return f"XReal({self.to_string()})"

    def __reduce__(self):
        return (XReal._make, (self._kind, self._value))

    def to_string(self) -> str:
        """Serialize as ``"p/q"``, ``"inf"`` or ``"-inf"``."""
        if self._kind == _PLUS:
            return "inf"
        if self._kind == _MINUS:
            return "-inf"
        return format_rational(self._value)


PLUS_INF = XReal._make(_PLUS, Fraction(0))
MINUS_INF = XReal._make(_MINUS, Fraction(0))


def xreal_compare(a: XReal, b: XReal) -> int:
    """Three-way comparison: -1 (less), 0 (equal), +1 (greater)."""
    if a < b:
        return -1
    if a == b:
        return 0
    return 1


def xreal_max(a: XReal, b: XReal) -> XReal:
    return b if a < b else a


def xreal_min(a: XReal, b: XReal) -> XReal:
    return a if a < b else b


@dataclass(frozen=True)
class Point:
    """A point of n-dimensional rational coordinate space (n >= 1)."""

    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coordinates) < 1:
            raise ParameterRangeError("a point needs at least one coordinate")
        object.__setattr__(
            self, "coordinates", tuple(as_rational(c) for c in self.coordinates)
        )

    @classmethod
    def of(cls, *coords: RationalLike) -> "Point":
        return cls(tuple(as_rational(c) for c in coords))

    @property
    def dimension(self) -> int:
        return len(self.coordinates)


@dataclass(frozen=True)
class Segment:
    """The segment between two points, parameterized z(t) = (1-t)x + t*y.

    With this convention z(0) = x and z(1) = y, so t increases from x
    toward y.  Degenerate segments (x = y) are valid values; analyses that
    need distinct endpoints reject them explicitly.
    """

    x: Point
    y: Point

    def __post_init__(self):
        if self.x.dimension != self.y.dimension:
            raise DimensionMismatchError(
                f"segment endpoints have dimensions "
                f"{self.x.dimension} and {self.y.dimension}"
            )

    @property
    def is_degenerate(self) -> bool:
        return self.x == self.y

    def require_non_degenerate(self):
        if self.is_degenerate:
            raise DegenerateSegmentError("segment endpoints coincide")

    def point_at(self, t: RationalLike) -> Point:
        return segment_point(self, t)


def segment_point(segment: Segment, t: RationalLike) -> Point:
    """Evaluate z(t) = (1-t)x + t*y coordinatewise in exact rationals."""
    t = as_rational(t)
    if not (0 <= t <= 1):
        raise ParameterRangeError(f"segment parameter {t} outside [0, 1]")
    one_minus = 1 - t
    coords = tuple(
        one_minus * a + t * b
        for a, b in zip(segment.x.coordinates, segment.y.coordinates)
    )
    return Point(coords)


@dataclass(frozen=True)
class ToleranceConfig:
    """Grid resolution and black-box comparison margin.

    Exact-mode analyses ignore ``float_epsilon`` entirely; it only widens
    strict comparisons when a black-box model is sampled in floats.
    """

    grid_points: int = 201
    float_epsilon: Fraction = field(default_factory=lambda: Fraction(1, 10**9))

    def __post_init__(self):
        if self.grid_points < 3:
            raise ParameterRangeError("grid_points must be at least 3")
        object.__setattr__(self, "float_epsilon", as_rational(self.float_epsilon))
        if self.float_epsilon < 0:
            raise ParameterRangeError("float_epsilon must be nonnegative")
