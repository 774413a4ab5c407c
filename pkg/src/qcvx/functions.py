"""Function models on a closed rational interval.

Four representations of an extended-real-valued function f on [a, b]:

* ``PiecewiseLinear`` -- continuous interpolation through finite knots.
* ``PiecewiseConstant`` -- open pieces with explicit values at every
  breakpoint, so one-sided limits and the value at a point can disagree.
  This is what makes semicontinuity a decidable, exact question.
* ``Tabulated`` -- values known only at sample positions.
* ``Blackbox`` -- an evaluation callback; marked inexact.

The exact variants support closed-form extremum queries (infimum and
supremum over a subinterval with open/closed end flags, argmax sets) that
the violation and certificate analyses build on.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Union

from .core import (
    Point,
    RationalLike,
    Segment,
    ToleranceConfig,
    XReal,
    as_rational,
    format_rational,
    segment_point,
    xreal_max,
    xreal_min,
)
from .errors import (
    DomainError,
    InexactModelError,
    NoSampleError,
    ParameterRangeError,
    PreconditionError,
    SupremumNotAttainedError,
    ValidationError,
)

MAX_CANTOR_DEPTH = 20


# ---------------------------------------------------------------------------
# Cells: a uniform walk over the structure of an exact model.


@dataclass(frozen=True)
class PointCell:
    """A single position with its exact value."""

    position: Fraction
    value: XReal


@dataclass(frozen=True)
class ConstCell:
    """An open span ]left, right[ on which f is constant."""

    left: Fraction
    right: Fraction
    value: XReal


@dataclass(frozen=True)
class AffineCell:
    """An open span ]left, right[ on which f is affine with finite
    one-sided limits ``left_value`` and ``right_value``."""

    left: Fraction
    right: Fraction
    left_value: Fraction
    right_value: Fraction


Cell = Union[PointCell, ConstCell, AffineCell]


class Function1D:
    """Base interface shared by all one-dimensional models."""

    is_exact: bool = False

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        raise NotImplementedError

    def evaluate(self, t: RationalLike) -> XReal:
        raise NotImplementedError

    def breakpoints(self) -> tuple[Fraction, ...]:
        """Structural positions (knots or breaks), domain ends included."""
        raise NotImplementedError

    def negate(self) -> "Function1D":
        raise NotImplementedError

    def _check_domain(self, t: Fraction) -> Fraction:
        a, b = self.domain
        if not (a <= t <= b):
            raise DomainError(f"{t} outside domain [{a}, {b}]")
        return t

    def cells_in(self, lo: Fraction, hi: Fraction) -> Iterator[Cell]:
        raise InexactModelError(
            f"{type(self).__name__} has no exact cell structure"
        )


def require_exact(f: Function1D, operation: str) -> None:
    if not f.is_exact:
        raise InexactModelError(
            f"{operation} needs an exact model, got {type(f).__name__}"
        )


@dataclass(frozen=True)
class PiecewiseLinear(Function1D):
    """Continuous piecewise-linear function through strictly increasing
    knots with finite rational values."""

    knots: tuple[tuple[Fraction, Fraction], ...]

    is_exact = True

    def __post_init__(self):
        knots = tuple(
            (as_rational(p), as_rational(v)) for p, v in self.knots
        )
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise ValidationError("knots", "need at least two knots")
        for (p0, _), (p1, _) in zip(knots, knots[1:]):
            if not p0 < p1:
                raise ValidationError(
                    "knots", f"positions must strictly increase ({p0} !< {p1})"
                )
        object.__setattr__(self, "_positions", tuple(p for p, _ in knots))

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return (self.knots[0][0], self.knots[-1][0])

    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(p for p, _ in self.knots)

    def value_at(self, t: RationalLike) -> Fraction:
        t = self._check_domain(as_rational(t))
        positions = self._positions
        idx = bisect_left(positions, t)
        if idx < len(positions) and positions[idx] == t:
            return self.knots[idx][1]
        p0, v0 = self.knots[idx - 1]
        p1, v1 = self.knots[idx]
        return v0 + (v1 - v0) * (t - p0) / (p1 - p0)

    def evaluate(self, t: RationalLike) -> XReal:
        return XReal(self.value_at(t))

    def negate(self) -> "PiecewiseLinear":
        return PiecewiseLinear(tuple((p, -v) for p, v in self.knots))

    def cells_in(self, lo: Fraction, hi: Fraction) -> Iterator[Cell]:
        lo, hi = self._check_domain(as_rational(lo)), self._check_domain(as_rational(hi))
        if not lo < hi:
            raise ParameterRangeError("cells_in needs lo < hi")
        inner = [p for p, _ in self.knots if lo < p < hi]
        positions = [lo, *inner, hi]
        values = [self.value_at(p) for p in positions]
        yield PointCell(positions[0], XReal(values[0]))
        for i in range(len(positions) - 1):
            yield AffineCell(positions[i], positions[i + 1], values[i], values[i + 1])
            yield PointCell(positions[i + 1], XReal(values[i + 1]))


@dataclass(frozen=True)
class PiecewiseConstant(Function1D):
    """Open constant pieces between breakpoints, with an explicit value at
    every breakpoint.  Piece values and point values may be infinite."""

    breaks: tuple[Fraction, ...]
    piece_values: tuple[XReal, ...]
    point_values: tuple[XReal, ...]

    is_exact = True

    def __post_init__(self):
        breaks = tuple(as_rational(b) for b in self.breaks)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(
            self, "piece_values", tuple(XReal.coerce(v) for v in self.piece_values)
        )
        object.__setattr__(
            self, "point_values", tuple(XReal.coerce(v) for v in self.point_values)
        )
        if len(breaks) < 2:
            raise ValidationError("breaks", "need at least two breakpoints")
        for b0, b1 in zip(breaks, breaks[1:]):
            if not b0 < b1:
                raise ValidationError(
                    "breaks", f"breakpoints must strictly increase ({b0} !< {b1})"
                )
        if len(self.piece_values) != len(breaks) - 1:
            raise ValidationError(
                "piece_values",
                f"expected {len(breaks) - 1} piece values, got {len(self.piece_values)}",
            )
        if len(self.point_values) != len(breaks):
            raise ValidationError(
                "point_values",
                f"expected {len(breaks)} point values, got {len(self.point_values)}",
            )

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return (self.breaks[0], self.breaks[-1])

    def breakpoints(self) -> tuple[Fraction, ...]:
        return self.breaks

    def _piece_index(self, t: Fraction) -> int:
        """Index of the open piece containing t (t not a breakpoint)."""
        return bisect_right(self.breaks, t) - 1

    def evaluate(self, t: RationalLike) -> XReal:
        t = self._check_domain(as_rational(t))
        idx = bisect_left(self.breaks, t)
        if idx < len(self.breaks) and self.breaks[idx] == t:
            return self.point_values[idx]
        return self.piece_values[idx - 1]

    def negate(self) -> "PiecewiseConstant":
        return PiecewiseConstant(
            self.breaks,
            tuple(-v for v in self.piece_values),
            tuple(-v for v in self.point_values),
        )

    def cells_in(self, lo: Fraction, hi: Fraction) -> Iterator[Cell]:
        lo, hi = self._check_domain(as_rational(lo)), self._check_domain(as_rational(hi))
        if not lo < hi:
            raise ParameterRangeError("cells_in needs lo < hi")
        inner = [b for b in self.breaks if lo < b < hi]
        positions = [lo, *inner, hi]
        yield PointCell(lo, self.evaluate(lo))
        for i in range(len(positions) - 1):
            left, right = positions[i], positions[i + 1]
            piece = self.piece_values[self._piece_index((left + right) / 2)]
            yield ConstCell(left, right, piece)
            yield PointCell(right, self.evaluate(right))


@dataclass(frozen=True)
class Tabulated(Function1D):
    """Values known only at strictly increasing sample positions."""

    positions: tuple[Fraction, ...]
    values: tuple[XReal, ...]

    is_exact = False

    def __post_init__(self):
        positions = tuple(as_rational(p) for p in self.positions)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(
            self, "values", tuple(XReal.coerce(v) for v in self.values)
        )
        if len(positions) < 2:
            raise ValidationError("positions", "need at least two samples")
        for p0, p1 in zip(positions, positions[1:]):
            if not p0 < p1:
                raise ValidationError(
                    "positions", f"positions must strictly increase ({p0} !< {p1})"
                )
        if len(self.values) != len(positions):
            raise ValidationError(
                "values",
                f"expected {len(positions)} values, got {len(self.values)}",
            )

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return (self.positions[0], self.positions[-1])

    def breakpoints(self) -> tuple[Fraction, ...]:
        return self.positions

    def evaluate(self, t: RationalLike) -> XReal:
        t = self._check_domain(as_rational(t))
        idx = bisect_left(self.positions, t)
        if idx < len(self.positions) and self.positions[idx] == t:
            return self.values[idx]
        raise NoSampleError(f"{t} is not a sample position")

    def negate(self) -> "Tabulated":
        return Tabulated(self.positions, tuple(-v for v in self.values))


class Blackbox(Function1D):
    """A callback-backed model; marked inexact.

    ``serial=True`` declares the callback unsafe for concurrent
    invocation; analyses must not parallelize over such a function.
    """

    is_exact = False

    def __init__(
        self,
        lo: RationalLike,
        hi: RationalLike,
        callback: Callable[[Fraction], object],
        *,
        serial: bool = False,
        config: Optional[ToleranceConfig] = None,
    ):
        self._lo = as_rational(lo)
        self._hi = as_rational(hi)
        if not self._lo < self._hi:
            raise ValidationError("domain", "need lo < hi")
        self._callback = callback
        self.serial = serial
        self.config = config or ToleranceConfig()

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return (self._lo, self._hi)

    def breakpoints(self) -> tuple[Fraction, ...]:
        return (self._lo, self._hi)

    def evaluate(self, t: RationalLike) -> XReal:
        t = self._check_domain(as_rational(t))
        return XReal.coerce(self._callback(t))

    def negate(self) -> "Blackbox":
        inner = self._callback
        return Blackbox(
            self._lo,
            self._hi,
            lambda t: -XReal.coerce(inner(t)),
            serial=self.serial,
            config=self.config,
        )


def restrict_to_segment(
    g: Callable[[Point], object],
    segment: Segment,
    config: Optional[ToleranceConfig] = None,
) -> Blackbox:
    """Restrict an n-dimensional black box to a segment.

    Returns h on [0, 1] with h(t) = g((1-t)x + t*y), so h(0) = g(x) and
    h(1) = g(y).
    """
    segment.require_non_degenerate()
    return Blackbox(
        0, 1, lambda t: g(segment_point(segment, t)), config=config
    )


# ---------------------------------------------------------------------------
# Semicontinuity audit.


@dataclass(frozen=True)
class SemicontinuityReport:
    is_lsc: bool
    is_usc: bool
    offending_points_lsc: tuple[Fraction, ...]
    offending_points_usc: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "is_lsc": self.is_lsc,
            "is_usc": self.is_usc,
            "offending_points_lsc": [format_rational(p) for p in self.offending_points_lsc],
            "offending_points_usc": [format_rational(p) for p in self.offending_points_usc],
        }


def check_semicontinuity(f: Function1D) -> SemicontinuityReport:
    """Decide lower/upper semicontinuity exactly for an exact model.

    Piecewise-linear functions are continuous, hence both.  For
    piecewise-constant functions the one-sided limits at a breakpoint are
    the adjacent piece values: lsc requires the point value to be at most
    every adjacent piece value, usc at least every one.  At the domain
    ends only the inner side constrains.  Semicontinuity of sampled or
    black-box models is undecidable and rejected.
    """
    if isinstance(f, PiecewiseLinear):
        return SemicontinuityReport(True, True, (), ())
    if not isinstance(f, PiecewiseConstant):
        raise InexactModelError(
            f"semicontinuity undecidable for {type(f).__name__}"
        )
    bad_lsc: list[Fraction] = []
    bad_usc: list[Fraction] = []
    n_pieces = len(f.piece_values)
    for i, b in enumerate(f.breaks):
        limits = []
        if i > 0:
            limits.append(f.piece_values[i - 1])
        if i < n_pieces:
            limits.append(f.piece_values[i])
        w = f.point_values[i]
        lo_limit = limits[0] if len(limits) == 1 else xreal_min(*limits)
        hi_limit = limits[0] if len(limits) == 1 else xreal_max(*limits)
        if not w <= lo_limit:
            bad_lsc.append(b)
        if not w >= hi_limit:
            bad_usc.append(b)
    return SemicontinuityReport(
        not bad_lsc, not bad_usc, tuple(bad_lsc), tuple(bad_usc)
    )


# ---------------------------------------------------------------------------
# Cantor approximant generators.


def _cantor_components(depth: int) -> list[tuple[Fraction, Fraction]]:
    parts = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for a, b in parts:
            third = (b - a) / 3
            nxt.append((a, a + third))
            nxt.append((b - third, b))
        parts = nxt
    return parts


def generate_cantor(depth: int, mode: str) -> PiecewiseConstant:
    """Indicator of the depth-k middle-thirds approximant, or of its open
    complement, as an exact piecewise-constant model on [0, 1].

    ``mode="set"``: value 1 on the union of 2**k closed intervals that
    remains after removing middle thirds k times, 0 elsewhere; breakpoint
    values are 1 (the retained intervals are closed).  ``mode="complement"``:
    the pointwise 1-complement, the indicator of the removed open set.
    """
    if not isinstance(depth, int) or not 1 <= depth <= MAX_CANTOR_DEPTH:
        raise ParameterRangeError(
            f"depth must be an integer in [1, {MAX_CANTOR_DEPTH}], got {depth}"
        )
    if mode not in ("set", "complement"):
        raise ParameterRangeError(f"mode must be 'set' or 'complement', got {mode!r}")
    components = _cantor_components(depth)
    breaks: list[Fraction] = []
    for a, b in components:
        breaks.append(a)
        breaks.append(b)
    inside = XReal(1) if mode == "set" else XReal(0)
    outside = XReal(0) if mode == "set" else XReal(1)
    pieces: list[XReal] = []
    for i in range(len(breaks) - 1):
        # Even-indexed gaps are interiors of retained intervals.
        pieces.append(inside if i % 2 == 0 else outside)
    points = [inside] * len(breaks)
    f = PiecewiseConstant(tuple(breaks), tuple(pieces), tuple(points))
    if mode == "complement":
        removed = sum(1 for v in f.piece_values if v == XReal(1))
        if removed != 2**depth - 1:
            raise AssertionError(
                f"complement construction produced {removed} removed pieces, "
                f"expected {2 ** depth - 1}"
            )
    return f


# ---------------------------------------------------------------------------
# Exact extrema.


@dataclass(frozen=True)
class _Candidate:
    value: XReal
    attained: bool
    interior: bool
    witness: Optional[Fraction]


def _candidates(
    f: Function1D,
    lo: Fraction,
    hi: Fraction,
    lo_closed: bool,
    hi_closed: bool,
) -> list[_Candidate]:
    continuous = isinstance(f, PiecewiseLinear)
    out: list[_Candidate] = []
    for cell in f.cells_in(lo, hi):
        if isinstance(cell, PointCell):
            pos, val = cell.position, cell.value
            if lo < pos < hi:
                out.append(_Candidate(val, True, True, pos))
            elif (pos == lo and lo_closed) or (pos == hi and hi_closed):
                out.append(_Candidate(val, True, False, pos))
            elif continuous:
                # Excluded endpoint of a continuous model still bounds the
                # extremum as an unattained limit.
                out.append(_Candidate(val, False, False, None))
        elif isinstance(cell, ConstCell):
            mid = (cell.left + cell.right) / 2
            out.append(_Candidate(cell.value, True, True, mid))
        else:
            if cell.left_value == cell.right_value:
                mid = (cell.left + cell.right) / 2
                out.append(_Candidate(XReal(cell.left_value), True, True, mid))
            # Non-constant affine spans attain extrema only at their ends,
            # which the surrounding point cells already cover.
    return out


def _extremum(
    f: Function1D,
    lo: Fraction,
    hi: Fraction,
    *,
    lo_closed: bool,
    hi_closed: bool,
    maximize: bool,
) -> tuple[XReal, bool, Optional[Fraction]]:
    cands = _candidates(f, lo, hi, lo_closed, hi_closed)
    best = cands[0].value
    for c in cands[1:]:
        if (c.value > best) if maximize else (c.value < best):
            best = c.value
    witness = None
    attained_interior = False
    for c in cands:
        if c.value == best and c.attained and c.interior:
            attained_interior = True
            witness = c.witness
            break
    return best, attained_interior, witness


def _validate_subinterval(f: Function1D, lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = as_rational(lo), as_rational(hi)
    a, b = f.domain
    if not (a <= lo and hi <= b):
        raise DomainError(f"[{lo}, {hi}] not within domain [{a}, {b}]")
    if not lo < hi:
        raise ParameterRangeError("interval needs nonempty interior (lo < hi)")
    return lo, hi


def infimum_on(
    f: Function1D,
    lo: RationalLike,
    hi: RationalLike,
    *,
    lo_closed: bool = False,
    hi_closed: bool = False,
) -> tuple[XReal, bool]:
    """Exact infimum of f over a subinterval with end flags.

    Returns ``(value, attained_interior)`` where the flag is true iff some
    point of the open interior achieves the infimum.
    """
    require_exact(f, "infimum_on")
    lo, hi = _validate_subinterval(f, lo, hi)
    value, attained, _ = _extremum(
        f, lo, hi, lo_closed=lo_closed, hi_closed=hi_closed, maximize=False
    )
    return value, attained


def supremum_on(
    f: Function1D,
    lo: RationalLike,
    hi: RationalLike,
    *,
    lo_closed: bool = False,
    hi_closed: bool = False,
) -> tuple[XReal, bool]:
    """Exact supremum of f over a subinterval with end flags; the flag is
    true iff some point of the open interior achieves it."""
    require_exact(f, "supremum_on")
    lo, hi = _validate_subinterval(f, lo, hi)
    value, attained, _ = _extremum(
        f, lo, hi, lo_closed=lo_closed, hi_closed=hi_closed, maximize=True
    )
    return value, attained


# ---------------------------------------------------------------------------
# Argmax sets.


@dataclass(frozen=True)
class ClosedSet1D:
    """A finite union of pairwise disjoint closed intervals (points
    allowed), sorted; touching intervals are merged."""

    components: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        comps = tuple(
            (as_rational(l), as_rational(r)) for l, r in self.components
        )
        object.__setattr__(self, "components", comps)
        for l, r in comps:
            if not l <= r:
                raise ParameterRangeError(f"closed interval needs l <= r, got [{l}, {r}]")
        for (_, r0), (l1, _) in zip(comps, comps[1:]):
            if not r0 < l1:
                raise ParameterRangeError("closed components must be disjoint and sorted")

    @classmethod
    def from_parts(cls, parts: Sequence[tuple[Fraction, Fraction]]) -> "ClosedSet1D":
        items = sorted((as_rational(l), as_rational(r)) for l, r in parts)
        merged: list[tuple[Fraction, Fraction]] = []
        for l, r in items:
            if merged and l <= merged[-1][1]:
                if r > merged[-1][1]:
                    merged[-1] = (merged[-1][0], r)
            else:
                merged.append((l, r))
        return cls(tuple(merged))

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def contains(self, t: RationalLike) -> bool:
        t = as_rational(t)
        idx = bisect_left(self.components, t, key=lambda c: c[0])
        if idx < len(self.components) and self.components[idx][0] == t:
            return True
        if idx == 0:
            return False
        l, r = self.components[idx - 1]
        return l <= t <= r

    def min_point(self) -> Fraction:
        if self.is_empty:
            raise SupremumNotAttainedError("empty set has no minimum")
        return self.components[0][0]

    def max_point(self) -> Fraction:
        if self.is_empty:
            raise SupremumNotAttainedError("empty set has no maximum")
        return self.components[-1][1]

    def to_json(self) -> list[dict]:
        return [
            {"l": format_rational(l), "r": format_rational(r)}
            for l, r in self.components
        ]


def argmax_set(
    f: Function1D, x0: RationalLike, y0: RationalLike
) -> tuple[XReal, ClosedSet1D]:
    """Supremum of f over the open interval ]x0, y0[ together with the set
    of points of the closed interval [x0, y0] attaining it.

    The attaining set of an upper-semicontinuous exact model is a finite
    union of closed intervals whenever the interior supremum dominates the
    endpoint values.  If the attaining set fails to be closed (possible
    only when that hypothesis is violated), a precondition error is
    raised rather than returning a set with wrong membership.
    """
    require_exact(f, "argmax_set")
    x0, y0 = _validate_subinterval(f, x0, y0)
    sup, _, _ = _extremum(
        f, x0, y0, lo_closed=False, hi_closed=False, maximize=True
    )
    parts: list[tuple[Fraction, Fraction]] = []
    for cell in f.cells_in(x0, y0):
        if isinstance(cell, PointCell):
            if cell.value == sup:
                parts.append((cell.position, cell.position))
        elif isinstance(cell, ConstCell):
            if cell.value == sup:
                for endpoint in (cell.left, cell.right):
                    if f.evaluate(endpoint) != sup:
                        raise PreconditionError(
                            "argmax set is not closed at "
                            f"{endpoint}; upper semicontinuity of the "
                            "certificate flow is violated there"
                        )
                parts.append((cell.left, cell.right))
        else:
            if cell.left_value == cell.right_value and XReal(cell.left_value) == sup:
                parts.append((cell.left, cell.right))
    if not parts:
        raise SupremumNotAttainedError(
            f"no point of [{x0}, {y0}] attains the interior supremum {sup.to_string()}"
        )
    return sup, ClosedSet1D.from_parts(parts)


# ---------------------------------------------------------------------------
# Document serialization.


def _xreal_list(values: Sequence[XReal]) -> list[str]:
    return [v.to_string() for v in values]


def function_to_dict(f: Function1D) -> dict:
    """Serialize an exact or tabulated model to its document form."""
    if isinstance(f, PiecewiseLinear):
        a, b = f.domain
        return {
            "type": "piecewise_linear",
            "domain": [format_rational(a), format_rational(b)],
            "knots": [[format_rational(p), format_rational(v)] for p, v in f.knots],
        }
    if isinstance(f, PiecewiseConstant):
        return {
            "type": "piecewise_constant",
            "breaks": [format_rational(b) for b in f.breaks],
            "piece_values": _xreal_list(f.piece_values),
            "point_values": _xreal_list(f.point_values),
        }
    if isinstance(f, Tabulated):
        return {
            "type": "tabulated",
            "positions": [format_rational(p) for p in f.positions],
            "values": _xreal_list(f.values),
        }
    raise ValidationError("type", f"{type(f).__name__} is not serializable")


def _require_field(doc: dict, name: str):
    if name not in doc:
        raise ValidationError(name, "missing required field")
    return doc[name]


def _parse_rational_field(field: str, text) -> Fraction:
    if not isinstance(text, str):
        raise ValidationError(field, f"expected a rational string, got {text!r}")
    try:
        return as_rational(text)
    except (ParameterRangeError, TypeError) as exc:
        raise ValidationError(field, str(exc)) from exc


def _parse_xreal_field(field: str, text) -> XReal:
    if not isinstance(text, str):
        raise ValidationError(field, f"expected a value string, got {text!r}")
    try:
        return XReal.from_string(text)
    except (ParameterRangeError, TypeError) as exc:
        raise ValidationError(field, str(exc)) from exc


def function_from_dict(doc: dict) -> Function1D:
    """Parse and validate a function document.

    Raises :class:`ValidationError` naming the offending field on any
    malformed input.
    """
    if not isinstance(doc, dict):
        raise ValidationError("document", "expected a JSON object")
    kind = _require_field(doc, "type")
    if kind == "piecewise_linear":
        knots_raw = _require_field(doc, "knots")
        if not isinstance(knots_raw, list) or not knots_raw:
            raise ValidationError("knots", "expected a non-empty list")
        knots = []
        for i, entry in enumerate(knots_raw):
            if not isinstance(entry, list) or len(entry) != 2:
                raise ValidationError(f"knots[{i}]", "expected a [position, value] pair")
            knots.append(
                (
                    _parse_rational_field(f"knots[{i}][0]", entry[0]),
                    _parse_rational_field(f"knots[{i}][1]", entry[1]),
                )
            )
        f = PiecewiseLinear(tuple(knots))
        if "domain" in doc:
            dom = doc["domain"]
            if (
                not isinstance(dom, list)
                or len(dom) != 2
                or (_parse_rational_field("domain[0]", dom[0]), _parse_rational_field("domain[1]", dom[1])) != f.domain
            ):
                raise ValidationError("domain", "does not match first/last knot positions")
        return f
    if kind == "piecewise_constant":
        breaks = [
            _parse_rational_field(f"breaks[{i}]", b)
            for i, b in enumerate(_require_field(doc, "breaks"))
        ]
        piece_values = [
            _parse_xreal_field(f"piece_values[{i}]", v)
            for i, v in enumerate(_require_field(doc, "piece_values"))
        ]
        point_values = [
            _parse_xreal_field(f"point_values[{i}]", v)
            for i, v in enumerate(_require_field(doc, "point_values"))
        ]
        return PiecewiseConstant(tuple(breaks), tuple(piece_values), tuple(point_values))
    if kind == "cantor":
        depth = _require_field(doc, "depth")
        mode = _require_field(doc, "mode")
        if not isinstance(depth, int):
            raise ValidationError("depth", f"expected an integer, got {depth!r}")
        try:
            return generate_cantor(depth, mode)
        except ParameterRangeError as exc:
            raise ValidationError("depth" if "depth" in str(exc) else "mode", str(exc)) from exc
    if kind == "tabulated":
        positions = [
            _parse_rational_field(f"positions[{i}]", p)
            for i, p in enumerate(_require_field(doc, "positions"))
        ]
        values = [
            _parse_xreal_field(f"values[{i}]", v)
            for i, v in enumerate(_require_field(doc, "values"))
        ]
        return Tabulated(tuple(positions), tuple(values))
    raise ValidationError("type", f"unknown function type {kind!r}")
