"""Certificates of non-quasiconvexity and local maxima analysis.

A function that is upper semicontinuous on a closed interval and not
quasiconvex there admits a pair of interior points p <= q with equal
values, both local maxima, p strict from the left and q strict from the
right: take the minimum and maximum of the set of points attaining the
interior supremum.  This module extracts that certificate exactly for
piecewise models, enumerates interior local maxima with one-sided
strictness classification, and evaluates the derived sufficient
condition for quasiconvexity (no local maximum strict from either side).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .core import RationalLike, XReal, as_rational, format_rational, xreal_max
from .errors import InteriorRequiredError, SemicontinuityError
from .functions import (
    ClosedSet1D,
    Function1D,
    PiecewiseConstant,
    PiecewiseLinear,
    argmax_set,
    check_semicontinuity,
    require_exact,
    supremum_on,
)
from .violations import _validate_pair


@dataclass(frozen=True)
class LocalMaximum:
    """A maximal region of interior local-maximum points with a common
    value: a single point (left == right) or a plateau.

    ``left_closed``/``right_closed`` record whether the edge position
    itself belongs to the region (a plateau bordered by larger values on
    one side excludes that edge point).  ``strict_from_left`` means the
    function stays strictly below ``value`` on ]left - delta, left[ for
    the reported delta; a false flag on an interior closed edge means an
    equal-value point lies within delta on that side (inside a plateau)
    or the neighbor values exceed the region's value.  Edges on the
    domain boundary are never strict.
    """

    left: Fraction
    right: Fraction
    left_closed: bool
    right_closed: bool
    value: XReal
    strict_from_left: bool
    strict_from_right: bool
    witness_delta: Fraction

    @property
    def is_plateau(self) -> bool:
        return self.left < self.right

    @property
    def strict_somewhere(self) -> bool:
        return self.strict_from_left or self.strict_from_right

    def to_json(self) -> dict:
        return {
            "left": format_rational(self.left),
            "right": format_rational(self.right),
            "left_closed": self.left_closed,
            "right_closed": self.right_closed,
            "value": self.value.to_string(),
            "strict_from_left": self.strict_from_left,
            "strict_from_right": self.strict_from_right,
            "witness_delta": format_rational(self.witness_delta),
        }


@dataclass(frozen=True)
class _Atom:
    """One structural atom of an exact model: a breakpoint/knot or an
    open constant span, with whether it weakly dominates its immediate
    neighbors (the necessary condition for carrying local maxima at its
    closure interface)."""

    left: Fraction
    right: Fraction
    is_point: bool
    value: XReal
    dominating: bool


def _piecewise_linear_atoms(f: PiecewiseLinear) -> Iterator[_Atom]:
    knots = f.knots
    slopes = [
        (v1 - v0) / (p1 - p0)
        for (p0, v0), (p1, v1) in zip(knots, knots[1:])
    ]
    m = len(knots) - 1
    for i, (p, v) in enumerate(knots):
        into_ok = i == 0 or slopes[i - 1] >= 0
        out_ok = i == m or slopes[i] <= 0
        yield _Atom(p, p, True, XReal(v), into_ok and out_ok)
        if i < m:
            flat = slopes[i] == 0
            yield _Atom(p, knots[i + 1][0], False, XReal(v), flat)


def _piecewise_constant_atoms(f: PiecewiseConstant) -> Iterator[_Atom]:
    n = len(f.piece_values)
    for i, b in enumerate(f.breaks):
        w = f.point_values[i]
        left_ok = i == 0 or w >= f.piece_values[i - 1]
        right_ok = i == n or w >= f.piece_values[i]
        yield _Atom(b, b, True, w, left_ok and right_ok)
        if i < n:
            v = f.piece_values[i]
            dom = v >= w and v >= f.point_values[i + 1]
            yield _Atom(b, f.breaks[i + 1], False, v, dom)


def _adjacent_gap(breaks: tuple[Fraction, ...], position: Fraction, side: str) -> Optional[Fraction]:
    """Width of the structural gap immediately left/right of a position."""
    if side == "left":
        below = [b for b in breaks if b < position]
        return position - max(below) if below else None
    above = [b for b in breaks if b > position]
    return min(above) - position if above else None


def enumerate_local_maxima(f: Function1D) -> list[LocalMaximum]:
    """All regions of interior local-maximum points, plateaus grouped.

    A region is a maximal chain of equal-valued dominating atoms.  Within
    a chain every point is a weak local maximum; one-sided strictness can
    only occur at a closed chain edge whose outside neighbor values lie
    strictly below the chain value, which is read off the adjacent slope
    (piecewise linear) or the adjacent piece value (piecewise constant).
    """
    require_exact(f, "enumerate_local_maxima")
    if isinstance(f, PiecewiseLinear):
        atoms = list(_piecewise_linear_atoms(f))
    else:
        atoms = list(_piecewise_constant_atoms(f))
    a, b = f.domain
    breaks = f.breakpoints()
    records: list[LocalMaximum] = []
    i = 0
    while i < len(atoms):
        if not atoms[i].dominating:
            i += 1
            continue
        j = i
        value = atoms[i].value
        while (
            j + 1 < len(atoms)
            and atoms[j + 1].dominating
            and atoms[j + 1].value == value
        ):
            j += 1
        chain = atoms[i : j + 1]
        i = j + 1
        left, right = chain[0].left, chain[-1].right
        left_closed, right_closed = chain[0].is_point, chain[-1].is_point
        if left == right and not a < left < b:
            continue  # boundary extremum, not an interior local maximum
        strict_left = bool(
            left_closed and left > a and _outside_below(f, left, "left", value)
        )
        strict_right = bool(
            right_closed and right < b and _outside_below(f, right, "right", value)
        )
        deltas = [
            g
            for g in (
                _adjacent_gap(breaks, left, "left"),
                _adjacent_gap(breaks, right, "right"),
            )
            if g is not None
        ]
        delta = min(deltas) if deltas else (b - a) / 2
        records.append(
            LocalMaximum(
                left=left,
                right=right,
                left_closed=left_closed,
                right_closed=right_closed,
                value=value,
                strict_from_left=strict_left,
                strict_from_right=strict_right,
                witness_delta=delta,
            )
        )
    return records


def _outside_below(f: Function1D, edge: Fraction, side: str, value: XReal) -> bool:
    """Whether f stays strictly below ``value`` immediately beyond an edge."""
    if isinstance(f, PiecewiseConstant):
        idx = f.breaks.index(edge)
        neighbor = f.piece_values[idx - 1] if side == "left" else f.piece_values[idx]
        return neighbor < value
    positions = [p for p, _ in f.knots]
    idx = positions.index(edge)
    if side == "left":
        p0, v0 = f.knots[idx - 1]
        p1, v1 = f.knots[idx]
    else:
        p0, v0 = f.knots[idx]
        p1, v1 = f.knots[idx + 1]
    slope = (v1 - v0) / (p1 - p0)
    return slope > 0 if side == "left" else slope < 0


@dataclass(frozen=True)
class MaximaHypothesisResult:
    """Whether every interior local maximum is non-strict on both sides.

    For an upper-semicontinuous function this property forces
    quasiconvexity; the converse fails (a quasiconvex ramp-then-plateau
    has a local maximum strict from the left), so the check is one
    directional.
    """

    holds: bool
    offending: tuple[LocalMaximum, ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "offending": [m.to_json() for m in self.offending],
        }


def check_no_strict_sided_maxima(f: Function1D) -> MaximaHypothesisResult:
    offending = tuple(
        m for m in enumerate_local_maxima(f) if m.strict_somewhere
    )
    return MaximaHypothesisResult(holds=not offending, offending=offending)


@dataclass(frozen=True)
class LocalShape:
    """One-point local shape classification.

    ``locally_quasiconvex``: for some delta, every pair taken from the
    two one-sided punctured neighborhoods has max value >= f(p).
    ``locally_strictly_quasiconcave``: for some delta, f stays strictly
    below f(p) on both punctured sides.  ``delta`` reports the witnessing
    radius when either predicate holds.
    """

    locally_quasiconvex: bool
    locally_strictly_quasiconcave: bool
    delta: Optional[Fraction]

    def to_json(self) -> dict:
        return {
            "locally_quasiconvex": self.locally_quasiconvex,
            "locally_strictly_quasiconcave": self.locally_strictly_quasiconcave,
            "delta": None if self.delta is None else format_rational(self.delta),
        }


def local_quasiconvexity_at(f: Function1D, p: RationalLike) -> LocalShape:
    """Decide the local predicates exactly at an interior point.

    Both predicates stabilize once delta is small enough that each
    punctured side lies within a single structural regime, so it
    suffices to evaluate them at the largest such delta.
    """
    require_exact(f, "local_quasiconvexity_at")
    p = as_rational(p)
    a, b = f.domain
    if not a < p < b:
        raise InteriorRequiredError(f"{p} is not interior to [{a}, {b}]")
    breaks = f.breakpoints()
    prev_b = max(x for x in breaks if x < p) if any(x < p for x in breaks) else a
    next_b = min(x for x in breaks if x > p) if any(x > p for x in breaks) else b
    delta = min(p - prev_b, next_b - p)
    fp = f.evaluate(p)
    inf_left, _ = _side_extremum(f, p - delta, p, maximize=False)
    inf_right, _ = _side_extremum(f, p, p + delta, maximize=False)
    sup_left, att_left = _side_extremum(f, p - delta, p, maximize=True)
    sup_right, att_right = _side_extremum(f, p, p + delta, maximize=True)
    locally_qc = inf_left >= fp or inf_right >= fp
    strict_left = sup_left < fp or (sup_left == fp and not att_left)
    strict_right = sup_right < fp or (sup_right == fp and not att_right)
    strictly_qcc = strict_left and strict_right
    return LocalShape(
        locally_quasiconvex=locally_qc,
        locally_strictly_quasiconcave=strictly_qcc,
        delta=delta if (locally_qc or strictly_qcc) else None,
    )


def _side_extremum(f, lo, hi, *, maximize):
    from .functions import _extremum

    return _extremum(
        f, lo, hi, lo_closed=False, hi_closed=False, maximize=maximize
    )[:2]


@dataclass(frozen=True)
class CertificateChecks:
    """The three verified properties of a paired-maxima certificate:
    equal values at p and q, both global (hence local) maxima of the open
    interval, p strict from the left and q strict from the right."""

    values_equal: bool
    both_local_maxima: bool
    one_sided_strictness: bool

    @property
    def all_passed(self) -> bool:
        return self.values_equal and self.both_local_maxima and self.one_sided_strictness

    def to_json(self) -> dict:
        return {
            "values_equal": self.values_equal,
            "both_local_maxima": self.both_local_maxima,
            "one_sided_strictness": self.one_sided_strictness,
        }


@dataclass(frozen=True)
class PairedMaximaCertificate:
    """Witness of non-quasiconvexity on [x0, y0]: the extreme points
    p = min and q = max of the argmax set of the interior supremum,
    carrying one-sided strictness evidence."""

    x0: Fraction
    y0: Fraction
    sup_value: XReal
    argmax: ClosedSet1D
    p: Fraction
    q: Fraction
    checks: CertificateChecks

    def to_json(self) -> dict:
        sup_decimal = (
            float(self.sup_value)
            if self.sup_value.is_finite
            else self.sup_value.to_string()
        )
        return {
            "interval": [format_rational(self.x0), format_rational(self.y0)],
            "sup_value": self.sup_value.to_string(),
            "sup_value_decimal": sup_decimal,
            "argmax": self.argmax.to_json(),
            "p": format_rational(self.p),
            "p_decimal": float(self.p),
            "q": format_rational(self.q),
            "q_decimal": float(self.q),
            "checks": self.checks.to_json(),
        }


def paired_maxima_certificate(
    f: Function1D, x0: RationalLike, y0: RationalLike
) -> Optional[PairedMaximaCertificate]:
    """Extract the paired-maxima certificate on [x0, y0], or None when no
    interior point exceeds max(f(x0), f(y0)) (f is then quasiconvex when
    restricted to that segment).

    Upper semicontinuity is a hard precondition: the argmax set of a
    non-usc function may be empty or fail to be closed, and the audit
    failure is raised, not warned.
    """
    require_exact(f, "paired_maxima_certificate")
    report = check_semicontinuity(f)
    if not report.is_usc:
        raise SemicontinuityError(
            "certificate extraction needs an upper semicontinuous function; "
            "offending breakpoints: "
            + ", ".join(format_rational(p) for p in report.offending_points_usc),
            offending=report.offending_points_usc,
        )
    x0, y0 = _validate_pair(f, x0, y0)
    threshold = xreal_max(f.evaluate(x0), f.evaluate(y0))
    sup_open, _ = supremum_on(f, x0, y0)
    if not sup_open > threshold:
        return None
    sup, attaining = argmax_set(f, x0, y0)
    p = attaining.min_point()
    q = attaining.max_point()
    fp, fq = f.evaluate(p), f.evaluate(q)
    values_equal = fp == sup and fq == sup
    both_local_maxima = sup_open <= fp and sup_open <= fq
    strict_left = _strictly_below_on(f, x0, p, fp)
    strict_right = _strictly_below_on(f, q, y0, fq)
    return PairedMaximaCertificate(
        x0=x0,
        y0=y0,
        sup_value=sup,
        argmax=attaining,
        p=p,
        q=q,
        checks=CertificateChecks(
            values_equal=values_equal,
            both_local_maxima=both_local_maxima,
            one_sided_strictness=strict_left and strict_right,
        ),
    )


def _strictly_below_on(f, lo: Fraction, hi: Fraction, bound: XReal) -> bool:
    """Whether f < bound at every point of ]lo, hi[."""
    sup, attained = supremum_on(f, lo, hi)
    return sup < bound or (sup == bound and not attained)


@dataclass(frozen=True)
class Revalidation:
    """Grid re-check of a certificate by direct evaluation."""

    grid_points: int
    checked_points: int
    all_passed: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "grid_points": self.grid_points,
            "checked_points": self.checked_points,
            "all_passed": self.all_passed,
            "failures": list(self.failures),
        }


def revalidate_certificate(
    f: Function1D, cert: PairedMaximaCertificate, grid_points: int = 201
) -> Revalidation:
    """Re-check the certificate on a breakpoint-refined evaluation grid:
    no interior value exceeds the supremum, values left of p and right of
    q stay strictly below it, and f(p) = f(q) = sup."""
    x0, y0 = cert.x0, cert.y0
    positions = sorted(
        set(
            [x0 + (y0 - x0) * Fraction(i, grid_points - 1) for i in range(grid_points)]
            + [p for p in f.breakpoints() if x0 <= p <= y0]
            + [cert.p, cert.q]
        )
    )
    failures: list[str] = []
    sup = cert.sup_value
    if f.evaluate(cert.p) != sup or f.evaluate(cert.q) != sup:
        failures.append("endpoint values differ from supremum")
    for t in positions:
        v = f.evaluate(t)
        if x0 < t < y0 and v > sup:
            failures.append(f"f({format_rational(t)}) exceeds the supremum")
        if x0 < t < cert.p and not v < sup:
            failures.append(f"f({format_rational(t)}) not strictly below left of p")
        if cert.q < t < y0 and not v < sup:
            failures.append(f"f({format_rational(t)}) not strictly below right of q")
    return Revalidation(
        grid_points=grid_points,
        checked_points=len(positions),
        all_passed=not failures,
        failures=tuple(failures[:10]),
    )
