"""Shared independent oracles for the test suite.

These helpers deliberately avoid the library's analysis code paths: set
membership walks base-3 digits, extrema come from dense evaluation
sweeps, and local maxima are classified by direct comparison on offset
grids.  Derived expected values in the tests are computed (or frozen
from) these.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qcvx import MINUS_INF, PLUS_INF, PiecewiseConstant, XReal

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def cantor_membership(t: Fraction, depth: int) -> bool:
    """Digit-walk membership test for the depth-k middle-thirds set."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        return False
    for _ in range(depth):
        if t <= Fraction(1, 3):
            t = 3 * t
        elif t >= Fraction(2, 3):
            t = 3 * t - 2
        else:
            return False
    return True


def middle_thirds_components(depth: int) -> list[tuple[Fraction, Fraction]]:
    """Closed intervals remaining after k middle-third removals."""
    parts = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        parts = [
            piece
            for a, b in parts
            for piece in ((a, a + (b - a) / 3), (b - (b - a) / 3, b))
        ]
    return parts


def removed_open_intervals(depth: int) -> list[tuple[Fraction, Fraction]]:
    """The open middle thirds removed during the first k rounds."""
    kept = middle_thirds_components(depth)
    out = []
    for (_, r0), (l1, _) in zip(kept, kept[1:]):
        out.append((r0, l1))
    return out


def uniform_grid(lo: Fraction, hi: Fraction, n: int) -> list[Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    return [lo + (hi - lo) * Fraction(i, n - 1) for i in range(n)]


def refined_grid(f, n: int) -> list[Fraction]:
    """Uniform grid joined with all breakpoints and piece midpoints."""
    a, b = f.domain
    pts = set(uniform_grid(a, b, n))
    bps = f.breakpoints()
    pts.update(bps)
    for b0, b1 in zip(bps, bps[1:]):
        pts.add((b0 + b1) / 2)
    return sorted(pts)


def sweep_min(f, lo: Fraction, hi: Fraction, n: int = 400):
    """Dense-sweep minimum over the open interval: (value, argmin)."""
    best = None
    arg = None
    for t in uniform_grid(lo, hi, n)[1:-1]:
        v = f.evaluate(t)
        if best is None or v < best:
            best, arg = v, t
    return best, arg


def is_local_max_on_grid(f, p: Fraction, delta: Fraction, steps: int = 16) -> dict:
    """Classify p by direct evaluation at offsets within delta."""
    fp = f.evaluate(p)
    left = [f.evaluate(p - delta * Fraction(i, steps)) for i in range(1, steps + 1)]
    right = [f.evaluate(p + delta * Fraction(i, steps)) for i in range(1, steps + 1)]
    return {
        "local_max": all(v <= fp for v in left) and all(v <= fp for v in right),
        "strict_left": all(v < fp for v in left),
        "strict_right": all(v < fp for v in right),
    }


def random_pwc(seed: int, *, pieces: int = 5, allow_infinite: bool = False) -> PiecewiseConstant:
    rng = random.Random(seed)
    inner = sorted(rng.sample(range(1, 60), pieces - 1))
    breaks = [Fraction(0)] + [Fraction(i, 60) for i in inner] + [Fraction(1)]

    def draw() -> XReal:
        if allow_infinite and rng.random() < 0.1:
            return PLUS_INF if rng.random() < 0.5 else MINUS_INF
        return XReal(Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4))))

    piece_values = [draw() for _ in range(len(breaks) - 1)]
    point_values = [draw() for _ in range(len(breaks))]
    return PiecewiseConstant(tuple(breaks), tuple(piece_values), tuple(point_values))


def has_violating_triple_on_grid(f, grid: list[Fraction]) -> bool:
    """Literal scan: some x < z < y on the grid with f(z) > max(f(x), f(y))."""
    values = [f.evaluate(t) for t in grid]
    n = len(values)
    prefix = values[:]
    for i in range(1, n):
        prefix[i] = min(prefix[i], prefix[i - 1])
    suffix = values[:]
    for i in range(n - 2, -1, -1):
        suffix[i] = min(suffix[i], suffix[i + 1])
    for k in range(1, n - 1):
        if prefix[k - 1] < values[k] and suffix[k + 1] < values[k]:
            return True
    return False
