"""Convex minorants of paths, two ways, plus slope statistics.

The geometric route takes the lower convex hull of a path skeleton; the
stick-breaking route pairs stick lengths with independent marginal draws,
which reproduces the law of the true face set.  Slope statistics derived
here are empirical suggestions only and never override the analytic
classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegeneratePath, InvalidParams
from .sampler import FACE_STREAM, MarginalSampler, PathSkeleton, SBSample, \
    stick_break, substream

# relative tolerance below which consecutive hull slopes count as one face
COLLINEAR_RTOL = 1e-12


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorantFaces:
    """Face set {(length, height)} of a convex minorant, anchored at t=0.

    Faces may be recorded in any order (stick order for the stick-breaking
    route); sorting by slope and concatenating yields the convex function.
    """

    lengths: np.ndarray
    heights: np.ndarray
    T: float
    sticks: SBSample = field(default=None, compare=False)

    def __post_init__(self):
        l = np.asarray(self.lengths, dtype=float)
        if np.any(l <= 0.0):
            raise InvalidParams("face lengths must be positive")
        if float(np.sum(l)) > self.T * (1.0 + 1e-9):
            raise InvalidParams("face lengths exceed the horizon")

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def slopes(self) -> np.ndarray:
        return self.heights / self.lengths

    def sorted_by_slope(self) -> "MinorantFaces":
        order = np.argsort(self.slopes, kind="stable")
        return MinorantFaces(lengths=self.lengths[order],
                             heights=self.heights[order], T=self.T,
                             sticks=self.sticks)

    def vertices(self) -> tuple[np.ndarray, np.ndarray]:
        """Graph of the convex function: faces sorted by slope, cumulated."""
        srt = self.sorted_by_slope()
        t = np.concatenate([[0.0], np.cumsum(srt.lengths)])
        v = np.concatenate([[0.0], np.cumsum(srt.heights)])
        return t, v

    def scaled(self, c: float) -> "MinorantFaces":
        """Value scaling by c > 0: every height and slope scales by c."""
        if c <= 0.0:
            raise InvalidParams("scaling factor must be positive")
        return MinorantFaces(lengths=self.lengths, heights=c * self.heights,
                             T=self.T, sticks=self.sticks)


@dataclass(frozen=True)
class DerivativeProfile:
    """Right-continuous step derivative of a convex piecewise-linear C.

    break_times[i] is the left endpoint of the i-th maximal constancy
    interval and slopes[i] its value; the profile is non-decreasing and
    its jumps are the consecutive-slope differences.
    """

    break_times: np.ndarray
    slopes: np.ndarray
    T: float

    def __post_init__(self):
        if np.any(np.diff(self.slopes) < 0.0):
            raise InvalidParams("derivative profile must be non-decreasing")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = np.clip(np.searchsorted(self.break_times, t, side="right") - 1,
                      0, len(self.slopes) - 1)
        out = self.slopes[idx]
        return out if t.ndim else float(out)

    @property
    def jumps(self) -> np.ndarray:
        """Jump sizes of C' at the interior breakpoints."""
        return np.diff(self.slopes)

    def constancy_intervals(self) -> list[tuple[float, float, float]]:
        """Maximal intervals (start, end, slope) of constant derivative."""
        ends = np.concatenate([self.break_times[1:], [self.T]])
        return [(float(a), float(b), float(s))
                for a, b, s in zip(self.break_times, ends, self.slopes)]

    def max_gap(self, lo: float = -math.inf, hi: float = math.inf) -> float:
        """Largest jump of C' between consecutive slopes inside [lo, hi]."""
        sel = (self.slopes >= lo) & (self.slopes <= hi)
        s = self.slopes[sel]
        if len(s) < 2:
            return 0.0
        return float(np.max(np.diff(s)))

    def continuity_candidates(self, tol: float) -> np.ndarray:
        """Breakpoint times whose jump is below tol (smoothness signature)."""
        small = np.nonzero(self.jumps < tol)[0]
        return self.break_times[small + 1]


def derivative_profile(faces: MinorantFaces) -> DerivativeProfile:
    """Step function C' of the convex function built from the faces.

    Faces are sorted by slope; collinear runs merge into one constancy
    interval, so jump points are exactly the gaps between distinct slopes.
    """
    srt = faces.sorted_by_slope()
    s = srt.slopes
    t = np.concatenate([[0.0], np.cumsum(srt.lengths)])[:-1]
    # merge equal-slope runs into maximal constancy intervals
    scale = np.maximum(1.0, np.abs(s[:-1]))
    new = np.concatenate([[True], np.abs(np.diff(s)) > COLLINEAR_RTOL * scale])
    keep = np.nonzero(new)[0]
    return DerivativeProfile(break_times=t[keep],
                             slopes=np.maximum.accumulate(s[keep]),
                             T=faces.T)


# ---------------------------------------------------------------------------
# geometric hull
# ---------------------------------------------------------------------------


def _lower_hull(t: np.ndarray, v: np.ndarray) -> list[int]:
    """Indices of the lower convex hull of time-sorted points, O(n)."""
    hull: list[int] = []
    for i in range(len(t)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # pop b when it lies on or above the chord a -> i
            if ((t[b] - t[a]) * (v[i] - v[a])
                    - (v[b] - v[a]) * (t[i] - t[a])) <= 0.0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def geometric_minorant(
        path: PathSkeleton) -> tuple[MinorantFaces, DerivativeProfile]:
    """Lower convex hull of the path skeleton, as faces plus derivative.

    Near-collinear consecutive faces (relative slope difference below
    1e-12) merge into a single maximal face.
    """
    t = np.asarray(path.times, dtype=float)
    v = np.asarray(path.values, dtype=float)
    if len(t) < 2:
        raise DegeneratePath("need at least 2 points for a hull")
    idx = _lower_hull(t, v)
    ht, hv = t[idx], v[idx]
    lengths = np.diff(ht)
    heights = np.diff(hv)
    slopes = heights / lengths
    # merge near-collinear consecutive faces into maximal faces
    if len(slopes) > 1:
        scale = np.maximum(1.0, np.abs(slopes[:-1]))
        new = np.concatenate(
            [[True], np.abs(np.diff(slopes)) > COLLINEAR_RTOL * scale])
        group = np.cumsum(new) - 1
        k = group[-1] + 1
        lengths = np.bincount(group, weights=lengths, minlength=k)
        heights = np.bincount(group, weights=heights, minlength=k)
    faces = MinorantFaces(lengths=lengths, heights=heights, T=float(t[-1]))
    return faces, derivative_profile(faces)


def concave_majorant(path: PathSkeleton) -> MinorantFaces:
    """Upper concave hull face set, by the minorant of the negated path."""
    faces, _ = geometric_minorant(
        PathSkeleton(times=path.times, values=-np.asarray(path.values)))
    return MinorantFaces(lengths=faces.lengths, heights=-faces.heights,
                         T=faces.T)


# ---------------------------------------------------------------------------
# stick-breaking faces
# ---------------------------------------------------------------------------


def stick_breaking_minorant(ms: MarginalSampler, T: float, n: int,
                            seed: int) -> MinorantFaces:
    """n faces (lam_k, draw of X_{lam_k}): the law of the true face set.

    Faces are returned in stick order (unsorted) with the stick-breaking
    sample attached; marginal draws use a face substream distinct from
    the stick and mark streams.
    """
    sb = stick_break(T, n, seed)
    rng = substream(seed, FACE_STREAM)
    # sticks underflow to length zero past ~1100 draws; zero-length faces
    # carry no slope information at double precision and are dropped
    lam = sb.sticks[sb.sticks > 0.0]
    heights = ms.draw(lam, rng)
    return MinorantFaces(lengths=lam, heights=np.asarray(heights),
                         T=float(T), sticks=sb)


# ---------------------------------------------------------------------------
# slope statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeStats:
    """Empirical census of face slopes inside one interval.

    counts[k] is the number of slopes in the interval among the first
    k+1 recorded faces.  The verdict is a heuristic suggestion, labeled
    empirical, and never overrides the analytic classifier.
    """

    interval: tuple[float, float]
    counts: np.ndarray
    growth_exponent: float
    verdict: str            # FiniteSuggested | InfiniteSuggested | Inconclusive
    label: str = "empirical"

    def __post_init__(self):
        if np.any(np.diff(self.counts) < 0):
            raise InvalidParams("slope counts must be non-decreasing")


def _census_verdict(counts: np.ndarray) -> tuple[str, float]:
    n = len(counts)
    total = float(counts[-1])
    inc = total - float(counts[n // 2])
    # growth exponent: log-log fit of the count curve over its second half
    expo = 0.0
    tail = counts[n // 2:]
    if total > 0 and np.all(tail > 0) and len(tail) >= 4:
        ks = np.arange(n // 2, n, dtype=float) + 1.0
        expo = float(np.polyfit(np.log(ks), np.log(tail), 1)[0])
    if total == 0.0 or inc <= max(1.0, 0.05 * total):
        return "FiniteSuggested", expo
    quarters = counts[[n // 2, (5 * n) // 8, (3 * n) // 4, (7 * n) // 8, n - 1]]
    if inc >= 0.2 * total and np.all(np.diff(quarters) > 0):
        return "InfiniteSuggested", expo
    return "Inconclusive", expo


def slope_census(faces: MinorantFaces,
                 intervals: Sequence[tuple[float, float]]) -> list[SlopeStats]:
    """Count face slopes inside each open interval, cumulatively in n.

    Counts that keep growing through the final half of the recorded faces
    suggest an infinite slope set inside the interval; a plateau suggests
    a finite one.  Both are empirical readings of a finite sample.
    """
    if faces.n == 0:
        raise InvalidParams("empty face set")
    s = faces.slopes
    out = []
    for a, b in intervals:
        if not a < b:
            raise InvalidParams(f"bad interval ({a}, {b})")
        counts = np.cumsum((s > a) & (s < b))
        verdict, expo = _census_verdict(counts)
        out.append(SlopeStats(interval=(float(a), float(b)), counts=counts,
                              growth_exponent=expo, verdict=verdict))
    return out
