"""Hull construction and slope statistics oracles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import erf

from levyhull.errors import DegeneratePath, InvalidParams
from levyhull.measures import DensityMeasure
from levyhull.minorant import (
    DerivativeProfile,
    MinorantFaces,
    concave_majorant,
    derivative_profile,
    geometric_minorant,
    slope_census,
    stick_breaking_minorant,
)
from levyhull.sampler import MarginalSampler, PathSkeleton, sample_path
from levyhull.triplet import LevyTriplet


def brownian_ms():
    return MarginalSampler.closed_form(LevyTriplet(sigma2=1.0))


def cauchy_ms():
    t = LevyTriplet(measure=DensityMeasure(
        lambda x: 1.0 / (math.pi * x**2), symmetric=True))
    return MarginalSampler.closed_form(t, "stable", alpha=1.0, scale=1.0)


def path(times, values):
    return PathSkeleton(times=np.asarray(times, float),
                        values=np.asarray(values, float))


class TestGeometricMinorant:
    def test_straight_line(self):
        p = path([0.0, 0.25, 1.0], [0.0, 0.75, 3.0])
        faces, prof = geometric_minorant(p)
        assert faces.n == 1
        assert faces.lengths[0] == pytest.approx(1.0)
        assert faces.heights[0] == pytest.approx(3.0)
        assert prof.slopes.tolist() == [pytest.approx(3.0)]

    def test_v_shape(self):
        p = path([0.0, 0.5, 1.0], [0.0, -1.0, 0.0])
        faces, prof = geometric_minorant(p)
        assert faces.n == 2
        assert faces.slopes.tolist() == [-2.0, 2.0]
        assert prof.jumps.tolist() == [4.0]
        assert prof.break_times.tolist() == [0.0, 0.5]

    def test_interior_point_above_chord_dropped(self):
        p = path([0.0, 0.5, 1.0], [0.0, 5.0, 1.0])
        faces, _ = geometric_minorant(p)
        assert faces.n == 1
        assert faces.slopes[0] == pytest.approx(1.0)

    def test_collinear_merge(self):
        t = np.linspace(0.0, 1.0, 9)
        p = path(t, 2.0 * t)
        faces, _ = geometric_minorant(p)
        assert faces.n == 1

    def test_degenerate(self):
        with pytest.raises(DegeneratePath):
            geometric_minorant(path([0.0], [0.0]))

    def test_hull_dominance_and_touch(self):
        grid = np.linspace(0.0, 1.0, 2**14 + 1)
        p = sample_path(brownian_ms(), grid, 31)
        faces, _ = geometric_minorant(p)
        vt, vv = faces.vertices()
        hull_at = np.interp(p.times, vt, vv)
        assert np.all(hull_at <= p.values + 1e-9)
        touches = np.sum(np.abs(hull_at - p.values) <= 1e-9)
        assert touches >= 2

    def test_endpoint_exact(self):
        grid = np.linspace(0.0, 1.0, 4097)
        p = sample_path(brownian_ms(), grid, 8)
        faces, _ = geometric_minorant(p)
        # sorted faces concatenate to the path endpoint exactly
        assert float(np.sum(faces.heights)) == pytest.approx(
            float(p.values[-1]), abs=1e-12)
        assert float(np.sum(faces.lengths)) == pytest.approx(1.0)

    def test_majorant_mirror(self):
        p = path([0.0, 0.5, 1.0], [0.0, 1.0, 0.0])
        up = concave_majorant(p)
        assert sorted(up.slopes.tolist()) == [-2.0, 2.0]
        faces, _ = geometric_minorant(p)
        assert faces.n == 1  # minorant of the tent is the base


class TestFaceAlgebra:
    def test_scaling_equivariance(self):
        grid = np.linspace(0.0, 1.0, 513)
        p = sample_path(brownian_ms(), grid, 13)
        faces, _ = geometric_minorant(p)
        scaled = faces.scaled(2.5)
        assert np.allclose(scaled.slopes, 2.5 * faces.slopes)
        assert np.array_equal(scaled.lengths, faces.lengths)
        p2 = PathSkeleton(times=p.times, values=2.5 * p.values)
        faces2, _ = geometric_minorant(p2)
        assert np.allclose(np.sort(faces2.slopes), np.sort(scaled.slopes))

    def test_sorted_by_slope_convex(self):
        faces = stick_breaking_minorant(cauchy_ms(), 1.0, 200, 3)
        srt = faces.sorted_by_slope()
        assert np.all(np.diff(srt.slopes) >= 0.0)
        t, v = faces.vertices()
        # near-zero-width faces are dominated by cumulative-sum rounding,
        # so the convexity check uses only resolvable segments
        dt, dv = np.diff(t), np.diff(v)
        assert np.all(dt >= 0.0)
        wide = dt > 1e-9
        seg = dv[wide] / dt[wide]
        assert np.all(np.diff(seg) >= -1e-9 * np.maximum(1.0, np.abs(seg[1:])))

    def test_length_budget(self):
        faces = stick_breaking_minorant(brownian_ms(), 2.0, 64, 5)
        assert float(np.sum(faces.lengths)) <= 2.0
        with pytest.raises(InvalidParams):
            MinorantFaces(lengths=np.array([1.5, 1.0]),
                          heights=np.array([0.0, 0.0]), T=2.0)


class TestStickBreakingMinorant:
    def test_stick_metadata(self):
        faces = stick_breaking_minorant(brownian_ms(), 1.0, 32, 9)
        assert faces.sticks is not None
        assert np.array_equal(faces.lengths, faces.sticks.sticks)
        assert faces.sticks.reconstruction_ok()

    def test_drift_only_slopes(self):
        ms = MarginalSampler.closed_form(LevyTriplet(gamma=1.5))
        faces = stick_breaking_minorant(ms, 1.0, 16, 2)
        assert np.allclose(faces.slopes, 1.5)

    def test_cauchy_slope_distribution(self):
        # X_t / t is standard Cauchy for every t, so each face slope is
        # standard Cauchy regardless of its stick length
        faces = stick_breaking_minorant(cauchy_ms(), 1.0, 10**4, 17)
        frac = np.mean(np.abs(faces.slopes) < 1.0)
        se = math.sqrt(0.25 / faces.n)
        assert abs(frac - 0.5) <= 3.0 * se

    def test_brownian_mean_count_vs_quadrature(self):
        # E #(slopes in (-1,1)) = int_0^1 P(|B_t| < t) dt/t up to a
        # truncation remainder that is negligible at 64 sticks
        target = quad(lambda t: erf(math.sqrt(t / 2.0)) / t, 0.0, 1.0,
                      limit=200)[0]
        ms = brownian_ms()
        counts = []
        for seed in range(3000):
            faces = stick_breaking_minorant(ms, 1.0, 64, seed)
            counts.append(np.sum(np.abs(faces.slopes) < 1.0))
        counts = np.asarray(counts, dtype=float)
        se = counts.std() / math.sqrt(len(counts))
        assert abs(counts.mean() - target) <= 3.0 * se

    def test_reproducible(self):
        a = stick_breaking_minorant(brownian_ms(), 1.0, 32, 11)
        b = stick_breaking_minorant(brownian_ms(), 1.0, 32, 11)
        assert a.heights.tobytes() == b.heights.tobytes()


class TestDerivativeProfile:
    def test_two_face_jump(self):
        faces = MinorantFaces(lengths=np.array([0.5, 0.5]),
                              heights=np.array([-1.0, 1.0]), T=1.0)
        prof = derivative_profile(faces)
        assert prof.break_times.tolist() == [0.0, 0.5]
        assert prof.jumps.tolist() == [4.0]
        assert prof(0.25) == -2.0 and prof(0.75) == 2.0
        assert prof(0.5) == 2.0  # right-continuous at the breakpoint

    def test_constant(self):
        faces = MinorantFaces(lengths=np.array([1.0]),
                              heights=np.array([0.7]), T=1.0)
        prof = derivative_profile(faces)
        assert len(prof.jumps) == 0
        assert prof.constancy_intervals() == [(0.0, 1.0, 0.7)]

    def test_monotone_and_intervals(self):
        faces = stick_breaking_minorant(cauchy_ms(), 1.0, 500, 23)
        prof = derivative_profile(faces)
        assert np.all(np.diff(prof.slopes) > 0.0)
        ivals = prof.constancy_intervals()
        assert ivals[0][0] == 0.0
        assert ivals[-1][1] == pytest.approx(float(np.sum(faces.lengths)))

    def test_cauchy_max_gap_shrinks(self):
        # smoothness signature: the largest derivative jump inside a fixed
        # slope window decreases as the face resolution grows
        gaps = {n: [] for n in (60, 10**4)}
        for seed in range(8):
            for n in gaps:
                prof = derivative_profile(
                    stick_breaking_minorant(cauchy_ms(), 1.0, n, seed))
                gaps[n].append(prof.max_gap(-5.0, 5.0))
        assert np.mean(gaps[10**4]) < 0.5 * np.mean(gaps[60])

    def test_continuity_candidates(self):
        faces = MinorantFaces(lengths=np.array([0.4, 0.3, 0.3]),
                              heights=np.array([-0.4, 0.0, 0.3]), T=1.0)
        prof = derivative_profile(faces)
        # jumps are 1.0 and 1.0; a loose tolerance flags both, a tight none
        assert len(prof.continuity_candidates(2.0)) == 2
        assert len(prof.continuity_candidates(0.5)) == 0


class TestSlopeCensus:
    def test_cauchy_unit_window(self):
        faces = stick_breaking_minorant(cauchy_ms(), 1.0, 10**4, 29)
        (st,) = slope_census(faces, [(-1.0, 1.0)])
        n = faces.n
        se = math.sqrt(n * 0.25)
        assert abs(st.counts[-1] - n / 2.0) <= 3.0 * se
        assert st.verdict == "InfiniteSuggested"
        assert st.label == "empirical"

    def test_brownian_plateau(self):
        faces = stick_breaking_minorant(brownian_ms(), 1.0, 4000, 7)
        (st,) = slope_census(faces, [(1.0, 2.0)])
        half = st.counts[len(st.counts) // 2]
        assert st.counts[-1] - half <= max(1.0, 0.05 * st.counts[-1])
        assert st.verdict == "FiniteSuggested"

    def test_finite_variation_drift_window(self):
        # finite-variation stable with natural drift 5: slopes accumulate
        # only at the drift, so a window at 5 grows and a window off 5
        # plateaus
        ms = MarginalSampler.closed_form(LevyTriplet(), "stable", alpha=0.5,
                                         scale=1.0, drift=5.0)
        faces = stick_breaking_minorant(ms, 1.0, 4000, 41)
        at_drift, off_drift = slope_census(faces, [(4.9, 5.1), (6.0, 7.0)])
        assert at_drift.verdict == "InfiniteSuggested"
        assert off_drift.verdict == "FiniteSuggested"

    def test_counts_monotone(self):
        faces = stick_breaking_minorant(brownian_ms(), 1.0, 256, 3)
        (st,) = slope_census(faces, [(-0.5, 0.5)])
        assert np.all(np.diff(st.counts) >= 0)

    def test_bad_interval(self):
        faces = stick_breaking_minorant(brownian_ms(), 1.0, 8, 3)
        with pytest.raises(InvalidParams):
            slope_census(faces, [(1.0, 1.0)])
