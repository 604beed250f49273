"""Random generation: stick-breaking sequences, marginal draws, paths.

All randomness flows through counter-based Philox generators keyed by
(seed, stream id), so every draw is reproducible and independent tasks
can own disjoint substreams.  The stick stream and the mark stream of a
stick-breaking sample are distinct substreams of the same seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import CharExpConfig, DEFAULT_CONFIG, RunConfig
from .errors import InvalidParams, UnsupportedFamily
from .measures import AtomsMeasure
from .triplet import LevyTriplet

# substream ids
STICK_STREAM = 0
MARK_STREAM = 1
INCREMENT_STREAM = 2
PATH_STREAM = 3
FACE_STREAM = 4


def substream(seed: int, stream_id: int) -> np.random.Generator:
    """Philox generator for one (seed, stream id) pair."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([int(seed), int(stream_id)])))


# ---------------------------------------------------------------------------
# stick breaking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SBSample:
    """One uniform stick-breaking draw on [0, T] with i.i.d. uniform marks.

    L[0] = T and L[n] = U_n * L[n-1] for the generated uniforms U_n; the
    sticks are the successive differences lam[n] = L[n-1] - L[n].  The
    arrays satisfy this reconstruction bit-exactly.
    """

    T: float
    sticks: np.ndarray
    remainders: np.ndarray
    marks: np.ndarray
    seed: int

    def __post_init__(self):
        if self.T <= 0.0:
            raise InvalidParams("stick-breaking horizon must be positive")

    @property
    def n(self) -> int:
        return len(self.sticks)

    def reconstruction_ok(self) -> bool:
        """Bit-exact check of lam[n] = L[n-1] - L[n] with L[0] = T."""
        L_prev = np.concatenate([[self.T], self.remainders[:-1]])
        return bool(np.all(self.sticks == L_prev - self.remainders))


def stick_break(T: float, n: int, seed: int) -> SBSample:
    """Draw the first n sticks of a uniform stick-breaking process on [0, T].

    Sticks and marks come from distinct substreams of the seed, so the
    marks are independent of the sticks.
    """
    if T <= 0.0 or n < 1:
        raise InvalidParams("stick_break needs T > 0 and n >= 1")
    u = substream(seed, STICK_STREAM).random(n)
    v = substream(seed, MARK_STREAM).random(n)
    remainders = T * np.cumprod(u)
    l_prev = np.concatenate([[T], remainders[:-1]])
    sticks = l_prev - remainders
    return SBSample(T=float(T), sticks=sticks, remainders=remainders,
                    marks=v, seed=int(seed))


def stick_break_batch(T: float, n: int, seeds) -> tuple[np.ndarray, np.ndarray]:
    """Sticks and marks for many seeds, as (len(seeds), n) arrays.

    Row i reproduces stick_break(T, n, seeds[i]) exactly.
    """
    seeds = np.asarray(seeds, dtype=np.int64)
    lam = np.empty((len(seeds), n))
    v = np.empty((len(seeds), n))
    for i, s in enumerate(seeds):
        u = substream(s, STICK_STREAM).random(n)
        v[i] = substream(s, MARK_STREAM).random(n)
        rem = T * np.cumprod(u)
        lam[i] = np.concatenate([[T], rem[:-1]]) - rem
    return lam, v


def sigma_T(phi: Callable, sample: SBSample) -> np.ndarray:
    """Partial sums of Sigma_T = sum_n phi(lam_n, V_n) over recorded sticks.

    The growth profile of the partial sums is the raw material for the
    zero-one diagnostics; the mean of the full series is
    int_0^T phi_bar(t)/t dt with phi_bar(t) the mark-average of phi(t, .).
    """
    lam, v = sample.sticks, sample.marks
    try:
        terms = np.asarray(phi(lam, v), dtype=float)
        if terms.shape != lam.shape:
            raise ValueError
    except (TypeError, ValueError):
        terms = np.array([float(phi(l, w)) for l, w in zip(lam, v)])
    return np.cumsum(terms)


# ---------------------------------------------------------------------------
# marginal samplers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """Exact marginal law: 'brownian', 'stable', or 'subordinated'.

    brownian:     params (gamma, sigma2)
    stable:       params (alpha, scale, beta, drift); scale > 0, the
                  characteristic exponent of X_1 is
                  i*drift*u - scale^alpha |u|^alpha (1 - i beta tan(pi a/2) sgn u)
                  for alpha != 1, and for alpha = 1
                  i*drift*u - scale |u| (1 + i beta (2/pi) sgn u log(scale|u|))
    subordinated: params (base, subordinator, time_drift) where base and
                  subordinator are MarginalSampler instances and the
                  subordinator draws are nonnegative
    """

    family: str
    params: tuple


@dataclass(frozen=True)
class CPGauss:
    """Compound Poisson + Gaussian substitute for the small jumps.

    Jumps of size >= eps are kept exactly (rate at most the configured
    cap); jumps below eps are replaced by a Gaussian whose variance is
    the bias certificate sigma_bar2(eps).
    """

    eps: float
    rate_plus: float
    rate_minus: float
    gauss_var: float          # sigma2 + sigma_bar2(eps), per unit time
    bias_certificate: float   # sigma_bar2(eps) alone: the substituted part
    comp_drift: float         # gamma - int_{eps <= |x| < 1} x nu(dx)
    # inverse tail tables: (tail values descending-in-x, log x), per side
    inv_plus: tuple = field(default=(), compare=False)
    inv_minus: tuple = field(default=(), compare=False)
    atoms: tuple = field(default=(), compare=False)


def _inverse_tail_table(tail, eps: float, hi0: float):
    """Grid for inverse-transform sampling of a one-sided jump tail."""
    total = float(np.asarray(tail(eps)))
    if total <= 0.0:
        return None
    hi = hi0
    while float(np.asarray(tail(hi))) > 1e-12 * total and hi < 1e300:
        hi *= 4.0
    logx = np.linspace(math.log(eps), math.log(hi), 800)
    t = np.asarray(tail(np.exp(logx)), dtype=float)
    # enforce strict monotonicity for interpolation
    t = np.minimum.accumulate(t)
    keep = np.concatenate([[True], np.diff(t) < 0.0])
    return t[keep][::-1], logx[keep][::-1], total


def cpgauss_mode(triplet: LevyTriplet,
                 config: RunConfig = DEFAULT_CONFIG) -> CPGauss:
    """Choose the truncation level and build the jump sampling tables.

    eps is the smallest cutoff keeping the total jump rate nu_bar(eps)
    at or below the configured cap, found by bisection in log eps.
    """
    m = triplet.measure
    cap = config.sampler.jump_rate_cap
    if m is None:
        return CPGauss(eps=0.0, rate_plus=0.0, rate_minus=0.0,
                       gauss_var=triplet.sigma2, bias_certificate=0.0,
                       comp_drift=triplet.gamma)

    def rate(e: float) -> float:
        return float(np.asarray(m.nu_bar(e)))

    lo, hi = math.log(1e-15), math.log(1e3)
    if rate(math.exp(lo)) <= cap:
        eps = math.exp(lo)
    else:
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if rate(math.exp(mid)) > cap:
                lo = mid
            else:
                hi = mid
        eps = math.exp(hi)

    rp = float(np.asarray(m.nu_bar_plus(eps)))
    rm = float(np.asarray(m.nu_bar_minus(eps)))
    bias = m.sigma_bar2(eps)
    drift = triplet.gamma - m.gamma_bar(eps)

    if isinstance(m, AtomsMeasure):
        sel = np.abs(m.x) > eps
        return CPGauss(eps=eps, rate_plus=rp, rate_minus=rm,
                       gauss_var=triplet.sigma2 + bias,
                       bias_certificate=bias, comp_drift=drift,
                       atoms=(m.x[sel], m.m[sel]))

    inv_p = _inverse_tail_table(m.nu_bar_plus, eps, max(2.0 * eps, 1.0))
    inv_m = _inverse_tail_table(m.nu_bar_minus, eps, max(2.0 * eps, 1.0))
    return CPGauss(eps=eps, rate_plus=rp, rate_minus=rm,
                   gauss_var=triplet.sigma2 + bias,
                   bias_certificate=bias, comp_drift=drift,
                   inv_plus=inv_p or (), inv_minus=inv_m or ())


def _segment_sums(values: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Sums of consecutive runs of values, run i having length counts[i]."""
    edges = np.concatenate([[0], np.cumsum(counts)[:-1]])
    csum = np.concatenate([[0.0], np.cumsum(values)])
    return csum[edges + counts] - csum[edges]


def _draw_stable(rng, alpha: float, beta: float, size) -> np.ndarray:
    """Standard stable draw by the exact trigonometric transform.

    The output has characteristic function
    exp(-|u|^alpha (1 - i beta tan(pi alpha/2) sgn u)) for alpha != 1 and
    exp(-|u| (1 + i beta (2/pi) sgn u log|u|)) for alpha = 1.
    """
    theta = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, size)
    w = rng.exponential(1.0, size)
    if alpha == 1.0:
        a = 0.5 * math.pi + beta * theta
        s = (2.0 / math.pi) * (a * np.tan(theta) - beta * np.log(
            (0.5 * math.pi * w * np.cos(theta)) / a))
        return s
    t0 = math.atan(beta * math.tan(0.5 * math.pi * alpha)) / alpha
    c = (1.0 + (beta * math.tan(0.5 * math.pi * alpha)) ** 2) ** (0.5 / alpha)
    s = (c * np.sin(alpha * (theta + t0)) / np.cos(theta) ** (1.0 / alpha)
         * (np.cos(theta - alpha * (theta + t0)) / w) ** ((1.0 - alpha) / alpha))
    return s


@dataclass(frozen=True)
class MarginalSampler:
    """Immutable marginal law X_t for one triplet: exact or CPGauss."""

    triplet: LevyTriplet
    mode: object  # ClosedForm or CPGauss

    @staticmethod
    def closed_form(triplet: LevyTriplet, family: str = None,
                    **params) -> "MarginalSampler":
        """Exact sampler; the family is inferred for pure Gaussian triplets."""
        if family is None:
            if triplet.measure is None:
                family = "brownian"
                params = {"gamma": triplet.gamma, "sigma2": triplet.sigma2}
            else:
                raise UnsupportedFamily(
                    "no closed-form marginal is known for this triplet; "
                    "pass the family explicitly or use cpgauss")
        if family == "brownian":
            p = (params.get("gamma", triplet.gamma),
                 params.get("sigma2", triplet.sigma2))
        elif family == "stable":
            alpha = float(params["alpha"])
            if not 0.0 < alpha <= 2.0:
                raise InvalidParams("stable index must lie in (0, 2]")
            p = (alpha, float(params["scale"]),
                 float(params.get("beta", 0.0)),
                 float(params.get("drift", 0.0)))
        elif family == "subordinated":
            p = (params["base"], params["subordinator"],
                 float(params.get("time_drift", 0.0)))
        else:
            raise UnsupportedFamily(f"unknown closed-form family {family!r}")
        return MarginalSampler(triplet, ClosedForm(family, p))

    @staticmethod
    def cpgauss(triplet: LevyTriplet,
                config: RunConfig = DEFAULT_CONFIG) -> "MarginalSampler":
        return MarginalSampler(triplet, cpgauss_mode(triplet, config))

    @property
    def is_deterministic(self) -> bool:
        m = self.mode
        return (isinstance(m, ClosedForm) and m.family == "brownian"
                and m.params[1] == 0.0)

    @property
    def bias_certificate(self) -> float:
        """Variance of the Gaussian small-jump substitute; 0 when exact."""
        return self.mode.bias_certificate if isinstance(self.mode, CPGauss) else 0.0

    # -- drawing ----------------------------------------------------------

    def draw(self, t, rng: np.random.Generator, size=None) -> np.ndarray:
        """Draws of X_t; t may be an array (paired with size=None)."""
        t = np.asarray(t, dtype=float)
        shape = t.shape if size is None else (size,)
        tt = np.broadcast_to(t, shape)
        if np.any(tt <= 0.0):
            raise InvalidParams("marginal draws need t > 0")
        if isinstance(self.mode, ClosedForm):
            return self._draw_closed(tt, rng)
        return self._draw_cpg(tt, rng)

    def _draw_closed(self, t, rng) -> np.ndarray:
        fam, p = self.mode.family, self.mode.params
        if fam == "brownian":
            gamma, sigma2 = p
            if sigma2 == 0.0:
                return gamma * t
            return gamma * t + np.sqrt(sigma2 * t) * rng.standard_normal(t.shape)
        if fam == "stable":
            alpha, scale, beta, drift = p
            s = _draw_stable(rng, alpha, beta, t.shape)
            if alpha == 1.0:
                # scaling a 1-stable law also shifts it: c*S(1,beta) picks up
                # a drift beta*(2/pi)*c*log(c), so matching t*psi leaves the
                # logarithmic time correction below
                c = scale * t
                return drift * t + c * s + (2.0 / math.pi) * beta * c * np.log(t)
            return drift * t + (scale ** alpha * t) ** (1.0 / alpha) * s
        if fam == "subordinated":
            base, subord, time_drift = p
            tau = time_drift * t + subord.draw(t, rng)
            if np.any(tau < 0.0):
                raise InvalidParams("subordinator produced negative time")
            out = np.zeros_like(t)
            pos = tau > 0.0
            if np.any(pos):
                out[pos] = base.draw(tau[pos], rng)
            return out
        raise UnsupportedFamily(f"unknown closed-form family {fam!r}")

    def _draw_cpg(self, t, rng) -> np.ndarray:
        m: CPGauss = self.mode
        flat = t.ravel()
        # bound the jump buffer: split the batch so each chunk expects at
        # most ~4e6 jumps
        rate_tot = m.rate_plus + m.rate_minus
        if len(flat) > 1 and rate_tot * float(np.sum(flat)) > 4e6:
            per = max(1, int(4e6 / max(rate_tot * float(np.max(flat)), 1.0)))
            parts = [self._draw_cpg(flat[i:i + per], rng)
                     for i in range(0, len(flat), per)]
            return np.concatenate(parts).reshape(t.shape)
        out = m.comp_drift * flat
        if m.gauss_var > 0.0:
            out = out + np.sqrt(m.gauss_var * flat) * rng.standard_normal(flat.shape)
        if len(m.atoms):
            locs, masses = m.atoms
            rate = float(np.sum(masses))
            counts = rng.poisson(rate * flat)
            total = int(counts.sum())
            if total:
                jumps = rng.choice(locs, size=total, p=masses / rate)
                out = out + _segment_sums(jumps, counts)
        else:
            for rate, table, sign in ((m.rate_plus, m.inv_plus, 1.0),
                                      (m.rate_minus, m.inv_minus, -1.0)):
                if rate <= 0.0 or not table:
                    continue
                tails, logx, tot = table
                counts = rng.poisson(rate * flat)
                total = int(counts.sum())
                if total:
                    q = rng.uniform(0.0, tot, size=total)
                    jumps = np.exp(np.interp(q, tails, logx))
                    out = out + sign * _segment_sums(jumps, counts)
        return out.reshape(t.shape)


def sample_increment(ms: MarginalSampler, t: float, seed: int) -> float:
    """One draw of X_t from the substream (seed, increment stream)."""
    rng = substream(seed, INCREMENT_STREAM)
    return float(ms.draw(np.asarray(float(t)), rng))


# ---------------------------------------------------------------------------
# paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathSkeleton:
    """Discrete skeleton of one path: values at a sorted grid from (0, 0)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t, v = np.asarray(self.times, float), np.asarray(self.values, float)
        if len(t) != len(v) or len(t) < 1:
            raise InvalidParams("times and values must match and be nonempty")
        if t[0] != 0.0 or v[0] != 0.0:
            raise InvalidParams("path skeletons start at (0, 0)")
        if np.any(np.diff(t) <= 0.0):
            raise InvalidParams("path grid must be strictly increasing")


def sample_path(ms: MarginalSampler, grid, seed: int) -> PathSkeleton:
    """Path skeleton with independent increments drawn over the grid."""
    t = np.asarray(grid, dtype=float)
    if len(t) == 0:
        raise InvalidParams("empty grid")
    if t[0] != 0.0:
        t = np.concatenate([[0.0], t])
    if np.any(np.diff(t) <= 0.0):
        raise InvalidParams("path grid must be strictly increasing")
    if ms.is_deterministic:
        gamma = ms.mode.params[0]
        return PathSkeleton(times=t, values=gamma * t)
    rng = substream(seed, PATH_STREAM)
    inc = ms.draw(np.diff(t), rng)
    values = np.concatenate([[0.0], np.cumsum(inc)])
    return PathSkeleton(times=t, values=values)
