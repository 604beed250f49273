"""Regularity classification of a process from its characteristic triplet.

The classifier decides between four verdicts.  FiniteVariation: the path
derivative near the hull is dominated by the natural drift, and the local
slope accumulation on each side of it is tested separately.  Abrupt: the
convex minorant has only finitely many faces in every bounded slope
interval.  StronglyEroded: every bounded slope interval collects
infinitely many faces.  Undetermined: the numerical criteria do not
decide, which is a first-class outcome because the general dichotomy is
open.

All analytic criteria reduce to convergence questions for explicit
integrals of the characteristic exponent or of the jump measure; those
are diagnosed with quadrature.improper_integral and the window-trend
machinery, never from simulated paths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad as _scipy_quad
from scipy.stats import norm

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (InvalidParams, InvalidSplit, LevyHullError,
                     UnsupportedFamily)
from .measures import AtomsMeasure
from .quadrature import IntegralVerdict, adaptive_panel, improper_integral, \
    window_sequence_verdict
from .triplet import CharExponent, LevyTriplet, activity_indices, \
    is_infinite_variation

# slopes at which the resolvent density is probed for the branch tests
PROBE_RS = (0.0, 1.0, -2.0)

VERDICTS = ("FiniteVariation", "Abrupt", "StronglyEroded", "Undetermined")


def _psi_for(triplet: LevyTriplet, config: RunConfig) -> CharExponent:
    """Exponent evaluator tuned to the triplet's evaluation cost.

    Closed forms and measure-free triplets are cheap and keep the tight
    tolerances; quadrature-backed exponents are relaxed because the
    window-trend verdicts tolerate percent-level errors.
    """
    if triplet.psi_exact is not None or triplet.measure is None:
        return CharExponent(triplet, config.charexp)
    return CharExponent(triplet,
                        replace(config.charexp, abs_tol=1e-7, rel_tol=1e-4))


def _quad_cfg_for(triplet: LevyTriplet, config: RunConfig):
    if triplet.psi_exact is not None or triplet.measure is None:
        return config.quadrature
    return config.classifier.quad


# ---------------------------------------------------------------------------
# the resolvent slope density s_p(r)
# ---------------------------------------------------------------------------


def s_function(triplet: LevyTriplet, p: float, r: float,
               config: RunConfig = DEFAULT_CONFIG) -> IntegralVerdict:
    """Diagnose s_p(r) = (1/2pi) int_R Re(1/(p + iur - psi(u))) du.

    The integrand is strictly positive (Re psi <= 0 < p), so the value is
    in (0, inf] and divergence is meaningful.  The two half-lines are
    folded onto u >= 0 by explicit averaging of the u and -u integrands.
    """
    if not p > 0.0:
        raise InvalidParams("resolvent parameter p must be positive")
    psi = _psi_for(triplet, config)
    r = float(r)
    p = float(p)
    two_pi = 2.0 * math.pi

    def integrand(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.empty(len(u))
        for i, v in enumerate(u):
            z = psi(v)
            zp = complex(p - z.real, v * r - z.imag)
            zm = complex(p - z.real, -v * r + z.imag)
            # complex reciprocal scales internally, so huge exponent
            # values cannot overflow the squared modulus
            out[i] = ((1.0 / zp).real + (1.0 / zm).real) / two_pi
        return out

    return improper_integral(integrand, 0.0,
                             config=_quad_cfg_for(triplet, config))


@dataclass(frozen=True)
class SFunctionEval:
    """s_p evaluated on a slope grid, one IntegralVerdict per point.

    Divergence is carried as the verdict kind, never as a float value.
    """

    p: float
    r_grid: tuple[float, ...]
    values: tuple[IntegralVerdict, ...]

    def __post_init__(self):
        if len(self.r_grid) != len(self.values):
            raise InvalidParams("r grid and values must align")
        for v in self.values:
            if v.is_convergent and not v.value > 0.0:
                raise InvalidParams("s_p values must be positive")
            if not v.is_convergent and v.value is not None:
                raise InvalidParams(
                    "non-convergent s_p points must not carry a float value")

    def kinds(self) -> tuple[str, ...]:
        return tuple(v.kind for v in self.values)

    @property
    def all_divergent(self) -> bool:
        return all(v.is_divergent for v in self.values)

    @property
    def all_convergent(self) -> bool:
        return all(v.is_convergent for v in self.values)

    @property
    def mixed(self) -> bool:
        return not (self.all_divergent or self.all_convergent)


def s_function_sweep(triplet: LevyTriplet, p: float, r_grid,
                     config: RunConfig = DEFAULT_CONFIG) -> SFunctionEval:
    """Evaluate s_p on a grid of slopes."""
    rs = tuple(float(r) for r in r_grid)
    vals = tuple(s_function(triplet, p, r, config) for r in rs)
    return SFunctionEval(p=float(p), r_grid=rs, values=vals)


def comparability_flags(low: SFunctionEval, high: SFunctionEval,
                        tol: float = 0.05) -> dict:
    """Cross-parameter consistency flags for two sweeps with p_low <= p_high.

    On the shared grid the resolvent density is non-increasing in p, and
    any two parameters agree within a factor 8; divergence patterns must
    match exactly.  Returns {"pattern": bool, "monotone": bool,
    "factor8": bool} evaluated on co-convergent points.
    """
    if low.p > high.p or low.r_grid != high.r_grid:
        raise InvalidParams("sweeps must share the grid with low.p <= high.p")
    pattern = all(a.kind == b.kind or (a.is_convergent and b.is_convergent)
                  or a.is_inconclusive or b.is_inconclusive
                  for a, b in zip(low.values, high.values))
    # a divergent low-p point with a convergent high-p point breaks the
    # factor-8 comparability; the converse (low converges, high diverges)
    # breaks monotonicity
    monotone = True
    factor8 = True
    for a, b in zip(low.values, high.values):
        if a.is_convergent and b.is_convergent:
            monotone &= a.value >= b.value * (1.0 - tol)
            factor8 &= (a.value <= 8.0 * b.value * (1.0 + tol)
                        and b.value <= 8.0 * a.value * (1.0 + tol))
        elif a.is_convergent and b.is_divergent:
            monotone = False
        elif a.is_divergent and b.is_convergent:
            factor8 = False
    return {"pattern": pattern, "monotone": monotone, "factor8": factor8}


# ---------------------------------------------------------------------------
# resolvent measure identity
# ---------------------------------------------------------------------------


def vigon_identity_check(triplet: LevyTriplet, p: float, a: float, b: float,
                         config: RunConfig = DEFAULT_CONFIG) -> float:
    """Relative residual of int_a^b s_p(r) dr against the resolvent mass.

    The right-hand side mu_p((a,b)) = int_0^inf P(X_t/t in (a,b))
    exp(-pt) t^-1 dt is computed from a closed-form marginal CDF, which
    restricts the check to Gaussian and drift-only triplets.  The whole
    line is rejected because the resolvent measure has infinite total
    mass.  When both sides carry the same divergence flag the residual is
    0 by convention.
    """
    if triplet.measure is not None:
        raise UnsupportedFamily(
            "closed-form marginal CDFs are available only for Gaussian and "
            "drift-only triplets")
    if not (p > 0.0 and math.isfinite(a) and math.isfinite(b) and a < b):
        raise InvalidParams("need p > 0 and a finite interval a < b")

    if triplet.sigma2 == 0.0:
        # degenerate marginal X_t/t = gamma: the slope measure is the
        # resolvent mass itself, an atom of infinite mass at gamma.  Both
        # sides are infinite when gamma is inside, zero otherwise.
        return 0.0

    sigma = math.sqrt(triplet.sigma2)
    gamma = triplet.gamma

    def s_at(r: float) -> float:
        v = s_function(triplet, p, r, config)
        if not v.is_convergent:
            raise UnsupportedFamily(
                f"s_p({r}) did not converge; identity check needs a "
                "locally bounded slope density")
        return v.value

    def s_vec(rs):
        rs = np.atleast_1d(np.asarray(rs, dtype=float))
        return np.array([s_at(float(r)) for r in rs])

    lhs, _ = adaptive_panel(s_vec, a, b, 1e-7, 10)

    def rhs_integrand(t):
        st = math.sqrt(t)
        pr = (norm.cdf((b - gamma) * st / sigma)
              - norm.cdf((a - gamma) * st / sigma))
        return pr * math.exp(-p * t) / t

    rhs, _ = _scipy_quad(rhs_integrand, 0.0, np.inf, limit=400)
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


# ---------------------------------------------------------------------------
# classification result
# ---------------------------------------------------------------------------


def _jsonable(v):
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (np.floating, np.integer)):
        return _jsonable(float(v))
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class Evidence:
    """One numeric fact feeding the verdict: (criterion, rule id, values)."""

    criterion: str
    anchor: str
    values: tuple

    def as_dict(self) -> dict:
        return {"criterion": self.criterion, "anchor": self.anchor,
                "values": _jsonable(list(self.values))}


@dataclass(frozen=True)
class Classification:
    verdict: str
    branch: str | None = None
    gamma0: float | None = None
    i_plus_finite: bool | None = None
    i_minus_finite: bool | None = None
    reason: str | None = None
    evidence: tuple = ()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise InvalidParams(f"unknown verdict {self.verdict!r}")
        if len(self.evidence) < 1:
            raise InvalidParams("every verdict needs at least one evidence entry")

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict, "branch": self.branch,
               "evidence": [e.as_dict() for e in self.evidence]}
        if self.verdict == "FiniteVariation":
            out["gamma0"] = _jsonable(self.gamma0)
            out["i_plus_finite"] = self.i_plus_finite
            out["i_minus_finite"] = self.i_minus_finite
        if self.verdict == "Undetermined":
            out["reason"] = self.reason
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _sorted_evidence(ev: list) -> tuple:
    return tuple(sorted(ev, key=lambda e: e.criterion))


# ---------------------------------------------------------------------------
# internal criteria
# ---------------------------------------------------------------------------


def _probe_scales(triplet: LevyTriplet, config: RunConfig) -> range:
    m = triplet.measure
    cls = config.classifier
    if isinstance(m, AtomsMeasure):
        k0, k1 = m.scale_range()
        return range(k0, k1 + 1)
    return range(cls.scale_k_min, cls.scale_k_max + 1)


def _one_sided_finite(triplet: LevyTriplet, side: str,
                      config: RunConfig) -> bool | None:
    """Finite-variation sub-verdict: is the slope set bounded on one side?

    Tests convergence of int max(sx, 0) / W(|x|) nu(dx) near 0, where
    W(y) = int_0^y nu_bar of the opposite side; divergence means slopes
    accumulate at the natural drift from side s.  Returns True when the
    accumulation integral is finite, None when undecidable.
    """
    m = triplet.measure
    if m is None:
        return True
    ks = list(_probe_scales(triplet, config))
    tail = m.nu_bar_minus if side == "+" else m.nu_bar_plus

    def tail_vec(y):
        return np.asarray(tail(np.asarray(y, dtype=float)), dtype=float)

    cells = []
    for k in ks:
        lo, hi = 2.0 ** (-(k + 1)), 2.0 ** (-k)
        c, _ = adaptive_panel(tail_vec, lo, hi, 1e-6, 10)
        cells.append(max(c, 0.0))
    cells = np.asarray(cells)
    # W at the top of window k: all cells below it plus a geometric
    # estimate of the remainder under the scale floor
    below_floor = 0.0
    if len(cells) >= 2 and cells[-2] > 0.0 and cells[-1] > 0.0:
        rho = cells[-1] / cells[-2]
        if rho < 1.0:
            below_floor = cells[-1] * rho / (1.0 - rho)
    suffix = np.cumsum(cells[::-1])[::-1] + below_floor

    ratios = []
    for i, k in enumerate(ks):
        mass = m.dyadic_mass(k, side, p=1.0)
        if mass <= 0.0:
            continue
        if suffix[i] <= 0.0:
            return False  # mass with no opposite tail: infinite accumulation
        ratios.append(mass / suffix[i])
    if not ratios:
        return True
    v = window_sequence_verdict(ratios, config.quadrature)
    if v.is_divergent:
        return False
    if v.is_convergent:
        return True
    return None


def _index_integral(triplet: LevyTriplet, config: RunConfig) -> IntegralVerdict:
    """Diagnose int_1^inf du / (1 + u^2 (sigma2 + sigma_bar2(1/u)))."""
    m = triplet.measure
    s2 = triplet.sigma2
    cache: dict[float, float] = {}

    def sb2(x: float) -> float:
        v = cache.get(x)
        if v is None:
            v = 0.0 if m is None else m.sigma_bar2(x)
            cache[x] = v
        return v

    def one(v: float) -> float:
        w = s2 + sb2(1.0 / v)
        if w <= 0.0:
            return 1.0
        # v^2 w without intermediate overflow; beyond exp(700) the term is 0
        if 2.0 * math.log(v) + math.log(w) > 700.0:
            return 0.0
        return 1.0 / (1.0 + v * (v * w))

    def integrand(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        return np.array([one(float(v)) for v in u])

    return improper_integral(integrand, 1.0, config=config.classifier.quad)


def _asymmetry_dominance(triplet: LevyTriplet,
                         config: RunConfig) -> tuple[bool, float, int]:
    """Positive-jump dominance over shrinking dyadic windows.

    Fires when the last `asymmetry_run` informative windows (those with
    any one-sided mass) all have mass ratio nu(window+)/nu(window-)
    strictly above `asymmetry_ratio`, with at least 3 informative
    windows.  Returns (fired, worst ratio over the run, #informative).
    """
    m = triplet.measure
    cls = config.classifier
    if m is None:
        return False, 0.0, 0
    ratios = []
    for k in _probe_scales(triplet, config):
        mp = m.dyadic_mass(k, "+", p=0.0)
        mm = m.dyadic_mass(k, "-", p=0.0)
        if mp <= 0.0 and mm <= 0.0:
            continue
        ratios.append(mp / mm if mm > 0.0 else math.inf)
    if len(ratios) < 3:
        return False, min(ratios, default=0.0), len(ratios)
    run = ratios[-cls.asymmetry_run:]
    worst = min(run)
    return worst > cls.asymmetry_ratio, worst, len(ratios)


def _profile_label(us: np.ndarray, vals: np.ndarray, extra: np.ndarray,
                   config: RunConfig) -> str:
    """Limit-behaviour read of |component(u)| over the final decades.

    Returns "infinite", "zero", "bounded" or "oscillating".  `extra`
    holds off-grid probe values (resonance frequencies) that join the
    final window for the spread check; systematic per-decade growth or
    decay is judged on decade medians of the regular grid.
    """
    cls = config.classifier
    dec = np.floor(np.log10(us)).astype(int)
    top = dec.max()
    meds = []
    for d in range(dec.min(), top + 1):
        sel = dec == d
        if np.any(sel):
            meds.append(float(np.median(vals[sel])))
    meds = np.asarray(meds)
    L = cls.limit_decades
    window = np.concatenate([vals[dec >= top - L + 1], extra])
    if np.max(window, initial=0.0) <= 0.0:
        return "zero"
    if len(meds) > L:
        last = np.maximum(meds[-(L + 1):], 1e-300)
        r = last[1:] / last[:-1]
        if np.all(r >= cls.growth_factor) and len(extra) == 0:
            return "infinite"
        if np.all(r <= 1.0 / cls.growth_factor) and (
                len(extra) == 0 or np.max(extra) <= np.max(last)):
            return "zero"
    pos = window[window > 0.0]
    if (len(pos) == len(window)
            and float(np.max(pos)) <= cls.bounded_factor * float(np.min(pos))):
        return "bounded"
    if len(meds) > L and len(extra) > 0:
        last = np.maximum(meds[-(L + 1):], 1e-300)
        r = last[1:] / last[:-1]
        lo = float(np.min(window[window > 0.0], initial=math.inf))
        if np.all(r >= cls.growth_factor) and np.min(extra, initial=math.inf) \
                >= float(last[-1]) / cls.bounded_factor:
            return "infinite"
    return "oscillating"


def _limit_profiles(triplet: LevyTriplet,
                    config: RunConfig) -> dict[str, str]:
    """Proxy limits of |psi(u)/u| and its components on a log grid."""
    cls = config.classifier
    psi = _psi_for(triplet, config)
    n_dec = int(round(math.log10(cls.u_max)))
    us = 10.0 ** (np.arange(n_dec * cls.points_per_decade + 1)
                  / cls.points_per_decade)
    zs = [psi.over_u(float(u)) for u in us]
    ratio = np.array([abs(z) for z in zs])
    re = np.array([abs(z.real) for z in zs])
    im = np.array([abs(z.imag) for z in zs])

    extras = {"ratio": [], "re": [], "im": []}
    m = triplet.measure
    if isinstance(m, AtomsMeasure):
        # resonance frequencies of the atoms inside the final window and
        # beyond the grid; oscillation is invisible off resonance
        u_lo = cls.u_max / 10.0 ** cls.limit_decades
        for x in np.abs(m.x):
            if x >= 1.0:
                continue
            for u in (math.pi / x, 2.0 * math.pi / x):
                if u >= u_lo:
                    z = psi.over_u(u)
                    extras["ratio"].append(abs(z))
                    extras["re"].append(abs(z.real))
                    extras["im"].append(abs(z.imag))

    return {
        "ratio": _profile_label(us, ratio, np.asarray(extras["ratio"]), config),
        "re": _profile_label(us, re, np.asarray(extras["re"]), config),
        "im": _profile_label(us, im, np.asarray(extras["im"]), config),
    }


def _branch_integral(triplet: LevyTriplet, branch: str,
                     config: RunConfig) -> IntegralVerdict:
    """Branch-specific tail integrals of the dichotomy theorem.

    "ii-b": int_1^inf u (1 + Im psi(u)^2)^-1 du
    "ii-c": int_1^inf (1 - Re psi(u)) (1 + Im psi(u)^2)^-1 du
    """
    psi = _psi_for(triplet, config)

    def integrand(u):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        out = np.empty(len(u))
        for i, v in enumerate(u):
            z = psi(v)
            den = 1.0 + z.imag * z.imag
            out[i] = v / den if branch == "ii-b" else (1.0 - z.real) / den
        return out

    return improper_integral(integrand, 1.0,
                             config=_quad_cfg_for(triplet, config))


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def classify(triplet: LevyTriplet,
             config: RunConfig = DEFAULT_CONFIG) -> Classification:
    """Decide the hull regularity class with an evidence trail.

    Priority: finite variation first, then the cheap structural
    sufficient conditions for abruptness (Gaussian part / small-jump
    index, jump asymmetry), then the exponent-ratio dichotomy with its
    branch integrals, and Undetermined as the honest fallback.
    """
    ev: list[Evidence] = []

    try:
        infinite_var = is_infinite_variation(triplet, config)
    except LevyHullError as exc:
        ev.append(Evidence("variation", "rule:variation-dichotomy",
                           (str(exc),)))
        return Classification("Undetermined",
                              reason=f"variation undecidable: {exc}",
                              evidence=_sorted_evidence(ev))
    ev.append(Evidence("variation", "rule:variation-dichotomy",
                       ("infinite" if infinite_var else "finite",)))

    if not infinite_var:
        m = triplet.measure
        gamma0 = triplet.gamma if m is None else \
            triplet.gamma - m.signed_unit_moment(config.charexp)
        ip = _one_sided_finite(triplet, "+", config)
        im = _one_sided_finite(triplet, "-", config)
        ev.append(Evidence("natural-drift", "rule:drift-extraction", (gamma0,)))
        ev.append(Evidence("one-sided-accumulation",
                           "rule:local-slope-integrals", (ip, im)))
        return Classification("FiniteVariation", gamma0=gamma0,
                              i_plus_finite=ip, i_minus_finite=im,
                              evidence=_sorted_evidence(ev))

    cls = config.classifier

    # structural abruptness: Gaussian part or dominant small-jump activity
    if triplet.sigma2 > 0.0:
        ev.append(Evidence("index-rule", "rule:gaussian-component",
                           (triplet.sigma2,)))
        return Classification("Abrupt", branch="index",
                              evidence=_sorted_evidence(ev))
    J = _index_integral(triplet, config)
    ev.append(Evidence("index-rule", "rule:index-integral",
                       (J.kind, J.value if J.is_convergent else None)))
    if J.is_convergent:
        return Classification("Abrupt", branch="index",
                              evidence=_sorted_evidence(ev))
    idx = activity_indices(triplet, config)
    ev.append(Evidence("index-rule", "rule:lower-index",
                       (idx.beta_minus, idx.beta_plus)))
    if idx.beta_minus > 1.0 + cls.index_margin:
        return Classification("Abrupt", branch="index",
                              evidence=_sorted_evidence(ev))

    fired, worst, n_inf = _asymmetry_dominance(triplet, config)
    ev.append(Evidence("asymmetry-dominance", "rule:jump-asymmetry",
                       (fired, worst, n_inf)))
    if fired:
        return Classification("Abrupt", branch="asymmetry",
                              evidence=_sorted_evidence(ev))

    profiles = _limit_profiles(triplet, config)
    ev.append(Evidence("exponent-ratio-profile", "rule:limit-proxies",
                       (profiles["ratio"], profiles["re"], profiles["im"])))
    if profiles["ratio"] == "oscillating":
        return Classification(
            "Undetermined", reason="oscillating exponent ratio",
            evidence=_sorted_evidence(ev))

    probes = s_function_sweep(triplet, 1.0, PROBE_RS, config)
    ev.append(Evidence("resolvent-probes", "rule:slope-density-probes",
                       probes.kinds()))

    if profiles["ratio"] in ("bounded", "zero"):
        # bounded exponent ratio: the slope density is either everywhere
        # infinite or everywhere locally bounded; the probes distinguish
        # a genuinely bounded ratio from slow growth the grid cannot see
        if probes.all_divergent:
            return Classification("StronglyEroded", branch="i",
                                  evidence=_sorted_evidence(ev))
        if probes.all_convergent:
            return Classification("Abrupt", branch="ii-a",
                                  evidence=_sorted_evidence(ev))
        return Classification(
            "Undetermined", reason="mixed resolvent probes under a bounded "
            "exponent-ratio read", evidence=_sorted_evidence(ev))

    # exponent ratio tends to infinity: branch on the component limits
    if profiles["re"] == "infinite":
        if probes.all_divergent:
            return Classification("StronglyEroded", branch="ii-a",
                                  evidence=_sorted_evidence(ev))
        if probes.all_convergent:
            return Classification("Abrupt", branch="ii-a",
                                  evidence=_sorted_evidence(ev))
        return Classification("Undetermined",
                              reason="mixed resolvent probes",
                              evidence=_sorted_evidence(ev))
    branch = None
    if profiles["re"] == "bounded" and profiles["im"] == "infinite":
        branch = "ii-b"
    elif profiles["re"] == "zero" and profiles["im"] == "infinite":
        branch = "ii-c"
    if branch is not None:
        B = _branch_integral(triplet, branch, config)
        ev.append(Evidence("branch-integral", f"rule:tail-integral-{branch}",
                           (B.kind,)))
        if B.is_divergent and probes.all_divergent:
            return Classification("StronglyEroded", branch=branch,
                                  evidence=_sorted_evidence(ev))
        if B.is_convergent and probes.all_convergent:
            return Classification("Abrupt", branch=branch,
                                  evidence=_sorted_evidence(ev))
        return Classification(
            "Undetermined", reason="branch integral and resolvent probes "
            "are inconsistent or inconclusive", evidence=_sorted_evidence(ev))

    return Classification("Undetermined",
                          reason="unresolved exponent component profiles",
                          evidence=_sorted_evidence(ev))


# ---------------------------------------------------------------------------
# structure-preserving transforms
# ---------------------------------------------------------------------------


def perturbation_reduce(triplet: LevyTriplet, split: float = 1.0,
                        drift: float = 0.0,
                        config: RunConfig = DEFAULT_CONFIG
                        ) -> tuple[LevyTriplet, float]:
    """Strip the jumps with |x| >= split (plus a drift) as one component.

    The removed component is a finite-activity process plus the linear
    drift, hence finite variation; the verdict of the reduced triplet
    matches the original, and the slope set translates by the returned b,
    the natural drift of the removed component.
    """
    if not (split > 0.0 and math.isfinite(split)):
        raise InvalidSplit("split point must be positive and finite")
    if not math.isfinite(drift):
        raise InvalidSplit("removed drift must be finite")
    m = triplet.measure
    if m is None:
        reduced = LevyTriplet(gamma=triplet.gamma - drift,
                              sigma2=triplet.sigma2,
                              name=triplet.name and triplet.name + "|reduced")
        return reduced, drift
    removed_mass = float(m.nu_bar(split))
    if not math.isfinite(removed_mass):
        raise InvalidSplit(
            "removed component has infinite mass: not finite variation")
    small = m.restrict_small(split)
    comp = m.band_moment(split, 1.0, config.charexp) if split < 1.0 else 0.0
    reduced = LevyTriplet(gamma=triplet.gamma - drift,
                          sigma2=triplet.sigma2, measure=small,
                          name=triplet.name and triplet.name + "|reduced")
    return reduced, drift - comp


def scaled_triplet(triplet: LevyTriplet, c: float,
                   config: RunConfig = DEFAULT_CONFIG) -> LevyTriplet:
    """Triplet of the value-scaled process c X; its exponent is psi(cu)."""
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidParams("scale factor must be positive and finite")
    m = triplet.measure
    new_m = None if m is None else m.scaled(c)
    corr = 0.0
    if m is not None and c != 1.0:
        # jumps crossing the compensation cutoff switch compensation
        if c > 1.0:
            corr = -c * m.band_moment(1.0 / c, 1.0, config.charexp)
        else:
            corr = c * m.band_moment(1.0, 1.0 / c, config.charexp)
    exact = None
    if triplet.psi_exact is not None:
        base = triplet.psi_exact
        exact = lambda u, _f=base, _c=c: _f(_c * u)
    return LevyTriplet(gamma=c * triplet.gamma + corr,
                       sigma2=c * c * triplet.sigma2, measure=new_m,
                       psi_exact=exact,
                       name=triplet.name and f"{triplet.name}|x{c:g}")
