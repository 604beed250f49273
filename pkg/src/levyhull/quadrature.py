"""Diagnosis of improper integrals of nonnegative integrands.

An integral over [a, inf) is evaluated window by window and classified as
Convergent (with a value and an error estimate), Divergent (with a fitted
growth exponent of the window sums), or Inconclusive (partial sums are
kept for inspection).

Two window regimes are used.  Dyadic windows [u0*2^k, u0*2^(k+1)] settle
integrands with power-like behaviour.  Slowly varying integrands (window
ratios drifting toward 1) are re-examined on geometric windows in
t = log(u); callers may supply ``log_form(t) = f(exp(t)) * exp(t)`` so the
probe can run far beyond the floating-point range of u itself.  Tails are
extrapolated geometrically when window ratios are stable, and through a
power-law fit of the window sums otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from dataclasses import replace as dataclasses_replace

import numpy as np
from scipy.special import zeta

from .config import QuadratureConfig

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


# ---------------------------------------------------------------------------
# verdict type
# ---------------------------------------------------------------------------

CONVERGENT = "convergent"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class IntegralVerdict:
    kind: str
    value: float | None = None
    error: float | None = None
    growth_exponent: float | None = None
    partial_sums: tuple = field(default=(), compare=False)
    detail: str = ""

    @property
    def is_convergent(self) -> bool:
        return self.kind == CONVERGENT

    @property
    def is_divergent(self) -> bool:
        return self.kind == DIVERGENT

    @property
    def is_inconclusive(self) -> bool:
        return self.kind == INCONCLUSIVE

    def __str__(self) -> str:
        if self.is_convergent:
            return f"Convergent({self.value:.9g} +/- {self.error:.2g})"
        if self.is_divergent:
            return f"Divergent(theta={self.growth_exponent:.3g}; {self.detail})"
        return f"Inconclusive({self.detail})"


# ---------------------------------------------------------------------------
# panel integration
# ---------------------------------------------------------------------------


def _gl_panel(f, lo: float, hi: float) -> float:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid + half * _GL_NODES
    y = np.asarray(f(x), dtype=float)
    return half * float(np.dot(_GL_WEIGHTS, y))


def adaptive_panel(f, lo: float, hi: float, rel_tol: float, max_depth: int,
                   max_splits: int = 400):
    """Integral of f over [lo, hi] by bisected Gauss-Legendre.

    Returns (value, error_estimate).  f must accept ndarray input.  Work is
    capped at max_splits bisections; unresolved subpanels are accepted at
    their current estimate with the disagreement added to the error.
    """
    whole = _gl_panel(f, lo, hi)
    stack = [(lo, hi, whole, 0)]
    total = 0.0
    err = 0.0
    splits = 0
    while stack:
        a, b, w, depth = stack.pop()
        if splits >= max_splits:
            total += w
            err += abs(w)
            continue
        m = 0.5 * (a + b)
        left = _gl_panel(f, a, m)
        right = _gl_panel(f, m, b)
        splits += 1
        delta = abs(left + right - w)
        scale = abs(left + right) + abs(total) + 1e-300
        if delta <= rel_tol * scale or depth >= max_depth:
            total += left + right
            err += delta
        else:
            stack.append((a, m, left, depth + 1))
            stack.append((m, b, right, depth + 1))
    return total, err


# ---------------------------------------------------------------------------
# trend helpers on window sums
# ---------------------------------------------------------------------------


def _log_slope(values: np.ndarray) -> float | None:
    """Least-squares slope of log2(values) against the window index."""
    v = np.asarray(values, dtype=float)
    if len(v) < 2 or np.any(v <= 0.0):
        return None
    y = np.log2(v)
    x = np.arange(len(v), dtype=float)
    return float(np.polyfit(x, y, 1)[0])


def _nondecaying(sums: np.ndarray, cfg: QuadratureConfig) -> float | None:
    """Growth exponent if the last trend_len window sums are non-decaying."""
    n = cfg.trend_len
    if len(sums) < n:
        return None
    tail = sums[-n:]
    if np.any(tail <= 0.0):
        return None
    slope = _log_slope(tail)
    if slope is not None and slope >= cfg.divergence_slope_tol:
        return max(slope, 0.0)
    return None


def _strictly_growing(sums: np.ndarray, min_run: int = 4, factor: float = 1.5):
    """Growth exponent if a final run of windows is strictly increasing."""
    if len(sums) < min_run:
        return None
    tail = sums[-min_run:]
    if np.any(tail <= 0.0):
        return None
    if np.all(np.diff(tail) > 0.0) and tail[-1] >= factor * tail[0]:
        return _log_slope(tail)
    return None


def _resurgence(sums: np.ndarray) -> bool:
    """Detect non-Cauchy behaviour through recurrent sparse spikes.

    Fires when, after the early peak has died down by at least a factor 10,
    a late window climbs back to (at least 90% of) that peak: partial sums
    then keep receiving non-vanishing increments at sparse scales.
    """
    n = len(sums)
    if n < 12:
        return False
    half = n // 2
    early = sums[:half]
    early_max = float(np.max(early))
    if early_max <= 0.0:
        return False
    peak_idx = int(np.argmax(early))
    for i in range(half, n):
        if sums[i] >= 0.9 * early_max:
            dip = float(np.min(sums[peak_idx:i + 1]))
            if dip <= 0.1 * early_max:
                return True
    return False


# ---------------------------------------------------------------------------
# tail extrapolation
# ---------------------------------------------------------------------------


def _doubling_blocks(sums: np.ndarray) -> np.ndarray:
    """Sums of windows regrouped into blocks of doubling length."""
    out = []
    lo = 0
    width = 2
    n = len(sums)
    while lo < n:
        hi = min(n, lo + width)
        if hi - lo == width:
            out.append(float(np.sum(sums[lo:hi])))
        lo = hi
        width *= 2
    return np.asarray(out)


def _geometric_tail(sums: np.ndarray, k: int = 4):
    """Tail estimate from the last k window ratios; None if unstable."""
    tail = sums[-(k + 1):]
    if len(tail) < 3 or np.any(tail <= 0.0):
        return None
    ratios = tail[1:] / tail[:-1]
    rho = float(np.exp(np.mean(np.log(ratios))))
    if rho >= 0.995:
        return None
    est = float(tail[-1]) * rho / (1.0 - rho)
    spread = float(np.max(ratios) - np.min(ratios))
    worst = min(float(np.max(ratios)), 0.999)
    upper = float(tail[-1]) * worst / (1.0 - worst)
    return est, abs(upper - est) + est * spread


def _ratio_stable(sums: np.ndarray, k: int = 6, drift_tol: float = 0.01) -> bool:
    """True when the last window ratios look genuinely geometric.

    Window sums decaying like a power of the index have ratios that climb
    toward 1, so a constant-ratio extrapolation underestimates their tail
    without bound.  The fitted drift of the last ratios is compared against
    the remaining gap to 1: a drift that would close a visible fraction of
    the gap per window marks the sequence as non-geometric.
    """
    tail = sums[-(k + 1):]
    if len(tail) < 4 or np.any(tail <= 0.0):
        return True  # defer to the geometric extrapolator's own guards
    r = tail[1:] / tail[:-1]
    slope = float(np.polyfit(np.arange(len(r), dtype=float), r, 1)[0])
    return slope <= drift_tol * max(1.0 - float(np.mean(r)), 1e-3)


def _block_limit_positive(blocks: np.ndarray) -> bool:
    """Extrapolated limit of decreasing doubling blocks is visibly positive.

    The doubling blocks of a barely divergent series (window sums ~ 1/j)
    decrease toward a positive constant, while those of a barely
    convergent one decrease toward zero.  When successive block
    differences decay geometrically, the limit is blocks[-1] - d * rho /
    (1 - rho); a limit that keeps a visible fraction of the last block
    marks divergence.
    """
    d = -np.diff(blocks)
    if len(d) < 2 or np.any(d <= 0.0):
        return False
    rho = float(d[-1] / d[-2])
    if not 0.0 < rho < 0.95:
        return False
    b_inf = float(blocks[-1]) - float(d[-1]) * rho / (1.0 - rho)
    return b_inf > 0.1 * float(blocks[-1])


def _power_law_tail(sums: np.ndarray, fit_len: int = 24):
    """Fit window sums to A*(j+B)^(-p) and extrapolate the remainder.

    Returns (p, tail, tail_err) or None when no stable fit exists.
    """
    s = np.asarray(sums, dtype=float)
    n = len(s)
    use = min(fit_len, n)
    if use < 6:
        return None
    y = s[-use:]
    if np.any(y <= 0.0):
        return None
    j = np.arange(n - use, n, dtype=float)
    logy = np.log(y)

    best = None
    for b in np.concatenate([np.linspace(0.0, 30.0, 31), [50.0, 100.0, 200.0]]):
        x = np.log(j + 1.0 + b)
        coef, res = np.polyfit(x, logy, 1, full=True)[:2]
        rss = float(res[0]) if len(res) else 0.0
        if best is None or rss < best[0]:
            best = (rss, b, -coef[0], coef[1])
    rss, b, p, loga = best
    resid = math.sqrt(rss / use)
    if resid > 0.05 or not np.isfinite(p):
        return None
    a = math.exp(loga)
    if p <= 1.0:
        return p, math.inf, math.inf
    tail = a * float(zeta(p, n + 1.0 + b))
    # error: sensitivity of the tail to the fit residual plus curvature drift
    half = use // 2
    p_half = None
    if half >= 4:
        x = np.log(j[-half:] + 1.0 + b)
        p_half = -np.polyfit(x, logy[-half:], 1)[0]
    drift = abs(p_half - p) if p_half is not None else 0.0
    rel = resid * (1.0 + p) + drift * abs(math.log(n + 1.0 + b)) / max(p - 1.0, 0.1)
    return p, tail, tail * min(rel, 1.0)


# ---------------------------------------------------------------------------
# main entry points
# ---------------------------------------------------------------------------


def improper_integral(f, a: float, to_infinity: bool = True,
                      window_budget: int | None = None, *, log_form=None,
                      config: QuadratureConfig = QuadratureConfig()) -> IntegralVerdict:
    """Diagnose the integral of a nonnegative f over [a, infinity).

    ``log_form(t)``, when given, must equal f(exp(t)) * exp(t) and is used
    to probe the far tail beyond the floating-point range of u.
    ``window_budget`` overrides the configured number of dyadic windows.
    """
    if not to_infinity:
        raise ValueError("only integrals toward +infinity are supported")
    cfg = config
    if window_budget is not None:
        cfg = dataclasses_replace(cfg, phase1_windows=int(window_budget))
    u0 = max(a, 1.0)
    base = 0.0
    base_err = 0.0
    if a < u0:
        base, base_err = adaptive_panel(f, a, u0, cfg.panel_rel_tol, cfg.panel_max_depth)

    # phase 1: dyadic windows in u
    sums = []
    errs = []
    running = base
    lo = u0
    for _ in range(cfg.phase1_windows):
        hi = 2.0 * lo
        w, e = adaptive_panel(f, lo, hi, cfg.panel_rel_tol, cfg.panel_max_depth)
        w = max(w, 0.0)
        sums.append(w)
        errs.append(e)
        running += w
        lo = hi
    sums = np.array(sums)
    partial = tuple(np.cumsum(sums) + base)

    theta = _nondecaying(sums, cfg)
    if theta is not None:
        return IntegralVerdict(DIVERGENT, growth_exponent=theta,
                               partial_sums=partial, detail="dyadic windows non-decaying")
    growth = _strictly_growing(sums)
    if growth is not None:
        return IntegralVerdict(DIVERGENT, growth_exponent=growth,
                               partial_sums=partial, detail="dyadic windows growing")

    if _resurgence(sums):
        return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                               partial_sums=partial,
                               detail="recurrent spikes, non-Cauchy")
    geo = _geometric_tail(sums)
    if geo is None:
        if np.all(sums[-cfg.trend_len:] == 0.0):
            error = base_err + float(np.sum(errs))
            return IntegralVerdict(CONVERGENT, value=running, error=error,
                                   partial_sums=partial, detail="integrand exhausted")
    else:
        fast = sums[-2] > 0 and sums[-1] <= cfg.fast_ratio * sums[-2]
        tail, tail_err = geo
        if fast or tail <= 0.25 * max(running, 1e-300):
            value = running + tail
            error = base_err + float(np.sum(errs)) + tail_err
            if error <= cfg.value_rel_tol * max(abs(value), 1e-300) or error < 1e-300:
                return IntegralVerdict(CONVERGENT, value=value, error=error,
                                       partial_sums=partial, detail="geometric tail")

    # phase 2: geometric windows in t = log(u) for the slow regime
    if log_form is not None:
        g = log_form
        t_cap = math.inf
    else:
        g = lambda t: f(np.exp(t)) * np.exp(t)
        t_cap = 690.0

    t0 = math.log(max(lo, 2.0))
    sums2 = []
    errs2 = []
    t = t0
    running2 = running
    for _ in range(cfg.phase2_windows):
        t_next = t * cfg.phase2_growth
        if t_next > t_cap:
            break
        w, e = adaptive_panel(g, t, t_next, max(cfg.panel_rel_tol, 1e-8),
                              cfg.panel_max_depth)
        w = max(w, 0.0)
        sums2.append(w)
        errs2.append(e)
        running2 += w
        t = t_next
        if w <= cfg.negligible_rel * max(running2, 1e-300) and len(sums2) >= 4:
            break
    sums2 = np.array(sums2)
    partial2 = partial + tuple(running + np.cumsum(sums2))

    if len(sums2) >= 4:
        if np.all(sums2[-4:] == 0.0):
            error = base_err + float(np.sum(errs)) + float(np.sum(errs2))
            return IntegralVerdict(CONVERGENT, value=running2, error=error,
                                   partial_sums=partial2, detail="integrand exhausted")
        geo = _geometric_tail(sums2)
        if geo is not None and _ratio_stable(sums2):
            tail, tail_err = geo
            value = running2 + tail
            error = base_err + float(np.sum(errs)) + float(np.sum(errs2)) + tail_err
            return IntegralVerdict(CONVERGENT, value=value, error=error,
                                   partial_sums=partial2, detail="geometric tail (log scale)")

        fit = _power_law_tail(sums2)
        if fit is not None:
            p, tail, tail_err = fit
            if p <= 0.99:
                return IntegralVerdict(DIVERGENT, growth_exponent=max(-p, 0.0),
                                       partial_sums=partial2,
                                       detail=f"window sums ~ j^-{p:.2f}, p <= 1")
            if p >= 1.1 and math.isfinite(tail):
                value = running2 + tail
                error = (base_err + float(np.sum(errs)) + float(np.sum(errs2))
                         + tail_err)
                return IntegralVerdict(CONVERGENT, value=value, error=error,
                                       partial_sums=partial2,
                                       detail=f"power-law tail, p={p:.2f}")
            # harmonic zone: regroup into doubling blocks and look again
            blocks = _doubling_blocks(sums2)
            if len(blocks) >= 3:
                bslope = _log_slope(blocks)
                if bslope is not None and bslope >= -0.05:
                    return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                                           partial_sums=partial2,
                                           detail="doubling blocks non-decaying")
                if _block_limit_positive(blocks):
                    return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                                           partial_sums=partial2,
                                           detail="doubling blocks approach "
                                           "a positive level")
                bgeo = _geometric_tail(blocks, k=min(3, len(blocks) - 1))
                if bgeo is not None:
                    tail, tail_err = bgeo
                    value = running2 + tail
                    error = (base_err + float(np.sum(errs)) + float(np.sum(errs2))
                             + tail_err)
                    return IntegralVerdict(CONVERGENT, value=value, error=error,
                                           partial_sums=partial2,
                                           detail="doubling-block geometric tail")
            return IntegralVerdict(INCONCLUSIVE, partial_sums=partial2,
                                   detail=f"window exponent p={p:.2f} too close to 1")

        theta = _strictly_growing(sums2)
        if theta is not None:
            return IntegralVerdict(DIVERGENT, growth_exponent=max(theta, 0.0),
                                   partial_sums=partial2,
                                   detail="log-scale windows growing")
        if _resurgence(sums2):
            return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                                   partial_sums=partial2,
                                   detail="recurrent spikes, non-Cauchy")

    return IntegralVerdict(INCONCLUSIVE, partial_sums=partial2,
                           detail="no stable trend within budget")


def window_sequence_verdict(sums, config: QuadratureConfig = QuadratureConfig()) -> IntegralVerdict:
    """Diagnose convergence of a series from its precomputed window sums.

    Applies the same trend tests used by improper_integral to an externally
    supplied nonnegative sequence, ordered toward the limit (e.g. dyadic
    mass windows at ever smaller scales).
    """
    cfg = config
    sums = np.maximum(np.asarray(sums, dtype=float), 0.0)
    partial = tuple(np.cumsum(sums))
    running = float(np.sum(sums))

    theta = _nondecaying(sums, cfg)
    if theta is not None:
        return IntegralVerdict(DIVERGENT, growth_exponent=theta,
                               partial_sums=partial, detail="windows non-decaying")
    growth = _strictly_growing(sums)
    if growth is not None:
        return IntegralVerdict(DIVERGENT, growth_exponent=growth,
                               partial_sums=partial, detail="windows growing")
    if _resurgence(sums):
        return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                               partial_sums=partial,
                               detail="recurrent spikes, non-Cauchy")
    if len(sums) >= cfg.trend_len and np.all(sums[-cfg.trend_len:] == 0.0):
        return IntegralVerdict(CONVERGENT, value=running, error=0.0,
                               partial_sums=partial, detail="windows exhausted")
    # sparse spikes with geometrically decaying heights: the series they
    # dominate is summable even though most windows are zero
    nz = sums[sums > 0.0]
    if (len(nz) >= 3 and np.count_nonzero(sums) <= len(sums) // 3):
        ratios = nz[1:] / nz[:-1]
        if float(np.max(ratios)) <= 0.7:
            rho = float(np.max(ratios))
            tail = float(nz[-1]) * rho / (1.0 - rho)
            return IntegralVerdict(CONVERGENT, value=running + tail, error=tail,
                                   partial_sums=partial,
                                   detail="decaying sparse spikes")
    geo = _geometric_tail(sums)
    if geo is not None and _ratio_stable(sums):
        tail, tail_err = geo
        return IntegralVerdict(CONVERGENT, value=running + tail, error=tail_err,
                               partial_sums=partial, detail="geometric tail")
    fit = _power_law_tail(sums)
    if fit is not None:
        p, tail, tail_err = fit
        if p <= 0.99:
            return IntegralVerdict(DIVERGENT, growth_exponent=max(-p, 0.0),
                                   partial_sums=partial,
                                   detail=f"window sums ~ j^-{p:.2f}, p <= 1")
        if p >= 1.1 and math.isfinite(tail):
            return IntegralVerdict(CONVERGENT, value=running + tail,
                                   error=tail_err, partial_sums=partial,
                                   detail=f"power-law tail, p={p:.2f}")
        blocks = _doubling_blocks(sums)
        if len(blocks) >= 3:
            bslope = _log_slope(blocks)
            if bslope is not None and bslope >= -0.05:
                return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                                       partial_sums=partial,
                                       detail="doubling blocks non-decaying")
            if _block_limit_positive(blocks):
                return IntegralVerdict(DIVERGENT, growth_exponent=0.0,
                                       partial_sums=partial,
                                       detail="doubling blocks approach "
                                       "a positive level")
            bgeo = _geometric_tail(blocks, k=min(3, len(blocks) - 1))
            if bgeo is not None:
                tail, tail_err = bgeo
                return IntegralVerdict(CONVERGENT, value=running + tail,
                                       error=tail_err, partial_sums=partial,
                                       detail="doubling-block geometric tail")
        return IntegralVerdict(INCONCLUSIVE, partial_sums=partial,
                               detail=f"window exponent p={p:.2f} too close to 1")
    return IntegralVerdict(INCONCLUSIVE, partial_sums=partial,
                           detail="no stable trend in window sums")


def local_integrability_at(f, point: float, side: str = "right", delta: float = 0.5,
                           *, log_form=None,
                           config: QuadratureConfig = QuadratureConfig()) -> IntegralVerdict:
    """Diagnose integrability of f on a one-sided neighbourhood of a point.

    The window (point, point + delta] (or its mirror for side="left") is
    mapped to [1/delta, infinity) via v = 1/|x - point|, and the shrinking
    dyadic windows toward the point become the growing windows of
    improper_integral.  ``log_form(s)``, when given, must equal
    f(point +/- exp(-s)) * exp(-s).
    """
    if side == "both":
        right = local_integrability_at(f, point, "right", delta,
                                       log_form=log_form, config=config)
        left = local_integrability_at(f, point, "left", delta,
                                      log_form=log_form, config=config)
        if right.is_divergent or left.is_divergent:
            d = right if right.is_divergent else left
            return IntegralVerdict(DIVERGENT, growth_exponent=d.growth_exponent,
                                   partial_sums=d.partial_sums, detail=d.detail)
        if right.is_inconclusive or left.is_inconclusive:
            d = right if right.is_inconclusive else left
            return IntegralVerdict(INCONCLUSIVE, partial_sums=d.partial_sums,
                                   detail=d.detail)
        return IntegralVerdict(CONVERGENT, value=right.value + left.value,
                               error=right.error + left.error,
                               partial_sums=right.partial_sums,
                               detail="both sides convergent")
    if side not in ("right", "left"):
        raise ValueError("side must be 'right', 'left' or 'both'")
    sgn = 1.0 if side == "right" else -1.0

    def transformed(v):
        v = np.asarray(v, dtype=float)
        return f(point + sgn / v) / v**2

    return improper_integral(transformed, 1.0 / delta, log_form=log_form, config=config)
