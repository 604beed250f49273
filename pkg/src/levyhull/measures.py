"""Jump-measure representations: density, atoms, and two-sided tails.

Every representation exposes the same surface: tail functionals
(nu_bar_plus, nu_bar_minus, sigma_bar2, gamma_bar), the jump integral of
the characteristic exponent, dyadic-scale masses and moments near the
origin, and restriction to small jumps.  The tail-function representation
requires the measure to live inside (-s, s) for a support radius s <= 1,
which covers all slowly-varying example families.
"""

from __future__ import annotations

import math
import warnings

import mpmath as mp
import numpy as np
from scipy import integrate

from .config import CharExpConfig
from .errors import InvalidParams, InvalidSplit

_TINY = 1e-308


def _at(fn, y) -> float:
    """Evaluate a vectorised tail function at a single scalar point."""
    return float(np.atleast_1d(fn(np.atleast_1d(np.asarray(y, dtype=float))))[0])


def _quad(f, a, b, cfg: CharExpConfig, **kw):
    # accuracy is certified by cross-representation tests, not by the
    # routine's own warnings (oscillatory weights often round-off limit)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                                limit=200, **kw)
    return val


def _quad_log(f, a: float, b: float, cfg: CharExpConfig) -> float:
    """quad of f over [a, b] in log space; robust across wide ranges."""
    if not (0.0 < a < b):
        return 0.0
    return _quad(lambda s: f(math.exp(s)) * math.exp(s),
                 math.log(a), math.log(b), cfg)


# breakpoint hints so adaptive quads on (0, 1) cannot miss narrow scales
_UNIT_PTS = [1e-15, 1e-12, 1e-9, 1e-6, 1e-3]


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _osc_quad(f, a: float, omega: float, kind: str, b: float = math.inf,
              n_seg: int = 40) -> float:
    """int_a^b f(t) cos/sin(omega t) dt for decaying f, b possibly infinite.

    Half-period segments give an alternating series; iterated averaging of
    its partial sums accelerates convergence far beyond the plain sum, even
    when f decays slowly.  When f is supported up to a nearby finite b the
    segments are summed exactly instead (the cutoff would otherwise sit
    inside one Gauss panel and spoil it).
    """
    trig = np.cos if kind == "cos" else np.sin
    h = math.pi / omega

    def eval_f(x):
        try:
            y = np.asarray(f(x), dtype=float)
            if y.shape == x.shape:
                return y
        except (TypeError, ValueError):
            pass
        return np.array([float(f(v)) for v in x])

    def seg_sums(lows, highs):
        half = 0.5 * (highs - lows)
        mid = 0.5 * (highs + lows)
        x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        flat = x.ravel()
        y = (eval_f(flat) * trig(omega * flat)).reshape(x.shape)
        return half * (y @ _GL_WEIGHTS)

    if math.isfinite(b) and (b - a) / h <= 4096.0:
        n = int(math.ceil((b - a) / h))
        lows = a + h * np.arange(n)
        highs = np.minimum(lows + h, b)
        return float(np.sum(seg_sums(lows, highs)))

    lows = a + h * np.arange(n_seg)
    terms = seg_sums(lows, lows + h)
    p = np.cumsum(terms)
    while len(p) > 1:
        p = 0.5 * (p[:-1] + p[1:])
    return float(p[0])


_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp splitting constant
_TWO_PI_HI = 6.283185307179586
_TWO_PI_LO = 2.4492935982947064e-16
# largest |u*x| for which the double-double reduction below stays exact:
# the integer multiple k = round(u*x / 2pi) must fit in a double
_DD_PHASE_LIMIT = 2.0**53 * math.pi


def _two_prod(a, b):
    """a*b as a rounded product plus its exact rounding error."""
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _reduce_phase_dd(u, x):
    """fmod(u*x, 2*pi) treating the product u*x as exact, vectorized.

    Valid while |u*x| stays below _DD_PHASE_LIMIT; the caller falls back
    to arbitrary precision beyond that.
    """
    p, e = _two_prod(u, x)
    k = np.rint(p / _TWO_PI_HI)
    kh, ke = _two_prod(k, _TWO_PI_HI)
    return ((p - kh) - ke) + (e - k * _TWO_PI_LO)


def _cos_m1(t):
    """cos(t) - 1 without cancellation."""
    return -2.0 * np.sin(0.5 * t) ** 2


def _sin_m_t(t):
    """sin(t) - t without cancellation for small t."""
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < 1e-4
    ts = np.where(small, t, 0.0)
    series = -(ts**3) / 6.0 * (1.0 - ts**2 / 20.0)
    return np.where(small, series, np.sin(t) - t)


class LevyMeasure:
    """Common interface; see subclasses."""

    kind = "abstract"

    # --- tail functionals -------------------------------------------------
    def nu_bar_plus(self, x):
        raise NotImplementedError

    def nu_bar_minus(self, x):
        raise NotImplementedError

    def nu_bar(self, x):
        return self.nu_bar_plus(x) + self.nu_bar_minus(x)

    def sigma_bar2(self, x: float) -> float:
        raise NotImplementedError

    def gamma_bar(self, x: float) -> float:
        raise NotImplementedError

    # --- characteristic exponent jump part --------------------------------
    def jump_integral(self, u: float, cfg: CharExpConfig) -> complex:
        """integral of (exp(iux) - 1 - iux 1_{|x|<1}) nu(dx) for u > 0."""
        raise NotImplementedError

    # --- dyadic structure near 0 ------------------------------------------
    def dyadic_mass(self, k: int, side: str, p: float = 0.0) -> float:
        """integral of |x|^p nu(dx) over 2^-(k+1) <= |x| < 2^-k on one side."""
        raise NotImplementedError

    def scale_range(self) -> tuple[int, int]:
        """Dyadic scales (k_min, k_max) where the measure is active near 0."""
        raise NotImplementedError

    def signed_unit_moment(self, cfg: CharExpConfig) -> float:
        """integral of x nu(dx) over (-1,1); caller guarantees finiteness."""
        raise NotImplementedError

    def restrict_small(self, eps: float) -> "LevyMeasure":
        """The measure restricted to |x| < eps."""
        raise NotImplementedError

    def band_moment(self, a: float, b: float, cfg: CharExpConfig) -> float:
        """integral of x nu(dx) over a <= |x| < b; finite since a > 0."""
        raise NotImplementedError

    def scaled(self, c: float) -> "LevyMeasure":
        """Image measure under x -> c x for c > 0 (same representation)."""
        raise NotImplementedError

    def validate(self, cfg: CharExpConfig) -> None:
        s2 = self.sigma_bar2(1.0)
        nb = _at(self.nu_bar, 1.0)
        if not (np.isfinite(s2) and s2 >= -1e-12):
            raise InvalidParams(f"sigma_bar2(1) = {s2} not finite/nonnegative")
        if not (np.isfinite(nb) and nb >= 0.0):
            raise InvalidParams(f"nu_bar(1) = {nb} not finite/nonnegative")


# ===========================================================================
# density representation
# ===========================================================================


class DensityMeasure(LevyMeasure):
    """nu(dx) = f(x) dx with f evaluable off 0; optional bounded support.

    f must accept ndarray input and vanish outside (-xmax, xmax).
    symmetric=True asserts f(x) = f(-x) and makes odd functionals exactly 0.
    """

    kind = "density"

    def __init__(self, density, xmax: float = math.inf, symmetric: bool = False):
        self.density = density
        self.xmax = float(xmax)
        self.symmetric = symmetric
        self._cache = {}

    # paired even/odd combinations
    def _even(self, x):
        x = np.asarray(x, dtype=float)
        if self.symmetric:
            return 2.0 * self.density(x)
        return self.density(x) + self.density(-x)

    def _odd(self, x):
        x = np.asarray(x, dtype=float)
        if self.symmetric:
            return np.zeros_like(x)
        return self.density(x) - self.density(-x)

    def nu_bar_plus(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([self._half_tail(float(v), +1) for v in xs])
        return out if np.ndim(x) else float(out[0])

    def nu_bar_minus(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([self._half_tail(float(v), -1) for v in xs])
        return out if np.ndim(x) else float(out[0])

    def _half_tail(self, x: float, sgn: int) -> float:
        key = ("tail", sgn, x)
        if key not in self._cache:
            cfg = CharExpConfig()
            if x >= self.xmax:
                val = 0.0
            else:
                g = (lambda y: float(self.density(y))) if sgn > 0 \
                    else (lambda y: float(self.density(-y)))
                s0 = min(max(x, 1.0), self.xmax)
                val = _quad_log(g, x, s0, cfg)
                if self.xmax > s0:
                    hi = np.inf if math.isinf(self.xmax) else self.xmax
                    val += _quad(g, s0, hi, cfg)
            self._cache[key] = val
        return self._cache[key]

    def sigma_bar2(self, x: float) -> float:
        key = ("s2", x)
        if key not in self._cache:
            cfg = CharExpConfig()
            hi = min(x, self.xmax)
            # y * (y * even) keeps the product finite when y*y alone
            # would underflow against a steep density
            val = 0.0 if hi <= 0 else _quad(
                lambda y: y * (y * self._even(y)), 0.0, hi, cfg)
            self._cache[key] = val
        return self._cache[key]

    def gamma_bar(self, x: float) -> float:
        if self.symmetric or x >= 1.0:
            return 0.0
        key = ("gb", x)
        if key not in self._cache:
            cfg = CharExpConfig()
            hi = min(1.0, self.xmax)
            val = 0.0 if x >= hi else _quad_log(
                lambda y: y * float(self._odd(y)), x, hi, cfg)
            self._cache[key] = val
        return self._cache[key]

    def jump_integral(self, u: float, cfg: CharExpConfig) -> complex:
        # Oscillatory parts are integrated in the phase variable t = u x so
        # the weight frequency stays at 1 regardless of u; the integrand
        # then carries the 1/u Jacobian and stays overflow-free.
        xmax = self.xmax
        upper = np.inf if math.isinf(xmax) else xmax
        phase_top = u * xmax  # may be inf
        g = lambda t: self._even(t / u) / u
        h = lambda t: self._odd(t / u) / u

        # real part: int (cos(ux) - 1) * even(x) dx over (0, xmax)
        top = min(1.0, phase_top)
        kw = {"points": _UNIT_PTS} if top == 1.0 else {}
        re = _quad(lambda t: _cos_m1(t) * g(t), 0.0, top, cfg, **kw)
        if phase_top > 1.0:
            re += _osc_quad(g, 1.0, 1.0, "cos", b=phase_top)
            p1 = 1.0 / u
            s0 = min(max(p1, 1.0), xmax)
            re -= _quad_log(lambda x: float(self._even(x)), p1, s0, cfg)
            if upper > s0:
                re -= _quad(lambda x: self._even(x), s0, upper, cfg)

        if self.symmetric:
            return complex(re, 0.0)

        # imaginary part: int (sin(ux) - ux 1_{x<1}) * odd(x) dx
        if u <= 1.0:
            # phases inside the compensation region stay below 1
            cut = min(1.0, xmax)
            im = _quad(lambda x: _sin_m_t(u * x) * self._odd(x), 0.0, cut, cfg)
            if xmax > 1.0:
                im += _osc_quad(self._odd, 1.0, u, "sin", b=xmax)
        else:
            im = _quad(lambda t: _sin_m_t(t) * h(t), 0.0, top, cfg, **kw)
            if phase_top > 1.0:
                im += _osc_quad(h, 1.0, 1.0, "sin", b=phase_top)
                cut = min(1.0, xmax)
                if cut > 1.0 / u:
                    im -= u * _quad_log(lambda x: x * float(self._odd(x)),
                                        1.0 / u, cut, cfg)
        return complex(re, im)

    def dyadic_mass(self, k: int, side: str, p: float = 0.0) -> float:
        a, b = 2.0 ** (-(k + 1)), 2.0 ** (-k)
        b = min(b, self.xmax)
        if b <= a:
            return 0.0
        cfg = CharExpConfig()
        g = (lambda y: self.density(y)) if side == "+" else (lambda y: self.density(-y))
        if p == 0.0:
            return _quad(g, a, b, cfg)
        return _quad(lambda y: y**p * g(y), a, b, cfg)

    def scale_range(self) -> tuple[int, int]:
        k_min = max(0, int(math.floor(-math.log2(min(self.xmax, 1.0)))))
        return (k_min, 56)

    def signed_unit_moment(self, cfg: CharExpConfig) -> float:
        if self.symmetric:
            return 0.0
        hi = min(1.0, self.xmax)
        return _quad(lambda y: y * self._odd(y), 0.0, hi, cfg)

    def restrict_small(self, eps: float) -> "DensityMeasure":
        f = self.density

        def g(x):
            x = np.asarray(x, dtype=float)
            return np.where(np.abs(x) < eps, f(x), 0.0)

        return DensityMeasure(g, xmax=min(eps, self.xmax), symmetric=self.symmetric)

    def band_moment(self, a: float, b: float, cfg: CharExpConfig) -> float:
        if not 0.0 < a <= b:
            raise InvalidParams("band must satisfy 0 < a <= b")
        if self.symmetric:
            return 0.0
        hi = min(b, self.xmax)
        if hi <= a:
            return 0.0
        return _quad(lambda y: y * self._odd(y), a, hi, cfg)

    def scaled(self, c: float) -> "DensityMeasure":
        f = self.density
        return DensityMeasure(lambda y: f(np.asarray(y, dtype=float) / c) / c,
                              xmax=c * self.xmax, symmetric=self.symmetric)


# ===========================================================================
# atomic representation
# ===========================================================================


class AtomsMeasure(LevyMeasure):
    """nu = sum of point masses m_k at locations x_k != 0."""

    kind = "atoms"

    def __init__(self, locations, masses):
        x = np.asarray(locations, dtype=float)
        m = np.asarray(masses, dtype=float)
        if np.any(x == 0.0):
            raise InvalidParams("atom at 0 rejected")
        if np.any(m <= 0.0) or len(x) != len(m):
            raise InvalidParams("atom masses must be positive and match locations")
        order = np.argsort(-np.abs(x))
        self.x = x[order]
        self.m = m[order]

    def nu_bar_plus(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = (self.m[None, :] * ((self.x[None, :] > 0)
               & (self.x[None, :] > xs[:, None]))).sum(axis=1)
        return out if np.ndim(x) else float(out[0])

    def nu_bar_minus(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = (self.m[None, :] * ((self.x[None, :] < 0)
               & (-self.x[None, :] > xs[:, None]))).sum(axis=1)
        return out if np.ndim(x) else float(out[0])

    def sigma_bar2(self, x: float) -> float:
        sel = np.abs(self.x) < x
        # (m * x) * x keeps large-mass tiny-atom terms from underflowing
        return float(np.sum(self.m[sel] * self.x[sel] * self.x[sel]))

    def gamma_bar(self, x: float) -> float:
        sel = (np.abs(self.x) >= x) & (np.abs(self.x) < 1.0)
        return float(np.sum(self.m[sel] * self.x[sel]))

    def jump_integral(self, u: float, cfg: CharExpConfig) -> complex:
        return complex(*self._jump_terms(u, cfg))

    def _phase(self, u: float, x: float, cfg: CharExpConfig) -> float:
        t = u * x
        if abs(t) > cfg.phase_reduce_threshold:
            if abs(t) < _DD_PHASE_LIMIT:
                t = float(_reduce_phase_dd(u, x))
            else:
                dps = int(math.log10(abs(t))) + 25
                with mp.workdps(dps):
                    t = float(mp.fmod(mp.mpf(u) * mp.mpf(x), 2 * mp.pi))
        return t

    def _jump_terms(self, u: float, cfg: CharExpConfig):
        raw = u * self.x
        big = np.abs(raw) > cfg.phase_reduce_threshold
        t = np.where(big, 0.0, raw)
        if np.any(big):
            idx = np.nonzero(big)[0]
            dd = idx[np.abs(raw[idx]) < _DD_PHASE_LIMIT]
            if len(dd):
                t[dd] = _reduce_phase_dd(np.full(len(dd), u), self.x[dd])
            for i in idx[np.abs(raw[idx]) >= _DD_PHASE_LIMIT]:
                t[i] = self._phase(u, self.x[i], cfg)
        re = float(np.sum(self.m * _cos_m1(t)))
        # sin is periodic in the reduced phase; the compensation term -ux
        # of small jumps is not reducible and uses the raw product
        small_x = np.abs(self.x) < 1.0
        im_small = np.where(big, np.sin(t) - raw, _sin_m_t(t))
        im = float(np.sum(self.m * np.where(small_x, im_small, np.sin(t))))
        return re, im

    def jump_integral_mp(self, u, dps: int = 300):
        """Jump integral with u given as an exact mpmath value."""
        with mp.workdps(dps):
            u = mp.mpf(u)
            re = mp.mpf(0)
            im = mp.mpf(0)
            for x, m in zip(self.x, self.m):
                t = u * mp.mpf(x)
                re += m * (mp.cos(t) - 1)
                if abs(x) < 1.0:
                    im += m * (mp.sin(t) - t)
                else:
                    im += m * mp.sin(t)
            return complex(float(re), float(im))

    def dyadic_mass(self, k: int, side: str, p: float = 0.0) -> float:
        a, b = 2.0 ** (-(k + 1)), 2.0 ** (-k)
        if side == "+":
            sel = (self.x > a) & (self.x <= b)
        else:
            sel = (-self.x > a) & (-self.x <= b)
        if p == 0.0:
            return float(np.sum(self.m[sel]))
        return float(np.sum(self.m[sel] * np.abs(self.x[sel]) ** p))

    def scale_range(self) -> tuple[int, int]:
        ax = np.abs(self.x)
        small = ax[ax < 1.0]
        if len(small) == 0:
            return (0, 0)
        k_min = max(0, int(math.floor(-math.log2(np.max(small)))))
        k_max = int(math.floor(-math.log2(np.min(small))))
        return (k_min, k_max)

    def signed_unit_moment(self, cfg: CharExpConfig) -> float:
        sel = np.abs(self.x) < 1.0
        return float(np.sum(self.m[sel] * self.x[sel]))

    def restrict_small(self, eps: float) -> "AtomsMeasure":
        sel = np.abs(self.x) < eps
        if not np.any(sel):
            raise InvalidSplit("no atoms below the split point")
        return AtomsMeasure(self.x[sel], self.m[sel])

    def band_moment(self, a: float, b: float, cfg: CharExpConfig) -> float:
        if not 0.0 < a <= b:
            raise InvalidParams("band must satisfy 0 < a <= b")
        sel = (np.abs(self.x) >= a) & (np.abs(self.x) < b)
        return float(np.sum(self.m[sel] * self.x[sel]))

    def scaled(self, c: float) -> "AtomsMeasure":
        return AtomsMeasure(c * self.x, self.m)


# ===========================================================================
# two-sided tail-function representation
# ===========================================================================


class TailsMeasure(LevyMeasure):
    """Measure given through its tails nu_bar_plus / nu_bar_minus.

    Both tails must be non-increasing, vanish at and beyond the support
    radius s <= 1, and accept ndarray input on (0, s).
    """

    kind = "tails"

    def __init__(self, tail_plus, tail_minus, support_radius: float = 1.0):
        if not (0.0 < support_radius <= 1.0):
            raise InvalidParams("support radius must lie in (0, 1]")
        self._plus = tail_plus
        self._minus = tail_minus
        self.s = float(support_radius)
        self._cache = {}

    def _guard(self, f, x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < self.s)
        xx = np.clip(x, _TINY, self.s)
        with np.errstate(all="ignore"):
            vals = np.where(inside, f(xx), 0.0)
        return vals

    def nu_bar_plus(self, x):
        return self._guard(self._plus, x)

    def nu_bar_minus(self, x):
        return self._guard(self._minus, x)

    def sigma_bar2(self, x: float) -> float:
        key = ("s2", x)
        if key not in self._cache:
            cfg = CharExpConfig()
            hi = min(x, self.s)
            if hi <= 0.0:
                val = 0.0
            else:
                val = 2.0 * _quad(lambda y: y * _at(self.nu_bar, y),
                                  0.0, hi, cfg)
                if x < self.s:
                    # boundary term from integrating x^2 nu(dx) by parts;
                    # x * (x * nu_bar) keeps the product from underflowing
                    # when x**2 alone would round to zero
                    val -= x * (x * _at(self.nu_bar, x))
            self._cache[key] = val
        return self._cache[key]

    def gamma_bar(self, x: float) -> float:
        if x >= self.s:
            return 0.0
        key = ("gb", x)
        if key not in self._cache:
            cfg = CharExpConfig()
            diff = lambda y: (_at(self.nu_bar_plus, y)
                               - _at(self.nu_bar_minus, y))
            val = x * diff(x) + _quad_log(diff, x, self.s, cfg)
            self._cache[key] = val
        return self._cache[key]

    def jump_integral(self, u: float, cfg: CharExpConfig) -> complex:
        # integration by parts of the exponent against the tails:
        #   Re = -u int_0^s sin(uy) nu_bar(y) dy
        #   Im =  u int_0^s (cos(uy) - 1) (nu_bar_plus - nu_bar_minus) dy
        # oscillatory parts run in the phase variable t = u y.
        s = self.s
        tot = lambda y: self.nu_bar(np.asarray(y, dtype=float))
        dif = lambda y: (self.nu_bar_plus(np.asarray(y, dtype=float))
                         - self.nu_bar_minus(np.asarray(y, dtype=float)))
        if u * s <= 1.0:
            re = -u * _quad(lambda y: math.sin(u * y) * float(tot(y)),
                            0.0, s, cfg)
            im = u * _quad(lambda y: float(_cos_m1(u * y)) * float(dif(y)),
                           0.0, s, cfg)
            return complex(re, im)

        T = lambda t: tot(t / u)
        D = lambda t: dif(t / u)
        re = -_quad(lambda t: math.sin(t) * float(T(t)), 0.0, 1.0, cfg,
                    points=_UNIT_PTS)
        re -= _osc_quad(T, 1.0, 1.0, "sin", b=u * s)

        im = _quad(lambda t: float(_cos_m1(t)) * float(D(t)), 0.0, 1.0, cfg,
                   points=_UNIT_PTS)
        im += _osc_quad(D, 1.0, 1.0, "cos", b=u * s)
        im -= u * _quad_log(lambda y: float(dif(y)), 1.0 / u, s, cfg)
        return complex(re, im)

    def dyadic_mass(self, k: int, side: str, p: float = 0.0) -> float:
        a, b = 2.0 ** (-(k + 1)), 2.0 ** (-k)
        tail = self.nu_bar_plus if side == "+" else self.nu_bar_minus
        ta = float(tail(np.asarray(a)))
        tb = float(tail(np.asarray(min(b, self.s))))
        if p == 0.0:
            return max(ta - tb, 0.0)
        cfg = CharExpConfig()
        b_eff = min(b, self.s)
        if b_eff <= a:
            return 0.0
        corr = _quad(lambda y: p * y ** (p - 1.0) * (float(tail(np.asarray(y))) - tb),
                     a, b_eff, cfg)
        return max(a**p * (ta - tb) + corr, 0.0)

    def scale_range(self) -> tuple[int, int]:
        k_min = max(0, int(math.floor(-math.log2(self.s))))
        return (k_min, 56)

    def signed_unit_moment(self, cfg: CharExpConfig) -> float:
        # int_(0,s) x nu(dx) = int_0^s nu_bar_plus, and mirrored for the minus side
        plus = _quad(lambda y: _at(self.nu_bar_plus, y), 0.0, self.s, cfg)
        minus = _quad(lambda y: _at(self.nu_bar_minus, y), 0.0, self.s, cfg)
        return plus - minus

    def restrict_small(self, eps: float) -> "TailsMeasure":
        if eps >= self.s:
            return self
        p0 = _at(self.nu_bar_plus, eps)
        m0 = _at(self.nu_bar_minus, eps)
        fp, fm = self._plus, self._minus
        return TailsMeasure(
            lambda x: np.maximum(fp(x) - p0, 0.0),
            lambda x: np.maximum(fm(x) - m0, 0.0),
            support_radius=eps,
        )

    def band_moment(self, a: float, b: float, cfg: CharExpConfig) -> float:
        if not 0.0 < a <= b:
            raise InvalidParams("band must satisfy 0 < a <= b")
        hi = min(b, self.s)
        if hi <= a:
            return 0.0
        # int_[a,hi) x nu(dx) per side by parts against the tails
        out = 0.0
        for tail, sgn in ((self.nu_bar_plus, 1.0), (self.nu_bar_minus, -1.0)):
            ta = float(tail(np.asarray(a)))
            tb = float(tail(np.asarray(hi)))
            seg = _quad(lambda y: float(tail(np.asarray(y))), a, hi, cfg)
            out += sgn * (seg + a * ta - hi * tb)
        return out

    def scaled(self, c: float) -> "TailsMeasure":
        if c * self.s > 1.0:
            raise InvalidParams(
                "scaled support radius exceeds the tail representation range")
        fp, fm = self._plus, self._minus
        return TailsMeasure(lambda x: fp(np.asarray(x, dtype=float) / c),
                            lambda x: fm(np.asarray(x, dtype=float) / c),
                            support_radius=c * self.s)
