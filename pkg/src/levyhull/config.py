"""Run-wide numerical configuration.

All tolerances and budgets that influence a verdict live here so that a
run is fully described by (config, seed).  Instances are immutable and
JSON-serializable; the hash of the serialized form is stamped into every
output file header.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class QuadratureConfig:
    """Budgets and thresholds for improper-integral diagnosis."""

    # relative tolerance for a single adaptive panel
    panel_rel_tol: float = 1e-9
    # maximum bisection depth inside one panel
    panel_max_depth: int = 24
    # number of dyadic windows [u0*2^k, u0*2^(k+1)] in the first phase
    phase1_windows: int = 48
    # windows inspected by the trend tests
    trend_len: int = 8
    # log2 slope above which window sums count as non-decaying
    divergence_slope_tol: float = -0.02
    # window ratio below which geometric tail extrapolation is trusted
    fast_ratio: float = 0.9
    # second phase: geometric windows in t = log(u), growth factor and count
    phase2_growth: float = 1.5
    phase2_windows: int = 400
    # relative error below which a Convergent verdict is issued
    value_rel_tol: float = 1e-6
    # windows smaller than this (relative to the running sum) stop phase 1
    negligible_rel: float = 1e-13


@dataclass(frozen=True)
class CharExpConfig:
    """Tolerances for characteristic-exponent quadrature."""

    abs_tol: float = 1e-9
    rel_tol: float = 1e-7
    # atom series truncation: relative contribution threshold
    atom_rel_cutoff: float = 1e-14
    # |u*x| beyond which atom phases are reduced mod 2*pi in extended precision
    phase_reduce_threshold: float = 1e8


@dataclass(frozen=True)
class ClassifierConfig:
    """Grids and thresholds used by the regularity classifier."""

    # log-spaced u grid for limit proxies, and decades used for max/min
    u_max: float = 1e12
    points_per_decade: int = 8
    limit_decades: int = 3
    # per-decade growth factor that counts as "tends to infinity"
    growth_factor: float = 1.25
    # per-decade spread that still counts as "bounded"
    bounded_factor: float = 3.0
    # jump-measure asymmetry: required ratio and run length over dyadic scales
    asymmetry_ratio: float = 1.05
    asymmetry_run: int = 20
    # dyadic scale range (2^-k) probed for density/tail measures
    scale_k_min: int = 36
    scale_k_max: int = 56
    # margin on the lower activity index before the index rule may fire alone
    index_margin: float = 0.2
    # loose quadrature settings used inside classification integrals
    quad: QuadratureConfig = QuadratureConfig(
        panel_rel_tol=1e-6, panel_max_depth=12, phase2_windows=250
    )


@dataclass(frozen=True)
class SamplerConfig:
    """Controls for path and stick-breaking samplers."""

    # small-jump cutoff policy: largest eps with nu_bar(eps) <= jump_rate_cap
    jump_rate_cap: float = 1e5
    # number of sticks kept per stick-breaking sample
    sticks: int = 64


@dataclass(frozen=True)
class RunConfig:
    quadrature: QuadratureConfig = QuadratureConfig()
    charexp: CharExpConfig = CharExpConfig()
    classifier: ClassifierConfig = ClassifierConfig()
    sampler: SamplerConfig = SamplerConfig()

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    def digest(self) -> str:
        """Short stable hash of the full configuration."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


DEFAULT_CONFIG = RunConfig()
