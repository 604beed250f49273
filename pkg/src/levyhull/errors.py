"""Exception types shared across the package."""


class LevyHullError(Exception):
    """Base class for all package errors."""


class QuadratureFailure(LevyHullError):
    """An integral did not converge to tolerance within the evaluation budget."""


class InfiniteVariation(LevyHullError):
    """Operation requires a finite-variation process."""


class InconsistentEvidence(LevyHullError):
    """Two independent numerical routes to the same fact disagree."""


class UnsupportedFamily(LevyHullError):
    """No exact sampler / marginal law is available for this triplet."""


class DegeneratePath(LevyHullError):
    """Path skeleton has too few points to build a hull."""


class InvalidSplit(LevyHullError):
    """Requested measure split does not strip a finite-variation component."""


class UnknownEntry(LevyHullError):
    """Catalog name not in the registry."""


class InvalidParams(LevyHullError):
    """Catalog parameters outside their documented range."""
