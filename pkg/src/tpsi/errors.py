"""Error types shared across the package."""


class TpsiError(Exception):
    """Base class for all package errors."""


class InvalidModulusError(TpsiError, ValueError):
    """Modulus N outside the supported range."""


class SingularArgumentError(TpsiError, ValueError):
    """A factor such as 1 - x*omega^a or z - x*omega^s vanished."""


class RegionViolationError(TpsiError, ValueError):
    """A point violates the branch-region inequalities it must satisfy."""


class DegenerateTrihedronError(TpsiError, ValueError):
    """Angles produce a non-realizable or boundary trihedron."""


class SamplingFailureError(TpsiError, RuntimeError):
    """Random geometry stayed degenerate after the retry budget."""


class PlanError(TpsiError, ValueError):
    """A tensor contraction plan references unknown labels or tensors."""
