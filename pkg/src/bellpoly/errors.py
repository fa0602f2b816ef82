"""Exception hierarchy shared across the toolkit."""


class BellPolyError(Exception):
    """Base class for all toolkit errors."""


class CapExceeded(BellPolyError):
    """An enumeration would materialize more objects than the configured cap."""


class LimitExceeded(BellPolyError):
    """Facet enumeration limits (vertex count / affine dimension) exceeded."""


class RepresentationMismatch(BellPolyError):
    """Operation applied to an incompatible behavior/inequality representation."""


class DimensionMismatch(BellPolyError):
    """Vector or matrix dimensions do not line up."""


class DimensionLimit(BellPolyError):
    """Quantum optimization refused: Hilbert space dimension too large."""


class NonFinite(BellPolyError):
    """A floating-point input was NaN or infinite."""


class InternalInvariantError(BellPolyError):
    """An internal consistency check failed; indicates a bug, not bad input."""
