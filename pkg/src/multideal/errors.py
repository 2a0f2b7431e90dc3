"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class UnsupportedDimension(InputError):
    """The requested computation is not implemented in this ambient dimension."""


class RestrictionVanishes(InputError):
    """The subspace lies inside the zero locus of the ideal."""


class InvalidResolution(InputError):
    """A fan that is not smooth, or does not resolve the ideal."""


class InfiniteVolume(InputError):
    """A member of a graded family is not primary to the maximal ideal."""


class StabilizationNotCertified(RuntimeError):
    """The doubling chain did not stabilize within the search bound.

    The best ideal found so far is kept on ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ApproximationNotReached(RuntimeError):
    """No level up to ``k_max`` gets within ``eps`` of the target."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ChainPropertyViolation(RuntimeError):
    """``J((c/k) a_k)`` failed to sit inside ``J((c/pk) a_pk)``."""
