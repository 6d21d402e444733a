"""Exception hierarchy shared by all modules."""


class GausscorrError(Exception):
    """Base class for all library errors."""


class InvalidInputError(GausscorrError):
    """Malformed or out-of-contract input (bad shapes, ranges, config keys)."""


class NonPhysicalStateError(GausscorrError):
    """Covariance matrix violates the bona-fide uncertainty condition."""


class NumericalError(GausscorrError):
    """Numerical routine failed to converge or produced unusable output."""
