"""Exception types raised by jacloc.

The class name of each error is part of the CLI contract: it is echoed
verbatim in the ``error`` field of failure reports.
"""


class JaclocError(Exception):
    """Base class for domain errors."""


class DegreeMismatch(JaclocError):
    """Sheaf degree differs from the sum of the stability parameter."""


class MDegreeMismatch(JaclocError):
    """Twisting line bundle M does not have total degree -d."""


class NonRationalPhi(JaclocError):
    """A stability parameter entry is not an exact rational."""


class NonStabilized(JaclocError):
    """Finite differences of the Hilbert-Samuel function did not settle."""


class NegativeVariableCount(JaclocError):
    """A power-series variable count came out negative."""


class ScaleLimitExceeded(JaclocError):
    """Input exceeds the enumeration limits of the exhaustive algorithms."""
