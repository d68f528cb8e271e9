"""
Exception hierarchy for the walk library.

Errors that reject user input also derive from ValueError.
"""


class WalkError(Exception):
    """Root of every error raised by qwalk"""


class NotUnitary(WalkError, ValueError):
    """A coin violates a unitarity invariant beyond tolerance"""


class AmbiguousCase(WalkError, ValueError):
    """Coin entries sit in the band where the case cannot be decided"""


class WrongCase(WalkError):
    """Operation called on a coin of another case"""


class NotEigenvalue(WalkError, ValueError):
    """Supplied lambda is not one of the double-root eigenvalues"""


class ZeroParameters(WalkError, ValueError):
    """A = B = 0"""


class WindowTooSmall(WalkError):
    """Window cannot shrink by the required light-cone margin"""


class MissingSequenceValue(WalkError, KeyError):
    """An even-site sequence entry needed for sampling is absent"""

    def __str__(self):
        return Exception.__str__(self)


class ZeroProduct(WalkError, ValueError):
    """alpha_{2x} * beta_{2x} vanishes at some even site"""


class ZeroState(WalkError, ValueError):
    """Constant initial vector has zero norm"""


class NonPositive(WalkError, ValueError):
    """A tail value needed for a logarithmic fit is not positive"""


class InvalidSpec(WalkError, ValueError):
    """Malformed family parameters (odd site keys, bad sign, negative weights, ...)"""
