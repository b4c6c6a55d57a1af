"""Exception types raised across the package."""


class IsoCyclesError(Exception):
    """Base class for all package errors."""


class NonzeroRemainder(IsoCyclesError, ArithmeticError):
    """Polynomial division that was required to be exact left a remainder."""


class DegreeZero(IsoCyclesError, ValueError):
    """A resultant was requested for a polynomial constant in the eliminated variable."""


class ZeroPolynomial(IsoCyclesError, ValueError):
    """An operation needs a nonzero polynomial.

    Raised by root isolation; upstream this signals a continuum of solutions.
    """


class SingularMap(IsoCyclesError, ValueError):
    """Affine map with vanishing determinant."""


class DenominatorVanishesOnSigma(IsoCyclesError, ValueError):
    """A first integral whose denominator is identically zero on x = 0."""


class UnknownPairing(IsoCyclesError, KeyError):
    """Family pairing outside the fifteen supported combinations."""


class NoConvergence(IsoCyclesError, RuntimeError):
    """Newton refinement of a candidate pair did not converge."""


class NoReturn(IsoCyclesError, RuntimeError):
    """A half-orbit did not come back to the switching line within the caps."""


class WrongHalfPlane(IsoCyclesError, ValueError):
    """The flow at the start point does not enter the requested half-plane."""


class ConfigError(IsoCyclesError, ValueError):
    """Invalid system configuration."""
