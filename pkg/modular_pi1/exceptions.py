"""Error types raised by the modular_pi1 layers."""


class Pi1Error(Exception):
    """Base class for every error raised by this package."""


class NotPrimeError(Pi1Error, ValueError):
    """Input that must be an (odd) prime is not."""


class DegenerateCurveError(Pi1Error, ValueError):
    """Legendre parameter in {0, 1} or singular Weierstrass model."""


class MultiplicativeReductionError(Pi1Error, ValueError):
    """Kodaira type In (multiplicative reduction) was requested."""


class PolynomialError(Pi1Error, ValueError):
    """Zero polynomial or constant modulus where a proper one is required."""


class LatticeError(Pi1Error, ArithmeticError):
    """A vector or map does not live in the lattice it is supposed to."""


class DegeneratePairingError(Pi1Error, ArithmeticError):
    """The monodromy pairing on the cycle lattice has determinant 0."""


class InconsistentCensusError(Pi1Error, ArithmeticError):
    """Census counts contradict each other or the genus formula."""
