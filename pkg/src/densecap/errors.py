"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class DensecapError(Exception):
    """Base class for all errors raised by densecap."""


class DimensionError(DensecapError, ValueError):
    """Operand shapes or subsystem dimensions are inconsistent."""


class NotHermitianError(DensecapError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class InvalidDensityMatrix(DensecapError, ValueError):
    """A matrix fails the density-matrix invariants (trace, positivity)."""


class InvalidEnsemble(DensecapError, ValueError):
    """An encoding ensemble is malformed or not of the required type."""


class ConvergenceError(DensecapError, ArithmeticError):
    """The Jacobi eigensolver did not converge within the sweep cap."""


class NumericalError(DensecapError, ArithmeticError):
    """An internal consistency check failed (e.g. the two Holevo routes disagree)."""


class FormatError(DensecapError, ValueError):
    """Serialized input (JSON) is malformed or has the wrong shape."""
