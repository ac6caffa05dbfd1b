"""Exception hierarchy shared by every module."""


class LocalZetaError(Exception):
    """Base class for all library errors."""


class DegenerateFactorError(LocalZetaError, ValueError):
    """An Euler factor with exponent pair (0, 0)."""


class MixedResidueError(LocalZetaError, ValueError):
    """Arithmetic between scalars attached to different residue cardinalities."""


class PreconditionError(LocalZetaError, ValueError):
    """A mathematical precondition of a closed form does not hold.

    ``constraint`` names the violated condition so front ends can report it.
    """

    def __init__(self, constraint, message=None):
        self.constraint = constraint
        super().__init__(message or constraint)


class PoleError(LocalZetaError, ArithmeticError):
    """An Euler factor vanishes at the requested evaluation point."""


class ConvergenceError(LocalZetaError, ArithmeticError):
    """Numeric evaluation outside the guaranteed convergence margin."""


class SingularError(LocalZetaError, ArithmeticError):
    """A determinant used as a denominator vanishes."""
