"""Exception types raised by the solvers and verifiers."""


class NeelError(Exception):
    """Base class for all package errors."""


class DegenerateDenominator(NeelError):
    """A pairwise exchange sum vanishes while the matching field component does not."""


class IndeterminateTerm(NeelError):
    """A 0/0 term in the factorization condition; verify with an eigen residual instead."""


class ConditionViolated(NeelError):
    """The parameters are off the factorization surface."""


class AllCoefficientsZero(NeelError):
    """The stereographic quadratic is identically zero, so the angles are unconstrained."""


class PoleDegeneracy(NeelError):
    """A polar angle sits at the south pole and its half-angle tangent is infinite."""


class EmptyNullspace(NeelError):
    """No singular value of the angle system fell below the nullspace threshold."""


class NoRoot(NeelError):
    """A scan found no sign change of the condition residual."""


class BudgetExceeded(NeelError):
    """The requested Hilbert space dimension is above the configured limit."""
