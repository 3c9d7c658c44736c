"""Exception hierarchy shared by the solver modules."""


class PsletError(Exception):
    """Base class for solver failures."""


class DomainError(PsletError, ValueError):
    """Argument outside the supported domain (e.g. q <= 0)."""


class UnstableOrbit(PsletError):
    """No stable circular orbit: V'(q) <= 0 or negative frequency radicand."""


class NoBracket(PsletError):
    """Bracket expansion failed to find a sign change of the orbit residual."""


class SingularOrder(PsletError):
    """Linear system of some expansion order is rank deficient."""


class OrderOverflow(PsletError):
    """Recursion coefficients left the safe range of the working precision."""


class DegenerateTable(PsletError):
    """Pade denominator system is numerically singular."""


class PoleNearEvaluation(PsletError):
    """Pade denominator nearly vanishes at the evaluation point.

    The untrusted value is kept on ``value``.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class IllConditionedOverlap(PsletError):
    """Oracle basis overlap lost positive definiteness."""


class NoConvergence(PsletError):
    """Oracle failed to converge within the basis size cap."""
