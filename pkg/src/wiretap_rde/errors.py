"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class InfeasibleError(ValueError):
    """The requested operating point is not achievable / not in range."""


class SingularityError(ArithmeticError):
    """A conditioning covariance block is (numerically) singular."""
