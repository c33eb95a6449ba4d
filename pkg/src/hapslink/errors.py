"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model parameter is outside its valid domain."""


class NumericalInstabilityError(ArithmeticError):
    """A closed-form evaluation left its certified range (cancellation)."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved_error: float):
        super().__init__(f"{message} (achieved error estimate {achieved_error:.3e})")
        self.achieved_error = achieved_error
