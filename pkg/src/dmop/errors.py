"""Exception hierarchy shared by all modules."""


class DmopError(Exception):
    """Base class for every error raised by :mod:`dmop`."""


class ZeroDenominator(DmopError, ZeroDivisionError):
    pass


class InvalidParameter(DmopError, ValueError):
    pass


class DegenerateHahn(DmopError, ValueError):
    """``(alpha + m)(beta + m) = 0`` so the Hahn ratio rows are undefined."""


class PoleOnLattice(DmopError, ValueError):
    pass


class IntegerShiftDifference(DmopError, ValueError):
    """Two lattices violate the noninteger shift hypothesis.

    ``pair`` holds the 1-based weight indices and ``expression`` names the
    difference that turned out to be an integer.
    """

    def __init__(self, pair, expression, value):
        self.pair = pair
        self.expression = expression
        self.value = value
        super().__init__(
            f"weights {pair[0]} and {pair[1]}: {expression} = {value} is an integer "
            "(shifts must keep gamma_j - gamma_k, gamma_j - gamma_k - alpha_j and "
            "gamma_j - gamma_k - beta_k off the integers)"
        )


class UnsupportedArity(DmopError, ValueError):
    pass


class DegreeCollapse(DmopError, ArithmeticError):
    def __init__(self, step, observed, expected):
        self.step = step
        self.observed = observed
        self.expected = expected
        super().__init__(
            f"degree collapse at step m={step}: expected degree {expected}, got {observed}"
        )


class HorizonExceeded(DmopError, ValueError):
    pass


class TailNotContracting(DmopError, ArithmeticError):
    pass


class SingularConstruction(DmopError, ArithmeticError):
    pass


class DegreeBoundViolated(DmopError, ArithmeticError):
    pass


class NoConvergence(DmopError, ArithmeticError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(DmopError, ValueError):
    pass
