"""Exception hierarchy shared by every module of the package."""


class MogirError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(MogirError, ValueError):
    """A model-parameter invariant failed.

    ``violation`` is a stable name for the failed invariant (for example
    ``NonPositiveGamma`` or ``SlopeOutOfRange``) that the CLI echoes back.
    """

    def __init__(self, violation: str, detail: str):
        self.violation = violation
        self.detail = detail
        super().__init__(f"{violation}: {detail}")


class NonPositiveParameter(InvalidParams):
    pass


class SlopeOutOfRange(InvalidParams):
    pass


class NegativeShockScale(InvalidParams):
    pass


class InvalidConfig(MogirError, ValueError):
    """Simulation or run configuration is malformed."""

    def __init__(self, violation: str, detail: str):
        self.violation = violation
        self.detail = detail
        super().__init__(f"{violation}: {detail}")


class NonConvergence(MogirError, ArithmeticError):
    """The expectation fixed point did not settle within the iteration cap."""


class NegativeSquaredDeviation(MogirError, ValueError):
    pass


class BracketFailure(MogirError, ArithmeticError):
    """The numeric optimum sits on the search bracket even after widening."""


class SimulationError(MogirError, RuntimeError):
    pass


class InsufficientData(SimulationError):
    pass
