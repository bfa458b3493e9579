"""Exception hierarchy for paircorr."""


class PairCorrError(Exception):
    """Base class for all paircorr errors."""


class ConfigurationError(PairCorrError):
    """Invalid configuration (parameter ranges, undeclared limits, ...)."""


class RegimeError(PairCorrError):
    """An operation was called under the wrong scaling regime."""


class PreconditionError(PairCorrError):
    """A stated hypothesis of an inequality check is violated."""


class MemoryCapError(PairCorrError):
    """Materializing the atoms would exceed the configured memory cap."""

    def __init__(self, projected: int, cap: int):
        self.projected = projected
        self.cap = cap
        super().__init__(
            f"projected atom count {projected} exceeds cap {cap}; "
            "use streaming mode"
        )


class QuadratureError(PairCorrError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, achieved: float, requested: float):
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            f"quadrature reached {achieved:.3e}, requested {requested:.3e}"
        )
