"""Exception types shared across the toolkit."""


class DramaLabError(Exception):
    """Base class for all analysis errors raised by this package."""


class UnknownPreset(DramaLabError):
    pass


class UnknownPin(DramaLabError):
    pass


class InconsistentSystem(DramaLabError):
    """No mask satisfies every equation of a GF(2) system."""


class UnderdeterminedSystem(DramaLabError):
    """The solution space has dimension > 0; carries the free bit indices."""

    def __init__(self, free_bits):
        self.free_bits = tuple(sorted(free_bits))
        super().__init__(f"solution not unique, free bits: {list(self.free_bits)}")


class RegionTooSmall(DramaLabError):
    pass


class NoGapFound(DramaLabError):
    """Latency samples do not separate into distinct classes."""


class NoFunctionsFound(DramaLabError):
    pass


class InvalidFraming(DramaLabError):
    pass


class ClockLost(DramaLabError):
    """Embedded-clock receiver saw no transition within twice the block period."""


class NoTemplateFound(DramaLabError):
    pass


class NoPairsFound(DramaLabError):
    pass
