"""Exception types raised by ambnorm."""


class AmbnormError(Exception):
    """Base class for every error raised by this package."""


class DomainError(AmbnormError, ValueError):
    """An exponent or parameter lies outside the admissible range."""


class InvalidParamsError(DomainError):
    pass


class DegenerateInputError(AmbnormError, ValueError):
    """Input carries no mass (zero waveform, empty region, void certificate)."""


class DegenerateRegionError(DegenerateInputError):
    pass


class DegenerateCertificateError(DegenerateInputError):
    pass


class GridTooNarrowError(AmbnormError, ValueError):
    pass


class OffGridError(AmbnormError, ValueError):
    """A requested point does not sit on the sampling lattice."""


class OffGridDelayError(OffGridError):
    pass


class IncompatibleGridsError(AmbnormError, ValueError):
    pass


class RasterizationMismatchError(IncompatibleGridsError):
    """A weight cannot be placed on a surface grid without partial cells."""


class WeightNormDivergenceError(AmbnormError, ArithmeticError):
    pass


class UnsupportedOrderError(DomainError):
    pass


class NoClosedFormError(AmbnormError, NotImplementedError):
    pass


class ScenarioNotFoundError(AmbnormError, KeyError):
    pass
