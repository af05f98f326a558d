"""Exception hierarchy shared by every layer of the package."""


class TropicalError(Exception):
    """Base class for all errors raised by treach."""


class DimensionMismatch(TropicalError, ValueError):
    pass


class IndexOutOfRange(TropicalError, IndexError):
    pass


class ParseError(TropicalError, ValueError):
    """Malformed input file or scalar literal."""


class PreconditionViolated(TropicalError):
    """An operator was called outside its domain of definition."""


class UnnormalizedInput(PreconditionViolated, ValueError):
    """A lifted vector whose first coordinate is neither 0 nor -inf."""


class UnnormalizedGenerators(PreconditionViolated, ValueError):
    """A lifted generating matrix whose first row is not in {0, -inf}."""


class EmptyDisturbance(PreconditionViolated, ValueError):
    """The disturbance set has no bounded part."""
