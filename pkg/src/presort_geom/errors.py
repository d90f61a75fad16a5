"""Exception types shared across the package."""


class PresortGeomError(Exception):
    """Base class for all package errors."""


class NotSorted(PresortGeomError, ValueError):
    pass


class DuplicateCoordinate(PresortGeomError, ValueError):
    pass


class PermutationMismatch(PresortGeomError, ValueError):
    pass


class DegenerateResolution(PresortGeomError, ArithmeticError):
    """A split midline coincides with a square edge in floating point."""


class DuplicateRank(PresortGeomError, ValueError):
    pass


class SizeOverflow(PresortGeomError, MemoryError):
    """A lookup table would exceed the configured memory cap."""


class BadDigit(PresortGeomError, ValueError):
    pass



class Collinear(PresortGeomError, ValueError):
    pass


class DegenerateHull(PresortGeomError, ValueError):
    pass


class TooFew(PresortGeomError, ValueError):
    pass


class DivisionByZero(PresortGeomError, ZeroDivisionError):
    pass


class EpsTooLarge(PresortGeomError, ValueError):
    pass


class ValueSeparationViolated(PresortGeomError, ValueError):
    pass


class InfeasiblePlacement(PresortGeomError, RuntimeError):
    """A family point could not be placed; indicates a construction bug."""
