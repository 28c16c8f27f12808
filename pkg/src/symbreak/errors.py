"""Exception types raised across the package."""


class SymBreakError(Exception):
    """Base class for all package errors."""


class ClosureOverflow(SymBreakError):
    pass


class NotInvertible(SymBreakError):
    pass


class SubgroupOverflow(SymBreakError):
    pass


class NotNormal(SymBreakError):
    pass


class NotNested(SymBreakError):
    pass


class UnknownName(SymBreakError):
    pass


class BadParameter(SymBreakError):
    pass


class UnsupportedIrrep(SymBreakError):
    pass


class NotAPointGroup(SymBreakError):
    pass


class Unsupported(SymBreakError):
    pass


class RelatorViolation(SymBreakError):
    pass


class NotSymmetryBreaking(SymBreakError):
    pass


class NotPartialBreaking(SymBreakError):
    pass


class InfiniteNormalizer(SymBreakError):
    pass


class SymbolicGroup(SymBreakError):
    pass


class NotPartialSBS(SymBreakError):
    pass


class HypothesisUnmet(SymBreakError):
    pass


class GroupNotClosed(SymBreakError):
    pass
