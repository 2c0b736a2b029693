"""Exception hierarchy shared by every module."""


class LRCError(Exception):
    """Base class for all errors raised by rmlrc."""


class FieldMismatch(LRCError, ValueError):
    """Element shape or coordinate range does not match the field."""


class ZeroInverse(LRCError, ZeroDivisionError):
    pass


class RankDeficient(LRCError):
    """Observed evaluation points span fewer dimensions than required."""


class Inconsistent(LRCError):
    """Observations do not agree with any polynomial of the allowed q-degree."""


class FieldTooSmall(LRCError, ValueError):
    pass


class TooManyErasures(LRCError):
    pass


class GroupOverwhelmed(TooManyErasures):
    """More than delta-1 nodes of a local group are missing."""


class InvalidParams(LRCError, ValueError):
    pass


class NotOptimalConfiguration(InvalidParams):
    """Neither optimality clause holds for the requested (n, M, r, delta, alpha)."""


class TooLarge(LRCError):
    """Exhaustive enumeration would exceed the combinatorial budget."""


class ConditionsNotMet(LRCError):
    pass
