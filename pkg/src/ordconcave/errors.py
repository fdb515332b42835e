"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class OrdConcaveError(Exception):
    """Base class for every error raised by :mod:`ordconcave`."""


class GroundMismatch(OrdConcaveError):
    """A subset or function was used with a ground set it does not belong to."""


class EmptyGround(OrdConcaveError):
    """An operation would produce a function on an empty ground set."""


class InfiniteBase(OrdConcaveError):
    """A required base value is -inf (outside the effective domain)."""


class BadInterval(OrdConcaveError):
    """Interval endpoints are not nested."""


class EmptyFamily(OrdConcaveError):
    """A subset family that must be nonempty is empty."""


class EmptyChoiceDomain(OrdConcaveError):
    """A menu or interval contains no set of the effective domain."""


class OutsideDomain(OrdConcaveError):
    """A starting set lies outside the effective domain."""


class NotWConcave(OrdConcaveError):
    """The input was required to be ordinally w-concave but is not."""


class NotUM(OrdConcaveError):
    """The input was required to satisfy the unique-maximizer condition."""


class BadMaximizer(OrdConcaveError):
    """The given set is not a minimum-cardinality global maximizer."""


class NotAChoiceSet(OrdConcaveError):
    """No menu selects the given set."""


class GenerationTimeout(OrdConcaveError):
    """Rejection sampling exhausted its attempt budget."""


class TooLarge(OrdConcaveError):
    """The ground set exceeds the size an exhaustive routine supports."""


class ParseError(OrdConcaveError):
    """A set-function document could not be parsed.

    ``line`` and ``field`` locate the problem when known.
    """

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
