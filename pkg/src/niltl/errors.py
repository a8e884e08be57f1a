class NilTLError(ValueError):
    """Base class for domain errors raised by niltl."""


class RankTooSmallError(NilTLError):
    pass


class LetterRangeError(NilTLError):
    pass


class RankMismatchError(NilTLError):
    pass


class NotMinusculeError(NilTLError):
    pass


class NotFullSupportError(NilTLError):
    pass


class NoSuchElementError(NilTLError):
    pass


class InvariantError(NilTLError):
    """A boundary vector, region or module violates its invariants."""


class BudgetExceededError(NilTLError):
    pass


class ZeroElementError(NilTLError):
    pass
