"""Exception types shared by the library and the CLI exit-code mapping."""


class HwlError(Exception):
    """Base class for all package errors."""


class UsageError(HwlError, ValueError):
    """An argument is outside the documented domain of an operation."""


class ValidationError(HwlError, ValueError):
    """A structured input (embedding, partition path, file) is malformed."""


class BudgetExceeded(HwlError):
    """An exhaustive scan was requested at a size it refuses to enumerate."""


class VerificationFailure(HwlError):
    """A computational check disagreed with the claimed identity or bound.

    ``witness`` carries whatever identifies the failing instance, e.g. an
    index, a grid cell ``(i, j)`` or a pair ``(k, t)``.
    """

    def __init__(self, check: str, witness=None, detail: str = ""):
        self.check = check
        self.witness = witness
        self.detail = detail
        msg = f"{check} failed"
        if witness is not None:
            msg += f" at {witness!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
