"""Exception hierarchy shared by every module of the package."""


class ConstDepthError(Exception):
    """Base class for all errors raised by constdepth."""


class ContextMismatch(ConstDepthError):
    pass


class PreconditionError(ConstDepthError):
    """An operation was called on an input outside its domain."""


class GuardExceeded(ConstDepthError):
    """A configured resource guard was hit; nothing is approximated."""

    def __init__(self, guard, limit, actual, where=""):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        self.where = where
        msg = f"resource guard '{guard}' exceeded: {actual} > {limit}"
        if where:
            msg += f" ({where})"
        super().__init__(msg)


class InternalInconsistency(ConstDepthError):
    """A result contradicted a theorem the engine relies on.

    Raised instead of silently returning a verdict, since it means either a
    bug or a false hypothesis (e.g. a wrongly asserted Cohen-Macaulay Rees ring).
    """


class ParseError(ConstDepthError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
