"""Structured errors shared by the library and the CLI."""
from typing import Optional

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


class PrymscopeError(Exception):
    """Base error; `code` is the structured name printed on stderr."""

    exit_code = EXIT_INPUT_ERROR

    def __init__(self, code: str, message: Optional[str] = None):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")

    def __reduce__(self):
        # errors raised in worker processes travel back pickled
        return (_restore, (type(self), self.code, self.message))


def _restore(cls, code: str, message: str) -> PrymscopeError:
    error = Exception.__new__(cls)
    PrymscopeError.__init__(error, code, message)
    return error


class ValidationError(PrymscopeError):
    exit_code = EXIT_INPUT_ERROR


class SpecOutOfRange(ValidationError):
    def __init__(self, message: str):
        super().__init__("SPEC_OUT_OF_RANGE", message)


class InternalError(PrymscopeError):
    """An invariant failed. This is a bug, never data."""

    exit_code = EXIT_INTERNAL_ERROR

    def __init__(self, code: str, message: Optional[str] = None):
        if not code.startswith("INTERNAL_"):
            code = f"INTERNAL_{code}"
        super().__init__(code, message)


def ensure(condition: bool, code: str, message: str) -> None:
    if not condition:
        raise InternalError(code, message)
