"""Exception types shared across the package.

Every error carries a short machine-parseable ``category`` so the CLI can
emit one-line diagnostics with a stable prefix.
"""


class HosrError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"


class SizeError(HosrError, ValueError):
    """Input too short (or too long) for the requested operation."""

    category = "size"


class ValidationError(HosrError, ValueError):
    """Input contains values that violate a container invariant."""

    category = "validation"


class DomainError(HosrError, ValueError):
    """Parameter outside its mathematical domain."""

    category = "domain"


class NumericError(HosrError, RuntimeError):
    """A numerical routine (quadrature, eigensolver, root finder) failed."""

    category = "numeric"


class ParseError(HosrError, ValueError):
    """A text input could not be parsed; carries line/column context."""

    category = "parse"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


class IoError(HosrError, OSError):
    """A file could not be read or written; message includes the path."""

    category = "io"


class ConfigError(HosrError, ValueError):
    """Invalid run configuration (CLI flags or config fields)."""

    category = "config"
