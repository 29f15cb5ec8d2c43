"""Exception hierarchy shared by every subpackage."""


class QkdppError(Exception):
    """Base class for all package errors."""


class DomainError(QkdppError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class InvalidStateError(DomainError):
    """A matrix or vector fails a quantum-state validity check."""


class InsufficientKeyError(QkdppError):
    """The key ledger cannot cover a requested debit."""


class ConfigError(DomainError):
    """Configuration text could not be parsed or validated."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.key = key
        self.line = line
