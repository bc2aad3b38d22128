"""Exception types shared across the package."""


class AbacError(Exception):
    """Base class for all abacbench errors."""


class PolicyParseError(AbacError):
    """Raised when `.abac` text cannot be parsed.

    Carries the 1-based line number of the offending statement.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownEntityError(AbacError):
    """An access check referenced a user or resource id not in the policy."""

    def __init__(self, kind: str, entity_id: str):
        self.kind = kind
        self.entity_id = entity_id
        super().__init__(f"unknown {kind}: {entity_id!r}")


class LogGenError(AbacError):
    """Log generation cannot satisfy the requested configuration."""


class ExchangeError(AbacError):
    """Base for canonical import/export failures."""


class CorruptInputError(ExchangeError):
    """Canonical input is not parseable at all (truncated, not JSON, ...)."""


class SchemaError(ExchangeError):
    """Canonical input parsed but violates the documented schema."""


class VersionError(ExchangeError):
    """Canonical input declares a format version we do not support."""
