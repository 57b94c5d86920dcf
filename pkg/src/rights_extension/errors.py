"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation.

    ``key`` names the offending parameter when there is one, so config and
    sweep layers can report it without parsing the message.
    """

    code = "domain_error"

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


class ConfigError(Exception):
    """Config ingestion failure carrying a machine-readable ``code``.

    Codes: ``missing_file``, ``parse_error``, ``constraint_violation``.
    """

    def __init__(self, code: str, message: str, key: str | None = None):
        super().__init__(message)
        self.code = code
        self.key = key

    def __str__(self) -> str:
        return f"{self.code}: {self.args[0]}"
