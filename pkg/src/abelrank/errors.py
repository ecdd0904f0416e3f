"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: parse/usage problems exit 3,
descriptor validation failures exit 2, and failed verification checks
(including internal two-route disagreements) exit 1.
"""

from __future__ import annotations


class AbelrankError(Exception):
    """Base class for all package errors."""


class InputParseError(AbelrankError):
    """Malformed input: bad JSON, bad rational literal, bad partition text."""


class SchemaError(AbelrankError):
    """A descriptor document violates the schema; carries a JSON path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class DescriptorInvalidError(AbelrankError):
    """A structurally well-formed descriptor violates a value invariant."""

    def __init__(self, report):
        super().__init__("; ".join(issue.message for issue in report.issues))
        self.report = report


class ConsistencyError(AbelrankError):
    """Two independent computation routes disagree (a bug, not bad input)."""
