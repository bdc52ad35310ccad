"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can turn it
into a ``{"error": {...}}`` payload without string matching.
"""

from __future__ import annotations

from typing import Any


class HaarlabError(Exception):
    code = "domain-error"

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.message = message
        self.detail = detail


class ResolutionOverflow(HaarlabError):
    code = "resolution-overflow"


class ResolutionTooSmall(HaarlabError):
    code = "resolution-too-small"


class NotComparable(HaarlabError):
    code = "not-comparable"


class EmptySetError(HaarlabError):
    code = "empty-set"


class MembershipError(HaarlabError):
    code = "not-a-member"


class RootIntervalError(HaarlabError):
    code = "root-interval"


class NonPositiveThreshold(HaarlabError):
    code = "nonpositive-threshold"


class ParameterError(HaarlabError):
    code = "parameter-range"


class ZeroCoefficientError(HaarlabError):
    """Raised when an interval with vanishing coefficient is used as an anchor."""

    code = "zero-coefficient"


class PreconditionError(HaarlabError):
    code = "precondition"


class UnsatisfiableParams(HaarlabError):
    code = "unsatisfiable-params"


class SchemaError(HaarlabError):
    """Malformed JSON payload or interval/rational text."""

    code = "schema"
