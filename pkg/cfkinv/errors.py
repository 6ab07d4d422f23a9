"""Domain errors of the cfkinv package.

Every error raised by the library derives from :class:`CfkError`. Operations that only *check*
something return a :class:`ValidationReport` instead of raising.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Tuple


class CfkError(Exception):
    """Base class of all cfkinv errors.

    :param message: Human readable description.
    :param context: Structured context (knot name, line, field, ...).
    """

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = {key: value for key, value in context.items() if value is not None}

    def __str__(self) -> str:
        if knot := self.context.get("knot"):
            return f"[{knot}] {self.message}"
        return self.message


class ParameterizationInvalid(CfkError):
    """The (k, r, c, s) tuple violates a constraint."""


class DiagramDisconnected(CfkError):
    """The α arcs do not close up to a single curve meeting β algebraically once."""


class ParseError(CfkError):
    """A data file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None, **context: Any):
        super().__init__(message, line=line, field=field, **context)
        self.line = line
        self.field = field

    def __str__(self) -> str:
        location = ", ".join(f"{key} {value}" for key, value in (("line", self.line), ("field", self.field)) if value)
        base = super().__str__()
        return f"{base} ({location})" if location else base


class KnotNotFound(CfkError):
    """The knot table has no entry for the requested name."""


class PendingKnotData(KnotNotFound):
    """The knot is listed but no diagram or complex has been published for it."""


class WindowExhausted(CfkError):
    """The universal cover window is too small to close the bigon search."""

    def __init__(self, message: str, required: int = 0, window: int = 0, **context: Any):
        super().__init__(message, required=required, window=window, **context)
        self.required = required
        self.window = window


class GradingInconsistent(CfkError):
    """Relative gradings cannot be made consistent."""


class DSquaredNonzero(CfkError):
    """The differential does not square to zero."""


class VerificationFailed(CfkError):
    """A complex failed :func:`cfkinv.core.cfk_algebra.verify_complex`."""

    def __init__(self, message: str, report: "ValidationReport", **context: Any):
        super().__init__(f"{message}: {'; '.join(report.violations)}", **context)
        self.report = report


class TowerCountUnexpected(CfkError):
    """A homology module has an unexpected number of free towers."""


class NoSolution(CfkError):
    """No map satisfies the involution constraints."""


class SolutionSpaceTooLarge(CfkError):
    """The involution candidate space exceeds the enumeration cap."""


class IotaNotA0Compatible(CfkError):
    """ι + Id leaves the subcomplex A₀⁻."""


class TowerClassificationAmbiguous(CfkError):
    """Image-of-Q membership does not separate the two towers."""


class OracleMismatch(CfkError):
    """Exact homology disagrees with the truncated brute-force computation."""


class IotaInvariantsDisagree(CfkError):
    """Distinct ι homotopy classes give distinct invariants."""

    def __init__(self, message: str, values: Tuple[Tuple[int, int], ...] = (), **context: Any):
        super().__init__(message, values=values, **context)
        self.values = values


@dataclass(frozen=True)
class ValidationReport:
    """Result of a check: ``ok`` iff there are no violations."""

    violations: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def merge(self, other: ValidationReport) -> ValidationReport:
        return ValidationReport(self.violations + other.violations)


@contextmanager
def with_knot_context(name: Optional[str]) -> Iterator[None]:
    """Attach the knot name to every :class:`CfkError` raised inside the block.

    >>> try:
    ...     with with_knot_context("3_1"):
    ...         raise NoSolution("nothing")
    ... except NoSolution as e:
    ...     str(e)
    '[3_1] nothing'
    """
    try:
        yield
    except CfkError as e:
        if name and "knot" not in e.context:
            e.context["knot"] = name
        raise
