"""Exceptions and the violation report shared by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class KanextError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(KanextError, ValueError):
    """A table is malformed: wrong length, index out of range, bad endpoints."""


class LawError(KanextError):
    """Input data is well-formed but violates an algebraic law."""

    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


class PreconditionError(KanextError):
    """An operation was called on inputs that do not meet its precondition."""


class AssumptionError(PreconditionError):
    """One of the four hypotheses of the monoidal extension theorem failed.

    ``assumption`` is the hypothesis number (1-4).
    """

    def __init__(self, assumption: int, message: str, report: Any = None):
        super().__init__(f"assumption ({assumption}) violated: {message}")
        self.assumption = assumption
        self.report = report


class FactorizationError(KanextError):
    """A transformation does not factor well-definedly through a colimit."""


class SizeGuardError(KanextError):
    """A construction or enumeration would exceed its configured size cap."""


class EngineError(KanextError):
    """A conclusion that must hold by construction failed. Always a bug."""


@dataclass(frozen=True)
class Violation:
    law: str
    where: tuple = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {"law": self.law, "where": list(self.where), "detail": self.detail}

    def __str__(self) -> str:
        loc = f" at {self.where}" if self.where else ""
        return f"{self.law}{loc}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def first(self, law: str) -> Violation | None:
        return next((v for v in self.violations if v.law == law), None)

    def merged(self, *others: ValidationReport) -> ValidationReport:
        vs = list(self.violations)
        for o in others:
            vs.extend(o.violations)
        return ValidationReport(self.subject, tuple(vs))

    def raise_if_failed(self, exc=LawError) -> None:
        if not self.ok:
            shown = "; ".join(str(v) for v in self.violations[:5])
            more = len(self.violations) - 5
            if more > 0:
                shown += f" (+{more} more)"
            msg = f"{self.subject}: {shown}"
            raise exc(msg, self) if issubclass(exc, LawError) else exc(msg)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        return f"{self.subject}: " + "; ".join(str(v) for v in self.violations)


class ReportBuilder:
    """Collects violations while a validator walks its tables."""

    def __init__(self, subject: str):
        self.subject = subject
        self._items: list[Violation] = []

    def add(self, law: str, where: tuple = (), detail: str = "") -> None:
        self._items.append(Violation(law, tuple(where), detail))

    def extend(self, report: ValidationReport, prefix: str = "") -> None:
        for v in report.violations:
            self._items.append(Violation(prefix + v.law, v.where, v.detail))

    def build(self) -> ValidationReport:
        return ValidationReport(self.subject, tuple(self._items))
