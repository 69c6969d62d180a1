"""Shared verdict container for the report-valued checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a verification pass.

    ``findings`` is a list of JSON-serializable dicts, each with a ``kind``
    key plus check-specific detail; an empty list means the check passed.
    """

    ok: bool
    findings: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return f"{len(self.findings)} finding(s); first: {self.findings[0]}"
