"""Verification reports and their JSON form.

Every number is written as a decimal string (``"12"``, ``"-7/4"``) so that
exact values survive any JSON consumer.  Keys are emitted in a fixed order:

    tool, version, config, started, finished, overall, sections[]
    section: check, status, counts, witness, details
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__

TOOL_NAME = "qlogconvex"
TIMESTAMP_KEYS = ("started", "finished")


def _exact(value: Any) -> Any:
    """Recursively turn numbers into decimal strings."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        raise TypeError("floating-point values are not allowed in reports")
    if isinstance(value, dict):
        return {str(k): _exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    return value


@dataclass
class Section:
    check: str
    passed: bool
    counts: Dict[str, int] = field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None
    details: Optional[Dict[str, Any]] = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"check": self.check, "status": self.status, "counts": _exact(self.counts)}
        out["witness"] = _exact(self.witness) if self.witness is not None else None
        if self.details is not None:
            out["details"] = _exact(self.details)
        return out

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Section":
        return cls(
            check=d["check"],
            passed=d["status"] == "pass",
            counts=dict(d.get("counts", {})),
            witness=d.get("witness"),
            details=d.get("details"),
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Report:
    config: Dict[str, Any]
    sections: List[Section] = field(default_factory=list)
    started: str = field(default_factory=_now)
    finished: Optional[str] = None
    tool: str = TOOL_NAME
    version: str = __version__

    @property
    def overall(self) -> bool:
        return all(s.passed for s in self.sections)

    def add(self, section: Section) -> Section:
        self.sections.append(section)
        return section

    def finish(self) -> "Report":
        self.finished = _now()
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tool": self.tool,
            "version": self.version,
            "config": _exact(self.config),
            "started": self.started,
            "finished": self.finished,
            "overall": "pass" if self.overall else "fail",
            "sections": [s.to_dict() for s in self.sections],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Report":
        return cls(
            config=d["config"],
            sections=[Section.from_dict(s) for s in d["sections"]],
            started=d["started"],
            finished=d["finished"],
            tool=d["tool"],
            version=d["version"],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def write_report(report: Report, path: str | os.PathLike) -> None:
    """Write ``report`` as UTF-8 JSON.  Raises ``OSError`` on I/O failure."""
    parent = os.path.dirname(os.fspath(path))
    if parent and not os.path.isdir(parent):
        raise FileNotFoundError(f"report directory does not exist: {parent}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.dumps())


def strip_timestamps(d: Dict[str, Any]) -> Dict[str, Any]:
    """Copy of a report dict without the timestamp fields, for comparisons."""
    return {k: v for k, v in d.items() if k not in TIMESTAMP_KEYS}
