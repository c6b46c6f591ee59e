"""Pass/fail verdicts with witnesses."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact_poly import format_scalar

PASS = "pass"
FAIL = "fail"


def jsonable(value: Any) -> Any:
    """Convert witness payloads (Fractions, vectors, polynomials...) to JSON-ready data."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    return str(value)


@dataclass
class CheckReport:
    """Outcome of an exhaustive identity check.

    ``witness`` holds the first failing input (in deterministic enumeration
    order) together with the values that disagree; ``info`` carries derived
    quantities such as an extracted scalar or sub-verdicts.
    """

    name: str
    verdict: str
    certificate: str = ""
    witness: dict[str, Any] | None = None
    info: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"verdict must be {PASS!r} or {FAIL!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, name: str, certificate: str, **info) -> "CheckReport":
        return cls(name, PASS, certificate, None, info)

    @classmethod
    def failed(cls, name: str, certificate: str, witness: dict, **info) -> "CheckReport":
        return cls(name, FAIL, certificate, witness, info)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "witness": jsonable(self.witness),
            "certificate": self.certificate,
            "info": jsonable(self.info),
        }

    def to_json(self) -> dict[str, Any]:
        return self.to_dict()

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        line = f"[{self.verdict.upper()}] {self.name}: {self.certificate}"
        if self.witness is not None:
            w = ", ".join(f"{k}={jsonable(v)}" for k, v in self.witness.items())
            line += f"\n    witness: {w}"
        return line


def combine(name: str, reports: list[CheckReport], **info) -> CheckReport:
    """Conjunction of sub-reports; the first failing one supplies the witness."""
    for r in reports:
        if not r.passed:
            witness = {"failed_check": r.name, **(r.witness or {})}
            return CheckReport.failed(
                name, f"{r.name} failed: {r.certificate}", witness,
                subchecks={s.name: s.verdict for s in reports}, **info,
            )
    cert = "; ".join(r.certificate for r in reports) or "nothing to check"
    return CheckReport.ok(name, cert, subchecks={s.name: s.verdict for s in reports}, **info)
