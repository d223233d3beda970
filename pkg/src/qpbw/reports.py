"""Check records and verification reports with a stable JSON schema."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    name: str
    paper_ref: str
    ok: bool
    witness: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "paper_ref": self.paper_ref,
               "status": "pass" if self.ok else "fail"}
        if not self.ok:
            out["witness"] = self.witness or ""
        return out


def check(name: str, ref: str, ok: bool, witness=None) -> CheckRecord:
    return CheckRecord(name, ref, bool(ok), None if ok else str(witness))


def zero_check(name: str, ref: str, residue) -> CheckRecord:
    """Record that a normal form (or scalar) vanished, keeping it as witness
    when it did not."""
    ok = not residue
    return CheckRecord(name, ref, ok, None if ok else str(residue))


@dataclass
class Report:
    suite: str
    n: int
    flavor: str
    ell: int | None = None
    checks: list[CheckRecord] = field(default_factory=list)
    duration_ms: int = 0

    def extend(self, records) -> None:
        self.checks.extend(records)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.ok)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.ok)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self, *, deterministic: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "n": self.n,
            "flavor": self.flavor,
        }
        if self.ell is not None:
            out["ell"] = self.ell
        out["checks"] = [c.to_dict() for c in self.checks]
        out["summary"] = {"pass": self.passed, "fail": self.failed}
        out["duration_ms"] = 0 if deterministic else self.duration_ms
        return out

    def to_json(self, *, deterministic: bool = False) -> str:
        return json.dumps(self.to_dict(deterministic=deterministic), indent=2) + "\n"

    def render_text(self) -> str:
        lines = [f"suite {self.suite}  n={self.n} flavor={self.flavor}"
                 + (f" ell={self.ell}" if self.ell is not None else "")]
        for c in self.checks:
            status = "pass" if c.ok else "FAIL"
            line = f"  [{status}] {c.name} ({c.paper_ref})"
            if not c.ok and c.witness:
                line += f"\n         witness: {c.witness}"
            lines.append(line)
        lines.append(f"  {self.passed} passed, {self.failed} failed")
        return "\n".join(lines) + "\n"
