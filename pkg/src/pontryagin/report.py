from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class CheckResult:
    check: str
    degree: int | None
    witness: Any
    status: str


@dataclass
class Report:
    """Ordered collection of check results; failures carry witnesses."""

    name: str
    results: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, ok: bool | None, degree: int | None = None, witness: Any = None):
        status = INFO if ok is None else (PASS if ok else FAIL)
        self.results.append(CheckResult(check, degree, witness, status))

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def __len__(self):
        return len(self.results)

    def to_json(self) -> list[dict]:
        return [asdict(r) for r in self.results]

    def dumps(self) -> str:
        return json.dumps({"report": self.name, "ok": self.ok, "results": self.to_json()},
                          default=str, indent=2)
