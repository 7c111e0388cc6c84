"""Structured outcomes for verification checks."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


@dataclass
class CheckReport:
    """Outcome of one named check.

    A failing report always carries a witness with enough detail (node, ids,
    formula text) to re-check the verdict through the satisfaction evaluator.
    Vacuous means the configuration gave the check nothing to decide; it is
    reported distinctly and never counts as a silent pass.
    """

    name: str
    status: str
    params: dict = field(default_factory=dict)
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_check_entry(self) -> dict:
        entry = {"name": self.name, "status": self.status}
        if self.witness is not None:
            entry["witness"] = self.witness
        return entry


def summarize(reports) -> dict:
    counts = {PASS: 0, FAIL: 0, VACUOUS: 0}
    for r in reports:
        counts[r.status] += 1
    return {"pass": counts[PASS], "fail": counts[FAIL], "vacuous": counts[VACUOUS]}
