"""Structured pass/fail records with deterministic JSON serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ADVISORY = "advisory"

_STATUSES = (STATUS_PASS, STATUS_FAIL, STATUS_ADVISORY)


def _plain(value):
    """Coerce numpy scalars/arrays into JSON-safe builtins."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if value is None or isinstance(value, (str, bool)):
        return value
    return str(value)


@dataclass
class Report:
    """Outcome of one verification statement.

    ``runtime_ms`` is volatile between runs, so the canonical JSON form omits
    it by default; pass ``include_timings=True`` to keep it.  A failing report
    must carry at least a residual, a witness, or failing sub-reports.
    """

    statement_id: str
    status: str
    residuals: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    seed: int | None = None
    runtime_ms: int = 0
    items: tuple = ()

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (
            self.status == STATUS_FAIL
            and not self.residuals
            and not self.witnesses
            and not self.items
        ):
            raise ValueError("a failing report needs a residual or a witness")
        self.residuals = {str(k): float(v) for k, v in self.residuals.items()}
        self.witnesses = _plain(self.witnesses)
        self.items = tuple(self.items)

    @property
    def passed(self) -> bool:
        """Advisory statements never block."""
        return self.status != STATUS_FAIL

    @property
    def all_passed(self) -> bool:
        return self.passed and all(item.all_passed for item in self.items)

    def to_dict(self, include_timings: bool = False) -> dict:
        payload = {
            "statement_id": self.statement_id,
            "status": self.status,
            "residuals": self.residuals,
            "witnesses": self.witnesses,
            "seed": self.seed,
        }
        if include_timings:
            payload["runtime_ms"] = int(self.runtime_ms)
        if self.items:
            payload["items"] = [item.to_dict(include_timings) for item in self.items]
        return payload

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(
            self.to_dict(include_timings),
            sort_keys=True,
            separators=(",", ":"),
            ensure_ascii=True,
        )

    def worst_residual(self) -> float:
        values = [v for v in self.residuals.values()]
        values.extend(item.worst_residual() for item in self.items)
        values = [v for v in values if v == v]  # drop NaN placeholders
        return max(values) if values else float("nan")

    def to_markdown(self) -> str:
        lines = [
            f"# Report: {self.statement_id}",
            "",
            f"overall status: **{self.status}**" + (f" (seed {self.seed})" if self.seed is not None else ""),
            "",
            "| statement | status | worst residual |",
            "| --- | --- | --- |",
        ]
        reports = self.items if self.items else (self,)
        for rep in reports:
            worst = rep.worst_residual()
            shown = f"{worst:.3e}" if worst == worst else "-"
            lines.append(f"| {rep.statement_id} | {rep.status} | {shown} |")
        lines.append("")
        return "\n".join(lines)

    def flat_failures(self) -> list:
        found = [] if self.passed else [self]
        for item in self.items:
            found.extend(item.flat_failures())
        return found
