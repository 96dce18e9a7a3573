"""Verification report records and their JSON encoding."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class VerificationReport:
    """Outcome of one numerical identity check.

    ``table`` rows are ``(indices, computed, reference)``; ``passed`` is
    derived from ``deviation <= tolerance``.
    """

    name: str
    deviation: float
    tolerance: float
    table: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.deviation) and self.deviation <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "deviation": float(self.deviation),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
            "table": [[_jsonable(i), _jsonable(c), _jsonable(r)] for i, c, r in self.table],
            **({"info": {k: _jsonable(v) for k, v in self.info.items()}} if self.info else {}),
        }

    def summary(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}: deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e})"


def _jsonable(v: Any):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (tuple, list, np.ndarray)):
        return [_jsonable(x) for x in v]
    return v


def dumps_reports(reports) -> str:
    """Deterministic JSON for a list of reports (17 significant digits)."""
    return json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
