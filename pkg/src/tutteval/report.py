"""Structured verification outcomes.

A Report is the unit every check returns: name, parameters, pass/fail/
inconclusive, a witness on failure, a case count and wall time.  Reports are
deterministic given their parameters; timing is excluded from the JSON
emitted for fixture comparison so that identical runs are byte-identical.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass


@dataclass
class Report:
    check: str
    params: dict
    status: str  # "pass" | "fail" | "inconclusive"
    witness: object = None
    n_cases: int = 0
    millis: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json_obj(self, with_timing: bool = False) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "n_cases": self.n_cases,
            "millis": self.millis if with_timing else None,
        }

    def line(self) -> str:
        head = "PASS" if self.ok else self.status.upper()
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        msg = f"[{head}] {self.check}({params}) cases={self.n_cases} {self.millis}ms"
        if self.witness is not None:
            msg += f" witness={self.witness}"
        return msg


def passed(check: str, params: dict, n_cases: int, t0: float) -> Report:
    return Report(check, params, "pass", None, n_cases,
                  int((time.perf_counter() - t0) * 1000))


def failed(check: str, params: dict, witness, n_cases: int, t0: float) -> Report:
    return Report(check, params, "fail", witness, n_cases,
                  int((time.perf_counter() - t0) * 1000))


def inconclusive(check: str, params: dict, witness, n_cases: int,
                 t0: float) -> Report:
    return Report(check, params, "inconclusive", witness, n_cases,
                  int((time.perf_counter() - t0) * 1000))


def reports_to_json(reports: list[Report], with_timing: bool = False) -> str:
    return json.dumps([r.to_json_obj(with_timing) for r in reports],
                      indent=2, sort_keys=False)
