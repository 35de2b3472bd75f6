"""Structured results of residual checks.

A CheckReport records what was compared (two complex numbers), against
which tolerance, with the full parameter record needed to reproduce the
run.  Reports serialize to JSON-compatible dicts with deterministic key
order so identical runs produce byte-identical output files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

_FLOOR = 1e-300


def _jsonable(x):
    if isinstance(x, complex):
        return {"im": x.imag, "re": x.real}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in sorted(x.items())}
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return x


@dataclass
class CheckReport:
    """Result of one residual check.

    rel_residual = |lhs - rhs| / max(|lhs|, |rhs|, floor); status is
    'pass' exactly when rel_residual < tolerance.
    """

    check: str
    params: dict
    lhs: complex
    rhs: complex
    tolerance: float
    anchor: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = complex(self.lhs)
        self.rhs = complex(self.rhs)
        self.abs_residual = abs(self.lhs - self.rhs)
        self.rel_residual = self.abs_residual / max(abs(self.lhs), abs(self.rhs), _FLOOR)
        self.status = "pass" if self.rel_residual < self.tolerance else "fail"

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {
            "schema": "1",
            "check": self.check,
            "anchor": self.anchor,
            "params": _jsonable(self.params),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "tolerance": self.tolerance,
            "status": self.status,
            "extra": _jsonable(self.extra),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, allow_nan=True)

    def csv_row(self):
        return [
            self.check,
            self.anchor,
            json.dumps(_jsonable(self.params), sort_keys=True),
            repr(self.lhs.real),
            repr(self.lhs.imag),
            repr(self.rhs.real),
            repr(self.rhs.imag),
            repr(self.abs_residual),
            repr(self.rel_residual),
            repr(self.tolerance),
            self.status,
        ]

    CSV_HEADER = [
        "check",
        "anchor",
        "params",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_residual",
        "rel_residual",
        "tolerance",
        "status",
    ]

    def __str__(self):
        return (
            f"[{self.status.upper():4s}] {self.check} rel={self.rel_residual:.3e} "
            f"tol={self.tolerance:.1e}"
        )


def sort_reports(reports):
    """Deterministic report order: by check id, then parameter record."""
    return sorted(reports, key=lambda r: (r.check, json.dumps(_jsonable(r.params), sort_keys=True)))
