"""Report rows and deterministic CSV/JSON emission.

CSV columns are exactly ``experiment,params,lhs,rhs,ratio,pass,tol``; the pass
column is the string "true"/"false". Rows are sorted by (experiment, params)
before writing so repeated runs are byte-identical. Floats are written with
repr (shortest round-trip form).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ParameterError


def format_params(params: dict) -> str:
    """Render a parameter dict as 'k=v;k=v' with sorted keys (no commas)."""
    parts = []
    for key in sorted(params):
        val = params[key]
        if isinstance(val, float):
            val = repr(val)
        parts.append(f"{key}={val}")
    return ";".join(parts)


@dataclass
class ReportRow:
    experiment: str
    params: str
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    tol: float

    @classmethod
    def build(cls, experiment: str, params: dict, lhs: float, rhs: float,
              passed: bool, tol: float) -> "ReportRow":
        if rhs > 0:
            ratio = lhs / rhs
        else:
            ratio = 0.0 if lhs == 0 else math.inf
        return cls(experiment, format_params(params), float(lhs), float(rhs),
                   float(ratio), bool(passed), float(tol))

    def to_dict(self) -> dict:
        return {"experiment": self.experiment, "params": self.params,
                "lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio,
                "pass": self.passed, "tol": self.tol}

    @classmethod
    def from_dict(cls, d: dict) -> "ReportRow":
        return cls(d["experiment"], d["params"], float(d["lhs"]), float(d["rhs"]),
                   float(d["ratio"]), bool(d["pass"]), float(d["tol"]))


def sorted_rows(rows) -> list[ReportRow]:
    return sorted(rows, key=lambda r: (r.experiment, r.params))


def rows_to_csv(rows) -> str:
    if not rows:
        raise ParameterError("refusing to emit an empty report")
    lines = ["experiment,params,lhs,rhs,ratio,pass,tol"]
    for r in sorted_rows(rows):
        passed = "true" if r.passed else "false"
        lines.append(f"{r.experiment},{r.params},{r.lhs!r},{r.rhs!r},{r.ratio!r},{passed},{r.tol!r}")
    return "\n".join(lines) + "\n"


def rows_to_json(rows, meta: dict) -> str:
    if not rows:
        raise ParameterError("refusing to emit an empty report")
    payload = {"meta": meta, "rows": [r.to_dict() for r in sorted_rows(rows)]}
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"


def rows_from_json(text: str) -> tuple[list[ReportRow], dict]:
    payload = json.loads(text)
    return [ReportRow.from_dict(d) for d in payload["rows"]], payload.get("meta", {})


def emit_report(rows, meta: dict, path, fmt: str = "csv") -> None:
    """Write rows to ``path`` as csv or json (meta header only in json)."""
    if fmt == "csv":
        text = rows_to_csv(rows)
    elif fmt == "json":
        text = rows_to_json(rows, meta)
    else:
        raise ParameterError(f"unknown report format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(text)
