"""Verification records and their JSON, text and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class Check:
    id: str
    paper_ref: str
    status: str
    witness: str | None = None

    def as_dict(self) -> dict:
        d = {"id": self.id, "paper_ref": self.paper_ref, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: float | None = None
    table: list[dict] | None = None

    def add(self, id: str, paper_ref: str, ok, witness=None) -> Check:
        """ok may be True/False or None for not-applicable."""
        status = NA if ok is None else (PASS if ok else FAIL)
        w = None if status == PASS or witness is None else str(witness)
        c = Check(id, paper_ref, status, w)
        self.checks.append(c)
        return c

    def guarded(self, id: str, paper_ref: str, fn):
        """Run fn() -> (ok, witness); an exception becomes a failing record."""
        try:
            ok, witness = fn()
        except Exception as exc:  # suites never crash, they fail a record
            return self.add(id, paper_ref, False, f"{type(exc).__name__}: {exc}")
        return self.add(id, paper_ref, ok, witness)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "na": 0}
        for c in self.checks:
            out[{"pass": "pass", "fail": "fail"}.get(c.status, "na")] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.summary["fail"] == 0

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.id)

    def to_dict(self) -> dict:
        d = {
            "suite": self.suite,
            "params": self.params,
            "checks": [c.as_dict() for c in self.sorted_checks()],
            "summary": self.summary,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.table is not None:
            d["table"] = self.table
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        checks = self.sorted_checks()
        w_id = max([len(c.id) for c in checks] + [2])
        w_st = max([len(c.status) for c in checks] + [6])
        lines = [f"suite: {self.suite}"]
        lines += [f"  {k} = {v}" for k, v in self.params.items()]
        for c in checks:
            line = f"{c.id:<{w_id}}  {c.status:<{w_st}}  {c.paper_ref}"
            if c.witness:
                line += f"\n{'':<{w_id}}  witness: {c.witness}"
            lines.append(line)
        if self.table:
            lines.append("")
            lines.append(table_to_text(self.table))
        s = self.summary
        tail = f"pass {s['pass']}  fail {s['fail']}  n/a {s['na']}"
        if self.elapsed_ms is not None:
            tail += f"  ({self.elapsed_ms:.0f} ms)"
        lines.append(tail)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """The limit table if there is one, otherwise the check records."""
        if self.table:
            return table_to_csv(self.table)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "paper_ref", "status", "witness"])
        for c in self.sorted_checks():
            w.writerow([c.id, c.paper_ref, c.status, c.witness or ""])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "text":
            return self.to_text()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6e}"
    return str(v)


def table_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = list(rows[0].keys())
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in cols])
    return buf.getvalue()


def table_to_text(rows: list[dict]) -> str:
    cols = list(rows[0].keys())
    cells = [[_fmt(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(out)
