"""Structured pass/fail reporting for identity checks."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from typing import Optional


@dataclass
class VerificationReport:
    case_id: str
    identity: str
    status: str                    # "pass" | "fail" | "skipped"
    witness: Optional[dict] = None  # {"component": ..., "residual": ...} on fail
    millis: float = 0.0

    def to_json(self) -> dict:
        doc = {"case": self.case_id, "identity": self.identity, "status": self.status,
               "millis": round(self.millis, 3)}
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc

    @property
    def ok(self) -> bool:
        return self.status != "fail"


class Timer:
    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.millis = (time.monotonic() - self.start) * 1000.0


def report_zero(case_id: str, identity: str, residual, millis: float = 0.0,
                describe=str) -> VerificationReport:
    """Pass iff the residual operator/element is identically zero."""
    if residual.is_zero():
        return VerificationReport(case_id, identity, "pass", millis=millis)
    witness = None
    first = getattr(residual, "first_nonzero", None)
    if first is not None:
        got = first()
        if got is not None:
            key, val = got
            witness = {"component": _component_str(key), "residual": describe(val)}
    if witness is None:
        witness = {"residual": describe(residual)}
    return VerificationReport(case_id, identity, "fail", witness=witness, millis=millis)


def report_bool(case_id: str, identity: str, ok: bool, note: str | None = None,
                millis: float = 0.0) -> VerificationReport:
    if ok:
        return VerificationReport(case_id, identity, "pass", millis=millis)
    return VerificationReport(case_id, identity, "fail",
                              witness={"residual": note or "condition violated"},
                              millis=millis)


def report_skipped(case_id: str, identity: str, reason: str) -> VerificationReport:
    return VerificationReport(case_id, identity, "skipped", witness={"reason": reason})


def _component_str(key) -> str:
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], tuple):
        out, inn = key
        return "%s|%s" % ("".join(str(i + 1) for i in out), "".join(str(i + 1) for i in inn))
    return str(key)


def write_reports(path: str, reports: list) -> None:
    with open(path, "w") as fh:
        json.dump([r.to_json() for r in reports], fh, indent=2)
        fh.write("\n")


def read_reports(path: str) -> list:
    with open(path) as fh:
        docs = json.load(fh)
    out = []
    for doc in docs:
        out.append(VerificationReport(doc["case"], doc["identity"], doc["status"],
                                      doc.get("witness"), doc.get("millis", 0.0)))
    return out


def diff_reports(old: list, new: list) -> dict:
    """Regression summary between two report lists (matched by case+identity)."""
    old_map = {(r.case_id, r.identity): r for r in old}
    new_map = {(r.case_id, r.identity): r for r in new}
    newly_failing, newly_passing, added, removed, timing = [], [], [], [], []
    for key in sorted(set(old_map) | set(new_map)):
        o, n = old_map.get(key), new_map.get(key)
        ident = {"case": key[0], "identity": key[1]}
        if o is None:
            added.append({**ident, "status": n.status})
            if n.status == "fail":
                newly_failing.append({**ident, "old": None, "new": "fail"})
            continue
        if n is None:
            removed.append({**ident, "status": o.status})
            continue
        if o.status != n.status:
            entry = {**ident, "old": o.status, "new": n.status}
            (newly_failing if n.status == "fail" else newly_passing).append(entry)
        elif abs(o.millis - n.millis) > 1e-9:
            timing.append({**ident, "old_ms": o.millis, "new_ms": n.millis})
    return {"newly_failing": newly_failing, "newly_passing": newly_passing,
            "added": added, "removed": removed, "timing": timing}
