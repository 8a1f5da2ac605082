"""Verification outcome records and their text / JSON / CSV renderings."""

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS, FAIL, SKIPPED, ERROR = "pass", "fail", "skipped", "error"
FIELDS = ("case", "prime", "params", "status", "witness", "millis")


@dataclass(frozen=True)
class Report:
    case: str
    prime: "int | None"
    params: dict = field(default_factory=dict)
    status: str = PASS
    witness: object = None
    millis: int = 0

    def __post_init__(self):
        if self.status == FAIL and (self.witness is None or _is_zero(self.witness)):
            raise ValueError("a failed report needs a nonzero witness")

    @property
    def exploratory(self):
        return bool(self.params.get("exploratory"))

    @property
    def ok(self):
        return self.status in (PASS, SKIPPED)

    def sort_key(self):
        return (self.case, self.prime if self.prime is not None else -1,
                json.dumps(self.params, sort_keys=True))

    def to_record(self):
        return {
            "case": self.case,
            "prime": self.prime,
            "params": dict(self.params),
            "status": self.status,
            "witness": None if self.witness is None else _witness_text(self.witness),
            "millis": self.millis,
        }


def _is_zero(w):
    if hasattr(w, "is_zero"):
        return w.is_zero()
    return not w


def _witness_text(w):
    if hasattr(w, "text"):
        return w.text()
    return str(w)


@contextmanager
def stopwatch():
    """Yields a one-element list that receives elapsed milliseconds on exit."""
    box = [0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int(round((time.perf_counter() - t0) * 1000))


def exit_status(reports):
    """0 if nothing failed or errored (exploratory probes never count), else 1."""
    for r in reports:
        if not r.exploratory and r.status in (FAIL, ERROR):
            return 1
    return 0


def render(reports, fmt="text"):
    reports = sorted(reports, key=Report.sort_key)
    if fmt == "json":
        return "".join(json.dumps(r.to_record(), sort_keys=False) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in reports:
            rec = r.to_record()
            rec["params"] = json.dumps(rec["params"], sort_keys=True)
            w.writerow(["" if rec[k] is None else rec[k] for k in FIELDS])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        prime = "" if r.prime is None else f"p={r.prime}"
        line = f"{r.status.upper():8s} {r.case:22s} {prime:7s} {params}".rstrip()
        if r.witness is not None and r.status != PASS:
            line += f"  witness={_witness_text(r.witness)}"
        lines.append(line)
    counts = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    lines.append("summary: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    return "\n".join(lines) + "\n"
