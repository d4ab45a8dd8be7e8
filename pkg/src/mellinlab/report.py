"""Structured, deterministic output for the command line tools.

Reports never embed timestamps, hostnames, or other run-varying data: the
same inputs and seed must produce byte-identical bytes, so results can be
diffed across machines and runs.  Numbers render through repr (shortest
round-trip, always a '.' decimal separator); files are written atomically
via a temp file and rename.
"""
import json
import os
import tempfile
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One verified statement: measured value against its tolerance.

    anchor ties the check to the statement of record it exercises; status
    is "pass", "fail", or "skipped".
    """

    name: str
    anchor: str
    status: str
    measured: float
    tolerance: float


@dataclass
class VerificationReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    def add(self, name, anchor, measured, tolerance):
        ok = measured <= tolerance
        self.checks.append(Check(name, anchor, "pass" if ok else "fail",
                                 float(measured), float(tolerance)))
        return ok

    def skip(self, name, anchor, reason_tolerance=0.0):
        self.checks.append(Check(name, anchor, "skipped", 0.0,
                                 float(reason_tolerance)))

    @property
    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def rows(self):
        return [(c.name, c.anchor, c.status, c.measured, c.tolerance)
                for c in self.checks]


_COLUMNS = ("name", "anchor", "status", "measured", "tolerance")


def _cell(value):
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    text = str(value)
    if any(ch in text for ch in ",\n\r\""):
        raise ValueError(f"cell value {text!r} needs quoting; not supported")
    return text


def render_table(columns, rows, fmt):
    """Render rows as strict CSV (header, comma separated, '.' decimals)
    or as a JSON object with explicit column names."""
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {"columns": list(columns),
                   "rows": [list(row) for row in rows]}
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_report(report, fmt):
    if fmt == "csv":
        return render_table(_COLUMNS, report.rows(), fmt)
    payload = {
        "suite": report.suite,
        "seed": report.seed,
        "checks": [{"name": c.name, "anchor": c.anchor, "status": c.status,
                    "measured": c.measured, "tolerance": c.tolerance}
                   for c in report.checks],
        "failures": len(report.failures),
    }
    return json.dumps(payload, indent=2) + "\n"


def atomic_write(path, text):
    """Write text so readers never observe a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mellinlab-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
