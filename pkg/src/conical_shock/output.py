"""Serialization of results: JSON documents, CSV tables, atomic file writes.

Floats are written with ``repr`` (shortest round-trip form) so that parsing
an emitted file reproduces every value bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

from .direct import DirectSolution, SweepResult
from .measures import ConvergenceReport
from .taylor_maccoll import ConicalField

GRID_COLUMNS = ("theta", "rho", "u", "w", "p", "c", "Mn")
SWEEP_COLUMNS = ("epsilon", "beta_deg", "gap_deg", "bound_A23_deg", "p_surface", "newtonian_sin2")
MEASURE_COLUMNS = ("family", "psi", "epsilon", "pairing_eps", "pairing_limit", "gap", "rel_gap")


def _finite_or_none(x):
    return x if isinstance(x, float) and math.isfinite(x) else None


def grid_rows(field: ConicalField) -> list[dict]:
    return [{k: float(getattr(s, k)) for k in GRID_COLUMNS} for s in field.grid]


def direct_document(sol: DirectSolution) -> dict:
    params = sol.field.params
    return {
        "theta0_deg": math.degrees(sol.theta0),
        "beta_deg": math.degrees(sol.beta),
        "epsilon": params.epsilon,
        "E0": params.E0,
        "M0": params.M0,
        "surface_pressure": sol.field.surface_pressure,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "grid": grid_rows(sol.field),
    }


def inverse_document(field: ConicalField) -> dict:
    d = field.diagnostics
    return {
        "beta_deg": math.degrees(field.beta),
        "epsilon": field.params.epsilon,
        "E0": field.params.E0,
        "M0": field.params.M0,
        "theta_cone_deg": math.degrees(field.theta_cone),
        "surface_pressure": field.surface_pressure,
        "diagnostics": {
            "entropy_drift": d.entropy_drift,
            "min_det": d.min_det,
            "n_steps": d.n_steps,
            "n_rhs": d.n_rhs,
            "event_residual": d.event_residual,
            "a_priori_bound_deg": math.degrees(d.a_priori_bound),
        },
        "grid": grid_rows(field),
    }


def sweep_rows(result: SweepResult) -> list[dict]:
    rows = []
    for r in result.records:
        rows.append(
            {
                "epsilon": r.epsilon,
                "beta_deg": math.degrees(r.beta),
                "gap_deg": math.degrees(r.gap),
                "bound_A23_deg": math.degrees(r.bound),
                "p_surface": r.surface_pressure,
                "newtonian_sin2": result.newtonian,
            }
        )
    return rows


def sweep_document(result: SweepResult) -> dict:
    rows = [{k: _finite_or_none(v) for k, v in row.items()} for row in sweep_rows(result)]
    for row, rec in zip(rows, result.records):
        row["error"] = rec.error
    return {"theta0_deg": math.degrees(result.theta0), "E0": result.E0, "records": rows}


def measure_rows(report: ConvergenceReport) -> list[dict]:
    return [
        {
            "family": e.family,
            "psi": e.psi,
            "epsilon": e.epsilon,
            "pairing_eps": e.value_eps,
            "pairing_limit": e.value_limit,
            "gap": e.gap,
            "rel_gap": e.rel_gap,
        }
        for e in report.entries
    ]


def measures_document(report: ConvergenceReport) -> dict:
    return {
        "theta0_deg": math.degrees(report.theta0),
        "E0": report.E0,
        "epsilons": list(report.epsilons),
        "entries": measure_rows(report),
        "velocity_ratios": list(report.velocity_ratios),
        "failures": [{"epsilon": e, "error": msg} for e, msg in report.failures],
    }


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        # mkstemp creates 0600; give the result ordinary umask permissions
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
