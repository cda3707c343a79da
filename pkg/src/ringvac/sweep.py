"""Parameter sweeps over (beta, lambda_hat) with deterministic serialization.

A sweep evaluates one quantity on a rectangular grid and records value and
error estimate per point.  Rows whose error estimate exceeds the requested
tolerance are kept but marked degraded rather than silently dropped.

Serialization is deterministic: identical inputs produce byte-identical CSV
and JSON, so no timestamps or machine identifiers appear anywhere.  CSV rows
are ordered lexicographically by (lambda_hat, beta) and carry a '#'-prefixed
provenance header; JSON mirrors the table structure.  An infinite coupling is
written as the string ``inf`` in JSON (valid JSON has no Infinity literal).
"""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__ as _version
from .energy import casimir_energy_corotating
from .errors import DomainError
from .params import ModelPoint
from .rotation import ell_zp_quadrature, inertia_zp_estimate

__all__ = [
    "SweepRow",
    "SweepTable",
    "QUANTITIES",
    "default_beta_grid",
    "default_lambda_list",
    "build_sweep",
    "write_csv",
    "to_json",
]

# quantity name -> (unit string, evaluator returning (value, error_estimate))
QUANTITIES = {
    "izp": ("hbar R / c", lambda p, tol: inertia_zp_estimate(p, tol)),
    "ellzp": ("hbar", lambda p, tol: _ell_pair(p, tol)),
    "energy": ("hbar c / R", lambda p, tol: _energy_pair(p, tol)),
}


def _ell_pair(point: ModelPoint, tol: float) -> tuple[float, float]:
    q = ell_zp_quadrature(point, tol)
    return q.value, q.error_estimate


def _energy_pair(point: ModelPoint, tol: float) -> tuple[float, float]:
    res = casimir_energy_corotating(point, tol)
    return res.field_energy, res.quadrature_error


def default_beta_grid() -> tuple[float, ...]:
    """Twenty rim speeds, uniform on [0, 0.95]."""
    return tuple(float(b) for b in np.linspace(0.0, 0.95, 20))


def default_lambda_list() -> tuple[float, ...]:
    return (0.5, 2.0, 10.0, 100.0, 1e6)


@dataclass(frozen=True)
class SweepRow:
    beta: float
    lambda_hat: float
    value: float
    error_estimate: float
    degraded: bool


@dataclass(frozen=True)
class SweepTable:
    """Rectangular sweep of one quantity with provenance.

    ``rows`` are ordered lexicographically by (lambda_hat, beta).
    """

    quantity: str
    unit: str
    beta_grid: tuple[float, ...]
    lambda_list: tuple[float, ...]
    tolerance: float
    tolerance_source: str
    rows: tuple[SweepRow, ...]

    @property
    def degraded_rows(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.rows) if r.degraded)


def _evaluate(quantity: str, beta: float, lam: float, tol: float) -> SweepRow:
    _, evaluator = QUANTITIES[quantity]
    value, err = evaluator(ModelPoint(beta=beta, lambda_hat=lam), tol)
    return SweepRow(beta, lam, value, err, degraded=bool(err > tol))


def build_sweep(
    quantity: str = "izp",
    beta_grid=None,
    lambda_list=None,
    tol: float = 1e-6,
    tolerance_source: str = "default",
    jobs: int = 1,
) -> SweepTable:
    """Evaluate ``quantity`` over the grid; rows in (lambda_hat, beta) order.

    ``jobs`` > 1 farms grid points to a thread pool; assembly order is the
    grid order either way.
    """
    if quantity not in QUANTITIES:
        raise DomainError(f"unknown quantity {quantity!r}; expected one of {sorted(QUANTITIES)}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise DomainError(f"tolerance must be positive and finite, got {tol!r}")
    if not (isinstance(jobs, int) and jobs >= 1):
        raise DomainError(f"jobs must be a positive integer, got {jobs!r}")
    betas = tuple(sorted(float(b) for b in (default_beta_grid() if beta_grid is None else beta_grid)))
    lams = tuple(sorted(float(l) for l in (default_lambda_list() if lambda_list is None else lambda_list)))
    if not betas or not lams:
        raise DomainError("beta grid and lambda list must be nonempty")

    grid = [(lam, beta) for lam in lams for beta in betas]
    if jobs == 1:
        rows = [_evaluate(quantity, beta, lam, tol) for lam, beta in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_evaluate, quantity, beta, lam, tol) for lam, beta in grid]
            rows = [f.result() for f in futures]

    unit, _ = QUANTITIES[quantity]
    return SweepTable(
        quantity=quantity,
        unit=unit,
        beta_grid=betas,
        lambda_list=lams,
        tolerance=tol,
        tolerance_source=tolerance_source,
        rows=tuple(rows),
    )


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def write_csv(table: SweepTable, stream) -> None:
    """Write the table with '#'-prefixed provenance lines, then data rows."""
    w = stream.write
    w(f"# ringvac sweep v{_version}\n")
    w(f"# quantity: {table.quantity} ({table.unit})\n")
    w(f"# tolerance: {table.tolerance:.6e} ({table.tolerance_source})\n")
    w("# beta_grid: " + ",".join(f"{b:.12g}" for b in table.beta_grid) + "\n")
    w("# lambda_list: " + ",".join(f"{l:.12g}" for l in table.lambda_list) + "\n")
    w("# quadrature: tanh-sinh on analytically truncated domain; "
      "tail bound included in error_estimate\n")
    w("# differentiation: ridders extrapolation, step limited by |beta| < 1\n")
    degraded = table.degraded_rows
    w("# degraded_rows: " + (",".join(map(str, degraded)) if degraded else "none") + "\n")
    w("beta,lambda_hat,value,error_estimate\n")
    for r in table.rows:
        w(f"{_fmt(r.beta)},{_fmt(r.lambda_hat)},{_fmt(r.value)},{_fmt(r.error_estimate)}\n")


def csv_text(table: SweepTable) -> str:
    buf = io.StringIO()
    write_csv(table, buf)
    return buf.getvalue()


def _json_float(x: float):
    return "inf" if math.isinf(x) else x


def to_json(table: SweepTable) -> str:
    """Deterministic JSON rendering of the table."""
    doc = {
        "version": _version,
        "quantity": table.quantity,
        "unit": table.unit,
        "tolerance": table.tolerance,
        "tolerance_source": table.tolerance_source,
        "beta_grid": list(table.beta_grid),
        "lambda_list": [_json_float(l) for l in table.lambda_list],
        "quadrature": "tanh-sinh on analytically truncated domain",
        "differentiation": "ridders extrapolation",
        "degraded_rows": list(table.degraded_rows),
        "rows": [
            {
                "beta": r.beta,
                "lambda_hat": _json_float(r.lambda_hat),
                "value": r.value,
                "error_estimate": r.error_estimate,
                "degraded": r.degraded,
            }
            for r in table.rows
        ],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
