"""Render sweep tables as figures.

Uses the non-interactive Agg backend so rendering works headless; figures go
to files next to the delimited output, never to a window.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .errors import DomainError  # noqa: E402
from .sweep import SweepTable  # noqa: E402

__all__ = ["save_sweep_figure"]

_Y_LABELS = {
    "izp": r"$I_{\mathrm{ZP}}$  [$\hbar R / c$]",
    "ellzp": r"$\ell_{\mathrm{ZP}}$  [$\hbar$]",
    "energy": r"$E_c$  [$\hbar c / R$]",
}


def _lambda_label(lam: float) -> str:
    if math.isinf(lam):
        return r"$\hat\lambda = \infty$"
    text = f"{lam:g}"
    if "e" in text:
        mantissa, exponent = text.split("e")
        power = rf"10^{{{int(exponent)}}}"
        if mantissa in ("1", "1.0"):
            return rf"$\hat\lambda = {power}$"
        return rf"$\hat\lambda = {mantissa}\times {power}$"
    return rf"$\hat\lambda = {text}$"


def save_sweep_figure(table: SweepTable, path: str) -> str:
    """Plot value against beta, one curve per coupling; returns the path."""
    if not table.rows:
        raise DomainError("cannot plot an empty sweep table")
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for lam in table.lambda_list:
        pts = [(r.beta, r.value) for r in table.rows if r.lambda_hat == lam]
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.plot(xs, ys, marker="o", markersize=3, linewidth=1.2, label=_lambda_label(lam))
    if table.quantity == "izp":
        ax.axhline(-1.0 / 24.0, color="k", linestyle="--", linewidth=0.8, label=r"$-1/24$")
    ax.set_xlabel(r"$\beta = \Omega R / c$")
    ax.set_ylabel(_Y_LABELS.get(table.quantity, table.quantity))
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
