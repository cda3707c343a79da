"""Self-verification checks runnable from the command line.

Each check compares an independently known value or identity against the
library and reports the measured defect with its required tolerance.  The
``fast`` level covers every module in a few seconds; ``full`` adds the
slower limit-convergence scans.

The consistency check between the angular-momentum integral and the energy
derivative is the canary: the two routes share no code beyond the
quadrature kernel, so a sign or scaling bug in either integrand trips it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rotation
from .energy import casimir_energy_corotating, casimir_limit_dirichlet
from .numerics import derivative
from .params import ModelPoint
from .rotation import ell_zp_bound, izp_lightspeed_bound, omega_of_ell, stationary_energy
from .spectrum import inner_products, mode_frequencies, mode_residuals, spectrum_modes

__all__ = ["CheckResult", "run_checks", "CHECKS_FAST", "CHECKS_FULL"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    required: float
    detail: str


def _result(name: str, measured: float, required: float, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(measured <= required), measured, required, detail)


def check_free_energy_limit() -> CheckResult:
    worst = max(
        abs(casimir_energy_corotating(ModelPoint(beta=b, lambda_hat=0.0)).field_energy + 1.0 / 12.0)
        for b in (0.0, 0.3, 0.6, 0.9)
    )
    return _result("free_energy_limit", worst, 1e-8, "E_c(beta, 0) vs -1/12")


def check_dirichlet_energy_limit() -> CheckResult:
    worst = max(
        abs(
            casimir_energy_corotating(ModelPoint(beta=b, lambda_hat=1e6)).field_energy
            - casimir_limit_dirichlet(b)
        )
        for b in (0.0, 0.5, 0.9)
    )
    return _result("dirichlet_energy_limit", worst, 1e-4, "E_c(beta, 1e6) vs -(1-b^2)/48")


def check_doppler_spectrum() -> CheckResult:
    spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=0.0), alpha_max=3.2)
    want = [0.5, 1.0, 1.5, 1.5, 2.0, 2.5, 3.0, 3.0]
    if len(spec.alphas) != len(want):
        return CheckResult("doppler_spectrum", False, float("inf"), 1e-10,
                           f"expected {len(want)} roots, got {len(spec.alphas)}")
    worst = max(abs(a - w) for a, w in zip(spec.alphas, want))
    return _result("doppler_spectrum", worst, 1e-10, "free roots vs m(1 -+ beta)")


def check_rest_frame_secular() -> CheckResult:
    spec = mode_frequencies(ModelPoint(beta=0.0, lambda_hat=2.0), alpha_max=3.5)
    worst = 0.0
    for a in spec.alphas:
        if abs(a - round(a)) < 1e-9:
            continue
        worst = max(worst, abs(math.tan(math.pi * a) - 2.0 / (2.0 * a)))
    return _result("rest_frame_secular", worst, 1e-8, "tan(pi a) = lam/(2a) at beta=0")


def check_mode_diagnostics() -> CheckResult:
    spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=2.0), alpha_max=3.0)
    modes = spectrum_modes(spec, count=6)
    worst = 0.0
    for i, mi in enumerate(modes):
        r = mode_residuals(mi)
        worst = max(worst, r.ode_max, r.periodicity_defect, r.jump_defect)
        for j in range(i, len(modes)):
            first, second = inner_products(mi, modes[j])
            target = 1.0 if i == j else 0.0
            worst = max(worst, abs(first - target), abs(second))
    return _result("mode_diagnostics", worst, 1e-6, "defects and inner products, 6 modes")


def check_ell_energy_consistency() -> CheckResult:
    worst = 0.0
    for beta, lam in ((0.4, 2.0), (-0.1, 10.0)):
        direct = rotation.ell_zp(ModelPoint(beta=beta, lambda_hat=lam), tol=1e-10)
        via_energy, _ = derivative(
            lambda b: -casimir_energy_corotating(
                ModelPoint(beta=b, lambda_hat=lam), tol=1e-12
            ).field_energy,
            beta,
            tol=1e-9,
            h0=min(1e-3, (1.0 - abs(beta)) / 10.0),
            bounds=(-1.0, 1.0),
        )
        worst = max(worst, abs(direct - via_energy))
    return _result("ell_energy_consistency", worst, 1e-6,
                   "angular momentum integral vs -dE_c/dbeta")


def check_ell_bound_chain() -> CheckResult:
    worst = 0.0
    for lam in (0.5, 2.0, 100.0):
        bound = ell_zp_bound(lam)
        if bound > 1.0 / 24.0 + 1e-12:
            worst = max(worst, bound - 1.0 / 24.0)
        v = abs(rotation.ell_zp(ModelPoint(beta=0.9, lambda_hat=lam)))
        if v > bound:
            worst = max(worst, v - bound)
    worst = max(worst, abs(ell_zp_bound(0.0)))
    return _result("ell_bound_chain", worst, 1e-8, "|ell_zp| <= bound(lam) <= 1/24")


def check_izp_floor() -> CheckResult:
    worst = 0.0
    for lam in (0.5, 2.0):
        floor = izp_lightspeed_bound(lam)
        if floor < -1.0 / 24.0 - 1e-12:
            worst = max(worst, -1.0 / 24.0 - floor)
        v = rotation.inertia_zp(ModelPoint(beta=0.5, lambda_hat=lam))
        if v < floor:
            worst = max(worst, floor - v)
    return _result("izp_floor", worst, 1e-6, "I_zp(beta) >= light-speed bound >= -1/24")


def check_stationary_example() -> CheckResult:
    v = stationary_energy(ModelPoint(beta=0.5, lambda_hat=0.0), inertia_hat=2.0)
    return _result("stationary_example", abs(v - 1.0 / 6.0), 1e-8,
                   "free rotor E_s at beta=1/2, inertia 2")


def check_omega_round_trip() -> CheckResult:
    beta = omega_of_ell(1.0, lambda_hat=2.0, inertia_hat=2.0)
    back = 2.0 * beta + rotation.ell_zp(ModelPoint(beta=beta, lambda_hat=2.0))
    return _result("omega_round_trip", abs(back - 1.0), 1e-8, "invert ell_total = 1")


def check_dirichlet_energy_convergence() -> CheckResult:
    gaps = [
        abs(
            casimir_energy_corotating(ModelPoint(beta=0.5, lambda_hat=lam), tol=1e-10).field_energy
            - casimir_limit_dirichlet(0.5)
        )
        for lam in (1e4, 1e5, 1e6)
    ]
    ratios = [gaps[i] / gaps[i + 1] for i in range(2)]
    worst = max(abs(r - 10.0) for r in ratios)
    return _result("dirichlet_energy_convergence", worst, 3.0,
                   f"gap ratios {ratios[0]:.2f}, {ratios[1]:.2f} vs O(1/lambda) -> 10")


def check_dirichlet_spectrum_convergence() -> CheckResult:
    spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=1e6), alpha_max=2.0)
    worst = 0.0
    for a in spec.alphas[:5]:
        m = round(a / 0.375)
        worst = max(worst, abs(a - 0.375 * m) / (0.375 * m))
    return _result("dirichlet_spectrum_convergence", worst, 1e-5,
                   "first five roots vs m(1-b^2)/2, relative")


def check_strong_coupling_ell() -> CheckResult:
    v = rotation.ell_zp(ModelPoint(beta=0.5, lambda_hat=1e8))
    return _result("strong_coupling_ell", abs(v + 0.5 / 24.0), 1e-6,
                   "ell_zp(1/2, 1e8) vs -beta/24")


def check_symmetry_suite() -> CheckResult:
    p = ModelPoint(beta=0.4, lambda_hat=2.0)
    m = ModelPoint(beta=-0.4, lambda_hat=2.0)
    worst = abs(
        casimir_energy_corotating(p, tol=1e-10).field_energy
        - casimir_energy_corotating(m, tol=1e-10).field_energy
    )
    worst = max(worst, abs(rotation.ell_zp(p) + rotation.ell_zp(m)))
    sp = mode_frequencies(p, alpha_max=2.0)
    sm = mode_frequencies(m, alpha_max=2.0)
    worst = max(worst, max(abs(a - b) for a, b in zip(sp.alphas, sm.alphas)))
    return _result("symmetry_suite", worst, 1e-10, "beta reflection: E even, ell odd, spectrum even")


CHECKS_FAST = (
    check_free_energy_limit,
    check_dirichlet_energy_limit,
    check_doppler_spectrum,
    check_rest_frame_secular,
    check_mode_diagnostics,
    check_ell_energy_consistency,
    check_ell_bound_chain,
    check_izp_floor,
    check_stationary_example,
    check_omega_round_trip,
)

CHECKS_FULL = CHECKS_FAST + (
    check_dirichlet_energy_convergence,
    check_dirichlet_spectrum_convergence,
    check_strong_coupling_ell,
    check_symmetry_suite,
)


def run_checks(level: str = "fast") -> list[CheckResult]:
    """Run the named invariant checks; ``level`` is ``fast`` or ``full``."""
    if level == "fast":
        checks = CHECKS_FAST
    elif level == "full":
        checks = CHECKS_FULL
    else:
        from .errors import DomainError

        raise DomainError(f"unknown verification level {level!r}; expected fast or full")
    out = []
    for check in checks:
        try:
            out.append(check())
        except Exception as exc:  # a crashed check is a failed check
            out.append(CheckResult(check.__name__.removeprefix("check_"), False,
                                   float("inf"), 0.0, f"raised {type(exc).__name__}: {exc}"))
    return out
