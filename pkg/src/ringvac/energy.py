"""Co-rotating vacuum energy of the coupled field.

The renormalized vacuum energy at coupling lambda_hat and rim speed beta is
a single integral over imaginary frequency zeta,

    E_c = (1 / 2 pi) * Integral_0^inf ln A(zeta) d zeta,

where the argument A lies in (0, 1) and, written over the common denominator
D = lambda_hat + 2 zeta with t = 2 pi zeta / (1 - beta^2), is

    A = 1 - [2 zeta (e^{-t(1-beta)} + e^{-t(1+beta)} - e^{-2t})
             + lambda_hat e^{-2t}] / D.

Two algebraic rearrangements keep the evaluation stable over the whole axis:
for small subtrahend the integrand is log1p of it; once the subtrahend
approaches one (zeta -> 0, where the integrand diverges like
ln(4 pi zeta / (1 - beta^2))) the numerator D - N is assembled from expm1
factors instead, with no cancellation,

    D - N = lambda_hat (1 - e^{-2t})
            + 2 zeta (1 - e^{-t(1-beta)}) (1 - e^{-t(1+beta)}).

Both forms are exact rewritings of the same expression; they agree to
round-off in the overlap region, which the tests check.

Limits: at lambda_hat = 0 the integral factorizes and E_c = -1/12 for every
beta; at infinite coupling E_c = -(1 - beta^2)/48.  Finite-coupling values
always lie between the two.
"""

from __future__ import annotations

import math

import numpy as np

from dataclasses import dataclass

from .errors import DomainError, NumericalError
from .numerics import QuadratureResult, integrate_semi_infinite
from .params import ModelPoint

__all__ = [
    "EnergyResult",
    "casimir_integrand",
    "casimir_energy_corotating",
    "corotating_total_energy",
    "casimir_limit_free",
    "casimir_limit_dirichlet",
    "clamp_events",
    "reset_clamp_events",
]

# Diagnostic counter: how many integrand evaluations were clamped because the
# log argument grazed 1 from above within the round-off guard band.  Purely
# informational; not thread safe.
_CLAMP_EVENTS = 0

# Log argument in [1, 1 + _GUARD_BAND] is treated as round-off and clamped to
# 1 - _CLAMP_TO; beyond the band the parameters are considered corrupt.
_GUARD_BAND = 1e-12
_CLAMP_TO = 1e-16


def clamp_events() -> int:
    """Number of guard-band clamps since the last reset."""
    return _CLAMP_EVENTS


def reset_clamp_events() -> None:
    global _CLAMP_EVENTS
    _CLAMP_EVENTS = 0


def _check_quadrature_point(point: ModelPoint) -> None:
    if abs(point.beta) >= 1.0:
        raise DomainError(f"need |beta| < 1 inside the integral representation, "
                          f"got beta={point.beta!r}")
    if point.dirichlet:
        raise DomainError(
            "the integral representation needs finite lambda_hat; "
            "use casimir_limit_dirichlet for the impenetrable limit"
        )


def _ln_one_minus_exp(x):
    """ln(1 - exp(-x)) for x > 0 without cancellation at either end."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x < 1.0, np.log(-np.expm1(-x)), np.log1p(-np.exp(-x)))


def casimir_integrand(zeta, point: ModelPoint):
    """ln of the spectral argument at imaginary frequency zeta, stabilized.

    Diverges like ln(4 pi zeta / (1 - beta^2)) as zeta -> 0+ when the
    coupling is positive (integrable), decays like exp(-2 pi zeta/(1+|beta|))
    for large zeta, and is even in beta.  Scalar or array zeta.
    """
    global _CLAMP_EVENTS
    _check_quadrature_point(point)
    beta, lam = point.beta, point.lambda_hat
    z = np.asarray(zeta, dtype=float)
    if np.any(z <= 0.0):
        raise DomainError("zeta must be positive")
    t = 2.0 * math.pi * z / (1.0 - beta * beta)

    if lam == 0.0:
        # The argument factorizes exactly; no subtraction anywhere.
        out = _ln_one_minus_exp(t * (1.0 - beta)) + _ln_one_minus_exp(t * (1.0 + beta))
        return float(out) if np.isscalar(zeta) else out

    em_minus = np.exp(-t * (1.0 - beta))
    em_plus = np.exp(-t * (1.0 + beta))
    em_two = np.exp(-2.0 * t)
    den = lam + 2.0 * z
    sub = (2.0 * z * (em_minus + em_plus - em_two) + lam * em_two) / den

    with np.errstate(divide="ignore", invalid="ignore"):
        # Stable branch near zeta -> 0: assemble D - N from expm1 factors.
        gap = lam * (-np.expm1(-2.0 * t)) + 2.0 * z * np.expm1(-t * (1.0 - beta)) * np.expm1(
            -t * (1.0 + beta)
        )
        small_form = np.log(gap) - np.log(den)
        large_form = np.log1p(-sub)
    out = np.where(sub >= 0.5, small_form, large_form)

    # Guard band: round-off may push the log argument to [1, 1 + 1e-12];
    # clamp those to 1 - 1e-16 and count them.  Anything further out, or a
    # non-finite value from the selected branch, means corrupted parameters
    # and is reported as NaN.
    grazing = (sub < 0.0) & (sub >= -_GUARD_BAND)
    n_graze = int(np.count_nonzero(grazing))
    if n_graze:
        _CLAMP_EVENTS += n_graze
        out = np.where(grazing, math.log1p(-_CLAMP_TO), out)
    bad = (sub < -_GUARD_BAND) | ~np.isfinite(out)
    if np.any(bad):
        out = np.where(bad, np.nan, out)
    return float(out) if np.isscalar(zeta) else out


@dataclass(frozen=True)
class EnergyResult:
    """Co-rotating energy split into field and classical parts.

    All entries are in units of hbar c / R.  ``total`` is
    ``field_energy + classical_term`` with the classical term
    ``-inertia_hat beta^2 / 2`` (zero for the bare field result).
    """

    point: ModelPoint
    field_energy: float
    classical_term: float
    total: float
    quadrature_error: float


def casimir_energy_corotating(point: ModelPoint, tol: float = 1e-8) -> EnergyResult:
    """Renormalized vacuum energy of the field in the co-rotating frame.

    ``tol`` is the absolute tolerance on the energy; the quadrature runs
    tighter by the 1/(2 pi) prefactor.  The result always lies in
    [-1/12, -(1 - beta^2)/48] up to the reported quadrature error.  The
    impenetrable limit is answered from its closed form with zero error.
    """
    if point.dirichlet:
        if abs(point.beta) >= 1.0:
            raise DomainError(f"need |beta| < 1, got beta={point.beta!r}")
        value = casimir_limit_dirichlet(point.beta)
        return EnergyResult(point, value, 0.0, value, 0.0)
    _check_quadrature_point(point)
    rate = 2.0 * math.pi / (1.0 + abs(point.beta))
    quad = integrate_semi_infinite(
        lambda z: casimir_integrand(z, point),
        tol=2.0 * math.pi * tol,
        decay=(4.0, rate),
    )
    value = quad.value / (2.0 * math.pi)
    err = quad.error_estimate / (2.0 * math.pi)
    if math.isnan(value):
        raise NumericalError("vacuum energy quadrature produced NaN")
    return EnergyResult(point, value, 0.0, value, err)


def corotating_total_energy(point: ModelPoint, inertia_hat: float, tol: float = 1e-8) -> EnergyResult:
    """Field energy plus the classical rotor term -inertia_hat beta^2 / 2."""
    if not (inertia_hat >= 0.0) or math.isinf(inertia_hat):
        raise DomainError(f"inertia_hat must be finite and >= 0, got {inertia_hat!r}")
    if point.dirichlet:
        field = casimir_limit_dirichlet(point.beta)
        err = 0.0
    else:
        res = casimir_energy_corotating(point, tol)
        field, err = res.field_energy, res.quadrature_error
    classical = -0.5 * inertia_hat * point.beta**2 + 0.0
    return EnergyResult(point, field, classical, field + classical, err)


def casimir_limit_free(beta: float) -> float:
    """Zero-coupling vacuum energy: -1/12, independent of the rim speed."""
    if not (abs(beta) <= 1.0):
        raise DomainError(f"need |beta| <= 1, got {beta!r}")
    return -1.0 / 12.0


def casimir_limit_dirichlet(beta: float) -> float:
    """Impenetrable-barrier vacuum energy -(1 - beta^2)/48; vanishes at |beta| = 1."""
    if not (abs(beta) <= 1.0):
        raise DomainError(f"need |beta| <= 1, got {beta!r}")
    return -(1.0 - beta * beta) / 48.0
