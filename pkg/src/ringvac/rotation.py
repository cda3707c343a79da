"""Zero-point angular momentum, moment of inertia and frame transforms.

The co-rotating vacuum energy depends on the rotation rate, so the vacuum
carries angular momentum

    ell_zp(beta) = - d E_c / d beta        (units of hbar)

with a closed one-dimensional integral representation used here directly;
the derivative route exists independently and the two are cross-checked in
the verification suite.  ell_zp is odd in beta, vanishes identically at zero
coupling and at beta = 0, and tends to -beta/24 for an impenetrable barrier.

Differentiating once more gives the zero-point moment of inertia
I_zp = d ell_zp / d beta (units hbar R / c), computed by Ridders
differentiation with a step that respects the |beta| < 1 boundary.  Two
closed-form bounds pin these quantities at the light-speed edge:
:func:`izp_lightspeed_bound` (between -1/24 and 0) and
:func:`ell_zp_bound` (between 0 and 1/24).

The stationary-frame energy is the Legendre transform
E_s = E_c_total + ell_total * beta, and :func:`omega_of_ell` inverts the
monotone map beta -> ell_total to find the rotation rate belonging to a
prescribed total angular momentum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import (
    EnergyResult,
    casimir_energy_corotating,
    casimir_limit_dirichlet,
    corotating_total_energy,
)
from .errors import DomainError, ModelViolationError, NumericalError
from .numerics import QuadratureResult, derivative, integrate_semi_infinite
from .params import ModelPoint

__all__ = [
    "ell_zp_integrand",
    "ell_zp",
    "ell_zp_quadrature",
    "inertia_zp",
    "inertia_zp_estimate",
    "izp_lightspeed_bound",
    "ell_zp_bound",
    "stationary_energy",
    "omega_of_ell",
    "renormalized_inertia",
    "AngularLedger",
    "angular_ledger",
    "GroundStateReport",
    "ground_state_report",
]

_TWO_PI = 2.0 * math.pi

# Below this xi the integrand is replaced by its finite limit beta/pi; the
# neglected correction is O(xi) on a region of measure xi, far below any
# tolerance used here, and the exact expression would need ever more
# rescaling to dodge underflow.
_XI_SMALL = 1e-8


def _check_quadrature_point(point: ModelPoint) -> None:
    if abs(point.beta) >= 1.0:
        raise DomainError(
            f"need |beta| < 1 inside the integral representation, got {point.beta!r}"
        )


def ell_zp_integrand(xi, point: ModelPoint):
    """Integrand of the zero-point angular momentum, rescaled pole-free.

    The raw representation carries growing exponentials in numerator and
    denominator; both are multiplied by 2 exp(-2 pi xi) so every exponential
    decays.  With E_m = exp(-2 pi xi (1 - beta)), E_p = exp(-2 pi xi (1 + beta)),
    E_4 = exp(-4 pi xi):

        f = [2 xi (1-b^2) B + 4 b lam E_4] /
            [lam (1 - E_4)/xi + 2 (1-b^2) (1 - E_m)(1 - E_p)]

        B = (1+b)^2 E_p - (1-b)^2 E_m - 4 b E_4

    and ell_zp = -Integral f d xi.  f -> beta/pi as xi -> 0+ for every
    coupling, decays like xi exp(-2 pi xi (1 - |beta|)), and is odd in beta.
    At beta = 0 it vanishes identically.  B is assembled from expm1 terms at
    small xi (where the direct form cancels) and from plain exponentials at
    large xi (where the expm1 form cancels instead).
    """
    _check_quadrature_point(point)
    if point.dirichlet:
        raise DomainError(
            "integral representation needs finite lambda_hat; "
            "the impenetrable limit is ell_zp = -beta/24 in closed form"
        )
    beta, lam = point.beta, point.lambda_hat
    x = np.asarray(xi, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError("xi must be positive")
    one_m = 1.0 - beta
    one_p = 1.0 + beta
    e_m = np.exp(-_TWO_PI * x * one_m)
    e_p = np.exp(-_TWO_PI * x * one_p)
    e_4 = np.exp(-2.0 * _TWO_PI * x)
    em_m = -np.expm1(-_TWO_PI * x * one_m)
    em_p = -np.expm1(-_TWO_PI * x * one_p)
    em_4 = -np.expm1(-2.0 * _TWO_PI * x)

    b_direct = one_p**2 * e_p - one_m**2 * e_m - 4.0 * beta * e_4
    b_series = 4.0 * beta * em_4 - one_p**2 * em_p + one_m**2 * em_m
    big_b = np.where(_TWO_PI * x * (1.0 - abs(beta)) < 1.0, b_series, b_direct)

    numer = 2.0 * x * (1.0 - beta * beta) * big_b + 4.0 * beta * lam * e_4
    denom = lam * em_4 / x + 2.0 * (1.0 - beta * beta) * em_m * em_p
    with np.errstate(invalid="ignore"):
        out = np.where(x < _XI_SMALL, beta / math.pi, numer / denom)
    return float(out) if np.isscalar(xi) else out


def ell_zp_quadrature(point: ModelPoint, tol: float = 1e-8) -> QuadratureResult:
    """Zero-point angular momentum with its quadrature error estimate."""
    if point.dirichlet:
        return QuadratureResult(-point.beta / 24.0 + 0.0, 0.0, 0)
    _check_quadrature_point(point)
    rate = math.pi * (1.0 - abs(point.beta))
    quad = integrate_semi_infinite(
        lambda x: ell_zp_integrand(x, point), tol=tol, decay=rate
    )
    return QuadratureResult(-quad.value + 0.0, quad.error_estimate, quad.evaluations)


def ell_zp(point: ModelPoint, tol: float = 1e-8) -> float:
    """Zero-point angular momentum of the vacuum, in units of hbar.

    Odd in beta; identically zero at beta = 0 or at zero coupling;
    -beta/24 in the impenetrable limit.
    """
    return ell_zp_quadrature(point, tol).value


def inertia_zp_estimate(point: ModelPoint, tol: float = 1e-6) -> tuple[float, float]:
    """Zero-point moment of inertia with the differentiation error estimate."""
    if point.dirichlet:
        return -1.0 / 24.0, 0.0
    _check_quadrature_point(point)
    beta, lam = point.beta, point.lambda_hat
    h0 = min(1e-3, (1.0 - abs(beta)) / 10.0)
    val, err = derivative(
        lambda b: ell_zp(ModelPoint(beta=b, lambda_hat=lam), tol=1e-12),
        beta,
        tol=tol,
        h0=h0,
        bounds=(-1.0, 1.0),
    )
    return val, err


def inertia_zp(point: ModelPoint, tol: float = 1e-6) -> float:
    """d ell_zp / d beta in units hbar R / c; bounded below by -1/24."""
    return inertia_zp_estimate(point, tol)[0]


def izp_lightspeed_bound(lambda_hat: float, tol: float = 1e-10) -> float:
    """Closed-form I_zp at the light-speed edge; lies in [-1/24, 0].

    Equals -1/24 at zero coupling and climbs toward 0 only as O(1/lambda_hat)
    never reaching it; every interior I_zp(beta) sits above this value.
    """
    if math.isnan(lambda_hat) or lambda_hat < 0.0:
        raise DomainError(f"need lambda_hat >= 0, got {lambda_hat!r}")
    if math.isinf(lambda_hat):
        return -1.0 / 24.0
    if lambda_hat == 0.0:
        return -1.0 / 24.0

    def f(x):
        x = np.asarray(x, dtype=float)
        den = lambda_hat + 2.0 * x * (-np.expm1(-math.pi * x))
        return 6.0 * lambda_hat * x * x * np.exp(-math.pi * x) / (den * den)

    quad = integrate_semi_infinite(f, tol=tol, decay=math.pi)
    return -(1.0 - quad.value) / 24.0


def ell_zp_bound(lambda_hat: float, tol: float = 1e-10) -> float:
    """Closed-form bound on |ell_zp| at the light-speed edge; in [0, 1/24].

    Exactly zero at zero coupling (the integral term then evaluates to one)
    and 1/24 - O(1/lambda_hat) at strong coupling.
    """
    if math.isnan(lambda_hat) or lambda_hat < 0.0:
        raise DomainError(f"need lambda_hat >= 0, got {lambda_hat!r}")
    if math.isinf(lambda_hat):
        return 1.0 / 24.0

    def f(x):
        x = np.asarray(x, dtype=float)
        # 12 x^2 / ((lam + 2x) e^{pi x} - 2x), rescaled by e^{-pi x}; one
        # power of x is cancelled against the denominator so the lam = 0
        # case stays finite at the origin.
        den = lambda_hat / x + 2.0 * (-np.expm1(-math.pi * x))
        return 12.0 * x * np.exp(-math.pi * x) / den

    quad = integrate_semi_infinite(f, tol=tol, decay=math.pi)
    return (1.0 - quad.value) / 24.0


def stationary_energy(point: ModelPoint, inertia_hat: float, tol: float = 1e-8) -> float:
    """Energy in the stationary frame: E_c_total + ell_total * beta."""
    total = corotating_total_energy(point, inertia_hat, tol)
    lzp = ell_zp(point, tol)
    ell_total = inertia_hat * point.beta + lzp
    return total.total + ell_total * point.beta


def _ell_total(beta: float, lambda_hat: float, inertia_hat: float, tol: float) -> float:
    return inertia_hat * beta + ell_zp(ModelPoint(beta=beta, lambda_hat=lambda_hat), tol)


def omega_of_ell(
    ell_total: float,
    lambda_hat: float,
    inertia_hat: float,
    tol: float = 1e-8,
    beta_max: float = 0.99,
) -> float:
    """Rotation rate beta for a prescribed total angular momentum.

    The map beta -> inertia_hat * beta + ell_zp(beta) must be monotone on
    [-beta_max, beta_max]; it is whenever the total inertia stays positive.
    Monotonicity is verified on a grid before inverting and a violation
    raises :class:`ModelViolationError` rather than returning a root of an
    ambiguous profile.
    """
    if not math.isfinite(ell_total):
        raise DomainError(f"ell_total must be finite, got {ell_total!r}")
    if not (inertia_hat >= 0.0) or math.isinf(inertia_hat):
        raise DomainError(f"inertia_hat must be finite and >= 0, got {inertia_hat!r}")
    if not (0.0 < beta_max < 1.0):
        raise DomainError(f"need 0 < beta_max < 1, got {beta_max!r}")

    if math.isinf(lambda_hat):
        slope = inertia_hat - 1.0 / 24.0
        if slope <= 0.0:
            raise ModelViolationError(
                "total inertia is not positive in the impenetrable limit"
            )
        beta = ell_total / slope
        if abs(beta) > beta_max:
            raise DomainError(
                f"ell_total={ell_total!r} out of attainable range for |beta| <= {beta_max}"
            )
        return beta

    quad_tol = min(1e-10, tol * 1e-2)
    grid = np.linspace(-beta_max, beta_max, 17)
    ells = [_ell_total(b, lambda_hat, inertia_hat, quad_tol) for b in grid]
    diffs = np.diff(ells)
    if np.any(diffs < -1e-10):
        raise ModelViolationError(
            "total angular momentum is not monotone in beta; "
            "the rotation rate is not uniquely determined"
        )
    if not (ells[0] <= ell_total <= ells[-1]):
        raise DomainError(
            f"ell_total={ell_total!r} out of attainable range "
            f"[{ells[0]:.6g}, {ells[-1]:.6g}] for |beta| <= {beta_max}"
        )
    k = int(np.searchsorted(ells, ell_total))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k, len(grid) - 1)]
    if lo == hi:
        return float(lo)
    f_lo = ells[max(k - 1, 0)] - ell_total
    f_hi = ells[min(k, len(grid) - 1)] - ell_total
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    # Bisection with the guaranteed bracket; each step is one quadrature.
    g = lambda b: _ell_total(b, lambda_hat, inertia_hat, quad_tol) - ell_total  # noqa: E731
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(1e-12, 0.1 * tol):
            return mid
        f_mid = g(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    raise NumericalError("rotation-rate inversion did not converge")


def renormalized_inertia(
    beta: float,
    beta0: float,
    lambda_hat: float,
    measured_total_inertia_at_beta0: float,
    tol: float = 1e-6,
) -> float:
    """Move a measured total inertia from reference rim speed beta0 to beta.

    Only the difference of zero-point inertias is physical:
    I_tot(beta) = I_meas(beta0) + I_zp(beta) - I_zp(beta0).  Either rim
    speed may be +-1, where the closed-form light-speed value is used.
    """
    if not math.isfinite(measured_total_inertia_at_beta0):
        raise DomainError("measured_total_inertia_at_beta0 must be finite")

    def izp_at(b: float) -> float:
        if abs(b) == 1.0:
            return izp_lightspeed_bound(lambda_hat)
        return inertia_zp(ModelPoint(beta=b, lambda_hat=lambda_hat), tol)

    return measured_total_inertia_at_beta0 + izp_at(beta) - izp_at(beta0)


@dataclass(frozen=True)
class AngularLedger:
    """All rotational quantities of one model point in one place.

    Units: angular momenta in hbar, inertias in hbar R / c, energies in
    hbar c / R.
    """

    point: ModelPoint
    inertia_hat: float
    ell_zp: float
    ell_total: float
    inertia_zp: float
    inertia_total: float
    corotating: EnergyResult
    stationary_energy: float


def angular_ledger(point: ModelPoint, inertia_hat: float, tol: float = 1e-8) -> AngularLedger:
    """Assemble the rotational bookkeeping for one model point."""
    total = corotating_total_energy(point, inertia_hat, tol)
    lzp = ell_zp(point, tol)
    izp = inertia_zp(point, max(tol, 1e-8))
    ell_total = inertia_hat * point.beta + lzp
    return AngularLedger(
        point=point,
        inertia_hat=inertia_hat,
        ell_zp=lzp,
        ell_total=ell_total,
        inertia_zp=izp,
        inertia_total=inertia_hat + izp,
        corotating=total,
        stationary_energy=total.total + ell_total * point.beta,
    )


@dataclass(frozen=True)
class GroundStateReport:
    """Certification data for the state of lowest stationary energy.

    ``positive_inertia`` certifies that the total inertia stays positive on
    the whole grid, which makes beta = 0 the unique zero of the total
    angular momentum (``ell_zero_only_at_origin``) and hence the ground
    state non-rotating.  ``quantum_ratio_lower_bound`` is the guaranteed
    fraction of an angular momentum quantum that shows up as rigid rotation,
    1 - ell_zp_bound(lambda_hat) >= 1 - 1/24.  ``degenerate`` marks the
    empty model (no inertia, no coupling) whose report carries no
    information.
    """

    lambda_hat: float
    inertia_hat: float
    betas: tuple[float, ...]
    inertia_total: tuple[float, ...]
    min_inertia_total: float
    argmin_beta: float
    ell_total: tuple[float, ...]
    positive_inertia: bool
    ell_zero_only_at_origin: bool
    quantum_ratio_lower_bound: float
    degenerate: bool


def ground_state_report(
    lambda_hat: float,
    inertia_hat: float,
    beta_grid=None,
    tol: float = 1e-6,
) -> GroundStateReport:
    """Scan the rim-speed grid and certify whether the ground state rotates.

    The default grid is 41 uniform points on [-0.95, 0.95].
    """
    if not (inertia_hat >= 0.0) or math.isinf(inertia_hat):
        raise DomainError(f"inertia_hat must be finite and >= 0, got {inertia_hat!r}")
    if beta_grid is None:
        beta_grid = np.linspace(-0.95, 0.95, 41)
    betas = [float(b) for b in beta_grid]
    if not betas or any(abs(b) >= 1.0 for b in betas):
        raise DomainError("beta grid must be nonempty with |beta| < 1")

    totals = []
    ells = []
    for b in betas:
        p = ModelPoint(beta=b, lambda_hat=lambda_hat)
        totals.append(inertia_hat + inertia_zp(p, tol))
        ells.append(inertia_hat * b + ell_zp(p, min(1e-10, tol)))
    i_min = int(np.argmin(totals))
    degenerate = all(abs(t) < 1e-12 for t in totals) and all(abs(l) < 1e-12 for l in ells)
    positive = totals[i_min] > 0.0
    zero_tol = 1e-9
    only_origin = (not degenerate) and all(
        (abs(b) < 1e-12 and abs(l) <= zero_tol) or (abs(b) >= 1e-12 and l * b > 0.0)
        for b, l in zip(betas, ells)
    )
    return GroundStateReport(
        lambda_hat=lambda_hat,
        inertia_hat=inertia_hat,
        betas=tuple(betas),
        inertia_total=tuple(totals),
        min_inertia_total=totals[i_min],
        argmin_beta=betas[i_min],
        ell_total=tuple(ells),
        positive_inertia=positive,
        ell_zero_only_at_origin=only_origin,
        quantum_ratio_lower_bound=1.0 - ell_zp_bound(lambda_hat),
        degenerate=degenerate,
    )
