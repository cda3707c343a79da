"""Bloch-mode spectrum of the co-rotating field.

In co-rotating coordinates the field modes are superpositions of two counter-
propagating waves ``exp(i a sigma)`` and ``exp(-i b sigma)`` with wavenumbers

    a = alpha / (1 - beta),      b = alpha / (1 + beta),

where ``alpha = omega R / c`` is the dimensionless mode frequency.  Matching
the derivative jump across the delta potential at sigma = 0 quantizes alpha.
Instead of the raw matching condition, which has poles at the free-field
frequencies, everything here uses the pole-free rescaled form

    G(alpha) = alpha sin(pi a) sin(pi b) - (lambda_hat / 4) sin(pi (a + b))

whose positive zeros are exactly the mode frequencies.  G is entire in alpha
and even in beta; alpha = 0 is always a zero but never a mode (the constant
zero mode is lifted by any positive coupling and excluded at zero coupling).

At zero coupling every frequency is doubly degenerate whenever both a and b
are integers (for example all of beta = 0); such roots do not change the sign
of G and are recovered from tangency flags by locating the simple zero of
G' between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericalError
from .numerics import Bracket, bracket_roots, refine_root
from .params import ModelPoint

__all__ = [
    "secular_value",
    "ModeSpectrum",
    "mode_frequencies",
    "ModeFunction",
    "mode_function",
    "spectrum_modes",
    "ResidualReport",
    "mode_residuals",
    "inner_products",
]

_TWO_PI = 2.0 * math.pi
_EPS = float(np.finfo(float).eps)

# Coefficients of the two-wave form smaller than this are treated as exact
# zeros; see mode_function.
_COEFF_ZERO = 1e-8


def _check_interior(point: ModelPoint) -> None:
    if abs(point.beta) >= 1.0:
        raise DomainError(f"need |beta| < 1 for spectral quantities, got {point.beta!r}")


def secular_value(alpha, point: ModelPoint):
    """Pole-free quantization function G(alpha); zero exactly at mode frequencies.

    Accepts a scalar or an array of alpha values.  Requires finite coupling;
    the impenetrable limit has the closed-form spectrum m (1 - beta^2) / 2
    and is handled by :func:`mode_frequencies` directly.
    """
    _check_interior(point)
    if point.dirichlet:
        raise DomainError("secular_value needs finite lambda_hat; the Dirichlet "
                          "spectrum is closed-form")
    beta, lam = point.beta, point.lambda_hat
    c1 = math.pi / (1.0 - beta)
    c2 = math.pi / (1.0 + beta)
    a = np.asarray(alpha, dtype=float)
    val = a * np.sin(c1 * a) * np.sin(c2 * a) - 0.25 * lam * np.sin((c1 + c2) * a)
    return float(val) if np.isscalar(alpha) else val


def _secular_slope(alpha, point: ModelPoint):
    """Analytic dG/dalpha, used to pin double roots and to scale residuals."""
    beta, lam = point.beta, point.lambda_hat
    c1 = math.pi / (1.0 - beta)
    c2 = math.pi / (1.0 + beta)
    a = np.asarray(alpha, dtype=float)
    s1, s2 = np.sin(c1 * a), np.sin(c2 * a)
    k1, k2 = np.cos(c1 * a), np.cos(c2 * a)
    val = s1 * s2 + a * (c1 * k1 * s2 + c2 * s1 * k2) - 0.25 * lam * (c1 + c2) * np.cos(
        (c1 + c2) * a
    )
    return float(val) if np.isscalar(alpha) else val


def _residual_threshold(alpha: float, point: ModelPoint) -> float:
    """Acceptable |G| at a reported root, scaled by magnitude and slope."""
    mag = 1.0 + abs(alpha) + 0.25 * point.lambda_hat
    slope = abs(_secular_slope(alpha, point))
    return 1e-10 * mag + 1e-11 * slope * max(1.0, abs(alpha))


def _is_root(alpha: float, point: ModelPoint) -> bool:
    return abs(secular_value(alpha, point)) <= _residual_threshold(alpha, point)


@dataclass(frozen=True)
class ModeSpectrum:
    """Sorted positive mode frequencies below a cutoff.

    ``degenerate[i]`` marks members of (near-)degenerate pairs: exactly
    coincident roots at zero coupling and roots closer than about 1e-6.
    """

    point: ModelPoint
    alphas: tuple[float, ...]
    degenerate: tuple[bool, ...]
    alpha_max: float
    scan_step: float


def _resolve_tangency(point: ModelPoint, lo: float, hi: float) -> list[float]:
    """Turn one tangency flag into zero, one duplicated, or two roots.

    The window (lo, hi) straddles a dip of |G| toward zero.  The extremum
    sits at a simple zero of G'; from its refined position the dip either
    crosses zero (a barely split pair: two brackets) or touches it within
    round-off (an exact double root, reported twice).
    """
    g = lambda a: secular_value(float(a), point)  # noqa: E731
    dg = lambda a: _secular_slope(float(a), point)  # noqa: E731
    width = hi - lo
    for wl, wh in ((lo, hi), (lo - 0.5 * width, hi + 0.5 * width)):
        wl = max(wl, 1e-12)
        dlo, dhi = dg(wl), dg(wh)
        if dlo * dhi < 0.0:
            x_star = refine_root(dg, Bracket(wl, wh, dlo, dhi), tol=1e-13)
            break
    else:
        return []
    g_star = g(x_star)
    # Round-off floor for G evaluated near x_star.
    floor = 64.0 * _EPS * (1.0 + abs(x_star) + 0.25 * point.lambda_hat)
    if abs(g_star) <= floor:
        return [x_star, x_star]
    g_lo = g(lo)
    if g_star * g_lo < 0.0:
        r1 = refine_root(g, Bracket(lo, x_star, g_lo, g_star), tol=1e-13)
        g_hi = g(hi)
        r2 = refine_root(g, Bracket(x_star, hi, g_star, g_hi), tol=1e-13)
        return [r1, r2]
    return []  # near-miss: the dip does not reach zero


def mode_frequencies(point: ModelPoint, alpha_max: float, step: float | None = None) -> ModeSpectrum:
    """All mode frequencies in (0, alpha_max], sorted, duplicates included.

    The scan step defaults to (1 - |beta|) / 20, a tenth of the smallest
    spacing the two Doppler families can produce, so no sign change is
    skipped.  Degenerate pairs are found through tangency flags since a
    double root never flips the sign of G.
    """
    _check_interior(point)
    if not (alpha_max > 0.0 and math.isfinite(alpha_max)):
        raise DomainError(f"alpha_max must be positive and finite, got {alpha_max!r}")

    beta, lam = point.beta, point.lambda_hat

    if point.dirichlet:
        spacing = 0.5 * (1.0 - beta * beta)
        m_max = int(math.floor(alpha_max / spacing + 1e-12))
        alphas = tuple(m * spacing for m in range(1, m_max + 1))
        return ModeSpectrum(point, alphas, (False,) * len(alphas), alpha_max, 0.0)

    if step is None:
        step = (1.0 - abs(beta)) / 20.0
    if not (0.0 < step <= alpha_max):
        raise DomainError(f"scan step {step!r} invalid for alpha_max={alpha_max!r}")

    # Anchor just above zero so a low-lying lifted zero mode (alpha of order
    # sqrt(lambda_hat) at weak coupling) is bracketed, while alpha = 0 itself
    # stays excluded.
    anchor = 1e-9
    c3 = _TWO_PI / (1.0 - beta * beta)
    curvature = lambda a: (abs(a) + 0.25 * lam) * c3 * c3 + 2.0 * c3  # noqa: E731
    threshold = lambda a: 0.25 * curvature(a) * step * step  # noqa: E731

    g = lambda a: secular_value(a, point)  # noqa: E731
    # Scan one step past the window so a root sitting exactly at alpha_max
    # still gets a sign change on both sides; the filter below trims back.
    brackets, tangencies = bracket_roots(g, anchor, alpha_max + step, step, tangency_tol=threshold)

    roots: list[float] = []
    for br in brackets:
        roots.append(refine_root(g, br, tol=1e-13))
    for x0 in tangencies:
        roots.extend(_resolve_tangency(point, max(anchor, x0 - step), min(alpha_max + step, x0 + step)))

    roots = sorted(r for r in roots if anchor < r <= alpha_max * (1.0 + 1e-12))
    for r in roots:
        if not _is_root(r, point):
            raise NumericalError(
                f"refined root alpha={r!r} fails the secular residual test"
            )

    n = len(roots)
    flags = [False] * n
    for i in range(n - 1):
        if roots[i + 1] - roots[i] < 1e-6 * max(1.0, roots[i]):
            flags[i] = flags[i + 1] = True
    return ModeSpectrum(point, tuple(roots), tuple(flags), alpha_max, step)


def _one_minus_exp_2pii(x: float) -> complex:
    """1 - exp(2 pi i x), with the argument reduced so near-integer x is exact."""
    frac = x - round(x)
    s = math.sin(math.pi * frac)
    return complex(2.0 * s * s, -2.0 * s * math.cos(math.pi * frac))


@dataclass(frozen=True)
class ModeFunction:
    """Normalized single-mode solution u(sigma) on the ring.

    The evaluator is the object itself: ``u(sigma)`` returns values,
    :meth:`derivative` and :meth:`second_derivative` the sigma-derivatives.
    All three accept scalars or arrays.
    """

    alpha: float
    point: ModelPoint
    normalization: complex
    coeff_plus: complex
    coeff_minus: complex
    wave_plus: float
    wave_minus: float

    def _waves(self, sigma):
        s = np.asarray(sigma, dtype=float)
        return np.exp(1j * self.wave_plus * s), np.exp(-1j * self.wave_minus * s)

    def __call__(self, sigma):
        ea, eb = self._waves(sigma)
        out = self.normalization * (self.coeff_plus * ea - self.coeff_minus * eb)
        return complex(out) if np.isscalar(sigma) else out

    def derivative(self, sigma):
        ea, eb = self._waves(sigma)
        out = self.normalization * (
            1j * self.wave_plus * self.coeff_plus * ea
            + 1j * self.wave_minus * self.coeff_minus * eb
        )
        return complex(out) if np.isscalar(sigma) else out

    def second_derivative(self, sigma):
        ea, eb = self._waves(sigma)
        out = self.normalization * (
            -self.wave_plus**2 * self.coeff_plus * ea
            + self.wave_minus**2 * self.coeff_minus * eb
        )
        return complex(out) if np.isscalar(sigma) else out


@lru_cache(maxsize=64)
def _gauss_ring(n: int):
    """Gauss-Legendre nodes and weights mapped to [0, 2 pi]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return math.pi * (x + 1.0), math.pi * w


def _norm_nodes(a: float, b: float) -> int:
    # About 8 nodes per oscillation of the fastest integrand component.
    return min(4096, 48 + 8 * int(math.ceil(a + b)))


def _norm_integral(coeff_plus, coeff_minus, a, b, alpha, beta, n) -> complex:
    sig, w = _gauss_ring(n)
    ea = np.exp(1j * a * sig)
    eb = np.exp(-1j * b * sig)
    u = coeff_plus * ea - coeff_minus * eb
    up = 1j * a * coeff_plus * ea + 1j * b * coeff_minus * eb
    integrand = 2.0 * alpha * np.abs(u) ** 2 - 2j * beta * np.conj(u) * up
    return complex(np.sum(w * integrand))


def mode_function(
    alpha: float,
    point: ModelPoint,
    branch: int | None = None,
    validate: bool = True,
) -> ModeFunction:
    """Build the normalized mode function for a secular root.

    The raw two-wave form degenerates to zero whenever both wavenumbers a
    and b are integers.  In that case the derivative-jump condition fixes
    the surviving combination: for positive coupling it is
    ``exp(i a sigma) - exp(-i b sigma)`` (a node at the potential), while at
    zero coupling the root is doubly degenerate and ``branch`` selects one
    of the two travelling waves (0: co-rotating, 1: counter-rotating).

    The normalization constant comes from numerical quadrature of the norm
    integral, not from a closed form, so the diagonal inner product doubles
    as a self-test of the construction.

    Parameters
    ----------
    alpha : float
        A positive mode frequency.
    point : ModelPoint
    branch : int or None
        Member selector for a doubly degenerate root; invalid elsewhere.
    validate : bool
        When True (default), reject alpha that fails the secular residual
        test.  Disable only to build deliberately broken modes for defect
        diagnostics.
    """
    _check_interior(point)
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be positive and finite, got {alpha!r}")
    beta, lam = point.beta, point.lambda_hat
    a = alpha / (1.0 - beta)
    b = alpha / (1.0 + beta)

    if point.dirichlet:
        spacing = 0.5 * (1.0 - beta * beta)
        if validate and abs(alpha / spacing - round(alpha / spacing)) > 1e-9:
            raise DomainError(
                f"alpha={alpha!r} is not an impenetrable-limit frequency "
                f"(multiple of {spacing!r})"
            )
        coeff_plus, coeff_minus = complex(1.0), complex(1.0)
        if branch is not None:
            raise DomainError("branch is only meaningful for degenerate pairs")
    else:
        if validate and not _is_root(alpha, point):
            raise DomainError(
                f"alpha={alpha!r} fails the secular residual test at "
                f"(beta={beta!r}, lambda_hat={lam!r})"
            )
        coeff_plus = _one_minus_exp_2pii(-b)
        coeff_minus = _one_minus_exp_2pii(a)
        both_zero = abs(coeff_plus) < _COEFF_ZERO and abs(coeff_minus) < _COEFF_ZERO
        if both_zero:
            if lam > 1e-12:
                # Coupling forces a node at sigma = 0.
                coeff_plus, coeff_minus = complex(1.0), complex(1.0)
                if branch is not None:
                    raise DomainError("branch is only meaningful for degenerate pairs")
            else:
                pick = 0 if branch is None else branch
                if pick not in (0, 1):
                    raise DomainError(f"branch must be 0 or 1, got {branch!r}")
                if pick == 0:
                    coeff_plus, coeff_minus = complex(1.0), complex(0.0)
                else:
                    coeff_plus, coeff_minus = complex(0.0), complex(-1.0)
        elif branch is not None:
            raise DomainError("branch is only meaningful for degenerate pairs")

    n = _norm_nodes(a, b)
    q = _norm_integral(coeff_plus, coeff_minus, a, b, alpha, beta, n)
    if abs(q.imag) > 1e-9 * max(abs(q), 1.0):
        raise NumericalError(f"norm integral is not real: {q!r}")
    if not (q.real > 0.0):
        raise NumericalError(f"norm integral is not positive: {q!r}")
    return ModeFunction(
        alpha=float(alpha),
        point=point,
        normalization=complex(1.0 / math.sqrt(q.real)),
        coeff_plus=coeff_plus,
        coeff_minus=coeff_minus,
        wave_plus=a,
        wave_minus=b,
    )


def spectrum_modes(spec: ModeSpectrum, count: int | None = None) -> list[ModeFunction]:
    """Mode functions for a spectrum, assigning branches across exact pairs."""
    alphas = spec.alphas if count is None else spec.alphas[:count]
    modes: list[ModeFunction] = []
    i = 0
    lam = spec.point.lambda_hat
    while i < len(alphas):
        exact_pair = (
            lam <= 1e-12
            and i + 1 < len(alphas)
            and alphas[i + 1] - alphas[i] <= 1e-9 * max(1.0, alphas[i])
        )
        if exact_pair:
            modes.append(mode_function(alphas[i], spec.point, branch=0))
            modes.append(mode_function(alphas[i + 1], spec.point, branch=1))
            i += 2
        else:
            modes.append(mode_function(alphas[i], spec.point))
            i += 1
    return modes


@dataclass(frozen=True)
class ResidualReport:
    """Defect diagnostics for one mode function.

    ``ode_max`` is the largest interior residual of the wave equation,
    ``periodicity_defect`` is |u(0) - u(2 pi)|, and ``jump_defect`` measures
    the derivative-jump condition at the potential (for the impenetrable
    limit it is the larger boundary value |u| instead, since the jump
    condition degenerates to a node condition).
    """

    ode_max: float
    periodicity_defect: float
    jump_defect: float


def mode_residuals(mode: ModeFunction, num_points: int = 2048) -> ResidualReport:
    """Evaluate all defect diagnostics for a mode on an interior grid."""
    beta = mode.point.beta
    lam = mode.point.lambda_hat
    alpha = mode.alpha
    sigma = np.linspace(0.0, _TWO_PI, num_points + 2)[1:-1]
    u = mode(sigma)
    up = mode.derivative(sigma)
    upp = mode.second_derivative(sigma)
    ode = np.abs((1.0 - beta * beta) * upp - 2j * alpha * beta * up + alpha * alpha * u)
    u0 = mode(0.0)
    u2pi = mode(_TWO_PI)
    periodicity = abs(u0 - u2pi)
    if mode.point.dirichlet:
        jump = max(abs(u0), abs(u2pi))
    else:
        jump = abs(mode.derivative(0.0) - mode.derivative(_TWO_PI) - lam / (1.0 - beta * beta) * u0)
    return ResidualReport(float(np.max(ode)), float(periodicity), float(jump))


def inner_products(mode_m: ModeFunction, mode_n: ModeFunction) -> tuple[complex, complex]:
    """The two bilinear relations that orthonormalize the mode basis.

    Returns the pair of ring integrals

        ((alpha_m + alpha_n) conj(u_m) u_n - 2 i beta conj(u_m) u_n',
         (alpha_n - alpha_m) u_m u_n      - 2 i beta u_m u_n')

    which evaluate to (delta_mn, 0) on a properly normalized basis.
    """
    if mode_m.point != mode_n.point:
        raise DomainError("modes belong to different model points")
    beta = mode_m.point.beta
    am, an = mode_m.alpha, mode_n.alpha
    k = mode_m.wave_plus + mode_m.wave_minus + mode_n.wave_plus + mode_n.wave_minus
    n = min(4096, 72 + 9 * int(math.ceil(k)))
    sig, w = _gauss_ring(n)
    um = mode_m(sig)
    un = mode_n(sig)
    unp = mode_n.derivative(sig)
    first = np.sum(w * ((am + an) * np.conj(um) * un - 2j * beta * np.conj(um) * unp))
    second = np.sum(w * ((an - am) * um * un - 2j * beta * um * unp))
    return complex(first), complex(second)
