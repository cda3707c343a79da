"""Reusable numerical kernels with explicit accuracy contracts.

Four tools live here, in rough order of importance:

* :func:`integrate_semi_infinite` -- quadrature on (0, inf) for integrands
  that decay exponentially and may carry an integrable logarithmic
  singularity at the origin.  The infinite tail is cut at a point chosen
  from the analytic decay rate and the cut is charged to the reported
  error estimate, so ``error_estimate`` is an honest bound rather than a
  heuristic.
* :func:`bracket_roots` -- scan a function at fixed resolution, returning
  every sign-change bracket plus "tangency" flags where ``|f|`` dips below
  a threshold without changing sign (candidate double roots).
* :func:`refine_root` -- Brent-style refinement of a bracketed root:
  inverse-quadratic/secant steps with an unconditional bisection fallback.
* :func:`derivative` -- Ridders' polished central-difference derivative
  with an error estimate.

Integrand callables passed to the quadrature must accept numpy arrays;
everything in this package is written that way and the node batches are
large enough that scalar fallback would dominate the runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NumericalError

__all__ = [
    "QuadratureResult",
    "Bracket",
    "integrate_semi_infinite",
    "bracket_roots",
    "refine_root",
    "derivative",
]

_EPS = float(np.finfo(float).eps)

# The tanh-sinh abscissas live at t in [-T_MAX, T_MAX].  Beyond ~6.1 the
# weights underflow double precision, so nothing is lost by the cap.
_T_MAX = 6.1


@dataclass(frozen=True)
class QuadratureResult:
    """Value, honest error bound and cost of one quadrature."""

    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class Bracket:
    """An interval with a sign change: f(lo) * f(hi) < 0."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise DomainError(f"bracket endpoints out of order: [{self.lo}, {self.hi}]")
        if not (self.f_lo * self.f_hi < 0.0):
            raise DomainError(
                f"not a sign change: f({self.lo})={self.f_lo}, f({self.hi})={self.f_hi}"
            )


def _eval_vector(f: Callable, x: np.ndarray) -> np.ndarray:
    """Evaluate f on an array, tolerating scalar-only callables."""
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(v)) for v in x])


_PROBE_POINTS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0)


def _estimate_decay(f: Callable, probes: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Fit |f| <= amp * exp(-rate * x) from probe samples, conservatively."""
    mags = np.abs(values)
    rates = []
    for i in range(len(probes) - 1):
        lo, hi = mags[i], mags[i + 1]
        if lo > 0.0 and 0.0 < hi < lo:
            rates.append(math.log(lo / hi) / (probes[i + 1] - probes[i]))
    if not rates:
        raise NumericalError(
            "integrand does not appear to decay on (0, inf); "
            "pass decay=(amplitude, rate) explicitly"
        )
    rate = min(r for r in rates if r > 0.0)
    amp = 0.0
    for x, m in zip(probes, mags):
        if m > 0.0:
            amp = max(amp, m * math.exp(min(rate * x, 700.0)))
    return 4.0 * amp, rate


def integrate_semi_infinite(
    f: Callable,
    tol: float = 1e-10,
    decay: float | tuple[float, float] | None = None,
    max_level: int = 12,
    budget: int = 500_000,
) -> QuadratureResult:
    """Integrate f over (0, inf) with a tanh-sinh rule on a truncated interval.

    Parameters
    ----------
    f : callable
        Vectorized integrand.  May diverge like log(x) at the origin; must
        decay exponentially for large x.  NaN or Inf anywhere on the open
        interval aborts with :class:`NumericalError`.
    tol : float
        Target absolute accuracy.
    decay : float, (float, float), or None
        Analytic tail bound ``|f(x)| <= amplitude * exp(-rate * x)``.
        A bare float is the rate (amplitude is then measured at probe
        points); None probes both.  The truncation point L is chosen so the
        analytic tail is below tol/4, and that tail bound is added to the
        reported error estimate.
    max_level, budget
        Refinement and evaluation limits; exceeding either raises
        :class:`NumericalError`.

    Returns
    -------
    QuadratureResult
        ``error_estimate`` is the last inter-level difference plus the
        analytic tail bound.
    """
    if not (tol > 0.0) or not math.isfinite(tol):
        raise DomainError(f"tol must be a positive finite number, got {tol!r}")

    probes = np.array(_PROBE_POINTS)
    pvals = _eval_vector(f, probes)
    if not np.all(np.isfinite(pvals)):
        raise NumericalError("integrand returned NaN/Inf at a probe point")
    evaluations = len(probes)
    if np.all(pvals == 0.0):
        # Identically zero at every probe: taken as the zero integrand.
        # All integrands in this package that can vanish do so identically.
        return QuadratureResult(0.0, 0.0, evaluations)

    if decay is None:
        amp, rate = _estimate_decay(f, probes, pvals)
    elif isinstance(decay, tuple):
        amp, rate = decay
    else:
        rate = float(decay)
        if rate <= 0.0:
            raise DomainError(f"decay rate must be positive, got {rate!r}")
        amp = 0.0
        for x, m in zip(probes, np.abs(pvals)):
            amp = max(amp, float(m) * math.exp(min(rate * x, 700.0)))
        amp *= 4.0
        if amp == 0.0:
            amp = 1.0
    if rate <= 0.0 or amp < 0.0:
        raise DomainError(f"invalid decay bound (amplitude={amp!r}, rate={rate!r})")

    # Truncation point: analytic tail integral below tol/4.
    tail_target = 0.25 * tol
    length = max(math.log(max(amp, 1e-300) / (rate * tail_target)) / rate, 8.0 / rate, 1.0)
    tail_bound = amp * math.exp(-rate * length) / rate

    half = 0.5 * length
    total = 0.0
    prev = math.inf
    diff = math.inf
    h = 1.0
    for level in range(max_level + 1):
        if level == 0:
            k = np.arange(-int(_T_MAX), int(_T_MAX) + 1)
            t = h * k
        else:
            h = h / 2.0
            n = int(math.floor(_T_MAX / h))
            t = h * np.arange(-n, n + 1)
            t = t[np.abs(np.round(t / (2.0 * h)) * 2.0 * h - t) > h / 2.0]  # odd multiples only
        u = 0.5 * math.pi * np.sinh(t)
        x = half * (1.0 + np.tanh(u))
        w = half * 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
        keep = (x > 0.0) & (x < length) & (w > 0.0) & np.isfinite(w)
        x, w = x[keep], w[keep]
        if x.size:
            y = _eval_vector(f, x)
            if not np.all(np.isfinite(y)):
                raise NumericalError("integrand returned NaN/Inf inside (0, inf)")
            evaluations += x.size
            contrib = float(np.sum(w * y))
        else:
            contrib = 0.0
        total = 0.5 * total + h * contrib if level > 0 else h * contrib
        if evaluations > budget:
            raise NumericalError(f"quadrature evaluation budget {budget} exhausted")
        if level > 0:
            diff = abs(total - prev)
            scale = max(abs(total), 1.0)
            if level >= 2 and diff <= max(0.5 * tol, 4.0 * _EPS * scale):
                return QuadratureResult(total, diff + tail_bound, evaluations)
        prev = total
    raise NumericalError(
        f"quadrature did not converge to tol={tol:g} within {max_level} levels "
        f"(last inter-level difference {diff:g})"
    )


def bracket_roots(
    f: Callable,
    lo: float,
    hi: float,
    step: float,
    tangency_tol: float | Callable[[float], float] | None = None,
) -> tuple[list[Bracket], list[float]]:
    """Scan [lo, hi] at fixed resolution for sign changes and near-tangencies.

    Every sign change of f between adjacent samples becomes a
    :class:`Bracket`.  A sample that is an interior local minimum of ``|f|``
    with no adjacent sign change and ``|f|`` below the tangency threshold is
    reported in the second list; such points are candidate double roots or
    near-misses and need problem-specific follow-up.

    ``tangency_tol`` may be an absolute threshold, a callable threshold(x),
    or None (defaults to 1% of the largest sampled ``|f|``).

    Roots separated by less than ``step`` are not guaranteed to be resolved;
    choose the step from the known spacing of the problem.
    """
    if not (lo < hi):
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if not (step > 0.0):
        raise DomainError(f"step must be positive, got {step!r}")
    n = max(1, int(math.ceil((hi - lo) / step)))
    xs = lo + step * np.arange(n + 1)
    xs[-1] = hi
    fs = _eval_vector(f, xs)
    if not np.all(np.isfinite(fs)):
        raise NumericalError("scan function returned NaN/Inf")

    if tangency_tol is None:
        cap = 0.01 * float(np.max(np.abs(fs)))
        threshold = lambda x: cap  # noqa: E731
    elif callable(tangency_tol):
        threshold = tangency_tol
    else:
        cap = float(tangency_tol)
        threshold = lambda x: cap  # noqa: E731

    brackets: list[Bracket] = []
    tangencies: list[float] = []
    for i in range(n):
        if fs[i] * fs[i + 1] < 0.0:
            brackets.append(Bracket(float(xs[i]), float(xs[i + 1]), float(fs[i]), float(fs[i + 1])))
    for i in range(1, n):
        if fs[i] == 0.0:
            if fs[i - 1] * fs[i + 1] < 0.0:
                brackets.append(
                    Bracket(float(xs[i - 1]), float(xs[i + 1]), float(fs[i - 1]), float(fs[i + 1]))
                )
            else:
                tangencies.append(float(xs[i]))
            continue
        no_adjacent_change = fs[i - 1] * fs[i] > 0.0 and fs[i] * fs[i + 1] > 0.0
        local_min = abs(fs[i]) <= abs(fs[i - 1]) and abs(fs[i]) <= abs(fs[i + 1])
        if no_adjacent_change and local_min and abs(fs[i]) <= threshold(float(xs[i])):
            tangencies.append(float(xs[i]))
    brackets.sort(key=lambda b: b.lo)
    return brackets, tangencies


def refine_root(f: Callable, bracket: Bracket, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Refine a bracketed root to |interval| <= tol by Brent's method.

    Inverse quadratic interpolation and secant steps are accepted only when
    they shrink the interval fast enough, otherwise the step is a bisection,
    so convergence is guaranteed for any valid bracket.
    """
    if not (tol > 0.0):
        raise DomainError(f"tol must be positive, got {tol!r}")
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        b = b + (d if abs(d) > tol1 else math.copysign(tol1, xm))
        fb = float(f(b))
        if math.isnan(fb):
            raise NumericalError(f"function returned NaN at {b!r} during refinement")
    raise NumericalError(f"root refinement budget of {max_iter} iterations exhausted")


def derivative(
    f: Callable[[float], float],
    x: float,
    tol: float = 1e-8,
    h0: float = 1e-3,
    bounds: tuple[float, float] | None = None,
) -> tuple[float, float]:
    """Central-difference derivative with Ridders' polynomial extrapolation.

    Returns ``(value, error_estimate)``.  The step sequence starts at ``h0``
    and only shrinks, so ``f`` is never evaluated outside ``[x-h0, x+h0]``.
    ``bounds``, when given, guards that window against the domain edge and
    raises :class:`DomainError` if the initial step would cross it.  The
    refinement stops early once the internal error estimate drops below
    ``tol`` or starts growing again (noise floor reached).
    """
    if not (h0 > 0.0) or not math.isfinite(h0):
        raise DomainError(f"h0 must be a positive finite step, got {h0!r}")
    if bounds is not None:
        lo, hi = bounds
        if not (lo < x - h0 and x + h0 < hi):
            raise DomainError(
                f"initial step h0={h0:g} crosses the domain boundary around x={x:g}"
            )
    con = 1.4
    con2 = con * con
    safe = 2.0
    ntab = 12
    table = [[0.0] * ntab for _ in range(ntab)]
    hh = h0
    table[0][0] = (f(x + hh) - f(x - hh)) / (2.0 * hh)
    best = table[0][0]
    err = math.inf
    for i in range(1, ntab):
        hh /= con
        table[0][i] = (f(x + hh) - f(x - hh)) / (2.0 * hh)
        fac = con2
        for j in range(1, i + 1):
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0)
            fac *= con2
            errt = max(
                abs(table[j][i] - table[j - 1][i]),
                abs(table[j][i] - table[j - 1][i - 1]),
            )
            if errt <= err:
                err = errt
                best = table[j][i]
        if err <= tol:
            break
        if abs(table[i][i] - table[i - 1][i - 1]) >= safe * err:
            break
    if math.isnan(best) or math.isnan(err):
        raise NumericalError("derivative table filled with NaN")
    return best, err
