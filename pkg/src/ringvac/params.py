"""Parameter handling and unit conversion.

All physics in this package is computed in units hbar = c = R = 1.  A ring of
radius R rotating at angular frequency Omega carries a delta-function potential
of strength lambda; the dimensionless groups are

    beta       = Omega R / c          (rim speed in units of c)
    lambda_hat = lambda R^2 / c^2     (coupling strength)
    inertia_hat = I c / (hbar R)      (classical moment of inertia)

Conversion back to physical units happens only at the API boundary, through
:func:`to_physical` and :func:`from_physical`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "RingConfig",
    "ModelPoint",
    "make_config",
    "model_point",
    "to_physical",
    "from_physical",
    "UNIT_SCALES",
]


@dataclass(frozen=True)
class RingConfig:
    """Physical description of the ring and its environment.

    Attributes
    ----------
    radius : float
        Ring radius R > 0.
    light_speed : float
        Propagation speed c > 0 of the field.
    hbar : float
        Value of the reduced Planck constant in the chosen unit system.
    classical_inertia : float
        Moment of inertia I >= 0 of the ring body itself.
    coupling : float
        Delta-potential strength lambda >= 0.
    """

    radius: float
    light_speed: float
    hbar: float
    classical_inertia: float
    coupling: float

    @property
    def lambda_hat(self) -> float:
        """Dimensionless coupling lambda R^2 / c^2."""
        return self.coupling * self.radius**2 / self.light_speed**2

    @property
    def inertia_hat(self) -> float:
        """Dimensionless classical inertia I c / (hbar R)."""
        return self.classical_inertia * self.light_speed / (self.hbar * self.radius)


@dataclass(frozen=True)
class ModelPoint:
    """A point (beta, lambda_hat) of the dimensionless parameter space.

    ``abs(beta) == 1`` is representable because a few closed-form limit
    expressions are defined there, but every quadrature-backed operation
    requires ``abs(beta) < 1`` and raises :class:`DomainError` otherwise.
    ``lambda_hat == inf`` denotes the Dirichlet (impenetrable) limit and is
    routed to closed forms by the operations that support it.
    """

    beta: float
    lambda_hat: float

    def __post_init__(self) -> None:
        if math.isnan(self.beta) or math.isinf(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta!r}")
        if abs(self.beta) > 1.0:
            raise DomainError(f"need |beta| <= 1, got beta={self.beta!r}")
        if math.isnan(self.lambda_hat) or self.lambda_hat < 0.0:
            raise DomainError(f"need lambda_hat >= 0, got {self.lambda_hat!r}")

    @property
    def dirichlet(self) -> bool:
        """True when the coupling is infinite (impenetrable barrier)."""
        return math.isinf(self.lambda_hat)


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value <= 0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def _require_nonnegative(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value < 0:
        raise DomainError(f"{name} must be a nonnegative finite number, got {value!r}")


def make_config(
    radius: float,
    light_speed: float = 1.0,
    hbar: float = 1.0,
    classical_inertia: float = 0.0,
    coupling: float = 0.0,
) -> RingConfig:
    """Validate physical inputs and build a :class:`RingConfig`.

    Raises
    ------
    DomainError
        If any argument is nonfinite, if radius/light_speed/hbar are not
        strictly positive, or if classical_inertia or coupling is negative.
        The message names the offending field.
    """
    _require_positive("radius", radius)
    _require_positive("light_speed", light_speed)
    _require_positive("hbar", hbar)
    _require_nonnegative("classical_inertia", classical_inertia)
    _require_nonnegative("coupling", coupling)
    return RingConfig(
        radius=float(radius),
        light_speed=float(light_speed),
        hbar=float(hbar),
        classical_inertia=float(classical_inertia),
        coupling=float(coupling),
    )


def model_point(config: RingConfig, omega: float, allow_light_speed: bool = False) -> ModelPoint:
    """Map a rotation frequency to a dimensionless model point.

    Parameters
    ----------
    config : RingConfig
    omega : float
        Angular frequency of the ring, same time units as ``light_speed``.
    allow_light_speed : bool
        Permit ``|omega| R = c`` exactly.  The rim moving at the speed of
        light is meaningful only for the closed-form bound expressions, so
        it must be requested explicitly.
    """
    if not math.isfinite(omega):
        raise DomainError(f"omega must be finite, got {omega!r}")
    beta = omega * config.radius / config.light_speed
    if abs(beta) > 1.0:
        raise DomainError(
            f"rim speed exceeds the speed of light: |beta| = {abs(beta):.6g} > 1"
        )
    if abs(beta) == 1.0 and not allow_light_speed:
        raise DomainError(
            "|beta| = 1 reached; pass allow_light_speed=True if the "
            "light-speed bound is really what you want"
        )
    return ModelPoint(beta=beta, lambda_hat=config.lambda_hat)


# Scale factors that carry one dimensionless result back to physical units.
UNIT_SCALES = {
    "energy": lambda c: c.hbar * c.light_speed / c.radius,
    "angular_momentum": lambda c: c.hbar,
    "inertia": lambda c: c.hbar * c.radius / c.light_speed,
    "frequency": lambda c: c.light_speed / c.radius,
}


def _scale(config: RingConfig, kind: str) -> float:
    try:
        return UNIT_SCALES[kind](config)
    except KeyError:
        raise DomainError(
            f"unknown quantity kind {kind!r}; expected one of {sorted(UNIT_SCALES)}"
        ) from None


def to_physical(config: RingConfig, value: float, kind: str) -> float:
    """Convert a dimensionless result to physical units.

    ``kind`` selects the scale: ``energy`` (hbar c / R), ``angular_momentum``
    (hbar), ``inertia`` (hbar R / c) or ``frequency`` (c / R).
    """
    return value * _scale(config, kind)


def from_physical(config: RingConfig, value: float, kind: str) -> float:
    """Inverse of :func:`to_physical`."""
    return value / _scale(config, kind)
