"""Vacuum energy and angular momentum of a scalar field on a rotating ring.

A massless scalar field lives on a circle of radius R and interacts with a
delta-function potential of strength lambda that co-rotates with the ring at
angular frequency Omega.  Working in units hbar = c = R = 1, this package
computes

* the Bloch-mode spectrum of the co-rotating field and the mode functions
  with their defect diagnostics,
* the co-rotating vacuum (Casimir) energy and its free and impenetrable
  limits,
* the zero-point angular momentum, the zero-point moment of inertia and the
  closed-form bounds that pin both,
* stationary-frame energies and the rotation rate belonging to a prescribed
  total angular momentum.

The command line entry point ``ringvac`` exposes the same operations and can
render the sweep tables as figures.
"""

from .errors import DomainError, ModelViolationError, NumericalError, RingvacError
from .params import (
    UNIT_SCALES,
    ModelPoint,
    RingConfig,
    from_physical,
    make_config,
    model_point,
    to_physical,
)
from .numerics import (
    Bracket,
    QuadratureResult,
    bracket_roots,
    derivative,
    integrate_semi_infinite,
    refine_root,
)
from .spectrum import (
    ModeFunction,
    ModeSpectrum,
    ResidualReport,
    inner_products,
    mode_frequencies,
    mode_function,
    mode_residuals,
    secular_value,
    spectrum_modes,
)
from .energy import (
    EnergyResult,
    casimir_energy_corotating,
    casimir_integrand,
    casimir_limit_dirichlet,
    casimir_limit_free,
    corotating_total_energy,
)
from .rotation import (
    AngularLedger,
    GroundStateReport,
    angular_ledger,
    ell_zp,
    ell_zp_bound,
    ell_zp_integrand,
    ell_zp_quadrature,
    ground_state_report,
    inertia_zp,
    inertia_zp_estimate,
    izp_lightspeed_bound,
    omega_of_ell,
    renormalized_inertia,
    stationary_energy,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RingvacError",
    "DomainError",
    "NumericalError",
    "ModelViolationError",
    "RingConfig",
    "ModelPoint",
    "make_config",
    "model_point",
    "to_physical",
    "from_physical",
    "UNIT_SCALES",
    "QuadratureResult",
    "Bracket",
    "integrate_semi_infinite",
    "bracket_roots",
    "refine_root",
    "derivative",
    "secular_value",
    "ModeSpectrum",
    "mode_frequencies",
    "ModeFunction",
    "mode_function",
    "spectrum_modes",
    "ResidualReport",
    "mode_residuals",
    "inner_products",
    "EnergyResult",
    "casimir_integrand",
    "casimir_energy_corotating",
    "corotating_total_energy",
    "casimir_limit_free",
    "casimir_limit_dirichlet",
    "AngularLedger",
    "GroundStateReport",
    "angular_ledger",
    "ell_zp_integrand",
    "ell_zp_quadrature",
    "ell_zp",
    "inertia_zp",
    "inertia_zp_estimate",
    "izp_lightspeed_bound",
    "ell_zp_bound",
    "stationary_energy",
    "omega_of_ell",
    "renormalized_inertia",
    "ground_state_report",
]
