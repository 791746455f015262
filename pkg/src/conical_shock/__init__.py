"""Self-similar supersonic flow past a circular cone, and its hypersonic limit.

The polytropic problem is solved by shooting on the shock half-angle with an
adaptive Taylor-Maccoll integrator; the Newtonian limit is represented as a
Radon measure solution with a mass concentration on the cone surface.
"""
from .direct import (
    DirectSolution,
    SweepConfig,
    SweepRecord,
    SweepResult,
    cone_angle_map,
    epsilon_star,
    gap_bound,
    hypersonic_sweep,
    solve_direct,
)
from .errors import (
    ConicalFlowError,
    DegenerateShock,
    DomainError,
    InvariantRegionExit,
    KindMismatch,
    MonotonicityError,
    NoBracket,
    NoConeFound,
    NonPhysical,
    RegimeError,
    RegimeFailure,
    SonicSingularity,
    SubsonicNormal,
)
from .gas import FlowState, GasParameters, derive_parameters, entropy_invariant, pressure, upstream_state
from .measures import (
    ConvergenceReport,
    Family,
    RadonConeSolution,
    TestFunction,
    convergence_report,
    default_suite,
    limit_solution,
    mass_flux,
    pair_measure,
    velocity_ratio_bound,
)
from .oracle import rk4_cone_angle
from .shock import (
    ChaplyginParameters,
    PostShockState,
    RHResidual,
    chaplygin_concentration_regime,
    chaplygin_shock_angle,
    chaplygin_surface_pressure,
    shock_jump,
    verify_rankine_hugoniot,
)
from .taylor_maccoll import (
    ConicalField,
    IntegratorOptions,
    MonotonicityReport,
    integrate_inverse,
    monotonicity_report,
    rhs,
)

__version__ = "0.1.0"
