"""Jump conditions across the attached conical shock, plus the Chaplygin results.

Polytropic post-shock state at theta = beta (rho0 = 1)::

    rho = (eps+2) M0n^2 / (2 + eps M0n^2)
    u   = -(2 + eps M0n^2) / ((eps+2) M0n^2) * sin(beta)
    p   = (2(eps+1) M0n^2 - eps) / (2 + eps) * p0
    w   = cos(beta),  E = E0

with M0n = M0 sin(beta) the normal upstream Mach number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateShock, DomainError, RegimeError, SubsonicNormal
from .gas import FlowState, GasParameters

# |M0n^2 - 1| below this is treated as the sonic (degenerate) jump
SONIC_TOL = 1e-12


@dataclass(frozen=True)
class PostShockState:
    beta: float
    state: FlowState
    M0n: float
    Mn_sq: float
    p_closed_form: float


@dataclass(frozen=True)
class RHResidual:
    """Residuals of the raw jump equations, upstream minus downstream."""

    mass: float
    energy: float
    radial_momentum: float
    normal_momentum: float
    azimuthal: float
    entropy_ok: bool

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.mass, self.energy, self.radial_momentum, self.normal_momentum, self.azimuthal]
        )

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.as_array())))


def normal_mach_sq(beta: float, params: GasParameters) -> float:
    """M0n^2 = sin^2(beta) / (E' eps)."""
    return math.sin(beta) ** 2 / (params.Eprime * params.epsilon)


def shock_jump(beta: float, params: GasParameters, *, allow_degenerate: bool = False) -> PostShockState:
    """Post-shock state for a shock of half-angle ``beta``.

    Raises SubsonicNormal when M0n < 1 and DegenerateShock (a subclass) when
    M0n == 1 to rounding, unless ``allow_degenerate`` is set, in which case the
    continuous sonic transition is returned.
    """
    if not (0.0 < beta < 0.5 * math.pi):
        raise DomainError(f"shock angle must lie in (0, pi/2), got {beta!r}")
    eps = params.epsilon
    m2 = normal_mach_sq(beta, params)
    if abs(m2 - 1.0) <= SONIC_TOL:
        if not allow_degenerate:
            raise DegenerateShock(
                f"M0n = 1 at beta = {math.degrees(beta):.6f} deg: no entropy-increasing jump"
            )
        m2 = 1.0
    elif m2 < 1.0:
        raise SubsonicNormal(
            f"M0n^2 = {m2:.6g} <= 1 at beta = {math.degrees(beta):.6f} deg, eps = {eps:g}: "
            "no attached shock"
        )
    sb, cb = math.sin(beta), math.cos(beta)
    ratio = (2.0 + eps * m2) / ((eps + 2.0) * m2)
    rho = 1.0 / ratio
    u = -ratio * sb
    w = cb
    p_cf = (2.0 * (eps + 1.0) * m2 - eps) / (2.0 + eps) * params.p0
    Mn_sq = (m2 + 2.0 / eps) / (2.0 * (eps + 1.0) / eps * m2 - 1.0)
    state = FlowState.from_primitive(beta, rho, u, w, params)
    return PostShockState(beta=beta, state=state, M0n=math.sqrt(m2), Mn_sq=Mn_sq, p_closed_form=p_cf)


def verify_rankine_hugoniot(post: PostShockState, params: GasParameters) -> RHResidual:
    """Residuals of the raw jump equations at theta = beta.

    The downstream pressure is the one carried by ``post.state`` (i.e. from the
    state law), so a corrupted density also shows up in the momentum balance.
    """
    beta = post.beta
    s = post.state
    rho0, u0, w0 = 1.0, -math.sin(beta), math.cos(beta)
    E0 = params.E0
    return RHResidual(
        mass=rho0 * u0 - s.rho * s.u,
        energy=rho0 * u0 * E0 - s.rho * s.u * E0,
        radial_momentum=rho0 * w0 * u0 - s.rho * s.w * s.u,
        normal_momentum=(s.p + s.rho * s.u**2) - (params.p0 + rho0 * u0**2),
        # neither side has an azimuthal velocity component
        azimuthal=rho0 * u0 * 0.0 + s.rho * s.u * 0.0,
        entropy_ok=s.p - params.p0 > 1e-12 * params.p0,
    )


# -- Chaplygin gas, p = A - B/rho ------------------------------------------


@dataclass(frozen=True)
class ChaplyginParameters:
    A: float
    B: float
    M0: float
    rho0: float = 1.0

    def __post_init__(self):
        for name in ("A", "B", "M0", "rho0"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive, got {value!r}")


# M0*sin(theta0) >= 1 - BOUNDARY_TOL counts as the critical case M0 = 1/sin(theta0)
BOUNDARY_TOL = 1e-12


def chaplygin_shock_angle(M0: float) -> float:
    """Half-angle of the leading discontinuity, arctan(1/sqrt(M0^2 - 1)).

    It does not depend on the cone angle.
    """
    if not M0 > 1.0:
        raise DomainError(f"Chaplygin discontinuity needs M0 > 1, got {M0!r}")
    if math.isinf(M0):
        return 0.0
    return math.atan(1.0 / math.sqrt(M0 * M0 - 1.0))


def chaplygin_concentration_regime(theta0: float, M0: float) -> bool:
    """True when M0 >= 1/sin(theta0), i.e. a Dirac layer forms on the cone."""
    return M0 * math.sin(theta0) >= 1.0 - BOUNDARY_TOL


def chaplygin_surface_pressure(theta0: float, chap: ChaplyginParameters) -> float:
    """W_C = sin^2(theta0) - 1/(rho0 M0^2), valid for M0 >= 1/sin(theta0)."""
    if not (0.0 < theta0 < 0.5 * math.pi):
        raise DomainError(f"cone angle must lie in (0, pi/2), got {theta0!r}")
    if not chaplygin_concentration_regime(theta0, chap.M0):
        raise RegimeError(
            f"M0 = {chap.M0:g} < 1/sin(theta0) = {1.0 / math.sin(theta0):g}: "
            "attached discontinuity regime, no concentration layer"
        )
    wc = math.sin(theta0) ** 2 - 1.0 / (chap.rho0 * chap.M0**2)
    if -1e-14 < wc < 0.0:
        # rounding at the critical Mach number
        wc = 0.0
    return wc
