"""Normalized incoming flow and pointwise polytropic thermodynamics.

Everything is nondimensional: density by rho_inf, velocity by |V_inf|,
pressure by rho_inf*|V_inf|^2 and enthalpy by |V_inf|^2.  The incoming state
is then rho0 = 1, |V0| = 1, and the only free parameters are
epsilon = gamma - 1 and the total enthalpy E0 > 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonPhysical

PRESSURE_FLOOR = 1e-300


@dataclass(frozen=True)
class GasParameters:
    epsilon: float
    gamma: float
    E0: float
    Eprime: float
    p0: float
    M0: float

    @property
    def kappa(self) -> float:
        """epsilon/(epsilon+1), the prefactor of the state law."""
        return self.epsilon / (self.epsilon + 1.0)

    @property
    def c0_sq(self) -> float:
        return self.gamma * self.p0


def derive_parameters(epsilon: float, E0: float = 1.0) -> GasParameters:
    """Build the normalized parameter set from epsilon and E0.

    p0 = eps/(eps+1) * (E0 - 1/2) and M0 = 1/sqrt(eps*(E0 - 1/2)), so
    epsilon -> 0 at fixed E0 is the hypersonic limit M0 -> infinity.
    """
    if not (epsilon > 0.0) or not math.isfinite(epsilon):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon!r}")
    if not (E0 > 0.5) or not math.isfinite(E0):
        raise DomainError(f"E0 must exceed 1/2, got {E0!r}")
    Eprime = E0 - 0.5
    p0 = (epsilon / (epsilon + 1.0)) * Eprime
    M0 = 1.0 / math.sqrt(epsilon * Eprime)
    return GasParameters(
        epsilon=epsilon, gamma=1.0 + epsilon, E0=E0, Eprime=Eprime, p0=p0, M0=M0
    )


def pressure(rho: float, speed_sq: float, params: GasParameters) -> float:
    """p = eps/(eps+1) * rho * (E0 - |V|^2/2), with E fixed at E0."""
    if not rho > 0.0:
        raise NonPhysical(f"density must be positive, got {rho!r}")
    if speed_sq >= 2.0 * params.E0:
        raise NonPhysical(
            f"|V|^2 = {speed_sq!r} >= 2*E0 = {2.0 * params.E0!r}: no thermal energy left"
        )
    p = params.kappa * rho * (params.E0 - 0.5 * speed_sq)
    if p < PRESSURE_FLOOR:
        raise NonPhysical(f"pressure {p!r} below floor")
    return p


@dataclass(frozen=True)
class FlowState:
    """Flow variables at polar angle theta; p and c are filled in on construction.

    ``u`` is the component along the unit vector d/dtheta and ``w`` the radial
    component.  With this orientation the free stream has u0 = -sin(theta).
    """

    theta: float
    rho: float
    u: float
    w: float
    p: float
    c: float

    @classmethod
    def from_primitive(
        cls, theta: float, rho: float, u: float, w: float, params: GasParameters
    ) -> "FlowState":
        p = pressure(rho, u * u + w * w, params)
        c = math.sqrt(params.gamma * p / rho)
        return cls(theta=theta, rho=rho, u=u, w=w, p=p, c=c)

    @property
    def speed_sq(self) -> float:
        return self.u * self.u + self.w * self.w

    @property
    def Mn(self) -> float:
        return abs(self.u) / self.c

    @property
    def qperp(self) -> float:
        # velocity component perpendicular to the cone axis
        return self.w * math.sin(self.theta) + self.u * math.cos(self.theta)


def upstream_state(theta: float, params: GasParameters) -> FlowState:
    """The uniform incoming flow (1, 0, 0) seen at polar angle theta."""
    return FlowState.from_primitive(theta, 1.0, -math.sin(theta), math.cos(theta), params)


def entropy_invariant(state: FlowState, params: GasParameters) -> float:
    return state.p / state.rho ** (1.0 + params.epsilon)
