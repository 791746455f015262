"""Fixed-step classical RK4 reference for the cone angle.

Deliberately shares nothing with the adaptive path except the shock jump: the
derivatives come from solving the 3x3 conservation system (mass, radial
velocity, theta-momentum with p differentiated through the state law) by
Cramer's rule, rather than from the closed-form right-hand side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import NoConeFound, SonicSingularity
from .gas import GasParameters
from .shock import shock_jump


def _det3(a):
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def conservation_rhs(theta, rho, u, w, params: GasParameters):
    """(rho', u', w') from T * U' = B assembled straight from the conservation laws."""
    k = params.kappa
    h = params.E0 - 0.5 * (u * u + w * w)
    p_rho, p_u, p_w = k * h, -k * rho * u, -k * rho * w
    cot = math.cos(theta) / math.sin(theta)
    T = [
        [u, rho, 0.0],
        [0.0, 0.0, 1.0],
        [p_rho, rho * u + p_u, p_w],
    ]
    B = [-rho * u * cot - 2.0 * rho * w, u, -rho * w * u]
    d = _det3(T)
    if d == 0.0:
        raise SonicSingularity(f"singular conservation matrix at theta = {theta!r}")
    out = []
    for j in range(3):
        Tj = [row[:] for row in T]
        for i in range(3):
            Tj[i][j] = B[i]
        out.append(_det3(Tj) / d)
    return out


def _rk4_step(theta, y, h, params):
    f = conservation_rhs
    k1 = f(theta, *y, params)
    y2 = [y[i] + 0.5 * h * k1[i] for i in range(3)]
    k2 = f(theta + 0.5 * h, *y2, params)
    y3 = [y[i] + 0.5 * h * k2[i] for i in range(3)]
    k3 = f(theta + 0.5 * h, *y3, params)
    y4 = [y[i] + h * k3[i] for i in range(3)]
    k4 = f(theta + h, *y4, params)
    return [y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) for i in range(3)]


@dataclass(frozen=True)
class OracleResult:
    theta_cone: float
    rho: float
    w: float
    n_steps: int


def rk4_cone_angle(
    beta: float,
    params: GasParameters,
    h: float = 1e-6,
    crossing: str = "linear",
    theta_floor: float = 1e-4,
) -> OracleResult:
    """March with fixed step ``h`` from beta until u >= 0.

    ``crossing="linear"`` interpolates the zero of u between the last two
    nodes.  ``crossing="step"`` instead solves for the partial RK4 step that
    lands exactly on u = 0, which keeps the O(h^4) error structure intact and
    is what convergence-order studies should use.
    """
    if crossing not in ("linear", "step"):
        raise ValueError(f"unknown crossing mode {crossing!r}")
    s0 = shock_jump(beta, params).state
    y = [s0.rho, s0.u, s0.w]
    theta = beta
    n = 0
    while True:
        y_new = _rk4_step(theta, y, -h, params)
        n += 1
        if y_new[1] >= 0.0:
            break
        y = y_new
        theta = beta - n * h
        if theta - h < theta_floor:
            raise NoConeFound(f"oracle reached theta_floor with u = {y[1]:.3e}")
    if crossing == "linear":
        frac = -y[1] / (y_new[1] - y[1])
        theta_c = theta - frac * h
        return OracleResult(
            theta_c, y[0] + frac * (y_new[0] - y[0]), y[2] + frac * (y_new[2] - y[2]), n
        )
    s = brentq(lambda s: _rk4_step(theta, y, -s, params)[1], 0.0, h, xtol=1e-17, rtol=1e-15)
    y_c = _rk4_step(theta, y, -s, params)
    return OracleResult(theta - s, y_c[0], y_c[2], n)
