"""Inverse conical-flow problem: march from a given shock angle down to the cone.

Behind the shock the state (rho, u, w) obeys

    rho' = rho u (u cot(theta) + w) / (c^2 - u^2)
    u'   = (u^2 w - c^2 (u cot(theta) + 2 w)) / (c^2 - u^2)
    w'   = u

with p and c recomputed from the state law at every evaluation.  The cone
surface is the first angle below beta where u returns to zero.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np
from scipy.integrate import DOP853, OdeSolution
from scipy.optimize import brentq

from .errors import (
    DomainError,
    InvariantRegionExit,
    NoConeFound,
    NonPhysical,
    SonicSingularity,
)
from .gas import FlowState, GasParameters, entropy_invariant
from .shock import shock_jump

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegratorOptions:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    u_tol: float = 1e-12
    # relative to c^2 at the shock
    det_floor: float = 1e-12
    max_steps: int = 100_000
    theta_floor: float = 1e-4
    # relative slack on invariant-region and monotonicity checks
    region_tol: float = 1e-9
    # step cap = (a-priori layer thickness |u(beta)|/cos(beta)) / min_grid_steps
    min_grid_steps: int = 32

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "u_tol", "det_floor", "region_tol"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive")
        if self.max_steps < 1 or self.min_grid_steps < 1:
            raise DomainError("max_steps and min_grid_steps must be at least 1")
        if self.theta_floor < 0.0:
            raise DomainError("theta_floor must be nonnegative")


def rhs(
    theta: float, rho: float, u: float, w: float, params: GasParameters, det_floor: float = 0.0
) -> tuple[float, float, float]:
    """Derivatives (rho', u', w') with respect to theta."""
    kappa = params.kappa
    h = params.E0 - 0.5 * (u * u + w * w)
    # c^2 = gamma p / rho = eps (E0 - |V|^2/2)
    c2 = (params.gamma * kappa) * h
    det = c2 - u * u
    if det <= det_floor:
        raise SonicSingularity(
            f"c^2 - u^2 = {det:.3e} <= floor {det_floor:.3e} at theta = {theta!r}"
        )
    cot = math.cos(theta) / math.sin(theta)
    drho = rho * u * (u * cot + w) / det
    du = (u * u * w - c2 * (u * cot + 2.0 * w)) / det
    return drho, du, u


@dataclass(frozen=True)
class FieldDiagnostics:
    entropy_drift: float
    min_det: float
    n_steps: int
    n_rhs: int
    event_residual: float
    a_priori_bound: float


@dataclass(frozen=True)
class ConicalField:
    """Solved flow between the shock (grid[0]) and the cone (grid[-1])."""

    params: GasParameters
    beta: float
    theta_cone: float
    grid: tuple[FlowState, ...]
    surface_pressure: float
    diagnostics: FieldDiagnostics
    # theta (scalar or array) -> array of shape (3,) or (3, n): rho, u, w
    dense: Callable[[np.ndarray], np.ndarray] = dc_field(repr=False, compare=False)

    def evaluate(self, theta):
        """Dense (rho, u, w) at arbitrary angles inside [theta_cone, beta]."""
        return self.dense(theta)

    def arrays(self) -> dict[str, np.ndarray]:
        keys = ("theta", "rho", "u", "w", "p", "c", "Mn", "qperp")
        return {k: np.array([getattr(s, k) for s in self.grid]) for k in keys}

    def breakpoints(self) -> np.ndarray:
        """Grid angles in increasing order (segment ends for quadrature)."""
        return np.array([s.theta for s in reversed(self.grid)])


class _RegionGuard:
    """Invariant-region box built from the post-shock state."""

    def __init__(self, s0: FlowState, params: GasParameters, tol: float):
        self.tol = tol
        self.rho_lo = s0.rho
        eps = params.epsilon
        # rho^(gamma-1) < eps E0 rho_b^gamma / ((eps+1) p_b)
        self.rho_pow_hi = eps * params.E0 * s0.rho ** params.gamma / ((eps + 1.0) * s0.p)
        self.u_lo = s0.u
        self.w_lo = s0.w
        self.w_hi = 2.0 * params.E0
        self.c_lo = s0.c
        self.c2_hi = eps * params.E0
        self.eps = eps

    def check(self, s: FlowState, prev: FlowState) -> None:
        tol = self.tol
        problems = []
        if s.rho < self.rho_lo * (1.0 - tol) or s.rho**self.eps > self.rho_pow_hi * (1.0 + tol):
            problems.append(f"rho = {s.rho!r}")
        if not (self.u_lo - tol * abs(self.u_lo) <= s.u < 0.0):
            problems.append(f"u = {s.u!r}")
        if not (self.w_lo - tol <= s.w < self.w_hi):
            problems.append(f"w = {s.w!r}")
        if s.c < self.c_lo * (1.0 - tol) or s.c * s.c >= self.c2_hi:
            problems.append(f"c = {s.c!r}")
        if not s.Mn < 1.0:
            problems.append(f"Mn = {s.Mn!r}")
        # marching toward the cone: rho, w, c grow and u rises toward zero
        if s.rho < prev.rho * (1.0 - tol) or s.w < prev.w - tol or s.u < prev.u - tol * abs(prev.u):
            problems.append("monotonicity")
        if problems:
            raise InvariantRegionExit(
                f"state left the invariant region at theta = {s.theta!r}: " + ", ".join(problems)
            )


def integrate_inverse(
    beta: float, params: GasParameters, opts: IntegratorOptions | None = None
) -> ConicalField:
    """Solve the inverse problem for shock half-angle ``beta``.

    Integrates in decreasing theta from the post-shock state until u changes
    sign, then locates the crossing on the dense output.  Raises NoConeFound
    when theta_floor is reached first.
    """
    opts = opts or IntegratorOptions()
    post = shock_jump(beta, params)
    s0 = post.state
    det_floor = opts.det_floor * s0.c**2
    bound = abs(s0.u) / math.cos(beta)
    counter = [0]

    def fun(t, y):
        counter[0] += 1
        return np.array(rhs(t, y[0], y[1], y[2], params, det_floor))

    solver = DOP853(
        fun,
        beta,
        np.array([s0.rho, s0.u, s0.w]),
        t_bound=opts.theta_floor,
        rtol=opts.rel_tol,
        atol=opts.abs_tol,
        max_step=bound / opts.min_grid_steps,
    )
    guard = _RegionGuard(s0, params, opts.region_tol)
    states = [s0]
    ts = [beta]
    interpolants = []
    theta_cone = None
    n_steps = 0
    while theta_cone is None:
        if n_steps >= opts.max_steps:
            raise NoConeFound(f"step budget {opts.max_steps} exhausted at theta = {solver.t!r}")
        message = solver.step()
        n_steps += 1
        if solver.status == "failed":
            raise InvariantRegionExit(f"integrator failed at theta = {solver.t!r}: {message}")
        interp = solver.dense_output()
        ts.append(solver.t)
        interpolants.append(interp)
        y = solver.y
        if y[1] >= 0.0:
            t_hi = solver.t_old
            theta_cone = solver.t if y[1] == 0.0 else brentq(
                lambda th: interp(th)[1], solver.t, t_hi, xtol=1e-16, rtol=4 * np.finfo(float).eps
            )
            break
        try:
            s = FlowState.from_primitive(solver.t, y[0], y[1], y[2], params)
        except NonPhysical as exc:
            raise InvariantRegionExit(str(exc)) from exc
        guard.check(s, states[-1])
        states.append(s)
        if solver.status == "finished":
            raise NoConeFound(
                f"u = {y[1]:.3e} < 0 down to theta_floor = {opts.theta_floor!r} "
                f"(beta = {math.degrees(beta):.4f} deg, eps = {params.epsilon:g})"
            )

    dense = OdeSolution(ts, interpolants)
    rho_c, u_c, w_c = dense(theta_cone)
    if abs(u_c) > opts.u_tol:
        raise InvariantRegionExit(f"event refinement left |u| = {abs(u_c):.3e} > u_tol")
    try:
        cone_state = FlowState.from_primitive(theta_cone, float(rho_c), 0.0, float(w_c), params)
    except NonPhysical as exc:
        raise InvariantRegionExit(str(exc)) from exc
    if cone_state.rho < states[-1].rho * (1.0 - opts.region_tol):
        raise InvariantRegionExit("density decreased across the final step")
    states.append(cone_state)

    if beta - theta_cone > bound + opts.u_tol:
        raise InvariantRegionExit(
            f"beta - theta_cone = {beta - theta_cone!r} exceeds a-priori bound {bound!r}"
        )
    k0 = entropy_invariant(s0, params)
    drift = max(abs(entropy_invariant(s, params) - k0) for s in states) / k0
    diagnostics = FieldDiagnostics(
        entropy_drift=drift,
        min_det=min(s.c * s.c - s.u * s.u for s in states),
        n_steps=n_steps,
        n_rhs=counter[0],
        event_residual=float(abs(u_c)),
        a_priori_bound=bound,
    )
    log.debug(
        "inverse beta=%.8f eps=%g -> theta_cone=%.10f (%d steps)",
        beta, params.epsilon, theta_cone, n_steps,
    )
    return ConicalField(
        params=params,
        beta=beta,
        theta_cone=float(theta_cone),
        grid=tuple(states),
        surface_pressure=cone_state.p,
        diagnostics=diagnostics,
        dense=dense,
    )


@dataclass(frozen=True)
class Violation:
    quantity: str
    index: int
    magnitude: float


@dataclass(frozen=True)
class MonotonicityReport:
    violations: tuple[Violation, ...]
    counts: dict
    qperp_positive: bool

    @property
    def ok(self) -> bool:
        return not self.violations and self.qperp_positive


# expected sign of d(quantity)/d(theta) behind the shock
_EXPECTED_SLOPE = {
    "rho": -1,
    "u": -1,
    "w": -1,
    "c": -1,
    "p": -1,
    "Mn": +1,
    "qperp": -1,
}


def monotonicity_report(field: ConicalField, rel_tol: float = 1e-12) -> MonotonicityReport:
    """Check the monotone profiles on the grid ordered by increasing theta.

    rho, p, w, c, u and the axial velocity qperp decrease with theta; the
    tangential Mach number increases with theta.  Differences smaller than
    ``rel_tol`` times the quantity's magnitude are ignored.
    """
    grid = list(reversed(field.grid))
    first = []
    counts = {}
    for name, slope in _EXPECTED_SLOPE.items():
        values = np.array([getattr(s, name) for s in grid])
        counts[name] = 0
        if len(values) < 2:
            continue
        steps = slope * np.diff(values)
        slack = rel_tol * max(float(np.max(np.abs(values))), 1e-300)
        bad = np.nonzero(steps < -slack)[0]
        counts[name] = int(bad.size)
        if bad.size:
            first.append(Violation(name, int(bad[0]), float(-steps[bad[0]])))
    qperp_positive = all(s.qperp > 0.0 for s in grid)
    return MonotonicityReport(violations=tuple(first), counts=counts, qperp_positive=qperp_positive)
