"""Direct problem: find the shock angle for a given cone, and epsilon sweeps.

The map T: beta -> theta_cone is only known to be continuous, so the root of
T(beta) - theta0 is found by bracketing and bisection.
"""
from __future__ import annotations

import logging
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import (
    ConicalFlowError,
    DomainError,
    InvariantRegionExit,
    MonotonicityError,
    NoBracket,
    RegimeFailure,
)
from .gas import GasParameters, derive_parameters
from .taylor_maccoll import ConicalField, IntegratorOptions, integrate_inverse

log = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi
BETA_CAP = HALF_PI * (1.0 - 1e-3)


def cone_angle_map(beta: float, params: GasParameters, opts: IntegratorOptions | None = None) -> float:
    return integrate_inverse(beta, params, opts).theta_cone


def epsilon_star(beta_star: float, beta_upper: float, Eprime: float) -> float:
    """Threshold below which every shock angle in (beta_star, beta_upper) has a cone.

    min{ sin^2 b_* / E',  b_* sin^2 b_* / ((2E' + sin^2 b^*) tan b^*) }
    """
    if not (0.0 < beta_star < beta_upper < HALF_PI):
        raise DomainError("need 0 < beta_star < beta_upper < pi/2")
    if not Eprime > 0.0:
        raise DomainError("Eprime must be positive")
    s2 = math.sin(beta_star) ** 2
    first = s2 / Eprime
    second = beta_star * s2 / ((2.0 * Eprime + math.sin(beta_upper) ** 2) * math.tan(beta_upper))
    return min(first, second)


def gap_bound(theta0: float, beta: float, params: GasParameters) -> float:
    """Linear-in-epsilon bound on beta - theta0 with beta as the upper angle."""
    eps, Ep = params.epsilon, params.Eprime
    return eps * (2.0 * Ep + math.sin(beta) ** 2) / (2.0 * math.sin(theta0) ** 2) * math.tan(beta)


@dataclass(frozen=True)
class DirectSolution:
    theta0: float
    beta: float
    field: ConicalField
    residual: float
    iterations: int


def _check_theta0(theta0: float) -> None:
    if not (0.0 < theta0 < HALF_PI):
        raise DomainError(f"cone angle must lie in (0, pi/2), got {theta0!r}")


def solve_direct(
    theta0: float,
    params: GasParameters,
    opts: IntegratorOptions | None = None,
    angle_tol: float = 1e-8,
    max_iter: int = 200,
) -> DirectSolution:
    """Shock angle beta0 with T(beta0) = theta0, by bisection.

    The lower end starts just above the cone, beta_lo = theta0 + max(1e-6,
    0.01*theta0), and is pulled toward theta0 if T(beta_lo) is not yet below
    theta0.  The upper end starts at the midpoint of (theta0, pi/2) and moves
    geometrically toward pi/2 until T(beta_hi) > theta0.  Whichever bracket
    is found first is bisected; uniqueness of the root is not known.
    """
    _check_theta0(theta0)
    if not angle_tol > 0.0:
        raise DomainError("angle_tol must be positive")
    opts = opts or IntegratorOptions()

    def T(beta):
        return integrate_inverse(beta, params, opts)

    def regime(msg):
        return NoBracket(
            f"no bracket for theta0 = {math.degrees(theta0):.6f} deg at eps = {params.epsilon:g} "
            f"(M0 = {params.M0:.4g}): {msg}; the attached-shock regime does not apply"
        )

    # lower end; below the Mach angle asin(1/M0) there is no attached shock
    if params.M0 <= 1.0:
        raise regime("upstream flow is not supersonic")
    mach_angle = math.asin(1.0 / params.M0)
    delta = max(1e-6, 0.01 * theta0)
    while True:
        beta_lo = max(theta0 + delta, mach_angle * (1.0 + 1e-6))
        try:
            f_lo = T(beta_lo).theta_cone - theta0
        except RegimeFailure as exc:
            raise regime(str(exc)) from exc
        if f_lo < 0.0:
            break
        if beta_lo > theta0 + delta:
            raise regime("T(beta) >= theta0 just above the Mach angle")
        delta *= 0.5
        if delta < 1e-12:
            raise regime("T(beta) >= theta0 arbitrarily close to the cone")

    # upper end
    beta_hi = 0.5 * (theta0 + HALF_PI)
    f_hi = None
    last_error = None
    for _ in range(60):
        try:
            f_hi = T(beta_hi).theta_cone - theta0
        except RegimeFailure as exc:
            last_error = exc
            f_hi = None
        if f_hi is not None and f_hi > 0.0:
            break
        if BETA_CAP - beta_hi < 1e-12:
            break
        beta_hi = beta_hi + 0.5 * (BETA_CAP - beta_hi)
    if f_hi is None or not f_hi > 0.0:
        detail = f"last failure: {last_error}" if last_error else "T(beta) <= theta0 up to pi/2"
        raise regime(detail)

    iterations = 0
    best = None
    while True:
        mid = 0.5 * (beta_lo + beta_hi)
        field = T(mid)
        f_mid = field.theta_cone - theta0
        iterations += 1
        if best is None or abs(f_mid) < abs(best[1]):
            best = (mid, f_mid, field)
        if f_mid < 0.0:
            beta_lo = mid
        else:
            beta_hi = mid
        if (beta_hi - beta_lo < angle_tol and abs(best[1]) < angle_tol) or f_mid == 0.0:
            break
        if iterations >= max_iter:
            raise ConicalFlowError(f"bisection did not converge in {max_iter} iterations")

    beta0, residual, field = best[0], abs(best[1]), best[2]
    bound = gap_bound(theta0, beta0, params)
    if beta0 - theta0 > bound:
        raise InvariantRegionExit(
            f"beta0 - theta0 = {beta0 - theta0!r} exceeds the a-priori bound {bound!r}"
        )
    log.info(
        "direct theta0=%.6f deg eps=%g: beta0=%.10f deg after %d bisections",
        math.degrees(theta0), params.epsilon, math.degrees(beta0), iterations,
    )
    return DirectSolution(theta0=theta0, beta=beta0, field=field, residual=residual, iterations=iterations)


# -- epsilon sweeps ------------------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    epsilon: float
    beta: float
    gap: float
    surface_pressure: float
    bound: float
    wall_time: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SweepConfig:
    angle_tol: float = 1e-8
    # relative slack on the monotone-in-epsilon checks
    slack: float = 0.05
    ratio_window: tuple[float, float] = (0.3, 0.7)
    # "error" raises MonotonicityError, "warn" only warns
    on_violation: str = "error"
    max_workers: int | None = None


@dataclass(frozen=True)
class SweepResult:
    theta0: float
    E0: float
    records: tuple[SweepRecord, ...]

    @property
    def newtonian(self) -> float:
        return math.sin(self.theta0) ** 2

    def solved(self) -> list[SweepRecord]:
        return [r for r in self.records if r.ok]

    def gap_ratios(self) -> list[float]:
        rs = self.solved()
        return [b.gap / a.gap for a, b in zip(rs, rs[1:])]

    def pressure_errors(self) -> list[float]:
        return [abs(r.surface_pressure - self.newtonian) for r in self.solved()]

    def gaps_monotone(self, slack: float = 0.05) -> bool:
        gaps = [r.gap for r in self.solved()]
        return all(b <= a * (1.0 + slack) for a, b in zip(gaps, gaps[1:]))

    def pressure_monotone(self, slack: float = 0.05) -> bool:
        errs = self.pressure_errors()
        return all(b <= a * (1.0 + slack) for a, b in zip(errs, errs[1:]))

    def bounds_hold(self) -> bool:
        return all(r.gap <= r.bound for r in self.solved())


def _sweep_one(theta0, eps, E0, opts, angle_tol):
    t0 = time.perf_counter()
    try:
        params = derive_parameters(eps, E0)
        sol = solve_direct(theta0, params, opts, angle_tol)
    except ConicalFlowError as exc:
        nan = float("nan")
        return SweepRecord(eps, nan, nan, nan, nan, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
    return SweepRecord(
        epsilon=eps,
        beta=sol.beta,
        gap=sol.beta - theta0,
        surface_pressure=sol.field.surface_pressure,
        bound=gap_bound(theta0, sol.beta, params),
        wall_time=time.perf_counter() - t0,
    )


def hypersonic_sweep(
    theta0: float,
    eps_list,
    E0: float = 1.0,
    opts: IntegratorOptions | None = None,
    config: SweepConfig | None = None,
) -> SweepResult:
    """Solve the direct problem along a descending epsilon ladder.

    Failures are recorded per rung.  Afterwards the gaps beta - theta0 and the
    distance of the surface pressure from sin^2(theta0) are checked to shrink
    along the ladder (with ``config.slack``); a violation raises
    MonotonicityError or warns, per ``config.on_violation``.  Gap ratios
    outside ``config.ratio_window`` only warn.
    """
    _check_theta0(theta0)
    config = config or SweepConfig()
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise DomainError("eps_list is empty")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise DomainError("eps_list must be strictly descending")
    if any(not e > 0.0 for e in eps_list):
        raise DomainError("eps_list entries must be positive")
    args = [(theta0, e, E0, opts, config.angle_tol) for e in eps_list]
    if config.max_workers and config.max_workers > 1:
        with ProcessPoolExecutor(max_workers=config.max_workers) as pool:
            records = list(pool.map(_sweep_one, *zip(*args)))
    else:
        records = [_sweep_one(*a) for a in args]
    result = SweepResult(theta0=theta0, E0=E0, records=tuple(records))

    problems = []
    if not result.gaps_monotone(config.slack):
        problems.append("shock-cone gap does not decrease along the epsilon ladder")
    if not result.pressure_monotone(config.slack):
        problems.append("surface pressure does not approach sin^2(theta0) monotonically")
    if problems:
        msg = "; ".join(problems)
        if config.on_violation == "error":
            raise MonotonicityError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    lo, hi = config.ratio_window
    for r in result.gap_ratios():
        if not lo < r < hi:
            warnings.warn(f"gap ratio {r:.4f} outside ({lo}, {hi})", RuntimeWarning, stacklevel=2)
    return result
