"""Measure-valued description of the flow on the unit sphere.

Every solution here is axisymmetric with no azimuthal velocity, so each
measure has the form  density(theta) dA  on its absolutely continuous part
(dA = sin(theta) dtheta dphi) plus, in the hypersonic limit, a weighted
Dirac layer on the circle C = {theta = theta0} with ds = sin(theta0) dphi.
Vector-valued families are paired with tangential fields psi * d/dtheta, which
reduces (psi d_theta, f d_theta) to psi * f.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .direct import IntegratorOptions, solve_direct
from .errors import ConicalFlowError, DomainError, KindMismatch
from .gas import derive_parameters
from .taylor_maccoll import ConicalField

TWO_PI = 2.0 * math.pi


class Family(enum.Enum):
    M_A = "m_a"
    M_E = "m_e"
    M_R = "m_r"
    M_T = "m_t"
    N_A = "n_a"
    N_E = "n_e"
    N_R = "n_r"
    N_T = "n_t"
    RHO = "rho"
    P = "p"

    @property
    def is_vector(self) -> bool:
        return self in (Family.M_A, Family.M_E, Family.M_R, Family.M_T)


def _density(family: Family, E0: float):
    """Pointwise density of a family w.r.t. dA, as a function of (rho, u, w, p)."""
    return {
        Family.M_A: lambda rho, u, w, p: rho * u,
        Family.M_E: lambda rho, u, w, p: rho * u * E0,
        Family.M_R: lambda rho, u, w, p: rho * u * w,
        # only the (d_theta x d_theta) component of rho u (x) u survives
        Family.M_T: lambda rho, u, w, p: rho * u * u,
        Family.N_A: lambda rho, u, w, p: rho * w,
        Family.N_E: lambda rho, u, w, p: rho * w * E0,
        Family.N_R: lambda rho, u, w, p: rho * w * w,
        Family.N_T: lambda rho, u, w, p: rho * u * u,
        Family.RHO: lambda rho, u, w, p: rho,
        Family.P: lambda rho, u, w, p: p,
    }[family]


@dataclass(frozen=True)
class TestFunction:
    """psi(theta, phi), either a scalar or the coefficient of psi * d/dtheta."""

    __test__ = False  # not a pytest class

    name: str
    func: Callable[[np.ndarray, np.ndarray], np.ndarray]
    kind: str = "scalar"
    axisymmetric: bool = True
    smoothness: str = "C1"
    # interval outside which psi vanishes; its ends are quadrature breakpoints
    support: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in ("scalar", "tangential"):
            raise DomainError(f"unknown test-function kind {self.kind!r}")

    def __call__(self, theta, phi=0.0):
        return self.func(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))

    def as_kind(self, kind: str) -> "TestFunction":
        return replace(self, kind=kind)

    def phi_integral(self, theta: np.ndarray, n_phi: int = 32) -> np.ndarray:
        """Integral over phi in [0, 2 pi) at each theta."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        if self.axisymmetric:
            return TWO_PI * np.broadcast_to(self(theta, 0.0), theta.shape)
        x, wts = np.polynomial.legendre.leggauss(n_phi)
        phi = math.pi * (x + 1.0)
        vals = self(theta[:, None], phi[None, :])
        return math.pi * np.broadcast_to(vals, (theta.size, n_phi)) @ wts


def constant(value: float = 1.0, kind: str = "scalar") -> TestFunction:
    return TestFunction(
        "1" if value == 1.0 else f"{value:g}",
        lambda th, ph: np.full(np.broadcast(th, ph).shape, value),
        kind,
        smoothness="C-inf",
    )


def cos_theta(kind: str = "scalar") -> TestFunction:
    return TestFunction("cos_theta", lambda th, ph: np.cos(th) + 0.0 * ph, kind, smoothness="C-inf")


def sin2_theta(kind: str = "scalar") -> TestFunction:
    return TestFunction("sin2_theta", lambda th, ph: np.sin(th) ** 2 + 0.0 * ph, kind, smoothness="C-inf")


def cosphi_sintheta(kind: str = "scalar") -> TestFunction:
    return TestFunction(
        "cosphi_sintheta",
        lambda th, ph: np.cos(ph) * np.sin(th),
        kind,
        axisymmetric=False,
        smoothness="C-inf",
    )


def bump(center: float, width: float = math.radians(10.0), kind: str = "scalar") -> TestFunction:
    """cos^2 bump of half-width ``width`` around ``center``; C1 at its edges."""

    def f(th, ph):
        x = (th - center) / width
        inside = np.abs(x) < 1.0
        return np.where(inside, np.cos(0.5 * math.pi * x) ** 2, 0.0) + 0.0 * ph

    return TestFunction("bump", f, kind, smoothness="C1", support=(center - width, center + width))


def default_suite(theta0: float, kind: str = "scalar") -> list[TestFunction]:
    return [constant(1.0, kind), cos_theta(kind), sin2_theta(kind), cosphi_sintheta(kind), bump(theta0, kind=kind)]


# -- the epsilon = 0 solution ---------------------------------------------------


@dataclass(frozen=True)
class RadonConeSolution:
    """Free stream on Omega = {theta > theta0} plus Dirac layers on the cone circle."""

    theta0: float
    E0: float
    mass_weight: float
    flux_weights: dict
    W_C: float

    def dirac_weight(self, family: Family) -> float:
        if family is Family.RHO:
            return self.mass_weight
        return self.flux_weights.get(family.value, 0.0)

    @staticmethod
    def background(theta):
        """Free-stream (rho0, u0, w0) on Omega."""
        theta = np.asarray(theta, dtype=float)
        return np.ones_like(theta), -np.sin(theta), np.cos(theta)


def limit_solution(theta0: float, E0: float = 1.0) -> RadonConeSolution:
    if not (0.0 < theta0 < 0.5 * math.pi):
        raise DomainError(f"cone angle must lie in (0, pi/2), got {theta0!r}")
    s, c = math.sin(theta0), math.cos(theta0)
    n_a = 0.5 * s
    return RadonConeSolution(
        theta0=theta0,
        E0=E0,
        mass_weight=0.5 * math.tan(theta0),
        flux_weights={"n_a": n_a, "n_e": n_a * E0, "n_r": n_a * c},
        W_C=s * s,
    )


# -- pairings --------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _composite_gl(f, breaks: np.ndarray) -> float:
    a, b = breaks[:-1], breaks[1:]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b))[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return float(np.sum(half * (vals @ _GL_WEIGHTS)))


_GL32 = np.polynomial.legendre.leggauss(32)
_GL64 = np.polynomial.legendre.leggauss(64)


def _gl_panel(g, a: float, b: float, rule) -> float:
    x, wts = rule
    half = 0.5 * (b - a)
    return half * float(g(0.5 * (a + b) + half * x) @ wts)


def _adaptive_gl(g, a: float, b: float, tol: float = 1e-14, depth: int = 0) -> float:
    coarse = _gl_panel(g, a, b, _GL32)
    fine = _gl_panel(g, a, b, _GL64)
    if abs(fine - coarse) <= tol * max(1.0, abs(fine)) or depth >= 30:
        return fine
    mid = 0.5 * (a + b)
    return _adaptive_gl(g, a, mid, tol, depth + 1) + _adaptive_gl(g, mid, b, tol, depth + 1)


def _cap_integral(g, lo: float, psi: TestFunction) -> float:
    """Adaptive integral of g(theta) over [lo, pi], split where psi loses smoothness."""
    cuts = [lo]
    if psi.support is not None:
        cuts += sorted(x for x in psi.support if lo < x < math.pi)
    cuts.append(math.pi)
    return sum(_adaptive_gl(g, a, b) for a, b in zip(cuts, cuts[1:]))


def _check_kind(family: Family, psi: TestFunction) -> None:
    want = "tangential" if family.is_vector else "scalar"
    if psi.kind != want:
        raise KindMismatch(f"family {family.value} pairs with {want} test functions, got {psi.kind}")


def pair_measure(source, family: Family, psi: TestFunction, n_phi: int = 32) -> float:
    """<m, psi> for ``family`` built from a solved field or from the limit solution."""
    family = Family(family)
    _check_kind(family, psi)
    if isinstance(source, RadonConeSolution):
        return _pair_limit(source, family, psi, n_phi)
    if isinstance(source, ConicalField):
        return _pair_field(source, family, psi, n_phi)
    raise TypeError(f"cannot pair measures of {type(source).__name__}")


def _pair_limit(sol: RadonConeSolution, family: Family, psi: TestFunction, n_phi: int) -> float:
    if family is Family.P:
        return 0.0
    dens = _density(family, sol.E0)

    def g(th):
        rho, u, w = sol.background(th)
        return np.sin(th) * dens(rho, u, w, 0.0) * psi.phi_integral(th, n_phi)

    total = _cap_integral(g, sol.theta0, psi)
    weight = sol.dirac_weight(family)
    if weight:
        total += weight * math.sin(sol.theta0) * float(psi.phi_integral(sol.theta0, n_phi)[0])
    return total


def _pair_field(field: ConicalField, family: Family, psi: TestFunction, n_phi: int) -> float:
    params = field.params
    dens = _density(family, params.E0)
    kappa, E0 = params.kappa, params.E0

    def upstream(th):
        rho, u, w = RadonConeSolution.background(th)
        return np.sin(th) * dens(rho, u, w, params.p0) * psi.phi_integral(th, n_phi)

    def layer(th):
        rho, u, w = field.evaluate(th)
        p = kappa * rho * (E0 - 0.5 * (u * u + w * w))
        return np.sin(th) * dens(rho, u, w, p) * psi.phi_integral(th, n_phi)

    outer = _cap_integral(upstream, field.beta, psi)
    inner = _composite_gl(layer, field.breakpoints())
    return outer + inner


def mass_flux(field: ConicalField) -> float:
    """2 pi * integral of rho w sin(theta) over the shock layer; equals pi sin^2(beta)."""

    def g(th):
        rho, _, w = field.evaluate(th)
        return rho * w * np.sin(th)

    return TWO_PI * _composite_gl(g, field.breakpoints())


def velocity_ratio_bound(field: ConicalField) -> dict:
    """sup |u/w| on the grid against its value at the shock and the closed forms."""
    params = field.params
    eps, beta = params.epsilon, field.beta
    sup = max(abs(s.u / s.w) for s in field.grid)
    at_shock = abs(field.grid[0].u / field.grid[0].w)
    sb2 = math.sin(beta) ** 2
    exact = math.tan(beta) * (2.0 * params.Eprime / sb2 + 1.0) * eps / (eps + 2.0)
    loose = math.tan(beta) * (2.0 * params.E0 / sb2 + 1.0) * eps / (eps + 2.0)
    return {"sup": sup, "at_shock": at_shock, "closed_form": exact, "closed_form_E0": loose}


# -- vague convergence -------------------------------------------------------------


def _abs_scale(sol: RadonConeSolution, family: Family, psi: TestFunction, n_phi: int) -> float:
    """Normalizer for relative gaps: <|m|, |psi|> of the limit measure.

    The limit pressure measure vanishes, so its gaps are measured against the
    unit pressure rho_inf |V_inf|^2 spread over Omega, i.e. <dA on Omega, |psi|>.
    """
    abs_psi = replace(psi, func=lambda th, ph: np.abs(psi.func(th, ph)))
    if family is Family.P:
        return _cap_integral(lambda th: np.sin(th) * abs_psi.phi_integral(th, n_phi), sol.theta0, psi)
    dens = _density(family, sol.E0)

    def g(th):
        rho, u, w = sol.background(th)
        return np.sin(th) * np.abs(dens(rho, u, w, 0.0)) * abs_psi.phi_integral(th, n_phi)

    total = _cap_integral(g, sol.theta0, psi)
    weight = sol.dirac_weight(family)
    total += abs(weight) * math.sin(sol.theta0) * float(abs_psi.phi_integral(sol.theta0, n_phi)[0])
    return total


@dataclass(frozen=True)
class ConvergenceEntry:
    family: str
    psi: str
    epsilon: float
    value_eps: float
    value_limit: float
    gap: float
    scale: float

    @property
    def rel_gap(self) -> float:
        return self.gap / self.scale if self.scale > 0.0 else float("inf")


@dataclass(frozen=True)
class ConvergenceReport:
    theta0: float
    E0: float
    epsilons: tuple[float, ...]
    entries: tuple[ConvergenceEntry, ...]
    velocity_ratios: tuple[dict, ...]
    failures: tuple[tuple[float, str], ...] = ()

    def series(self, family, psi_name: str) -> list[ConvergenceEntry]:
        fam = Family(family).value
        rows = [e for e in self.entries if e.family == fam and e.psi == psi_name]
        return sorted(rows, key=lambda e: -e.epsilon)

    def gaps(self, family, psi_name: str) -> list[float]:
        return [e.gap for e in self.series(family, psi_name)]

    def monotone(self, family, psi_name: str, slack: float = 0.05, floor: float = 1e-12) -> bool:
        """Gaps shrink along descending epsilon; gaps below ``floor`` count as converged."""
        g = self.gaps(family, psi_name)
        return all(b <= a * (1.0 + slack) or b < floor for a, b in zip(g, g[1:]))

    def final_rel_gap(self, family, psi_name: str) -> float:
        return self.series(family, psi_name)[-1].rel_gap


def convergence_report(
    theta0: float,
    eps_list: Sequence[float],
    psi_suite: Sequence[TestFunction] | None = None,
    E0: float = 1.0,
    opts: IntegratorOptions | None = None,
    families: Sequence[Family] | None = None,
    angle_tol: float = 1e-8,
    n_phi: int = 32,
) -> ConvergenceReport:
    """Gaps |<m^eps, psi> - <m, psi>| for each epsilon, family and test function.

    Scalar test functions are paired with scalar families; the same functions
    recast as tangential fields are paired with the vector families.
    """
    families = list(families or Family)
    psi_suite = list(psi_suite or default_suite(theta0))
    limit = limit_solution(theta0, E0)
    eps_list = sorted((float(e) for e in eps_list), reverse=True)
    kinds = {}
    for fam in families:
        for psi in psi_suite:
            psi_k = psi.as_kind("tangential" if fam.is_vector else "scalar")
            kinds[fam, psi.name] = (
                psi_k,
                pair_measure(limit, fam, psi_k, n_phi),
                _abs_scale(limit, fam, psi_k, n_phi),
            )
    entries = []
    ratios = []
    failures = []
    for eps in eps_list:
        try:
            sol = solve_direct(theta0, derive_parameters(eps, E0), opts, angle_tol)
        except ConicalFlowError as exc:
            failures.append((eps, f"{type(exc).__name__}: {exc}"))
            continue
        ratios.append({"epsilon": eps, **velocity_ratio_bound(sol.field)})
        for fam in families:
            for psi in psi_suite:
                psi_k, v_lim, scale = kinds[fam, psi.name]
                v_eps = pair_measure(sol.field, fam, psi_k, n_phi)
                entries.append(
                    ConvergenceEntry(
                        family=fam.value,
                        psi=psi.name,
                        epsilon=eps,
                        value_eps=v_eps,
                        value_limit=v_lim,
                        gap=abs(v_eps - v_lim),
                        scale=scale,
                    )
                )
    return ConvergenceReport(
        theta0=theta0,
        E0=E0,
        epsilons=tuple(eps_list),
        entries=tuple(entries),
        velocity_ratios=tuple(ratios),
        failures=tuple(failures),
    )
