import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conical_shock import (
    DomainError,
    MonotonicityError,
    NoBracket,
    SubsonicNormal,
    SweepConfig,
    cone_angle_map,
    derive_parameters,
    epsilon_star,
    gap_bound,
    hypersonic_sweep,
    solve_direct,
)
from conical_shock.oracle import rk4_cone_angle

DEG = math.radians


def test_epsilon_star_reference():
    # both branches: sin^2(b*)/E' and b* sin^2(b*) / ((2E' + sin^2 b^*) tan b^*)
    e = epsilon_star(0.2, 0.4, 0.5)
    assert e == pytest.approx(0.016212, abs=5e-7)
    first = math.sin(0.2) ** 2 / 0.5
    assert first == pytest.approx(0.078939, abs=5e-7)
    assert e < first


def test_epsilon_star_vanishes_for_large_enthalpy():
    assert epsilon_star(0.2, 0.4, 1e8) < 1e-9


@pytest.mark.parametrize("args", [(0.4, 0.2, 0.5), (0.0, 0.2, 0.5), (0.2, 1.6, 0.5), (0.2, 0.4, 0.0)])
def test_epsilon_star_domain(args):
    with pytest.raises(DomainError):
        epsilon_star(*args)


def test_cone_angle_map_within_bound():
    p = derive_parameters(0.01)
    beta = DEG(30.0)
    t = cone_angle_map(beta, p)
    assert t < beta
    assert beta - t <= gap_bound(t, beta, p)
    assert abs(t - rk4_cone_angle(beta, p).theta_cone) < 1e-7


def test_cone_angle_map_gap_roughly_linear_in_eps():
    beta = DEG(30.0)
    gaps = [beta - cone_angle_map(beta, derive_parameters(e)) for e in (0.04, 0.02, 0.01)]
    ratios = [b / a for a, b in zip(gaps, gaps[1:])]
    assert all(0.4 < r < 0.6 for r in ratios)


def test_cone_angle_map_subsonic():
    with pytest.raises(SubsonicNormal):
        cone_angle_map(DEG(10.0), derive_parameters(1.0))


@pytest.mark.parametrize("theta0_deg", [10.0, 20.0, 30.0])
def test_direct_residual(theta0_deg):
    theta0 = DEG(theta0_deg)
    sol = solve_direct(theta0, derive_parameters(0.01), angle_tol=1e-8)
    assert abs(sol.field.theta_cone - theta0) < 1e-8
    assert sol.residual == abs(sol.field.theta_cone - theta0)
    assert abs(sol.field.grid[-1].u) < 1e-10
    assert abs(sol.field.diagnostics.event_residual) < 1e-10
    assert theta0 < sol.beta
    assert sol.beta - theta0 <= gap_bound(theta0, sol.beta, sol.field.params)


def test_direct_against_oracle_map():
    theta0 = DEG(20.0)
    p = derive_parameters(0.02)
    sol = solve_direct(theta0, p)
    assert abs(rk4_cone_angle(sol.beta, p).theta_cone - theta0) < 1e-7


def test_direct_shock_closes_on_cone_as_eps_vanishes():
    theta0 = DEG(15.0)
    gaps = [solve_direct(theta0, derive_parameters(e)).beta - theta0 for e in (0.05, 0.01, 0.002)]
    assert gaps[0] > gaps[1] > gaps[2] > 0.0
    assert gaps[-1] < 0.1 * gaps[0]


@pytest.mark.parametrize("theta0", [0.0, -0.2, 0.5 * math.pi, 2.0])
def test_direct_domain(theta0):
    with pytest.raises(DomainError):
        solve_direct(theta0, derive_parameters(0.01))


def test_direct_angle_tol_positive():
    with pytest.raises(DomainError):
        solve_direct(DEG(20.0), derive_parameters(0.01), angle_tol=0.0)


def test_direct_subsonic_upstream_names_regime():
    with pytest.raises(NoBracket, match="not supersonic"):
        solve_direct(DEG(20.0), derive_parameters(5.0))


def test_direct_detached_regime():
    with pytest.raises(NoBracket):
        solve_direct(DEG(30.0), derive_parameters(1.0))


@settings(max_examples=8, deadline=None)
@given(st.floats(5.0, 35.0), st.floats(0.5, 5.0), st.sampled_from([0.005, 0.01, 0.03]))
def test_shock_angle_increases_with_cone_angle(theta_deg, dtheta, eps):
    p = derive_parameters(eps)
    b1 = solve_direct(DEG(theta_deg), p).beta
    b2 = solve_direct(DEG(theta_deg + dtheta), p).beta
    assert b2 > b1


# -- sweeps -----------------------------------------------------------------------


def test_sweep_gap_law(ladder_sweep):
    res = ladder_sweep
    assert all(r.ok for r in res.records)
    assert res.bounds_hold()
    assert res.gaps_monotone()
    assert all(0.3 < q < 0.7 for q in res.gap_ratios())


def test_sweep_pressure_tends_to_newtonian(ladder_sweep):
    assert ladder_sweep.newtonian == pytest.approx(0.116978, abs=5e-7)
    errs = ladder_sweep.pressure_errors()
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_sweep_isolates_failed_rung():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = hypersonic_sweep(DEG(20.0), [0.04, 0.02, 1e-12], config=SweepConfig(on_violation="warn"))
    ok = [r.ok for r in res.records]
    assert ok == [True, True, False]
    assert "NoBracket" in res.records[-1].error
    assert math.isnan(res.records[-1].beta)
    assert len(res.solved()) == 2


@pytest.mark.parametrize("eps_list", [[0.01, 0.02], [0.02, 0.02], [0.02, -0.01], []])
def test_sweep_validates_ladder(eps_list):
    with pytest.raises(DomainError):
        hypersonic_sweep(DEG(20.0), eps_list)


def _fake_rungs(gaps):
    from conical_shock import direct

    theta0 = DEG(20.0)
    table = dict(gaps)

    def fake(theta0_, eps, E0, opts, angle_tol):
        g = table[eps]
        return direct.SweepRecord(eps, theta0 + g, g, 0.12, 1.0, 0.0)

    return fake


@pytest.mark.parametrize("mode,expect_raise", [("error", True), ("warn", False)])
def test_sweep_monotone_violation_escalates(monkeypatch, mode, expect_raise):
    from conical_shock import direct

    # second rung has a larger gap than the first
    monkeypatch.setattr(direct, "_sweep_one", _fake_rungs({0.04: 0.01, 0.02: 0.02}))
    config = SweepConfig(on_violation=mode)
    if expect_raise:
        with pytest.raises(MonotonicityError):
            hypersonic_sweep(DEG(20.0), [0.04, 0.02], config=config)
    else:
        with pytest.warns(RuntimeWarning):
            res = hypersonic_sweep(DEG(20.0), [0.04, 0.02], config=config)
        assert not res.gaps_monotone()


def test_sweep_parallel_matches_serial():
    eps = [0.04, 0.02]
    a = hypersonic_sweep(DEG(20.0), eps, config=SweepConfig(on_violation="warn"))
    b = hypersonic_sweep(DEG(20.0), eps, config=SweepConfig(on_violation="warn", max_workers=2))
    assert [r.beta for r in a.records] == [r.beta for r in b.records]
