#!/usr/bin/env python3
"""Hypersonic sweep at a fixed cone angle: shock standoff and surface pressure.

Prints one row per epsilon with the standoff angle, the a-priori bound, the
ratio to the previous rung, and the surface pressure against sin^2(theta0),
both as-is and with the free-stream pressure p0 subtracted.

    python3 scripts/run_sweep.py --theta0 20 --eps 0.08,0.04,0.02,0.01,0.005
"""
import argparse
import math
import warnings

from conical_shock import SweepConfig, derive_parameters, hypersonic_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--theta0", type=float, default=20.0, help="degrees")
    ap.add_argument("--eps", default="0.08,0.04,0.02,0.01,0.005,0.0025")
    ap.add_argument("--E0", type=float, default=1.0)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    eps = sorted((float(e) for e in args.eps.split(",")), reverse=True)
    theta0 = math.radians(args.theta0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = hypersonic_sweep(
            theta0, eps, args.E0, config=SweepConfig(on_violation="warn", max_workers=args.workers)
        )
    target = res.newtonian
    print(f"theta0 = {args.theta0} deg, E0 = {args.E0}, sin^2(theta0) = {target:.6f}")
    print(f"{'eps':>8} {'gap deg':>10} {'bound deg':>10} {'ratio':>6} {'p(theta0)':>10} {'rel err':>8} {'p - p0':>10} {'rel err':>8} {'err/eps':>8}")
    prev = None
    for r in res.records:
        if not r.ok:
            print(f"{r.epsilon:8.4g}  failed: {r.error}")
            continue
        p0 = derive_parameters(r.epsilon, args.E0).p0
        err = (r.surface_pressure - target) / target
        gauge = (r.surface_pressure - p0 - target) / target
        ratio = f"{r.gap / prev:6.3f}" if prev else " " * 6
        print(
            f"{r.epsilon:8.4g} {math.degrees(r.gap):10.6f} {math.degrees(r.bound):10.6f} {ratio} "
            f"{r.surface_pressure:10.6f} {err:8.3%} {r.surface_pressure - p0:10.6f} {gauge:8.3%} {err / r.epsilon:8.3f}"
        )
        prev = r.gap


if __name__ == "__main__":
    main()
