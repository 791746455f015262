#!/usr/bin/env python3
"""Gap table for the measure pairings along an epsilon ladder.

For each (family, test function) prints |<m^eps, psi> - <m, psi>| per rung and
the final gap relative to the limit pairing's absolute scale.

    python3 scripts/convergence_table.py --theta0 20 --eps 0.08,0.04,0.02,0.01
"""
import argparse
import math

from conical_shock import Family, convergence_report
from conical_shock.measures import default_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--theta0", type=float, default=20.0, help="degrees")
    ap.add_argument("--eps", default="0.08,0.04,0.02,0.01")
    ap.add_argument("--E0", type=float, default=1.0)
    args = ap.parse_args()

    theta0 = math.radians(args.theta0)
    eps = [float(e) for e in args.eps.split(",")]
    rep = convergence_report(theta0, eps, E0=args.E0)
    for e, msg in rep.failures:
        print(f"eps={e:g} failed: {msg}")
    header = f"{'family':>7} {'psi':>16} " + " ".join(f"{e:>10g}" for e in rep.epsilons) + f" {'final rel':>10} mono"
    print(header)
    for fam in Family:
        for psi in default_suite(theta0):
            gaps = rep.gaps(fam, psi.name)
            if not gaps:
                continue
            rel = rep.final_rel_gap(fam, psi.name)
            cells = " ".join(f"{g:10.3e}" for g in gaps)
            print(f"{fam.value:>7} {psi.name:>16} {cells} {rel:10.3%} {'yes' if rep.monotone(fam, psi.name) else 'NO'}")
    print()
    for r in rep.velocity_ratios:
        print(
            f"eps={r['epsilon']:g}: sup|u/w| = {r['sup']:.6e}, at shock {r['at_shock']:.6e}, "
            f"closed form {r['closed_form']:.6e} (with E0: {r['closed_form_E0']:.6e})"
        )


if __name__ == "__main__":
    main()
