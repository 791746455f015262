#!/usr/bin/env python3
"""Regenerate the CLI golden files under tests/golden/.

Run after an intentional change to solver output; the diff of the golden
files is the review artifact.
"""
from pathlib import Path

from conical_shock.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

# file name -> argv (without --out)
CASES = {
    "direct_t20_e0.01.json": ["direct", "--theta0", "20", "--epsilon", "0.01", "--E0", "1"],
    "sweep_t20.csv": ["sweep", "--theta0", "20", "--eps", "0.08,0.04,0.02,0.01"],
    "chaplygin_M4_t30.txt": ["chaplygin", "--M0", "4", "--theta0", "30"],
    "chaplygin_M2_t30.txt": ["chaplygin", "--M0", "2", "--theta0", "30"],
}


def run():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        code = main(argv + ["--out", str(GOLDEN / name)])
        print(f"{name}: exit {code}")
        if code != 0:
            raise SystemExit(code)


if __name__ == "__main__":
    run()
