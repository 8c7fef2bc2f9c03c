#!/usr/bin/env python3
"""Full testbed convergence study for all built-in schemes.

Writes one CSV per scheme into results/ and prints the fitted orders.
"""

import pathlib
import sys

from exprk.convergence import ExperimentSpec, emit_csv, run_experiment

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "results"


def main() -> int:
    OUT_DIR.mkdir(exist_ok=True)
    for scheme in ("euler", "rk2", "rk3paper"):
        report = run_experiment(ExperimentSpec(scheme=scheme))
        path = OUT_DIR / f"convergence_{scheme}.csv"
        emit_csv(report, path)
        orders = " ".join(f"{nm}={report.fitted_order[nm]:.3f}"
                          for nm in report.norms)
        print(f"{scheme:<9} {orders}  -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
