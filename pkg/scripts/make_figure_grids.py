"""Write the three mutual-information CSV grids used for the figures.

Usage: python scripts/make_figure_grids.py [--grid-n 97] [--out-dir grids]
"""

import argparse
import pathlib

from wqent.sweeps import grid_to_csv, sweep_probabilities, sweep_weights


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid-n", type=int, default=97)
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("grids"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    n = args.grid_n

    prob = sweep_probabilities(n)
    (args.out_dir / "mi_prob_plane.csv").write_text(
        grid_to_csv(prob, [f"grid_n={n} weights phi=(3/4,1/4) chi=(1/3,2/3)",
                           "cells with p1 + p2 >= 1 omitted"])
    )

    for region in ("a", "b"):
        grid = sweep_weights(region, n, p1=0.25, p2=0.125)
        (args.out_dir / f"mi_weight_region_{region}.csv").write_text(
            grid_to_csv(grid, [f"region={region} grid_n={n} p1=1/4 p2=1/8",
                               "phi2 = 1 - phi1, chi2 = 1 - chi1"])
        )

    for f in sorted(args.out_dir.glob("*.csv")):
        lines = f.read_text().count("\n")
        print(f"{f} ({lines} lines)")


if __name__ == "__main__":
    main()
