"""Compare the algebraic solver with a grid scan that uses no elimination.

Run: python demos/oracle_scan.py [fixture] [--grid N] [--levels K]
"""

import argparse

from isocycles import build_closing_system, load_fixture, solve_closing
from isocycles.solver import brute_force_scan, cluster_cells, refine_cells


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("fixture", nargs="?", default="s2-s2")
    parser.add_argument("--grid", type=int, default=600)
    parser.add_argument("--levels", type=int, default=16)
    args = parser.parse_args()

    cfg = load_fixture(args.fixture)
    cs = build_closing_system(cfg.system)
    rep = solve_closing(cs)
    print(f"{cfg.name}: solver pairs (each also appears mirrored in the scan)")
    for p in rep.pairs:
        print(f"  ({p.y1:.9g}, {p.y2:.9g})")

    coarse = brute_force_scan(cs, cfg.box, args.grid)
    print(f"\n{args.grid}^2 grid: {len(cluster_cells(coarse))} sign-change cluster(s)")
    fine, complete = refine_cells(cs, coarse, args.levels)
    groups = cluster_cells(fine, args.levels)
    print(f"after {args.levels} refinement levels: {len(groups)} cluster(s)" + ("" if complete else " (cell cap hit)"))
    for g in groups:
        y1, y2 = g[len(g) // 2].center
        print(f"  near ({y1:.9g}, {y2:.9g}), {len(g)} cell(s)")


if __name__ == "__main__":
    main()
