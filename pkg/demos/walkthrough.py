"""From two centers to verified crossing limit cycles, step by step.

Run: python demos/walkthrough.py [fixture] [--out DIR]
"""

import argparse
from pathlib import Path

from isocycles import (
    bound_report,
    build_closing_system,
    eliminate,
    first_integral,
    load_fixture,
    solve_system,
    vector_field,
    verify_system,
)
from isocycles.plotting import plot_phase_portrait, write_orbit_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("fixture", nargs="?", default="s1-s2")
    parser.add_argument("--out", default="demo_out")
    args = parser.parse_args()

    cfg = load_fixture(args.fixture)
    pw = cfg.system
    print(f"== {cfg.name}: {pw.plus.family} on x >= 0, {pw.minus.family} on x <= 0")
    for side, spec in (("plus", pw.plus), ("minus", pw.minus)):
        F = vector_field(spec)
        H = first_integral(spec)
        print(f"[{side}] x' = {F.P}")
        print(f"[{side}] H has numerator degree {H.num.total_degree}, denominator degree {H.den.total_degree}")

    cs = build_closing_system(pw)
    elim = eliminate(cs)
    br = bound_report(cs, elim)
    print(f"\nclosing polynomials: degrees {cs.Pplus.total_degree} and {cs.Pminus.total_degree}")
    print(f"elimination by {elim.strategy}: degree {elim.poly.degree} in y2")
    print(f"at most {br.pair_bound} pairs from the degree, table bound {br.table_bound}")

    sol = solve_system(pw)
    print(f"\n{len(sol.report.pairs)} algebraic pair(s), {len(sol.candidates)} pass the crossing conditions")
    for d in sol.rejected:
        print(f"  dropped ({d.y1:.6g}, {d.y2:.6g}): {d.reason}")

    reports = verify_system(pw, sol)
    for r in reports:
        print(
            f"  ({r.pair.y1:.9g}, {r.pair.y2:.9g}) {r.verdict}: closure {r.closure_error:.1e}, "
            f"drift {max(r.drift_plus, r.drift_minus):.1e}"
        )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ok = [r for r in reports if r.verified]
    svg = plot_phase_portrait(pw, ok, out / f"{cfg.name}.svg", title=cfg.name)
    csv_path = write_orbit_csv(ok, out / f"{cfg.name}_orbits.csv")
    print(f"\nwrote {svg} and {csv_path}")


if __name__ == "__main__":
    main()
