"""Command-line front end: ``iso-cycles <command> --config <file>``.

Exit codes: 0 success, 2 invalid configuration, 3 continuum of solutions,
4 a crossing candidate failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .algebra import Poly1, Poly2
from .centers import first_integral, vector_field
from .closing import bound_report, build_closing_system, eliminate
from .config import SystemConfig, load_config, parse_box
from .errors import ConfigError, IsoCyclesError
from .pipeline import SystemSolution, solve_system, verify_system
from .verifier import CLOSURE_TOL, CycleReport

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONTINUUM = 3
EXIT_VERIFY = 4


def _frac(q: Fraction) -> str:
    return str(q)


def _poly2_json(p: Poly2) -> dict:
    return {
        "text": str(p),
        "vars": list(p.vars),
        "terms": [[i, j, _frac(c)] for (i, j), c in sorted(p.terms.items())],
    }


def _poly1_json(p: Poly1) -> dict:
    return {"text": str(p), "var": p.var, "coeffs": [_frac(c) for c in p.coeffs]}


def _in_box(box, y1: float, y2: float) -> bool:
    return box[0] <= y1 <= box[1] and box[2] <= y2 <= box[3]


def _pair_json(p, box) -> dict:
    return {
        "y1": p.y1,
        "y2": p.y2,
        "residual_plus": p.residual_plus,
        "residual_minus": p.residual_minus,
        "jacobian_det": p.jacobian_det,
        "transversality": p.transversality,
        "strategy": p.source_strategy,
        "in_box": _in_box(box, p.y1, p.y2),
    }


def _cycle_json(r: CycleReport) -> dict:
    return {
        "y1": r.pair.y1,
        "y2": r.pair.y2,
        "crossing_ok": list(r.crossing_ok),
        "closure_error": r.closure_error,
        "drift_plus": r.drift_plus,
        "drift_minus": r.drift_minus,
        "isolated": r.isolated,
        "verdict": r.verdict,
    }


# ---------------------------------------------------------------------------
# commands; each returns (exit code, json document, text lines)


def cmd_derive(cfg: SystemConfig):
    doc = {"name": cfg.name}
    lines = [f"system {cfg.name}"]
    for side, spec in (("plus", cfg.system.plus), ("minus", cfg.system.minus)):
        F = vector_field(spec)
        H = first_integral(spec)
        doc[side] = {
            "family": spec.family,
            "params": {k: _frac(v) for k, v in spec.params.as_dict().items()},
            "field": {"P": _poly2_json(F.P), "Q": _poly2_json(F.Q)},
            "integral": {"num": _poly2_json(H.num), "den": _poly2_json(H.den)},
        }
        region = "x >= 0" if side == "plus" else "x <= 0"
        lines += [
            f"[{side}] {spec.family} on {region}",
            f"  x' = {F.P}",
            f"  y' = {F.Q}",
            f"  H  = ({H.num}) / ({H.den})",
        ]
    return EXIT_OK, doc, lines


def cmd_close(cfg: SystemConfig):
    cs = build_closing_system(cfg.system)
    elim = eliminate(cs)
    if elim.poly.is_zero():
        doc = {"name": cfg.name, "strategy": elim.strategy, "continuum": True}
        return EXIT_CONTINUUM, doc, ["eliminated polynomial vanishes: continuum of solutions"]
    br = bound_report(cs, elim)
    doc = {
        "name": cfg.name,
        "pairing": br.pairing,
        "Pplus": _poly2_json(cs.Pplus),
        "Pminus": _poly2_json(cs.Pminus),
        "excluded": [_poly1_json(d) for d in cs.excluded_sets],
        "strategy": br.strategy,
        "eliminant": _poly1_json(elim.poly),
        "degree": br.degree,
        "pair_bound": br.pair_bound,
        "table_bound": br.table_bound,
        "continuum": False,
    }
    lines = [
        f"system {cfg.name} ({br.pairing})",
        f"  Pplus  (total degree {cs.Pplus.total_degree}) = {cs.Pplus}",
        f"  Pminus (total degree {cs.Pminus.total_degree}) = {cs.Pminus}",
        f"  strategy: {br.strategy}",
        f"  univariate degree in y2: {br.degree}",
        f"  pair bound from degree: {br.pair_bound}",
        f"  table bound: {br.table_bound if br.table_bound is not None else 'none'}",
    ]
    return EXIT_OK, doc, lines


def _solve_doc(cfg: SystemConfig, sol: SystemSolution) -> dict:
    rep = sol.report
    return {
        "name": cfg.name,
        "continuum": rep.continuum,
        "strategy": rep.strategy,
        "degree": rep.degree,
        "pairs": [_pair_json(p, cfg.box) for p in sol.candidates],
        "discarded": [
            {"y1": d.y1, "y2": d.y2, "reason": d.reason} for d in sol.rejected + rep.discarded
        ],
        "diagonal": rep.diagonal,
        "bound": None
        if rep.bound_check is None
        else {
            "pairing": rep.bound_check.pairing,
            "pair_bound": rep.bound_check.pair_bound,
            "table_bound": rep.bound_check.table_bound,
        },
    }


def cmd_solve(cfg: SystemConfig, workers: Optional[int] = None):
    sol = solve_system(cfg.system, workers)
    doc = _solve_doc(cfg, sol)
    if sol.report.continuum:
        return EXIT_CONTINUUM, doc, ["continuum of solutions: no isolated pairs"]
    lines = [f"system {cfg.name}: {len(sol.candidates)} crossing pair(s) ({sol.report.strategy})"]
    for p in sol.candidates:
        lines.append(f"  y1 = {p.y1:.9g}   y2 = {p.y2:.9g}")
    for d in doc["discarded"]:
        lines.append(f"  discarded ({d['y1']:.6g}, {d['y2']:.6g}): {d['reason']}")
    for y in sol.report.diagonal:
        lines.append(f"  diagonal solution y1 = y2 = {y:.6g} (excluded)")
    return EXIT_OK, doc, lines


def cmd_verify(cfg: SystemConfig, workers: Optional[int] = None, closure_tol: float = CLOSURE_TOL):
    sol = solve_system(cfg.system, workers)
    if sol.report.continuum:
        return EXIT_CONTINUUM, _solve_doc(cfg, sol), ["continuum of solutions: nothing to verify"]
    inside = [p for p in sol.candidates if _in_box(cfg.box, p.y1, p.y2)]
    skipped = [p for p in sol.candidates if p not in inside]
    sol.candidates = inside
    reports = verify_system(cfg.system, sol, workers, closure_tol)
    n_ok = sum(r.verified for r in reports)
    doc = {
        "name": cfg.name,
        "verified": n_ok,
        "cycles": [_cycle_json(r) for r in reports],
        "skipped_outside_box": [[p.y1, p.y2] for p in skipped],
    }
    lines = [f"system {cfg.name}: {n_ok} of {len(reports)} candidate(s) verified"]
    for r in reports:
        lines.append(
            f"  ({r.pair.y1:.9g}, {r.pair.y2:.9g}) {r.verdict}"
            f"  closure {r.closure_error:.2e}  drift {max(r.drift_plus, r.drift_minus):.2e}"
        )
    code = EXIT_OK if n_ok == len(reports) else EXIT_VERIFY
    return code, doc, lines


def cmd_plot(cfg: SystemConfig, out: Path, workers: Optional[int] = None, box=None):
    from .plotting import plot_phase_portrait, write_orbit_csv

    sol = solve_system(cfg.system, workers)
    if sol.report.continuum:
        return EXIT_CONTINUUM, _solve_doc(cfg, sol), ["continuum of solutions: nothing to plot"]
    reports = [r for r in verify_system(cfg.system, sol, workers) if r.verified]
    out.mkdir(parents=True, exist_ok=True)
    svg = plot_phase_portrait(cfg.system, reports, out / f"{cfg.name}.svg", box, cfg.name)
    csv_path = write_orbit_csv(reports, out / f"{cfg.name}_orbits.csv")
    doc = {"name": cfg.name, "cycles": len(reports), "svg": str(svg), "csv": str(csv_path)}
    return EXIT_OK, doc, [f"wrote {svg} and {csv_path} ({len(reports)} cycle(s))"]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iso-cycles",
        description="Crossing limit cycles of piecewise systems of isochronous centers.",
    )
    parser.add_argument("command", choices=("derive", "close", "solve", "verify", "plot"))
    parser.add_argument("--config", required=True, help="JSON config file or fixture name")
    parser.add_argument("--out", default=".", help="output directory for plot files")
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.add_argument(
        "--box",
        help="y1_min,y1_max,y2_min,y2_max for solve/verify; for plot the x0,x1,y0,y1 view",
    )
    parser.add_argument("--tol", type=float, help=f"closure tolerance (default {CLOSURE_TOL:g})")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        box = parse_box(args.box) if args.box else None
        if box is not None and args.command != "plot":
            cfg = SystemConfig(cfg.name, cfg.system, box, cfg.tol, cfg.reference_pairs)
        tol = args.tol if args.tol is not None else (cfg.tol or CLOSURE_TOL)
        if tol <= 0:
            raise ConfigError("--tol must be positive")
    except ConfigError as exc:
        print(f"iso-cycles: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    try:
        if args.command == "derive":
            code, doc, lines = cmd_derive(cfg)
        elif args.command == "close":
            code, doc, lines = cmd_close(cfg)
        elif args.command == "solve":
            code, doc, lines = cmd_solve(cfg)
        elif args.command == "verify":
            code, doc, lines = cmd_verify(cfg, closure_tol=tol)
        else:
            code, doc, lines = cmd_plot(cfg, Path(args.out), box=box)
    except ConfigError as exc:
        print(f"iso-cycles: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IsoCyclesError as exc:
        print(f"iso-cycles: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
