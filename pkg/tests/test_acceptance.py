"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL ...`` line (also repeated in
the terminal summary) and then asserts. Failures are genuine.
"""

import random
import time
from fractions import Fraction

import pytest

from golden import LC_S3_MINUS, S3_S3_MINUS, S3_S3_PLUS, coefficients, field_coefficients, max_abs_difference
from isocycles.algebra import Poly2, count_real_roots, exact_divide, isolate_real_roots
from isocycles.centers import CenterSpec, invariance_residual, vector_field
from isocycles.cli import EXIT_OK, cmd_solve
from isocycles.closing import build_closing_system, eliminate, max_cycles_bound
from isocycles.config import FIXTURE_NAMES, load_fixture
from isocycles.errors import IsoCyclesError
from isocycles.pipeline import solve_system, verify_system
from isocycles.solver import brute_force_scan, cluster_cells, refine_cells, solve_closing
from isocycles.verifier import is_crossing_point
from randsys import GENERIC_DEGREE, random_map, random_spec, random_system

RESULTS: list[str] = []

TABLE_BOUND = {"Lc-S3": 3, "Lc-S4": 3, "S1-S3": 5, "S1-S4": 5, "S2-S2": 8, "S2-S3": 13, "S2-S4": 13}
SCAN_GRID = 600
REFINE_LEVELS = 16


def _report(n: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    RESULTS.append(line)


@pytest.fixture(scope="module")
def fixture_runs():
    """solve_system and verify_system for every fixture, shared by several criteria."""
    out = {}
    for name in FIXTURE_NAMES:
        pw = load_fixture(name).system
        sol = solve_system(pw)
        out[name] = (pw, sol, verify_system(pw, sol))
    return out


def test_criterion_1_fixture_reproduction():
    problems = []
    worst_time = 0.0
    for name in FIXTURE_NAMES:
        cfg = load_fixture(name)
        t0 = time.perf_counter()
        code, doc, _ = cmd_solve(cfg)
        worst_time = max(worst_time, time.perf_counter() - t0)
        got = [(p["y1"], p["y2"]) for p in doc["pairs"]]
        if code != EXIT_OK or len(got) != 3:
            problems.append(f"{name}: {len(got)} pairs")
            continue
        for a, b in cfg.reference_pairs:
            err = min(max(abs(float(a) - y1), abs(float(b) - y2)) for y1, y2 in got)
            if err > 1e-4:
                problems.append(f"{name}: ({float(a)}, {float(b)}) off by {err:.2e}")
    ok = not problems and worst_time <= 5.0
    detail = f"slowest fixture {worst_time:.2f}s" + ("; " + "; ".join(problems) if problems else "")
    _report(1, ok, detail)
    assert ok, detail


def test_criterion_2_first_integral_identity():
    rng = random.Random(2)
    t0 = time.perf_counter()
    bad = []
    for family in ("Lc", "S1", "S2", "S3", "S4"):
        for _ in range(50):
            spec = random_spec(rng, family) if family == "Lc" else CenterSpec(family, random_map(rng))
            if not invariance_residual(spec).is_zero():
                bad.append(f"{family} {spec.params}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 30.0
    detail = f"250 specs, {len(bad)} nonzero residuals, {elapsed:.1f}s"
    _report(2, ok, detail)
    assert ok, detail


def test_criterion_3_degrees():
    problems = []
    for name in FIXTURE_NAMES:
        pw = load_fixture(name).system
        if pw.pairing in GENERIC_DEGREE:
            deg = eliminate(build_closing_system(pw)).poly.degree
            if deg > GENERIC_DEGREE[pw.pairing]:
                problems.append(f"{name} degree {deg}")
    rng = random.Random(3)
    summary = []
    for pairing, cap in GENERIC_DEGREE.items():
        degrees = [eliminate(build_closing_system(random_system(rng, pairing))).poly.degree for _ in range(20)]
        hits = degrees.count(cap)
        summary.append(f"{pairing} max {max(degrees)}/{cap} x{hits}")
        if max(degrees) > cap:
            problems.append(f"{pairing} exceeds {cap}: {max(degrees)}")
        if hits == 0:
            problems.append(f"{pairing} never reaches {cap}")
    ok = not problems
    detail = ", ".join(summary) + ("; " + "; ".join(problems) if problems else "")
    _report(3, ok, detail)
    assert ok, detail


def test_criterion_4_bound_consistency(fixture_runs):
    problems = []
    for name, (pw, _, reports) in fixture_runs.items():
        bound = max_cycles_bound(pw.pairing)
        n = sum(r.verified for r in reports)
        if bound is not None and n > bound:
            problems.append(f"{name}: {n} > {bound}")
    rng = random.Random(4)
    summary = []
    for pairing, bound in TABLE_BOUND.items():
        most, skipped = 0, 0
        for _ in range(100):
            pw = random_system(rng, pairing)
            try:
                n = sum(r.verified for r in verify_system(pw))
            except IsoCyclesError:
                skipped += 1
                continue
            most = max(most, n)
            if n > bound:
                problems.append(f"{pairing}: {n} > {bound}")
        summary.append(f"{pairing} max {most}/{bound}" + (f" ({skipped} invalid)" if skipped else ""))
    ok = not problems
    detail = ", ".join(summary) + ("; " + "; ".join(problems) if problems else "")
    _report(4, ok, detail)
    assert ok, detail


def test_criterion_5_orbit_closure(fixture_runs):
    n, worst_closure, worst_drift = 0, 0.0, 0.0
    for _, _, reports in fixture_runs.values():
        for r in reports:
            if r.verified:
                n += 1
                worst_closure = max(worst_closure, r.closure_error)
                worst_drift = max(worst_drift, r.drift_plus, r.drift_minus)
    ok = n > 0 and worst_closure <= 1e-6 and worst_drift <= 1e-8
    detail = f"{n} verified cycles, worst closure {worst_closure:.2e}, worst drift {worst_drift:.2e}"
    _report(5, ok, detail)
    assert ok, detail


def test_criterion_6_conjugation_golden():
    F = vector_field(load_fixture("lc-s3").system.minus)
    got = field_coefficients(F)
    lc_diff = max(max_abs_difference(got[i], coefficients(LC_S3_MINUS[i])) for i in range(2))
    exact = True
    for side, want in (("plus", S3_S3_PLUS), ("minus", S3_S3_MINUS)):
        spec = getattr(load_fixture("s3-s3").system, side)
        g = field_coefficients(vector_field(spec))
        exact = exact and g[0] == coefficients(want[0]) and g[1] == coefficients(want[1])
    ok = lc_diff <= 1e-5 and exact
    detail = f"lc-s3 max coefficient difference {lc_diff:.2e} (tol 1e-5), s3-s3 exact {exact}"
    _report(6, ok, detail)
    assert ok, detail


def _expected_points(cs, box):
    rep = solve_closing(cs)
    pts = [(p.y1, p.y2) for p in rep.pairs] + [(p.y2, p.y1) for p in rep.pairs]
    pts += [(d, d) for d in rep.diagonal]
    return [p for p in pts if box[0] <= p[0] <= box[1] and box[2] <= p[1] <= box[3]]


def _cluster_has(group, pt):
    w = group[0].y1_hi - group[0].y1_lo
    return any(c.y1_lo - w <= pt[0] <= c.y1_hi + w and c.y2_lo - w <= pt[1] <= c.y2_hi + w for c in group)


def test_criterion_7_oracle_equivalence():
    problems = []
    for name in FIXTURE_NAMES:
        cfg = load_fixture(name)
        cs = build_closing_system(cfg.system)
        pts = _expected_points(cs, cfg.box)
        fine, complete = refine_cells(cs, brute_force_scan(cs, cfg.box, SCAN_GRID), REFINE_LEVELS)
        groups = cluster_cells(fine, REFINE_LEVELS)
        extras = sum(not any(_cluster_has(g, p) for p in pts) for g in groups)
        missing = sum(not any(_cluster_has(g, p) for g in groups) for p in pts)
        if extras or missing:
            note = "" if complete else ", refinement hit the cell cap"
            problems.append(f"{name}: {extras} extra, {missing} missing{note}")
    ok = not problems
    detail = f"{len(FIXTURE_NAMES)} fixtures at {SCAN_GRID}^2" + ("; " + "; ".join(problems) if problems else "")
    _report(7, ok, detail)
    assert ok, detail


def test_criterion_8_property_suite():
    problems = []
    diag = Poly2.variable("y1") - Poly2.variable("y2")
    n_points = 0
    for name in FIXTURE_NAMES:
        cfg = load_fixture(name)
        cs = build_closing_system(cfg.system)
        for P in (cs.Pplus, cs.Pminus):
            if not P.is_symmetric():
                problems.append(f"{name}: closing polynomial not symmetric")
            if exact_divide(P * diag, diag) != P:
                problems.append(f"{name}: exact_divide round-trip")
        poly = eliminate(cs).poly
        if not poly.is_zero():
            roots = isolate_real_roots(poly)
            for (a, b), (c, _) in zip([r.interval for r in roots], [r.interval for r in roots[1:]]):
                if not b < c:
                    problems.append(f"{name}: overlapping isolating intervals")
            for r in roots:
                a, b = r.interval
                if a != b and count_real_roots(poly, a, b) != 1:
                    problems.append(f"{name}: interval ({float(a)}, {float(b)}) not isolating")
        bad = []
        for pair in cfg.reference_pairs:
            for y in pair:
                n_points += 1
                if not is_crossing_point(cfg.system, Fraction(y)):
                    bad.append(float(y))
        if bad:
            problems.append(f"{name}: not crossing at {bad}")
    ok = not problems
    detail = f"{n_points} fixture points" + ("; " + "; ".join(problems) if problems else "")
    _report(8, ok, detail)
    assert ok, detail
