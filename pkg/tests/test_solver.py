from fractions import Fraction

import pytest

from isocycles.algebra import Poly1, Poly2
from isocycles.closing import ClosingSystem, SigmaIntegral, build_closing_system
from isocycles.config import load_fixture
from isocycles.errors import NoConvergence
from isocycles.solver import (
    DEDUPE_TOL,
    RESIDUAL_TOL,
    ContinuumDetected,
    brute_force_scan,
    cluster_cells,
    refine,
    refine_cells,
    scaled_residual,
    solve_closing,
    worker_count,
)

Q = Fraction
Y1 = Poly2.variable("y1")
Y2 = Poly2.variable("y2")


def _closing(name):
    return build_closing_system(load_fixture(name).system)


def _toy(Pplus, Pminus):
    one = SigmaIntegral(Poly1([0, 1]), Poly1([1]))
    return ClosingSystem(Pplus, Pminus, (), "S3", "S4", one, one)


@pytest.fixture(scope="module")
def lc_s3():
    return _closing("lc-s3")


def test_refine_from_nearby_seed(lc_s3):
    p = refine(lc_s3, (-1.53, -0.02))
    assert p.y1 == pytest.approx(-1.53678, abs=1e-3)
    assert p.y2 == pytest.approx(-0.0187778, abs=1e-3)
    assert p.residual_plus <= RESIDUAL_TOL and p.residual_minus <= RESIDUAL_TOL
    assert p.jacobian_det != 0


def test_refine_is_stable_at_a_root(lc_s3):
    p = refine(lc_s3, (-1.53, -0.02))
    q = refine(lc_s3, (p.y1, p.y2))
    assert (q.y1, q.y2) == (p.y1, p.y2)


def test_exact_root_needs_no_iterations():
    cs = _toy(Y1 + Y2 - 1, Y1 - 2 * Y2)
    p = refine(cs, (2 / 3, 1 / 3))
    assert p.residual_plus < 1e-15 and p.residual_minus < 1e-15
    cs = _toy(Y1 + Y2 - 3, Y1 * Y2 - 2)
    p = refine(cs, (1.0, 2.0))
    assert (p.y1, p.y2) == (1.0, 2.0) and p.residuals == (0.0, 0.0)


def test_far_seed_does_not_converge(lc_s3):
    with pytest.raises(NoConvergence):
        refine(lc_s3, (100, 200))


def test_continuum_reported():
    cs = _toy(Y1 + Y2, Y1 + Y2)
    rep = solve_closing(cs)
    assert rep.continuum and rep.pairs == []
    with pytest.raises(ContinuumDetected):
        solve_closing(cs, raise_on_continuum=True)


def test_toy_system_pairs_ordered_and_symmetric():
    # circle y1^2 + y2^2 = 5 and the line y1 + y2 = 1: (-1, 2) and its mirror (2, -1)
    cs = _toy(Y1**2 + Y2**2 - 5, Y1 + Y2 - 1)
    rep = solve_closing(cs)
    assert [(p.y1, p.y2) for p in rep.pairs] == [pytest.approx((-1.0, 2.0), abs=1e-14)]


def test_diagonal_solutions_are_flagged_not_reported():
    # y1 + y2 = 2 and (y1 - 1)(y2 - 1) = 0 meet only at y1 = y2 = 1
    cs = _toy(Y1 + Y2 - 2, (Y1 - 1) * (Y2 - 1))
    rep = solve_closing(cs)
    assert rep.pairs == []
    assert rep.diagonal == [pytest.approx(1.0)]


def test_lc_s3_pairs(lc_s3):
    rep = solve_closing(lc_s3)
    assert rep.strategy == "linear solve" and rep.degree == 6
    assert len(rep.y2_roots) == 6
    assert len(rep.pairs) == 3
    for p in rep.pairs:
        assert p.y1 < p.y2
        assert scaled_residual(lc_s3.Pplus, p.y1_exact, p.y2_exact) <= RESIDUAL_TOL
        assert scaled_residual(lc_s3.Pminus, p.y1_exact, p.y2_exact) <= RESIDUAL_TOL
    assert rep.bound_check.pair_bound == 3


def test_s4_s4_pairs_include_printed_values():
    rep = solve_closing(_closing("s4-s4"))
    got = [(p.y1, p.y2) for p in rep.pairs]
    for want in [(-0.123252, 11.2846), (0.165367, 4.39164)]:
        assert any(abs(a - want[0]) < 1e-4 and abs(b - want[1]) < 1e-4 for a, b in got)


def test_pairs_invariant_under_swapping_sides():
    pw = load_fixture("s2-s3").system
    swapped = type(pw)(pw.minus, pw.plus, "swapped")
    a = solve_closing(build_closing_system(pw)).pairs
    b = solve_closing(build_closing_system(swapped)).pairs
    assert len(a) == len(b)
    for p, q in zip(a, b):
        assert p.y1 == pytest.approx(q.y1, abs=1e-9) and p.y2 == pytest.approx(q.y2, abs=1e-9)


def test_parallel_solve_matches_serial():
    cs = _closing("s3-s4")
    a = solve_closing(cs, workers=1).pairs
    b = solve_closing(cs, workers=4).pairs
    assert [(p.y1, p.y2) for p in a] == [(p.y1, p.y2) for p in b]


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.setenv("ISO_CYCLES_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("ISO_CYCLES_THREADS", "zero")
    assert worker_count() == 1


def test_pair_count_within_half_degree():
    for name in ("s1-s3", "s2-s2", "s3-s3"):
        rep = solve_closing(_closing(name))
        assert len(rep.pairs) <= rep.degree // 2


# ---------------------------------------------------------------------------
# brute-force oracle


def _refined_clusters(cs, box, n):
    fine, complete = refine_cells(cs, brute_force_scan(cs, box, n), 16)
    assert complete
    return cluster_cells(fine, 16)


def _contains(group, pt):
    w = group[0].y1_hi - group[0].y1_lo
    return any(c.y1_lo - w <= pt[0] <= c.y1_hi + w and c.y2_lo - w <= pt[1] <= c.y2_hi + w for c in group)


def test_scan_lc_s3_finds_pairs_and_mirrors(lc_s3):
    rep = solve_closing(lc_s3)
    groups = _refined_clusters(lc_s3, (-2, 1, -2, 1), 400)
    pts = [(p.y1, p.y2) for p in rep.pairs] + [(p.y2, p.y1) for p in rep.pairs]
    assert len(groups) == 6
    for g in groups:
        assert sum(_contains(g, pt) for pt in pts) == 1


def test_scan_s2_s2():
    cs = _closing("s2-s2")
    rep = solve_closing(cs)
    groups = _refined_clusters(cs, (-2, 4, -2, 4), 600)
    pts = [(p.y1, p.y2) for p in rep.pairs] + [(p.y2, p.y1) for p in rep.pairs]
    assert len(groups) == 6
    assert all(any(_contains(g, pt) for g in groups) for pt in pts)


def test_scan_empty_box(lc_s3):
    assert brute_force_scan(lc_s3, (5, 6, 5, 6), 50) == []


def test_scan_rejects_bad_input(lc_s3):
    with pytest.raises(ValueError):
        brute_force_scan(lc_s3, (1, 0, 0, 1), 10)
    with pytest.raises(ValueError):
        brute_force_scan(lc_s3, (0, 1, 0, 1), 1)


def test_refinement_drops_near_miss_cells():
    # two parallel lines 1e-3 apart never meet; a coarse grid cannot tell
    cs = _toy(Y1 - Y2, Y1 - Y2 - Q(1, 1000))
    cells = brute_force_scan(cs, (-1, 1, -1, 1), 20)
    assert cells
    fine, complete = refine_cells(cs, cells, 20)
    assert complete and fine == []


def test_refinement_reports_cap():
    cs = _toy(Y1 - Y2, Y1 - Y2 - Q(1, 10**9))
    fine, complete = refine_cells(cs, brute_force_scan(cs, (-1, 1, -1, 1), 20), 30, max_cells=1000)
    assert not complete and fine
