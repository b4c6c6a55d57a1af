import math
from fractions import Fraction

import pytest

from isocycles.algebra import Poly2
from isocycles.centers import AffineMap, CenterSpec, PiecewiseSystem, VectorField, vector_field
from isocycles.closing import build_closing_system
from isocycles.config import load_fixture
from isocycles.errors import NoReturn, WrongHalfPlane
from isocycles.pipeline import solve_system, verify_system
from isocycles.verifier import (
    CLOSURE_TOL,
    DRIFT_TOL,
    crossing_filter,
    integrate_half_orbit,
    is_crossing_point,
    trace_cycle,
    verify_cycle,
)

Q = Fraction
X = Poly2.variable("x", ("x", "y"))
Y = Poly2.variable("y", ("x", "y"))


@pytest.fixture(scope="module")
def s1_s2():
    pw = load_fixture("s1-s2").system
    return pw, solve_system(pw)


def test_crossing_point_on_long_orbit():
    assert is_crossing_point(load_fixture("s4-s4").system, Q("11.2846"))


def test_tangency_is_not_crossing():
    # both canonical S1 fields have x' = -y on x = 0
    spec = CenterSpec("S1", AffineMap.identity())
    pw = PiecewiseSystem(spec, spec)
    assert not is_crossing_point(pw, 0)
    assert is_crossing_point(pw, Q(1, 2))


def test_half_orbit_returns_to_switching_line(s1_s2):
    pw, _ = s1_s2
    # x' > 0 at (0, -0.433316) on the plus side
    tr = integrate_half_orbit(vector_field(pw.plus), (0.0, -0.433316), "plus")
    assert tr.end[0] == pytest.approx(0.0, abs=1e-12)
    assert tr.end[1] == pytest.approx(0.245584, abs=1e-5)
    assert all(x >= -1e-12 for _, x, _ in tr.samples)


def test_wrong_half_plane(s1_s2):
    pw, _ = s1_s2
    with pytest.raises(WrongHalfPlane):
        integrate_half_orbit(vector_field(pw.plus), (0.0, -0.433316), "minus")
    with pytest.raises(WrongHalfPlane):
        integrate_half_orbit(vector_field(pw.plus), (0.5, -0.433316), "plus")


def test_escaping_orbit_raises_no_return():
    # x' = 1 + x^2 blows up in finite time and never comes back
    F = VectorField(1 + X**2, Poly2.constant(0, ("x", "y")))
    with pytest.raises(NoReturn):
        integrate_half_orbit(F, (0.0, 1.0), "plus")


def test_fixture_cycles_verified(s1_s2):
    pw, sol = s1_s2
    reps = verify_system(pw, sol)
    assert len(reps) == 3
    for r in reps:
        assert r.verified and r.reason == ""
        assert r.closure_error <= CLOSURE_TOL
        assert max(r.drift_plus, r.drift_minus) <= DRIFT_TOL
        assert r.isolated and r.crossing_ok == (True, True)


def test_start_endpoint_does_not_change_verdict(s1_s2):
    pw, sol = s1_s2
    cs = sol.closing
    for p in sol.candidates:
        a = verify_cycle(pw, p, cs, start="y1")
        b = verify_cycle(pw, p, cs, start="y2")
        assert a.verdict == b.verdict == "verified"


def test_trace_cycle_closes(s1_s2):
    pw, sol = s1_s2
    p = sol.candidates[-1]
    traces, closure = trace_cycle(pw, p.y1, p.y2)
    assert [t.half for t in traces] == ["plus", "minus"]
    assert closure < 1e-8
    assert traces[0].end[1] == pytest.approx(p.y2, abs=1e-8)


def test_explicit_traversal_order(s1_s2):
    pw, sol = s1_s2
    p = sol.candidates[-1]
    good = verify_cycle(pw, (p.y1, p.y2), sol.closing)
    assert good.verified
    # read as "leave (0, 0.2456) into x > 0", which the flow does not do
    bad = verify_cycle(pw, (p.y2, p.y1), sol.closing)
    assert not bad.verified and bad.reason.startswith("orientation")


def test_singular_endpoint_rejected():
    pw = load_fixture("s2-s3").system
    T = pw.minus.params
    # the S3 integral has denominator (3 u^2 - 1)^3 and u = c + b y on x = 0
    y = (1 / math.sqrt(3) - float(T.c)) / float(T.b)
    r = verify_cycle(pw, (y, y + 1))
    assert not r.verified and r.reason.startswith("singular")


def test_non_cycle_rejected_by_integral(s1_s2):
    pw, sol = s1_s2
    r = verify_cycle(pw, (-0.433316, 0.3), sol.closing)
    assert not r.verified and r.reason.startswith("integral")


def test_tight_tolerance_rejects_on_closure(s1_s2):
    pw, sol = s1_s2
    r = verify_cycle(pw, sol.candidates[0], sol.closing, closure_tol=1e-15)
    assert not r.verified and r.reason.startswith("closure")


def test_crossing_filter_explains():
    spec = CenterSpec("S1", AffineMap.identity())
    pw = PiecewiseSystem(spec, spec)
    assert "not a crossing point" in crossing_filter(pw, 0, 1)
    assert "same direction" in crossing_filter(pw, 1, 2)
    assert crossing_filter(pw, -1, 1) is None


def test_closing_system_reused_matches_fresh(s1_s2):
    pw, sol = s1_s2
    p = sol.candidates[0]
    a = verify_cycle(pw, p, sol.closing)
    b = verify_cycle(pw, p, build_closing_system(pw))
    assert a.verdict == b.verdict
    assert a.closure_error == b.closure_error
