"""Checks that a solution pair is a genuine crossing limit cycle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .centers import PiecewiseSystem, VectorField, integral_evaluator, vector_field
from .closing import ClosingSystem, SigmaIntegral, build_closing_system
from .errors import IsoCyclesError, NoReturn, WrongHalfPlane
from .ode import integrate_to_switching_line

CLOSURE_TOL = 1e-6
DRIFT_TOL = 1e-8
INTEGRAL_TOL = 1e-9
ISOLATION_TOL = 1e-10
SINGULAR_TOL = 1e-12

HALVES = {"plus": 1, "minus": -1}


@dataclass
class OrbitTrace:
    samples: list[tuple[float, float, float]]
    half: str
    start: tuple[float, float]
    end: tuple[float, float]
    drift: float


@dataclass
class CycleReport:
    pair: object
    crossing_ok: tuple[bool, bool]
    closure_error: float
    drift_plus: float
    drift_minus: float
    isolated: bool
    verdict: str
    traces: list[OrbitTrace] = field(default_factory=list, repr=False)

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    @property
    def reason(self) -> str:
        if self.verified:
            return ""
        return self.verdict[len("rejected(") : -1]


def _side_field(pw: PiecewiseSystem, half: str) -> VectorField:
    return vector_field(pw.plus if half == "plus" else pw.minus)


def _sigma_x(pw: PiecewiseSystem, half: str, y) -> Fraction:
    """Exact x-component of one side's field at (0, y)."""
    F = _side_field(pw, half)
    return F.P.evaluate((Fraction(0), Fraction(y)))


def is_crossing_point(pw: PiecewiseSystem, y) -> bool:
    """True iff X-(0, y) X+(0, y) > 0; tangencies give False."""
    return _sigma_x(pw, "plus", y) * _sigma_x(pw, "minus", y) > 0


def integrate_half_orbit(
    field_: VectorField, start: Sequence[float], half: str, integral=None
) -> OrbitTrace:
    """Integrate from ``start`` on x = 0 into the requested half-plane back to x = 0.

    ``integral`` is an optional float callable H(x, y) used for the drift
    measurement, relative to max(|H(start)|, 1).
    """
    side = HALVES[half]
    x0, y0 = float(start[0]), float(start[1])
    if abs(x0) > 1e-9:
        raise WrongHalfPlane(f"start {start!r} is not on x = 0")
    xdot = field_.P.evaluate((Fraction(0), Fraction(y0)))
    if side * xdot <= 0:
        raise WrongHalfPlane(
            f"field x-component {float(xdot):.3g} at (0, {y0}) does not enter the {half} half-plane"
        )
    orbit = integrate_to_switching_line(field_.compile(), y0, side)
    drift = 0.0
    if integral is not None:
        h0 = integral(0.0, y0)
        norm = max(abs(h0), 1.0)
        drift = max(abs(integral(x, y) - h0) for _, x, y in orbit.samples) / norm
    return OrbitTrace(orbit.samples, half, (0.0, y0), orbit.end, drift)


def _singular(cs: ClosingSystem, y: float) -> bool:
    for h in (cs.hplus, cs.hminus):
        if h.den.degree <= 0:
            continue
        yq = Fraction(y)
        size = sum(abs(c) * abs(yq) ** i for i, c in enumerate(h.den.coeffs))
        if abs(h.den(yq)) <= SINGULAR_TOL * size:
            return True
    return False


def _integral_gap(h: SigmaIntegral, a: Fraction, b: Fraction) -> float:
    ha, hb = h(a), h(b)
    return float(abs(ha - hb) / max(abs(ha), abs(hb), 1))


def _transversality(cs: ClosingSystem, y1: float, y2: float) -> float:
    pt = (y1, y2)
    a = cs.Pplus.derivative("y1").evaluate(pt)
    b = cs.Pplus.derivative("y2").evaluate(pt)
    c = cs.Pminus.derivative("y1").evaluate(pt)
    d = cs.Pminus.derivative("y2").evaluate(pt)
    gp, gm = math.hypot(a, b), math.hypot(c, d)
    if gp == 0 or gm == 0:
        return 0.0
    return abs(a * d - b * c) / (gp * gm)


def _endpoints(pair) -> tuple[float, float, Optional[Fraction], Optional[Fraction], Optional[float]]:
    if hasattr(pair, "y1_exact"):
        return pair.y1, pair.y2, pair.y1_exact, pair.y2_exact, pair.transversality
    y1, y2 = pair
    return float(y1), float(y2), None, None, None


def trace_cycle(
    pw: PiecewiseSystem, first: float, second: Optional[float] = None
) -> tuple[list[OrbitTrace], float]:
    """Follow the orbit from (0, first) through both halves back to x = 0.

    The half entered first is the one the flow points into at the start. The
    closure error is the largest gap between where a half-orbit lands and
    where the cycle says it should: ``second`` after the first half (when
    given) and ``first`` after the second half.
    """
    first_half = "plus" if _sigma_x(pw, "plus", first) > 0 else "minus"
    other_half = "minus" if first_half == "plus" else "plus"
    specs = {"plus": pw.plus, "minus": pw.minus}
    traces = []
    y = first
    for half in (first_half, other_half):
        spec = specs[half]
        tr = integrate_half_orbit(vector_field(spec), (0.0, y), half, integral_evaluator(spec))
        traces.append(tr)
        y = tr.end[1]
    gaps = [abs(traces[1].end[1] - first)]
    if second is not None:
        gaps.append(abs(traces[0].end[1] - second))
    return traces, max(gaps)


def verify_cycle(
    pw: PiecewiseSystem,
    pair,
    cs: Optional[ClosingSystem] = None,
    start: Optional[str] = None,
    closure_tol: float = CLOSURE_TOL,
) -> CycleReport:
    """Run the crossing, integral, closure and isolation checks on one pair.

    ``pair`` is a CrossingPair or a plain ``(y1, y2)``. With ``y1 < y2`` the
    traversal starts wherever the flow enters x > 0 (or at the endpoint named
    by ``start``). A plain pair with ``y1 > y2`` is read as an explicit
    traversal order: the orbit must leave (0, y1) into x > 0.
    """
    cs = cs or build_closing_system(pw)
    y1, y2, e1, e2, trans = _endpoints(pair)
    q1 = e1 if e1 is not None else Fraction(y1)
    q2 = e2 if e2 is not None else Fraction(y2)

    def reject(reason, crossing=(False, False), closure=math.nan, dp=math.nan, dm=math.nan,
               isolated=False, traces=()):
        return CycleReport(pair, crossing, closure, dp, dm, isolated, f"rejected({reason})",
                           list(traces))

    if _singular(cs, y1) or _singular(cs, y2):
        return reject("singular: a first-integral denominator vanishes")
    crossing = (is_crossing_point(pw, q1), is_crossing_point(pw, q2))
    if not all(crossing):
        return reject("crossing: an endpoint is not a crossing point", crossing)
    s1 = _sigma_x(pw, "plus", q1) > 0
    s2 = _sigma_x(pw, "plus", q2) > 0
    if s1 == s2:
        return reject("orientation: the flow crosses x = 0 the same way at both ends", crossing)
    if y1 > y2 and not s1:
        return reject("orientation: the first half-orbit leaves into x < 0", crossing)
    gap = max(_integral_gap(cs.hplus, q1, q2), _integral_gap(cs.hminus, q1, q2))
    if gap > INTEGRAL_TOL:
        return reject(f"integral: first integrals differ by {gap:.3g}", crossing)

    if start is None:
        first, second = (y1, y2) if s1 else (y2, y1)
    else:
        first, second = (y1, y2) if start == "y1" else (y2, y1)
    try:
        traces, closure = trace_cycle(pw, first, second)
    except (NoReturn, WrongHalfPlane) as exc:
        return reject(f"orbit: {exc}", crossing)
    by_half = {t.half: t for t in traces}
    dp, dm = by_half["plus"].drift, by_half["minus"].drift
    if trans is None:
        trans = _transversality(cs, y1, y2)
    isolated = trans > ISOLATION_TOL
    common = dict(crossing=crossing, closure=closure, dp=dp, dm=dm, isolated=isolated,
                  traces=traces)
    if closure > closure_tol:
        return reject(f"closure: orbit misses by {closure:.3g}", **common)
    if max(dp, dm) > DRIFT_TOL:
        return reject(f"drift: first integral drifts by {max(dp, dm):.3g}", **common)
    if not isolated:
        return reject("isolation: singular Jacobian of the closing system", **common)
    return CycleReport(pair, crossing, closure, dp, dm, isolated, "verified", traces)


def crossing_filter(pw: PiecewiseSystem, y1, y2) -> Optional[str]:
    """Why a solution pair cannot be a crossing cycle, or None if it can."""
    try:
        c1, c2 = is_crossing_point(pw, y1), is_crossing_point(pw, y2)
    except IsoCyclesError as exc:  # pragma: no cover
        return str(exc)
    if not c1 or not c2:
        which = " and ".join(f"y = {float(y):.6g}" for y, ok in ((y1, c1), (y2, c2)) if not ok)
        return f"not a crossing point at {which}"
    if (_sigma_x(pw, "plus", y1) > 0) == (_sigma_x(pw, "plus", y2) > 0):
        return "flow crosses x = 0 in the same direction at both ends"
    return None


__all__ = [
    "CycleReport",
    "OrbitTrace",
    "crossing_filter",
    "integrate_half_orbit",
    "is_crossing_point",
    "trace_cycle",
    "verify_cycle",
]
