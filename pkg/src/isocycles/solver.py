"""Real solutions (y1, y2), y1 < y2, of a closing system."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import Poly1, Poly2, isolate_real_roots
from .closing import (
    RESULTANT,
    BoundReport,
    ClosingSystem,
    Elimination,
    bound_report,
    eliminate,
    solved_side,
)
from .errors import IsoCyclesError, NoConvergence

RESIDUAL_TOL = 1e-10
DEDUPE_TOL = 1e-8
MATCH_TOL = 1e-8
NEWTON_ITERS = 30
# exact polishing works on this dyadic grid
POLISH_BITS = 100


class ContinuumDetected(IsoCyclesError):
    """The eliminated polynomial vanishes identically: a continuum of solutions."""


@dataclass(frozen=True)
class CrossingPair:
    y1: float
    y2: float
    residual_plus: float
    residual_minus: float
    jacobian_det: float
    source_strategy: str
    # Newton point on a fine dyadic grid; the residuals are measured here
    y1_exact: Fraction = field(default=Fraction(0), repr=False, compare=False)
    y2_exact: Fraction = field(default=Fraction(0), repr=False, compare=False)
    # |det J| / (|grad Pplus| |grad Pminus|): sine of the angle between the curves
    transversality: float = field(default=0.0, compare=False)
    status: str = "unverified"

    @property
    def residuals(self) -> tuple[float, float]:
        return self.residual_plus, self.residual_minus

    def as_tuple(self) -> tuple[float, float]:
        return self.y1, self.y2


@dataclass(frozen=True)
class Discarded:
    y1: float
    y2: float
    reason: str


@dataclass
class SolveReport:
    pairs: list[CrossingPair]
    continuum: bool
    bound_check: Optional[BoundReport]
    strategy: str = ""
    degree: int = -1
    y2_roots: list[float] = field(default_factory=list)
    diagonal: list[float] = field(default_factory=list)
    discarded: list[Discarded] = field(default_factory=list)


def worker_count(default: int = 1) -> int:
    """Worker cap from ISO_CYCLES_THREADS (at least 1)."""
    raw = os.environ.get("ISO_CYCLES_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return default


# ---------------------------------------------------------------------------
# evaluation helpers


def scaled_residual(P: Poly2, y1, y2) -> float:
    """|P(y1, y2)| divided by the largest coefficient magnitude, exactly evaluated."""
    val = P.evaluate((Fraction(y1), Fraction(y2)))
    return float(abs(val) / P.max_abs_coeff())


class _Compiled:
    def __init__(self, P: Poly2):
        self.f = P.compile()
        self.f1 = P.derivative("y1").compile()
        self.f2 = P.derivative("y2").compile()
        self.scale = float(P.max_abs_coeff())
        terms = [(i, j, abs(float(c))) for (i, j), c in P.terms.items()]
        self.abs_f = Poly2._raw({(i, j): Fraction(c) for i, j, c in terms}, P.vars).compile()


def _float_newton(cp: _Compiled, cm: _Compiled, y1: float, y2: float) -> tuple[float, float]:
    def norm(a, b):
        return math.hypot(cp.f(a, b) / cp.scale, cm.f(a, b) / cm.scale)

    r = norm(y1, y2)
    for _ in range(NEWTON_ITERS):
        if not math.isfinite(r):
            break
        # stop at roundoff level: residual below the evaluation error bound
        noise = 1e-15 * (cp.abs_f(abs(y1), abs(y2)) / cp.scale + cm.abs_f(abs(y1), abs(y2)) / cm.scale)
        if r <= max(noise, 1e-300):
            break
        f, g = cp.f(y1, y2), cm.f(y1, y2)
        a, b = cp.f1(y1, y2), cp.f2(y1, y2)
        c, d = cm.f1(y1, y2), cm.f2(y1, y2)
        det = a * d - b * c
        if det == 0 or not math.isfinite(det):
            break
        s1 = (d * f - b * g) / det
        s2 = (a * g - c * f) / det
        lam = 1.0
        while lam > 1e-4:
            n1, n2 = y1 - lam * s1, y2 - lam * s2
            rn = norm(n1, n2)
            if math.isfinite(rn) and rn < r:
                break
            lam /= 2
        else:
            break
        if (n1, n2) == (y1, y2):
            break
        y1, y2, r = n1, n2, rn
    return y1, y2


def _round_grid(x: Fraction) -> Fraction:
    return Fraction(round(x * 2**POLISH_BITS), 2**POLISH_BITS)


def _exact_polish(cs: ClosingSystem, y1: float, y2: float, steps: int = 3):
    P, M = cs.Pplus, cs.Pminus
    dP1, dP2 = P.derivative("y1"), P.derivative("y2")
    dM1, dM2 = M.derivative("y1"), M.derivative("y2")
    a1, a2 = Fraction(y1), Fraction(y2)
    for _ in range(steps):
        pt = (a1, a2)
        f, g = P.evaluate(pt), M.evaluate(pt)
        if f == 0 and g == 0:
            break
        a, b, c, d = dP1.evaluate(pt), dP2.evaluate(pt), dM1.evaluate(pt), dM2.evaluate(pt)
        det = a * d - b * c
        if det == 0:
            break
        n1 = _round_grid(a1 - (d * f - b * g) / det)
        n2 = _round_grid(a2 - (a * g - c * f) / det)
        if (n1, n2) == (a1, a2):
            break
        a1, a2 = n1, n2
    return a1, a2


def refine(cs: ClosingSystem, pair: Sequence[float], strategy: str = "") -> CrossingPair:
    """Damped 2-D Newton on (Pplus, Pminus), then exact polishing.

    Raises NoConvergence when the scaled residuals stay above 1e-10.
    """
    cp, cm = _Compiled(cs.Pplus), _Compiled(cs.Pminus)
    y1, y2 = float(pair[0]), float(pair[1])
    if not (math.isfinite(y1) and math.isfinite(y2)):
        raise NoConvergence(f"non-finite seed {pair!r}")
    # an exact root needs no work
    if cs.Pplus.evaluate((Fraction(y1), Fraction(y2))) == 0 and cs.Pminus.evaluate(
        (Fraction(y1), Fraction(y2))
    ) == 0:
        e1, e2 = Fraction(y1), Fraction(y2)
    else:
        y1, y2 = _float_newton(cp, cm, y1, y2)
        if not (math.isfinite(y1) and math.isfinite(y2)):
            raise NoConvergence(f"Newton diverged from seed {tuple(pair)}")
        e1, e2 = _exact_polish(cs, y1, y2)
    rp = float(abs(cs.Pplus.evaluate((e1, e2))) / cs.Pplus.max_abs_coeff())
    rm = float(abs(cs.Pminus.evaluate((e1, e2))) / cs.Pminus.max_abs_coeff())
    if not (rp <= RESIDUAL_TOL and rm <= RESIDUAL_TOL):
        raise NoConvergence(
            f"seed {tuple(pair)}: residuals {rp:.3g}, {rm:.3g} above {RESIDUAL_TOL:g}"
        )
    f1, f2 = float(e1), float(e2)
    a, b = cp.f1(f1, f2), cp.f2(f1, f2)
    c, d = cm.f1(f1, f2), cm.f2(f1, f2)
    det = a * d - b * c
    gp, gm = math.hypot(a, b), math.hypot(c, d)
    trans = abs(det) / (gp * gm) if gp > 0 and gm > 0 else 0.0
    return CrossingPair(f1, f2, rp, rm, det, strategy, e1, e2, trans)


# ---------------------------------------------------------------------------
# back-substitution


def _candidate_y1(cs: ClosingSystem, elim: Elimination, root) -> list[float]:
    lo, hi = root.interval
    y2q = (lo + hi) / 2
    s = solved_side(cs) if elim.strategy != RESULTANT else None
    if s is not None:
        den = s.den(y2q)
        scale = float(s.den.max_abs_coeff()) * max(1.0, abs(float(y2q))) ** max(s.den.degree, 0)
        if abs(float(den)) > 1e-9 * scale:
            return [float(s.num(y2q) / den)]
    return _common_roots(cs, y2q)


def _common_roots(cs: ClosingSystem, y2q: Fraction) -> list[float]:
    """Roots y1 of both closing polynomials at y2 = y2q (approximately)."""
    polys = sorted((cs.Pplus, cs.Pminus), key=lambda p: p.degree_in("y1"))
    out = []
    for k, P in enumerate(polys):
        other = polys[1 - k]
        f = P.substitute("y2", y2q)
        if f.is_zero():
            continue
        if f.degree <= 0:
            return []
        g = other.substitute("y2", y2q)
        for r in isolate_real_roots(f):
            if g.is_zero() or _relative_value(g, r.value) <= MATCH_TOL:
                out.append(r.value)
        return out
    return out


def _relative_value(p: Poly1, x: float) -> float:
    """|p(x)| relative to the magnitude of its terms."""
    xq = Fraction(x)
    val = abs(p(xq))
    size = sum(abs(c) * abs(xq) ** i for i, c in enumerate(p.coeffs))
    return float(val / size) if size else 0.0


def _near_excluded(cs: ClosingSystem, y: float) -> bool:
    for den in cs.excluded_sets:
        if _relative_value(den, y) <= 1e-12:
            return True
    return False


def solve_closing(
    cs: ClosingSystem, workers: Optional[int] = None, raise_on_continuum: bool = False
) -> SolveReport:
    """All real pairs y1 < y2 of the closing system, refined and deduplicated."""
    elim = eliminate(cs)
    if elim.poly.is_zero():
        if raise_on_continuum:
            raise ContinuumDetected("eliminated polynomial is identically zero")
        return SolveReport([], True, None, elim.strategy, -1)
    report = SolveReport([], False, bound_report(cs, elim), elim.strategy, elim.poly.degree)
    roots = isolate_real_roots(elim.poly)
    report.y2_roots = [r.value for r in roots]

    def work(root):
        found = []
        for y1 in _candidate_y1(cs, elim, root):
            try:
                found.append(refine(cs, (y1, root.value), elim.strategy))
            except NoConvergence as exc:
                found.append(Discarded(y1, root.value, f"no convergence: {exc}"))
        return found

    n = workers or worker_count()
    if n > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = [x for batch in pool.map(work, roots) for x in batch]
    else:
        results = [x for root in roots for x in work(root)]

    kept: list[CrossingPair] = []
    for item in results:
        if isinstance(item, Discarded):
            report.discarded.append(item)
            continue
        if abs(item.y1 - item.y2) <= DEDUPE_TOL:
            if not any(abs(d - item.y1) <= DEDUPE_TOL for d in report.diagonal):
                report.diagonal.append(item.y1)
            continue
        if item.y1 > item.y2:
            continue
        if _near_excluded(cs, item.y1) or _near_excluded(cs, item.y2):
            report.discarded.append(Discarded(item.y1, item.y2, "denominator vanishes"))
            continue
        if any(max(abs(k.y1 - item.y1), abs(k.y2 - item.y2)) <= DEDUPE_TOL for k in kept):
            continue
        kept.append(item)
    kept.sort(key=lambda p: (p.y1, p.y2))
    report.pairs = kept
    report.diagonal.sort()
    return report


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class Cell:
    i: int
    j: int
    y1_lo: float
    y1_hi: float
    y2_lo: float
    y2_hi: float

    @property
    def center(self) -> tuple[float, float]:
        return (self.y1_lo + self.y1_hi) / 2, (self.y2_lo + self.y2_hi) / 2


def _grid_values(P: Poly2, Y1: np.ndarray, Y2: np.ndarray) -> np.ndarray:
    out = np.zeros_like(Y1)
    for (i, j), c in P.terms.items():
        out += float(c) * Y1**i * Y2**j
    return out


def _sign_change(V: np.ndarray) -> np.ndarray:
    corners = np.stack([V[:-1, :-1], V[1:, :-1], V[:-1, 1:], V[1:, 1:]])
    return (corners.min(axis=0) <= 0) & (corners.max(axis=0) >= 0)


def brute_force_scan(cs: ClosingSystem, box, grid_n: int) -> list[Cell]:
    """Grid cells of ``box = (y1_lo, y1_hi, y2_lo, y2_hi)`` where both polynomials change sign.

    The grid has ``grid_n`` cells per side. This is an independent check on
    :func:`solve_closing` that uses no elimination at all.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    a0, a1, b0, b1 = (float(v) for v in box)
    if not all(map(math.isfinite, (a0, a1, b0, b1))) or a0 >= a1 or b0 >= b1:
        raise ValueError(f"bad box {box!r}")
    g1 = np.linspace(a0, a1, grid_n + 1)
    g2 = np.linspace(b0, b1, grid_n + 1)
    Y1, Y2 = np.meshgrid(g1, g2, indexing="ij")
    mask = _sign_change(_grid_values(cs.Pplus, Y1, Y2)) & _sign_change(
        _grid_values(cs.Pminus, Y1, Y2)
    )
    return [
        Cell(int(i), int(j), g1[i], g1[i + 1], g2[j], g2[j + 1]) for i, j in zip(*np.nonzero(mask))
    ]


def refine_cells(
    cs: ClosingSystem, cells: list[Cell], levels: int, max_cells: int = 500_000
) -> tuple[list[Cell], bool]:
    """Quadtree refinement of sign-change cells.

    Each flagged cell is split in four and only children where both
    polynomials still change sign are kept, for ``levels`` rounds. Cells of two
    zero curves that pass close together without meeting drop out once the
    cell width falls below their separation. Returns the surviving cells,
    indexed on the finest grid, and False if ``max_cells`` stopped the descent
    early.
    """
    if not cells:
        return [], True
    w = cells[0].y1_hi - cells[0].y1_lo
    v = cells[0].y2_hi - cells[0].y2_lo
    a0 = cells[0].y1_lo - cells[0].i * w
    b0 = cells[0].y2_lo - cells[0].j * v
    I = np.array([c.i for c in cells], dtype=np.int64)
    J = np.array([c.j for c in cells], dtype=np.int64)
    done = 0
    for _ in range(levels):
        if len(I) == 0:
            break
        if 4 * len(I) > max_cells:
            break
        I = np.concatenate([2 * I, 2 * I + 1, 2 * I, 2 * I + 1])
        J = np.concatenate([2 * J, 2 * J, 2 * J + 1, 2 * J + 1])
        w, v = w / 2, v / 2
        ok = np.ones(len(I), dtype=bool)
        for P in (cs.Pplus, cs.Pminus):
            corners = np.stack(
                [
                    _grid_values(P, a0 + (I + di) * w, b0 + (J + dj) * v)
                    for di in (0, 1)
                    for dj in (0, 1)
                ]
            )
            ok &= (corners.min(axis=0) <= 0) & (corners.max(axis=0) >= 0)
        I, J = I[ok], J[ok]
        done += 1
    out = [
        Cell(int(i), int(j), a0 + i * w, a0 + (i + 1) * w, b0 + j * v, b0 + (j + 1) * v)
        for i, j in zip(I, J)
    ]
    return out, done == levels or len(I) == 0


def cluster_cells(cells: list[Cell], coarsen: int = 0) -> list[list[Cell]]:
    """Group cells that touch (including diagonally).

    With ``coarsen = k`` cells are compared on the grid 2**k times coarser, so
    refined cells that came from neighbouring coarse cells share a group.
    """
    buckets: dict[tuple[int, int], list[Cell]] = {}
    for c in cells:
        buckets.setdefault((c.i >> coarsen, c.j >> coarsen), []).append(c)
    seen: set = set()
    groups = []
    for key in buckets:
        if key in seen:
            continue
        stack, group = [key], []
        seen.add(key)
        while stack:
            i, j = stack.pop()
            group.extend(buckets[(i, j)])
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    nb = (i + di, j + dj)
                    if nb in buckets and nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
        groups.append(group)
    return groups


__all__ = [
    "Cell",
    "ContinuumDetected",
    "CrossingPair",
    "Discarded",
    "SolveReport",
    "brute_force_scan",
    "cluster_cells",
    "refine",
    "refine_cells",
    "scaled_residual",
    "solve_closing",
    "worker_count",
]
