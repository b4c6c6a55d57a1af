"""End-to-end runs: closing system, solutions, crossing filter, verification."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .centers import PiecewiseSystem
from .closing import ClosingSystem, build_closing_system
from .solver import CrossingPair, Discarded, SolveReport, solve_closing, worker_count
from .verifier import CLOSURE_TOL, CycleReport, crossing_filter, verify_cycle


@dataclass
class SystemSolution:
    closing: ClosingSystem
    report: SolveReport
    # algebraic pairs that also pass the crossing and direction conditions
    candidates: list[CrossingPair] = field(default_factory=list)
    rejected: list[Discarded] = field(default_factory=list)


def solve_system(pw: PiecewiseSystem, workers: Optional[int] = None) -> SystemSolution:
    cs = build_closing_system(pw)
    report = solve_closing(cs, workers=workers)
    out = SystemSolution(cs, report)
    for p in report.pairs:
        reason = crossing_filter(pw, p.y1_exact, p.y2_exact)
        if reason is None:
            out.candidates.append(p)
        else:
            out.rejected.append(Discarded(p.y1, p.y2, reason))
    return out


def verify_system(
    pw: PiecewiseSystem,
    solution: Optional[SystemSolution] = None,
    workers: Optional[int] = None,
    closure_tol: float = CLOSURE_TOL,
) -> list[CycleReport]:
    """Verify every crossing candidate; reports come back in candidate order."""
    solution = solution or solve_system(pw, workers)
    cs = solution.closing
    n = workers or worker_count()

    def one(pair):
        return verify_cycle(pw, pair, cs, closure_tol=closure_tol)

    if n > 1 and len(solution.candidates) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(one, solution.candidates))
    return [one(p) for p in solution.candidates]


__all__ = ["SystemSolution", "solve_system", "verify_system"]
