"""Crossing limit cycles of piecewise systems built from isochronous centers."""

from .centers import AffineMap, CenterSpec, LinearCenterParams, PiecewiseSystem, first_integral, vector_field
from .closing import ClosingSystem, bound_report, build_closing_system, eliminate, max_cycles_bound
from .config import FIXTURE_NAMES, SystemConfig, load_config, load_fixture
from .pipeline import SystemSolution, solve_system, verify_system
from .solver import CrossingPair, SolveReport, brute_force_scan, solve_closing
from .verifier import CycleReport, is_crossing_point, verify_cycle

__all__ = [
    "AffineMap",
    "CenterSpec",
    "ClosingSystem",
    "CrossingPair",
    "CycleReport",
    "FIXTURE_NAMES",
    "LinearCenterParams",
    "PiecewiseSystem",
    "SolveReport",
    "SystemConfig",
    "SystemSolution",
    "bound_report",
    "brute_force_scan",
    "build_closing_system",
    "eliminate",
    "first_integral",
    "is_crossing_point",
    "load_config",
    "load_fixture",
    "max_cycles_bound",
    "solve_closing",
    "solve_system",
    "vector_field",
    "verify_cycle",
    "verify_system",
]
