"""Adaptive Dormand-Prince 5(4) integration of planar fields up to the line x = 0.

Written on plain floats: for a two-dimensional system the per-step overhead of
a general-purpose array solver dominates, and the return to the switching line
is located by bisecting the step length until |x| <= 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NoReturn

Field = Callable[[float, float], tuple[float, float]]

RTOL = 1e-10
ATOL = 1e-12
EVENT_TOL = 1e-12
MAX_STEPS = 1_000_000
T_MAX = 1e3
# an orbit this far out has escaped (cubic fields can blow up in finite time)
ESCAPE_RADIUS = 1e8
# a step this small relative to the time reached means the step size has collapsed
H_MIN_REL = 1e-14

# Dormand-Prince coefficients
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
)


def dp_step(f: Field, x: float, y: float, h: float, k1=None):
    """One Dormand-Prince step; returns (x5, y5, err_x, err_y, k_last)."""
    ks = [k1 if k1 is not None else f(x, y)]
    for i in range(1, 7):
        ax = x + h * sum(a * k[0] for a, k in zip(_A[i], ks))
        ay = y + h * sum(a * k[1] for a, k in zip(_A[i], ks))
        ks.append(f(ax, ay))
    # the seventh stage is evaluated at the fifth-order solution (FSAL)
    nx = x + h * sum(b * k[0] for b, k in zip(_B, ks))
    ny = y + h * sum(b * k[1] for b, k in zip(_B, ks))
    ex = h * sum(e * k[0] for e, k in zip(_E, ks))
    ey = h * sum(e * k[1] for e, k in zip(_E, ks))
    return nx, ny, ex, ey, ks[6]


@dataclass
class HalfOrbit:
    samples: list[tuple[float, float, float]]
    end: tuple[float, float]
    t_end: float
    steps: int


def integrate_to_switching_line(
    f: Field,
    y0: float,
    side: int,
    rtol: float = RTOL,
    atol: float = ATOL,
    max_steps: int = MAX_STEPS,
    t_max: float = T_MAX,
) -> HalfOrbit:
    """Flow from (0, y0) into ``side * x > 0`` until the orbit returns to x = 0."""
    x, y, t = 0.0, float(y0), 0.0
    samples = [(t, x, y)]
    k1 = f(x, y)
    speed = math.hypot(*k1)
    h = 1e-3 / max(speed, 1e-3)
    steps = 0
    left = False
    while steps < max_steps:
        if t >= t_max:
            break
        h = min(h, t_max - t)
        if h < H_MIN_REL * max(t, 1.0):
            raise NoReturn(
                f"step size collapsed at t = {t:.6g}, (x, y) = ({x:.6g}, {y:.6g}) from y = {y0}"
            )
        nx, ny, ex, ey, klast = dp_step(f, x, y, h, k1)
        steps += 1
        sx = atol + rtol * max(abs(x), abs(nx))
        sy = atol + rtol * max(abs(y), abs(ny))
        err = math.sqrt(((ex / sx) ** 2 + (ey / sy) ** 2) / 2)
        if not math.isfinite(err):
            h /= 10
            continue
        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue
        if left and side * nx <= 0:
            return _locate(f, x, y, t, h, k1, side, samples, steps)
        if side * nx > 0:
            left = True
        elif not left and steps > 50:
            break
        x, y, t, k1 = nx, ny, t + h, klast
        if math.hypot(x, y) > ESCAPE_RADIUS:
            raise NoReturn(f"orbit from y = {y0} escaped past radius {ESCAPE_RADIUS:g} at t = {t:.6g}")
        samples.append((t, x, y))
        h *= min(5.0, 0.9 * err ** -0.2) if err > 0 else 5.0
    raise NoReturn(f"no return to x = 0 from y = {y0} within {steps} steps, t = {t:.3g}")


def _locate(f, x, y, t, h, k1, side, samples, steps):
    """Bisect the step length so the end point lands within EVENT_TOL of x = 0."""
    lo, hi = 0.0, h
    bx, by = x, y
    for _ in range(200):
        mid = (lo + hi) / 2
        mx, my, *_ = dp_step(f, x, y, mid, k1)
        if abs(mx) <= EVENT_TOL:
            bx, by, h = mx, my, mid
            break
        if side * mx > 0:
            lo = mid
        else:
            hi = mid
        bx, by, h = mx, my, mid
    samples.append((t + h, bx, by))
    return HalfOrbit(samples, (bx, by), t + h, steps)


__all__ = ["HalfOrbit", "dp_step", "integrate_to_switching_line"]
