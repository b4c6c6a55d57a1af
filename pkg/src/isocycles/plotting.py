"""Phase portraits (SVG) and orbit samples (CSV) for verified cycles."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .centers import PiecewiseSystem, vector_field  # noqa: E402
from .verifier import CycleReport  # noqa: E402

CSV_COLUMNS = ("t", "x", "y", "half", "cycle_index")


def _view_box(reports: Sequence[CycleReport]) -> tuple[float, float, float, float]:
    pts = [(x, y) for r in reports for tr in r.traces for _, x, y in tr.samples]
    if not pts:
        return (-3.0, 3.0, -3.0, 3.0)
    xs, ys = zip(*pts)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    mx = 0.15 * max(x1 - x0, 1e-3)
    my = 0.15 * max(y1 - y0, 1e-3)
    return (min(x0 - mx, -mx), max(x1 + mx, mx), y0 - my, y1 + my)


def _piecewise_grid(pw: PiecewiseSystem, box, n: int = 60):
    xs = np.linspace(box[0], box[1], n)
    ys = np.linspace(box[2], box[3], n)
    X, Y = np.meshgrid(xs, ys)
    U = np.zeros_like(X)
    V = np.zeros_like(X)
    for spec, mask in ((pw.plus, X >= 0), (pw.minus, X < 0)):
        F = vector_field(spec)
        for (i, j), c in F.P.terms.items():
            U[mask] += float(c) * X[mask] ** i * Y[mask] ** j
        for (i, j), c in F.Q.terms.items():
            V[mask] += float(c) * X[mask] ** i * Y[mask] ** j
    return xs, ys, U, V


def plot_phase_portrait(
    pw: PiecewiseSystem,
    reports: Sequence[CycleReport],
    path,
    box: Optional[tuple[float, float, float, float]] = None,
    title: str = "",
) -> Path:
    """Streamlines of the piecewise field, the line x = 0, and each traced cycle."""
    box = box or _view_box(reports)
    xs, ys, U, V = _piecewise_grid(pw, box)
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.streamplot(xs, ys, U, V, color="0.75", density=1.2, linewidth=0.6, arrowsize=0.7)
    ax.axvline(0.0, color="k", linewidth=1.0, label="x = 0")
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for k, rep in enumerate(reports):
        if not rep.traces:
            continue
        col = colors[k % len(colors)]
        for tr in rep.traces:
            arr = np.array([(x, y) for _, x, y in tr.samples])
            ax.plot(arr[:, 0], arr[:, 1], color=col, linewidth=1.4)
        ends = [tr.start for tr in rep.traces]
        ax.plot([0, 0], [e[1] for e in ends], "o", color=col, markersize=4)
    ax.set_xlim(box[0], box[1])
    ax.set_ylim(box[2], box[3])
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    path = Path(path)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return path


def write_orbit_csv(reports: Sequence[CycleReport], path) -> Path:
    """One row per sample; time runs on through the second half of each cycle."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for k, rep in enumerate(reports):
            offset = 0.0
            for tr in rep.traces:
                for t, x, y in tr.samples:
                    w.writerow((repr(t + offset), repr(x), repr(y), tr.half, k))
                offset += tr.samples[-1][0]
    return path


__all__ = ["CSV_COLUMNS", "plot_phase_portrait", "write_orbit_csv"]
