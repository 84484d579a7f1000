"""Matplotlib figures written next to the CLI's delimited output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402

from .classify import ClassificationTable  # noqa: E402
from .formulas import (  # noqa: E402
    EVEN_C_HALF_INT,
    EVEN_C_HALF_NONINT,
    FAMILIES,
    MULTIPLE_OF_12,
    ODD,
    ReportRow,
    branch_value,
    family,
)
from .geometry import MidpointCensus  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 11,
    "legend.fontsize": 8,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
}
MARKERS = {"odd": "o", "even": "s", "multiple-of-12": "D"}
# PNG metadata left empty so repeated runs write identical bytes
PNG_META = {"Software": None}


def _figure(width: float = 6.0) -> Figure:
    golden = (math.sqrt(5) - 1.0) / 2.0
    return Figure(figsize=(width, width * golden), dpi=120)


def _save(fig: Figure, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata=PNG_META)
    return path


@matplotlib.rc_context(STYLE)
def plot_maxent(rows: list[ReportRow], path) -> Path:
    """Closed-form branches as lines, constructive totals as markers."""
    fig = _figure()
    ax = fig.add_subplot(111)
    ns = [r.n for r in rows]
    lo, hi = min(ns), max(ns)
    grid = list(range(lo, hi + 1))
    odd = [n for n in grid if n % 2]
    even = [n for n in grid if n % 2 == 0]
    if odd:
        ax.plot(odd, [branch_value(n, ODD) for n in odd], lw=1, color="C0", label=r"$N^2-N$")
    for tag, colour, label in (
        (EVEN_C_HALF_INT, "C1", r"$5N^2/4-3N/2$"),
        (EVEN_C_HALF_NONINT, "C2", r"$5N^2/4-2N$"),
        (MULTIPLE_OF_12, "C3", r"$5N^2/4$"),
    ):
        if even:
            ax.plot(even, [branch_value(n, tag) for n in even], lw=0.8, ls="--", color=colour, label=label)
    for fam in FAMILIES:
        pts = [(r.n, r.constructive) for r in rows if family(r.n) == fam]
        if pts:
            x, y = zip(*pts)
            ax.plot(x, y, ls="none", marker=MARKERS[fam], ms=4, color="k", mfc="none",
                    label=f"constructive ({fam})")
    ax.set_xlabel("qubits $N$")
    ax.set_ylabel("maximum entanglement (ebits)")
    ax.legend(loc="upper left", frameon=False)
    return _save(fig, path)


@matplotlib.rc_context(STYLE)
def plot_census(census: MidpointCensus, path) -> Path:
    """Degree of each ring from the outside in."""
    fig = _figure()
    ax = fig.add_subplot(111)
    for ring in census.rings:
        for d in sorted(set(ring.degrees)):
            ax.bar(ring.index, d, width=0.7, color="C3" if ring.is_center else "C0", alpha=0.8)
    ax.set_xlabel("ring (0 = outermost)")
    ax.set_ylabel("midpoint degree")
    ax.set_title(f"n = {census.n}: {len(census.records)} midpoints")
    return _save(fig, path)


@matplotlib.rc_context(STYLE)
def plot_classification(table: ClassificationTable, path) -> Path:
    fig = _figure()
    ax = fig.add_subplot(111)
    xs = list(range(1, len(table.rows) + 1))
    totals = [r.total_entanglement for r in table.rows]
    ax.bar(xs, totals, color="C0", alpha=0.8)
    if all(r.min_total is not None for r in table.rows):
        lo = [t - r.min_total for t, r in zip(totals, table.rows)]
        hi = [r.max_total - t for t, r in zip(totals, table.rows)]
        ax.errorbar(xs, totals, yerr=[lo, hi], fmt="none", ecolor="k", capsize=2, lw=0.8)
    ax.set_xlabel("class")
    ax.set_ylabel("total entanglement (ebits)")
    ax.set_title(f"{table.n} qubits: {len(table.rows)} classes")
    return _save(fig, path)
