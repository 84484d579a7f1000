"""Closed-form maximum entanglement and its constructive check.

The constructive total for the complete graph ``K_n`` is assembled from the
polygon census alone: every side-pair cut of ``K_n`` has cut rank 1, so the
side block contributes ``n(n+1)/2``; each other midpoint contributes its
multiplicity (chords through it).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, SizeLimitError, UnsupportedParityError
from .geometry import (
    CENTER,
    DEFAULT_TOL,
    PRIMARY,
    build_midpoint_census,
    ring_separation,
)

ODD = "odd"
EVEN_C_HALF_INT = "even-C-half-integer"
EVEN_C_HALF_NONINT = "even-C-half-nonint"
MULTIPLE_OF_12 = "multiple-of-12"
CASE_TAGS = (ODD, EVEN_C_HALF_INT, EVEN_C_HALF_NONINT, MULTIPLE_OF_12)

MAX_CONSTRUCTIVE_N = 48

FAMILY_ODD = "odd"
FAMILY_EVEN = "even"
FAMILY_12 = "multiple-of-12"
FAMILIES = (FAMILY_ODD, FAMILY_EVEN, FAMILY_12)


def ring_count(n: int) -> int:
    """Concentric rings of midpoints for even ``n``, side ring included."""
    return n // 2 - 1


def case_tag(n: int) -> str:
    if n % 2:
        return ODD
    if n % 12 == 0:
        return MULTIPLE_OF_12
    return EVEN_C_HALF_INT if ring_count(n) % 2 == 0 else EVEN_C_HALF_NONINT


def branch_value(n: int, tag: str) -> int:
    """Evaluate one branch polynomial at ``n`` regardless of which branch ``n`` belongs to.

    Even branches need ``n`` even to stay integral.
    """
    if tag == ODD:
        return n * n - n
    if n % 2:
        raise UnsupportedParityError(f"even branch {tag!r} needs even n, got {n}")
    h = n // 2
    # 5n^2/4 = 5h^2 ; 3n/2 = 3h ; 2n = 4h
    if tag == MULTIPLE_OF_12:
        return 5 * h * h
    if tag == EVEN_C_HALF_INT:
        return 5 * h * h - 3 * h
    if tag == EVEN_C_HALF_NONINT:
        return 5 * h * h - 4 * h
    raise DomainError(f"unknown case tag {tag!r}")


def emax_formula(n: int) -> tuple[int, str]:
    """Maximum total entanglement of ``n`` qubits from the piecewise closed form."""
    if n < 2:
        raise DomainError(f"closed form needs n >= 2, got {n}")
    tag = case_tag(n)
    return branch_value(n, tag), tag


def degree_count_model(n: int) -> tuple[int, int, int]:
    """(# degree-2 midpoints incl. the side ring, # degree-4 midpoints, center degree)."""
    if n % 2:
        raise UnsupportedParityError(f"degree model is for even n, got {n}")
    if n % 12 == 0:
        raise DomainError(f"n={n} is a multiple of 12; use replacement_model")
    c = ring_count(n)
    return n * math.ceil(c / 2), n * (c // 2), n


@dataclass(frozen=True)
class ReplacementModel:
    n: int
    replaced_degree: int
    new_degree: int
    ring_size: int

    @property
    def description(self) -> str:
        return f"{self.replaced_degree} replaced by {self.new_degree}"

    @property
    def gain(self) -> int:
        """Extra ebits from swapping one full ring."""
        return self.ring_size * (self.new_degree - self.replaced_degree) // 2

    def total(self) -> int:
        return branch_value(self.n, EVEN_C_HALF_NONINT) + self.gain


def replacement_model(n: int) -> ReplacementModel:
    """Which ring degree changes when ``n`` is a multiple of 12.

    Odd multiples swap a degree-2 ring for degree 6, even multiples a
    degree-4 ring for degree 8; the ring holds ``n`` midpoints.
    """
    if n <= 0 or n % 12:
        raise DomainError(f"replacement model needs a positive multiple of 12, got {n}")
    if (n // 12) % 2:
        return ReplacementModel(n, 2, 6, n)
    return ReplacementModel(n, 4, 8, n)


@dataclass(frozen=True)
class RingContribution:
    index: int
    separation: int
    count: int
    multiplicity: Optional[int]
    subtotal: int


@dataclass(frozen=True)
class MaxEntBreakdown:
    n: int
    primary_block: int
    per_ring: tuple
    center: int
    formula_total: int
    case_tag: str

    @property
    def constructive_total(self) -> int:
        return self.primary_block + sum(r.subtotal for r in self.per_ring) + self.center

    @property
    def match(self) -> bool:
        return self.constructive_total == self.formula_total


def emax_constructive(n: int, tol: float = DEFAULT_TOL) -> MaxEntBreakdown:
    if not 2 <= n <= MAX_CONSTRUCTIVE_N:
        raise SizeLimitError(f"constructive check supports 2 <= n <= {MAX_CONSTRUCTIVE_N}, got {n}")
    census = build_midpoint_census(n, None, tol)
    sides = sum(r.multiplicity for r in census.records if r.kind == PRIMARY)
    primary_block = sides + n * (n - 1) // 2
    per_ring = []
    center = 0
    for ring in census.rings:
        recs = [census.by_id(i) for i in ring.members]
        if all(r.kind == PRIMARY for r in recs):
            continue
        if all(r.kind == CENTER for r in recs):
            center = sum(r.multiplicity for r in recs)
            continue
        mults = {r.multiplicity for r in recs}
        per_ring.append(
            RingContribution(
                index=ring.index,
                separation=ring_separation(n, ring.radius),
                count=len(recs),
                multiplicity=mults.pop() if len(mults) == 1 else None,
                subtotal=sum(r.multiplicity for r in recs),
            )
        )
    value, tag = emax_formula(n)
    return MaxEntBreakdown(n, primary_block, tuple(per_ring), center, value, tag)


@dataclass(frozen=True)
class CensusTableRow:
    n: int
    total_midpoints: int
    histogram: dict = field(hash=False)
    rings: int

    def histogram_str(self) -> str:
        return " ".join(f"{d}:{c}" for d, c in sorted(self.histogram.items()))


def census_row(n: int, tol: float = DEFAULT_TOL) -> CensusTableRow:
    census = build_midpoint_census(n, None, tol)
    hist = dict(sorted(Counter(r.degree for r in census.records).items()))
    rings = sum(1 for r in census.rings if not r.is_center)
    return CensusTableRow(n, len(census.records), hist, rings)


def census_table(n_max: int, tol: float = DEFAULT_TOL) -> list[CensusTableRow]:
    if n_max > MAX_CONSTRUCTIVE_N:
        raise SizeLimitError(f"census table supports n_max <= {MAX_CONSTRUCTIVE_N}")
    return [census_row(n, tol) for n in range(3, n_max + 1)]


def expected_midpoints(n: int) -> int:
    return n * (n // 2 - 1) + 1 if n % 2 == 0 else n * (n - 1) // 2


@dataclass(frozen=True)
class ReportRow:
    n: int
    case: str
    formula: int
    constructive: int
    match: bool


def family(n: int) -> str:
    if n % 2:
        return FAMILY_ODD
    return FAMILY_12 if n % 12 == 0 else FAMILY_EVEN


def compare_rows(ns, breakdowns) -> list[ReportRow]:
    return [
        ReportRow(n, b.case_tag, b.formula_total, b.constructive_total, b.match)
        for n, b in zip(ns, breakdowns)
    ]


def compare_report(n_min: int, n_max: int, tol: float = DEFAULT_TOL, mapper=map) -> list[ReportRow]:
    """Formula vs constructive totals for every ``n`` in ``[n_min, n_max]``.

    ``mapper`` lets callers fan the per-``n`` work out to a pool; it must
    preserve input order.
    """
    if not 2 <= n_min <= n_max <= MAX_CONSTRUCTIVE_N:
        raise DomainError(f"range must satisfy 2 <= n_min <= n_max <= {MAX_CONSTRUCTIVE_N}")
    ns = list(range(n_min, n_max + 1))
    return compare_rows(ns, list(mapper(emax_constructive, ns, [tol] * len(ns))))


def plot_series(rows: list[ReportRow]) -> dict[str, list[tuple[int, int]]]:
    """(n, formula value) pairs split into odd / even / multiple-of-12 families."""
    out: dict[str, list[tuple[int, int]]] = {f: [] for f in FAMILIES}
    for r in rows:
        out[family(r.n)].append((r.n, r.formula))
    return out
