"""Regular-polygon embedding of qubits and the chord-midpoint census.

Qubit ``k`` (1-based) sits on the unit circle at angle ``2*pi*(k-1)/n``,
labels increasing counterclockwise.  Every pair of qubits spans a chord;
the census collects the distinct chord midpoints and counts, for each,
how many chords of a given edge set pass through it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .errors import (
    CoincidenceAmbiguityError,
    DomainError,
    InvalidSizeError,
    UnsupportedParityError,
)

DEFAULT_TOL = 1e-9
AMBIGUITY_FACTOR = 10.0

PRIMARY = "primary"
SECONDARY = "secondary"
CENTER = "center"


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    @property
    def radius(self) -> float:
        return math.hypot(self.x, self.y)

    def distance(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair of distinct vertices of the ``n``-gon, stored with ``a < b``."""

    a: int
    b: int
    n: int = field(compare=False)

    def __post_init__(self):
        a, b, n = int(self.a), int(self.b), int(self.n)
        if a == b:
            raise ValueError(f"chord endpoints must differ, got ({a}, {b})")
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"chord ({a}, {b}) out of range for n={n}")
        if a > b:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n", n)

    @property
    def separation(self) -> int:
        d = self.b - self.a
        return min(d, self.n - d)

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"


def _vertex_array(n: int) -> np.ndarray:
    k = np.arange(n)
    ang = 2.0 * np.pi * k / n
    return np.column_stack([np.cos(ang), np.sin(ang)])


def embed_polygon(n: int) -> list[Point2]:
    """Vertices of the regular ``n``-gon on the unit circle, vertex 1 at angle 0."""
    if n < 1:
        raise InvalidSizeError(f"polygon needs at least one vertex, got n={n}")
    return [Point2(float(x), float(y)) for x, y in _vertex_array(n)]


def chord_midpoint(n: int, c: Chord) -> Point2:
    v = _vertex_array(n)
    m = 0.5 * (v[c.a - 1] + v[c.b - 1])
    return Point2(float(m[0]), float(m[1]))


def point_on_chord(p: Point2, c: Chord, n: int, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``p`` lies on the closed segment of ``c`` within distance ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = _vertex_array(n)
    a, b = v[c.a - 1], v[c.b - 1]
    u = b - a
    w = np.array([p.x, p.y]) - a
    length = float(np.hypot(*u))
    perp = abs(u[0] * w[1] - u[1] * w[0]) / length
    t = float(np.dot(w, u)) / (length * length)
    slack = tol / length
    return perp <= tol and -slack <= t <= 1.0 + slack


@dataclass(frozen=True)
class MidpointRecord:
    id: int
    position: Point2
    kind: str
    separation: int
    generators: frozenset
    incident_chords: frozenset
    ring_radius: float

    @property
    def multiplicity(self) -> int:
        return len(self.incident_chords)

    @property
    def degree(self) -> int:
        # every chord through the point contributes two rays
        return 2 * len(self.incident_chords)


@dataclass(frozen=True)
class Ring:
    index: int
    radius: float
    members: tuple
    degrees: tuple

    @property
    def is_center(self) -> bool:
        return self.radius == 0.0


@dataclass(frozen=True)
class MidpointCensus:
    n: int
    restriction: Optional[frozenset]
    records: tuple
    rings: tuple
    tol: float = DEFAULT_TOL

    @property
    def complete(self) -> bool:
        return self.restriction is None

    def by_id(self, rid: int) -> MidpointRecord:
        return self.records[rid - 1]

    @property
    def center(self) -> Optional[MidpointRecord]:
        for r in self.records:
            if r.kind == CENTER:
                return r
        return None

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(r.degree for r in self.records).items()))


@dataclass(frozen=True)
class _Frame:
    """All chords of the n-gon in scan order with their midpoint geometry."""

    n: int
    tol: float
    chords: tuple
    index: dict
    mids: np.ndarray
    cluster: np.ndarray
    incidence: np.ndarray


def scan_chords(n: int) -> list[Chord]:
    """All chords ordered by smaller endpoint, then larger endpoint."""
    return [Chord(a, b, n) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


@lru_cache(maxsize=64)
def _frame(n: int, tol: float) -> _Frame:
    chords = tuple(scan_chords(n))
    k = len(chords)
    v = _vertex_array(n)
    ia = np.array([c.a - 1 for c in chords], dtype=int)
    ib = np.array([c.b - 1 for c in chords], dtype=int)
    pa, pb = v[ia], v[ib]
    mids = 0.5 * (pa + pb)
    band = AMBIGUITY_FACTOR * tol

    # coincident midpoints
    diff = mids[:, None, :] - mids[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    close = dist <= tol
    shaky = (dist > tol) & (dist <= band)
    if shaky.any():
        i, j = np.argwhere(shaky)[0]
        raise CoincidenceAmbiguityError(
            f"n={n}: midpoints of {chords[i]} and {chords[j]} are {dist[i, j]:.3e} apart "
            f"(tol={tol:g})"
        )
    cluster = np.argmax(close, axis=1)

    # incidence of every midpoint on every closed chord segment
    u = pb - pa
    length = np.hypot(u[:, 0], u[:, 1])
    w = mids[:, None, :] - pa[None, :, :]
    cross = u[None, :, 0] * w[..., 1] - u[None, :, 1] * w[..., 0]
    perp = np.abs(cross) / length[None, :]
    t = (w[..., 0] * u[None, :, 0] + w[..., 1] * u[None, :, 1]) / (length**2)[None, :]
    slack = tol / length[None, :]
    within = (t >= -slack) & (t <= 1.0 + slack)
    incidence = (perp <= tol) & within
    shaky = (perp > tol) & (perp <= band) & within
    if shaky.any():
        i, j = np.argwhere(shaky)[0]
        raise CoincidenceAmbiguityError(
            f"n={n}: midpoint of {chords[i]} is {perp[i, j]:.3e} from chord {chords[j]} "
            f"(tol={tol:g})"
        )
    index = {c: i for i, c in enumerate(chords)}
    assert incidence.shape == (k, k)
    return _Frame(n, tol, chords, index, mids, cluster, incidence)


def _restriction_chords(n: int, restriction) -> Optional[frozenset]:
    if restriction is None or restriction == "complete":
        return None
    edges = getattr(restriction, "edges", restriction)
    out = set()
    for e in edges:
        c = e if isinstance(e, Chord) else Chord(e[0], e[1], n)
        out.add(c)
    return frozenset(out)


def primary_chord(n: int, k: int) -> Chord:
    """Chord between qubit ``k`` and its successor ``k+1`` (``n`` wraps to 1)."""
    return Chord(k, k % n + 1, n)


def build_midpoint_census(n: int, restriction=None, tol: float = DEFAULT_TOL) -> MidpointCensus:
    """Distinct chord midpoints with degrees counted over ``restriction``.

    ``restriction`` is ``None`` (all chords), a graph-like object with an
    ``edges`` attribute, or an iterable of vertex pairs.  Side midpoints
    ``1..n`` are always present; other records appear only for chords in
    the restriction.  Record ids follow the labeling order: sides first,
    then remaining chords by (smaller endpoint, larger endpoint), with
    coincident positions merged into the first record that reaches them.
    """
    if n < 2:
        raise InvalidSizeError(f"census needs n >= 2, got {n}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fr = _frame(n, float(tol))
    present = _restriction_chords(n, restriction)
    is_present = [present is None or c in present for c in fr.chords]
    present_idx = np.flatnonzero(is_present)

    slots: list[tuple[int, str]] = []
    seen: set[int] = set()
    for k in range(1, n + 1):
        ci = fr.index[primary_chord(n, k)]
        cl = int(fr.cluster[ci])
        if cl in seen:
            continue
        seen.add(cl)
        slots.append((ci, PRIMARY))
    for ci, c in enumerate(fr.chords):
        if not is_present[ci] or c.separation == 1:
            continue
        cl = int(fr.cluster[ci])
        if cl in seen:
            continue
        seen.add(cl)
        slots.append((ci, SECONDARY))

    records = []
    for rid, (ci, slot_kind) in enumerate(slots, start=1):
        cl = fr.cluster[ci]
        pos = Point2(float(fr.mids[ci, 0]), float(fr.mids[ci, 1]))
        radius = pos.radius
        if slot_kind == PRIMARY:
            kind = PRIMARY
        elif radius <= tol:
            kind = CENTER
            radius = 0.0
        else:
            kind = SECONDARY
        gens = frozenset(fr.chords[j] for j in present_idx if fr.cluster[j] == cl)
        inc = frozenset(fr.chords[j] for j in present_idx if fr.incidence[ci, j])
        records.append(
            MidpointRecord(rid, pos, kind, fr.chords[ci].separation, gens, inc, radius)
        )

    return MidpointCensus(n, present, tuple(records), _group_rings(records, tol), float(tol))


def _group_rings(records: list[MidpointRecord], tol: float) -> tuple:
    order = sorted(records, key=lambda r: (-r.ring_radius, r.id))
    groups: list[list[MidpointRecord]] = []
    for r in order:
        if groups and abs(groups[-1][0].ring_radius - r.ring_radius) <= tol:
            groups[-1].append(r)
        else:
            groups.append([r])
    rings = []
    for i, g in enumerate(groups):
        g.sort(key=lambda r: r.id)
        rings.append(
            Ring(i, g[0].ring_radius, tuple(r.id for r in g), tuple(r.degree for r in g))
        )
    return tuple(rings)


@dataclass(frozen=True)
class RingProfile:
    index: int
    radius: float
    size: int
    degree: Optional[int]
    mixed: bool
    center: bool


def ring_degree_profile(census: MidpointCensus) -> list[RingProfile]:
    """Common degree of each ring, outermost first, center last."""
    if census.n % 2:
        raise UnsupportedParityError(f"ring profile is defined for even n, got n={census.n}")
    if not census.complete:
        raise DomainError("ring profile requires the complete-graph census")
    out = []
    for ring in census.rings:
        degs = set(ring.degrees)
        mixed = len(degs) > 1
        out.append(
            RingProfile(
                ring.index,
                ring.radius,
                len(ring.members),
                None if mixed else degs.pop(),
                mixed,
                ring.is_center,
            )
        )
    return out


def ring_separation(n: int, radius: float) -> int:
    """Chord separation whose midpoints lie at ``radius`` (``cos(pi*s/n) = radius``)."""
    return int(round(math.acos(max(-1.0, min(1.0, radius))) * n / math.pi))
