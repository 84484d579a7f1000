"""Entanglement Matrix of a graph state.

Midpoints of the polygon chords are labeled ``1'..n'`` for the sides
(``k'`` between qubits ``k`` and ``k+1``), then ``(n+1)', ...`` for the
distinct midpoints of present non-side edges.  Each pair of side labels
``(i', j')`` cuts the polygon into the arcs ``{i+1..j}`` and the rest;
that cut's entropy fills entries ``(i', j')`` and ``(j', i')``.  Diagonal
entries count the present edges passing through each labeled midpoint.
All entries are integers in ebits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    AttributionError,
    InvalidBipartitionError,
    NumericalError,
    SizeLimitError,
)
from .geometry import (
    DEFAULT_TOL,
    PRIMARY,
    Chord,
    MidpointCensus,
    Point2,
    _frame,
    build_midpoint_census,
    primary_chord,
)
from .graphs import Graph, adjacency_matrix, cut_rank_rows, entropy_cut_rank, pair_index
from .statevec import MAX_QUBITS, graph_state_vector, reduced_spectrum, von_neumann_entropy

CUT_RANK = "cut-rank"
DENSE_SIM = "dense-sim"
BACKENDS = (CUT_RANK, DENSE_SIM)
ROUNDING_RESIDUAL = 1e-6


@dataclass(frozen=True)
class MidpointLabel:
    label: int
    kind: str
    record_id: Optional[int]
    chord: Optional[Chord]
    position: Optional[Point2]

    @property
    def name(self) -> str:
        return f"{self.label}'"


@dataclass(frozen=True)
class MidpointLabeling:
    n: int
    labels: tuple
    census: MidpointCensus

    @property
    def primary(self) -> tuple:
        return self.labels[: self.n]

    @property
    def secondary(self) -> tuple:
        return self.labels[self.n :]

    @property
    def names(self) -> list[str]:
        return [lb.name for lb in self.labels]

    def multiplicity(self, label: MidpointLabel) -> int:
        if label.record_id is None:
            return 0
        return self.census.by_id(label.record_id).multiplicity


def label_midpoints(g: Graph, tol: float = DEFAULT_TOL) -> MidpointLabeling:
    census = build_midpoint_census(g.n, g, tol)
    labels = []
    for k in range(1, g.n + 1):
        # for n = 2 the sides 1-2 and 2-1 are one chord; 2' keeps no record
        if k <= sum(1 for r in census.records if r.kind == PRIMARY):
            rec = census.by_id(k)
            labels.append(MidpointLabel(k, PRIMARY, rec.id, primary_chord(g.n, k), rec.position))
        else:
            labels.append(MidpointLabel(k, PRIMARY, None, None, None))
    for rec in census.records:
        if rec.kind == PRIMARY:
            continue
        chord = min(rec.generators)
        labels.append(MidpointLabel(len(labels) + 1, rec.kind, rec.id, chord, rec.position))
    return MidpointLabeling(g.n, tuple(labels), census)


def bipartition_from_primary_pair(n: int, i: int, j: int) -> tuple[tuple, tuple]:
    """Split qubits by the segment joining side midpoints ``i'`` and ``j'``.

    Returns ``({i+1, ..., j}, {j+1, ..., n, 1, ..., i})`` for ``i < j``.
    """
    if i == j:
        raise InvalidBipartitionError(f"primary pair needs distinct labels, got ({i}', {j}')")
    if not (1 <= i <= n and 1 <= j <= n):
        raise InvalidBipartitionError(f"labels ({i}', {j}') out of range for n={n}")
    if i > j:
        i, j = j, i
    part_a = tuple(range(i + 1, j + 1))
    part_b = tuple(range(j + 1, n + 1)) + tuple(range(1, i + 1))
    return part_a, part_b


@dataclass(frozen=True)
class EntanglementMatrix:
    labeling: MidpointLabeling
    entries: np.ndarray
    backend: str

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def names(self) -> list[str]:
        return self.labeling.names

    def entry(self, a: int, b: int) -> int:
        """Entry at 1-based labels ``(a', b')``."""
        return int(self.entries[a - 1, b - 1])


def _check_backend(backend: str, n: int) -> None:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if backend == DENSE_SIM and n > MAX_QUBITS:
        raise SizeLimitError(f"dense-sim backend supports n <= {MAX_QUBITS}, got {n}")


def _round_ebits(value: float) -> int:
    k = int(round(value))
    if abs(value - k) >= ROUNDING_RESIDUAL:
        raise NumericalError(f"entropy {value!r} is not within {ROUNDING_RESIDUAL} of an integer")
    return k


def cut_entropies(g: Graph, backend: str = CUT_RANK) -> dict[tuple[int, int], int]:
    """Entropy of every side-pair cut, keyed by label pair ``(i, j)``, ``i < j``."""
    _check_backend(backend, g.n)
    out = {}
    state = graph_state_vector(g) if backend == DENSE_SIM else None
    for i, j in itertools.combinations(range(1, g.n + 1), 2):
        part_a, _ = bipartition_from_primary_pair(g.n, i, j)
        if state is None:
            out[i, j] = entropy_cut_rank(g, part_a)
        else:
            out[i, j] = _round_ebits(von_neumann_entropy(reduced_spectrum(state, part_a)))
    return out


def build_entanglement_matrix(
    g: Graph, backend: str = CUT_RANK, tol: float = DEFAULT_TOL
) -> EntanglementMatrix:
    _check_backend(backend, g.n)
    labeling = label_midpoints(g, tol)
    m = len(labeling.labels)
    e = np.zeros((m, m), dtype=np.int64)
    for lb in labeling.labels:
        e[lb.label - 1, lb.label - 1] = labeling.multiplicity(lb)
    for (i, j), v in cut_entropies(g, backend).items():
        e[i - 1, j - 1] = e[j - 1, i - 1] = v
    return EntanglementMatrix(labeling, e, backend)


def total_entanglement(em: EntanglementMatrix) -> int:
    """Diagonal plus strict upper triangle."""
    return int(np.trace(em.entries) + np.triu(em.entries, k=1).sum())


def attribution_units(em: EntanglementMatrix, adjacency: np.ndarray) -> list[tuple[str, list]]:
    """For each labeled midpoint with a nonzero diagonal, the edges behind it.

    Candidate edges are the chords through the midpoint; the adjacency
    matrix decides which are present.  The count must equal the diagonal.
    """
    a = np.asarray(adjacency)
    n = em.labeling.n
    if a.shape != (n, n):
        raise AttributionError(f"adjacency shape {a.shape} does not match n={n}")
    out = []
    for lb in em.labeling.labels:
        d = em.entry(lb.label, lb.label)
        if lb.record_id is None:
            edges = []
        else:
            rec = em.labeling.census.by_id(lb.record_id)
            edges = sorted(
                (c.a, c.b) for c in rec.incident_chords if a[c.a - 1, c.b - 1] and a[c.b - 1, c.a - 1]
            )
        if len(edges) != d:
            raise AttributionError(
                f"midpoint {lb.name}: diagonal {d} but adjacency gives {len(edges)} edges {edges}"
            )
        if d:
            out.append((lb.name, edges))
    return out


def edge_attribution(em: EntanglementMatrix, adjacency: np.ndarray) -> dict[tuple[int, int], int]:
    """Diagonal ebits assigned to each present edge, one per midpoint it passes through."""
    totals: dict[tuple[int, int], int] = {}
    for _, edges in attribution_units(em, adjacency):
        for e in edges:
            totals[e] = totals.get(e, 0) + 1
    return dict(sorted(totals.items()))


def analyze_graph(g: Graph, backend: str = CUT_RANK, tol: float = DEFAULT_TOL):
    """Matrix, total and attribution in one call."""
    em = build_entanglement_matrix(g, backend, tol)
    return em, total_entanglement(em), edge_attribution(em, adjacency_matrix(g))


class TotalEvaluator:
    """Total entanglement straight from a packed edge mask, cut-rank backend.

    Precomputes the complete-graph geometry once per ``n`` so that totals
    for many labeled graphs on the same ``n`` avoid rebuilding a census.
    """

    def __init__(self, n: int, tol: float = DEFAULT_TOL):
        self.n = n
        fr = _frame(n, float(tol))
        self._bit = [pair_index(c.a, c.b) for c in fr.chords]
        self._side = [c.separation == 1 for c in fr.chords]
        if n == 2:
            self._side = [True]
        self._cluster = [int(x) for x in fr.cluster]
        self._incident = [np.flatnonzero(fr.incidence[i]).tolist() for i in range(len(fr.chords))]
        self._cuts = []
        for i, j in itertools.combinations(range(1, n + 1), 2):
            a = 0
            for v in range(i + 1, j + 1):
                a |= 1 << (v - 1)
            self._cuts.append(a)

    def total(self, mask: int) -> int:
        n = self.n
        present = [mask >> b & 1 for b in self._bit]
        diag = 0
        seen = set()
        for ci, on in enumerate(present):
            if not on:
                continue
            if self._side[ci]:
                diag += 1
                continue
            cl = self._cluster[ci]
            if cl in seen:
                continue
            seen.add(cl)
            diag += sum(present[x] for x in self._incident[ci])
        g = Graph.from_mask(n, mask)
        rows = g.rows()
        return diag + sum(cut_rank_rows(rows, a, n) for a in self._cuts)
