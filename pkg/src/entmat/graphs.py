"""Labeled simple graphs on qubits ``1..n``, cut rank, and isomorphism classes."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphValidationError, InvalidBipartitionError, SizeLimitError
from .gf2 import gf2_rank_packed

MAX_CANONICAL_N = 8
MAX_ENUMERATE_N = 7

FULLY_SEPARABLE = "Fully Separable"
BI_SEPARABLE = "Bi-Separable"
ENTANGLED = "Entangled"
FULLY_ENTANGLED = "Fully Entangled"
DESCRIPTORS = (FULLY_SEPARABLE, BI_SEPARABLE, ENTANGLED, FULLY_ENTANGLED)


def pair_index(i: int, j: int) -> int:
    """Bit position of edge ``{i, j}`` (1-based, any order) in a packed edge set."""
    if i > j:
        i, j = j, i
    return (j - 2) * (j - 1) // 2 + (i - 1)


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def _index_pairs(n: int) -> tuple:
    out = [None] * n_pairs(n)
    for j in range(2, n + 1):
        for i in range(1, j):
            out[pair_index(i, j)] = (i, j)
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def mask(self) -> int:
        m = 0
        for i, j in self.edges:
            m |= 1 << pair_index(i, j)
        return m

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Graph":
        pairs = _index_pairs(n)
        return cls(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def rows(self) -> list[int]:
        """Neighbourhood of vertex ``v`` as a bitmask (bit ``u-1`` for neighbour ``u``)."""
        rows = [0] * self.n
        for i, j in self.edges:
            rows[i - 1] |= 1 << (j - 1)
            rows[j - 1] |= 1 << (i - 1)
        return rows

    def __len__(self) -> int:
        return len(self.edges)


def make_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise GraphValidationError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphValidationError(f"edge {tuple(e)!r} is not a pair")
        i, j = (int(x) for x in e)
        if i == j:
            raise GraphValidationError(f"self-loop ({i}, {j}) not allowed")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphValidationError(f"edge ({i}, {j}) out of range for n={n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphValidationError(f"duplicate edge ({i}, {j})")
        seen.add(key)
    return Graph(n, frozenset(seen))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply ``v -> perm[v-1]`` (a permutation of ``1..n``)."""
    return make_graph(g.n, [(perm[i - 1], perm[j - 1]) for i, j in g.edges])


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.uint8)
    for i, j in g.edges:
        a[i - 1, j - 1] = a[j - 1, i - 1] = 1
    return a


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]})


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphValidationError(f"invalid graph JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphValidationError('graph JSON must be an object with "n" and "edges"')
    if not isinstance(obj["edges"], list):
        raise GraphValidationError('"edges" must be a list of pairs')
    for e in obj["edges"]:
        if not isinstance(e, list) or not all(isinstance(x, int) for x in e):
            raise GraphValidationError(f"edge {e!r} must be a list of two integers")
    return make_graph(obj["n"], obj["edges"])


def _subset_mask(n: int, part_a: Iterable[int]) -> int:
    a = 0
    for v in part_a:
        v = int(v)
        if not 1 <= v <= n:
            raise InvalidBipartitionError(f"vertex {v} out of range for n={n}")
        a |= 1 << (v - 1)
    full = (1 << n) - 1
    if a == 0 or a == full:
        raise InvalidBipartitionError("bipartition needs a nonempty proper subset")
    return a


def cut_rank_rows(rows: Sequence[int], a_mask: int, n: int) -> int:
    comp = ((1 << n) - 1) & ~a_mask
    return gf2_rank_packed(rows[v] & comp for v in range(n) if a_mask >> v & 1)


def entropy_cut_rank(g: Graph, part_a: Iterable[int]) -> int:
    """GF(2) rank of the adjacency block between ``part_a`` and its complement.

    For a graph state this equals the von Neumann entropy, in ebits, of the
    reduced state on ``part_a``.
    """
    a = _subset_mask(g.n, part_a)
    return cut_rank_rows(g.rows(), a, g.n)


def is_connected(g: Graph) -> bool:
    rows = g.rows()
    seen, frontier = 1, 1
    while frontier:
        nxt = 0
        for v in range(g.n):
            if frontier >> v & 1:
                nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def descriptor(g: Graph) -> str:
    if not g.edges:
        return FULLY_SEPARABLE
    if len(g.edges) == n_pairs(g.n):
        return FULLY_ENTANGLED
    return ENTANGLED if is_connected(g) else BI_SEPARABLE


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Smallest packed edge mask over all relabelings of a graph."""

    n: int
    mask: int

    @property
    def key(self) -> bytes:
        width = max(1, (n_pairs(self.n) + 7) // 8)
        return bytes([self.n]) + self.mask.to_bytes(width, "big")

    def hex(self) -> str:
        return self.key.hex()

    def graph(self) -> Graph:
        return Graph.from_mask(self.n, self.mask)


@lru_cache(maxsize=None)
def _perm_edge_table(n: int) -> np.ndarray:
    """``table[p, k]``: bit position of edge ``k`` after permutation ``p``."""
    pairs = _index_pairs(n)
    perms = list(itertools.permutations(range(1, n + 1)))
    table = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for r, p in enumerate(perms):
        table[r] = [pair_index(p[i - 1], p[j - 1]) for i, j in pairs]
    return table


def _orbit(n: int, mask: int) -> np.ndarray:
    bits = [k for k in range(n_pairs(n)) if mask >> k & 1]
    table = _perm_edge_table(n)
    if not bits:
        return np.zeros(1, dtype=np.int64)
    images = np.left_shift(np.int64(1), table[:, bits]).sum(axis=1)
    return np.unique(images)


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n > MAX_CANONICAL_N:
        raise SizeLimitError(f"canonical form supports n <= {MAX_CANONICAL_N}, got {g.n}")
    return CanonicalForm(g.n, int(_orbit(g.n, g.mask)[0]))


def orbit_classes(n: int) -> list[tuple[CanonicalForm, int]]:
    """Every isomorphism class on ``n`` labeled vertices with its labeled count.

    Masks are visited in increasing order, so the first unvisited mask is
    always the minimum of its orbit and hence its canonical form.
    """
    if n < 1 or n > MAX_ENUMERATE_N:
        raise SizeLimitError(f"enumeration supports 1 <= n <= {MAX_ENUMERATE_N}, got {n}")
    total = 1 << n_pairs(n)
    visited = np.zeros(total, dtype=bool)
    out = []
    ptr = 0
    while ptr < total:
        if visited[ptr]:
            ptr += 1
            continue
        orbit = _orbit(n, ptr)
        visited[orbit] = True
        out.append((CanonicalForm(n, ptr), int(orbit.size)))
        ptr += 1
    return out


def orbit_members(form: CanonicalForm) -> np.ndarray:
    """All labeled edge masks isomorphic to ``form``, ascending."""
    return _orbit(form.n, form.mask)


def n_labeled_graphs(n: int) -> int:
    return 1 << n_pairs(n)
