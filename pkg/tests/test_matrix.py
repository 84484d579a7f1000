"""Entanglement Matrix assembly, totals and edge attribution."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from entmat.errors import AttributionError, InvalidBipartitionError, NumericalError, SizeLimitError
from entmat.graphs import Graph, adjacency_matrix, complete_graph, make_graph
from entmat.matrix import (
    CUT_RANK,
    DENSE_SIM,
    TotalEvaluator,
    _round_ebits,
    analyze_graph,
    bipartition_from_primary_pair,
    build_entanglement_matrix,
    edge_attribution,
    label_midpoints,
    total_entanglement,
)
from entmat.statevec import entropy_dense
from entmat.verify import random_graph


def _vertex(n, k):
    t = 2 * math.pi * (k - 1) / n
    return math.cos(t), math.sin(t)


def chords_through(n, point, edges, tol=1e-9):
    out = []
    for a, b in edges:
        (x1, y1), (x2, y2) = _vertex(n, a), _vertex(n, b)
        length = math.hypot(x2 - x1, y2 - y1)
        cross = (x2 - x1) * (point[1] - y1) - (y2 - y1) * (point[0] - x1)
        dot = (point[0] - x1) * (x2 - x1) + (point[1] - y1) * (y2 - y1)
        if abs(cross) / length <= tol and -tol <= dot / length <= length + tol:
            out.append((a, b))
    return out


def oracle_matrix(g: Graph) -> np.ndarray:
    """Independent assembly: scalar geometry for the diagonal, dense entropies off it."""
    n = g.n
    edges = sorted(g.edges)
    points = []
    for k in range(1, n + 1):
        a, b = k, k % n + 1
        (x1, y1), (x2, y2) = _vertex(n, a), _vertex(n, b)
        points.append(((x1 + x2) / 2, (y1 + y2) / 2))
    if n == 2:
        points[1] = None
    for a, b in edges:
        if (b - a) in (1, n - 1):
            continue
        (x1, y1), (x2, y2) = _vertex(n, a), _vertex(n, b)
        m = ((x1 + x2) / 2, (y1 + y2) / 2)
        if not any(p is not None and math.dist(p, m) < 1e-9 for p in points):
            points.append(m)
    e = np.zeros((len(points), len(points)), dtype=np.int64)
    for k, p in enumerate(points):
        e[k, k] = 0 if p is None else len(chords_through(n, p, edges))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        v = round(entropy_dense(g, range(i + 1, j + 1)))
        e[i - 1, j - 1] = e[j - 1, i - 1] = v
    return e


def test_bipartition_from_primary_pair():
    assert bipartition_from_primary_pair(5, 2, 4) == ((3, 4), (5, 1, 2))
    assert bipartition_from_primary_pair(5, 4, 2) == ((3, 4), (5, 1, 2))
    assert bipartition_from_primary_pair(4, 1, 4) == ((2, 3, 4), (1,))
    with pytest.raises(InvalidBipartitionError):
        bipartition_from_primary_pair(4, 2, 2)
    with pytest.raises(InvalidBipartitionError):
        bipartition_from_primary_pair(4, 0, 2)


def test_worked_example_matrix(worked_graph):
    em = build_entanglement_matrix(worked_graph)
    assert em.names == ["1'", "2'", "3'", "4'", "5'"]
    assert em.entries.tolist() == [
        [1, 1, 2, 1, 0],
        [1, 1, 1, 2, 0],
        [2, 1, 0, 1, 0],
        [1, 2, 1, 0, 0],
        [0, 0, 0, 0, 2],
    ]
    assert em.entries.tolist() == oracle_matrix(worked_graph).tolist()
    # cuts {2,3}|{4,1} and {3,4}|{1,2} have rank 2, which puts the total at 12
    assert total_entanglement(em) == 12


def test_worked_example_attribution(worked_graph):
    em = build_entanglement_matrix(worked_graph)
    attr = edge_attribution(em, adjacency_matrix(worked_graph))
    assert attr == {(1, 2): 1, (1, 3): 1, (2, 3): 1, (2, 4): 1}


def test_attribution_rejects_inconsistent_adjacency(worked_graph):
    em = build_entanglement_matrix(worked_graph)
    wrong = adjacency_matrix(make_graph(4, [(1, 2), (2, 3)]))
    with pytest.raises(AttributionError):
        edge_attribution(em, wrong)
    with pytest.raises(AttributionError):
        edge_attribution(em, np.zeros((3, 3)))


def test_diameter_through_foreign_midpoint_counts_twice():
    # 1-4 on a hexagon is a diameter: it passes through the center it generates
    g = make_graph(6, [(1, 4), (2, 5)])
    attr = edge_attribution(build_entanglement_matrix(g), adjacency_matrix(g))
    assert attr == {(1, 4): 1, (2, 5): 1}
    g = make_graph(6, [(1, 4), (2, 6), (3, 5)])
    # 1-4 runs through the midpoints of 2-6 and 3-5 as well as its own
    attr = edge_attribution(build_entanglement_matrix(g), adjacency_matrix(g))
    assert attr[(1, 4)] == 3


@pytest.mark.parametrize("n, total", [(2, 2), (3, 6), (4, 12), (5, 20), (6, 36), (7, 42)])
def test_complete_graph_totals(n, total):
    assert total_entanglement(build_entanglement_matrix(complete_graph(n))) == total


def test_two_qubit_labeling():
    lab = label_midpoints(complete_graph(2))
    assert lab.names == ["1'", "2'"]
    assert lab.labels[1].record_id is None
    em = build_entanglement_matrix(complete_graph(2))
    assert em.entries.tolist() == [[1, 1], [1, 0]]


@pytest.mark.parametrize("seed", range(8))
def test_random_matrices_match_oracle(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(3, 9)))
    em = build_entanglement_matrix(g)
    assert em.entries.tolist() == oracle_matrix(g).tolist()
    assert np.array_equal(em.entries, build_entanglement_matrix(g, DENSE_SIM).entries)
    attr = edge_attribution(em, adjacency_matrix(g))
    assert set(attr) <= g.edges
    assert sum(attr.values()) == int(np.trace(em.entries))


def test_fast_evaluator_matches_full_assembly():
    for n in (2, 3, 4, 5, 6):
        ev = TotalEvaluator(n)
        for mask in range(0, 1 << (n * (n - 1) // 2), 37 if n == 6 else 1):
            g = Graph.from_mask(n, mask)
            assert ev.total(mask) == total_entanglement(build_entanglement_matrix(g))


def test_backend_validation():
    with pytest.raises(ValueError):
        build_entanglement_matrix(complete_graph(3), "stabilizer")
    with pytest.raises(SizeLimitError):
        build_entanglement_matrix(complete_graph(15), DENSE_SIM)
    assert total_entanglement(build_entanglement_matrix(complete_graph(15), CUT_RANK)) == 15 * 14


def test_round_ebits():
    assert _round_ebits(2.0 + 1e-12) == 2
    with pytest.raises(NumericalError):
        _round_ebits(1.5)


def test_analyze_graph_bundle(worked_graph):
    em, total, attr = analyze_graph(worked_graph)
    assert total == 12 and sum(attr.values()) == 4 and em.backend == CUT_RANK


# -- properties one might expect but which do not hold ---------------------


def test_total_depends_on_labeling():
    # the same one-edge graph on a side versus across a diagonal
    side = total_entanglement(build_entanglement_matrix(make_graph(4, [(1, 2)])))
    diag = total_entanglement(build_entanglement_matrix(make_graph(4, [(1, 3)])))
    assert (side, diag) == (4, 5)


def test_total_not_monotone_under_edge_addition():
    g = make_graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)])
    assert total_entanglement(build_entanglement_matrix(g)) == 13
    assert total_entanglement(build_entanglement_matrix(complete_graph(4))) == 12


def test_complete_graph_not_the_labeled_maximum():
    for n, k_total, best in ((4, 12, 13), (5, 20, 23)):
        ev = TotalEvaluator(n)
        top = max(ev.total(m) for m in range(1 << (n * (n - 1) // 2)))
        assert top == best > k_total
