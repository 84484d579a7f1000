"""Dense graph-state simulation against an explicit gate-by-gate circuit."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entmat.errors import DomainError, InvalidBipartitionError, SizeLimitError
from entmat.graphs import Graph, complete_graph, entropy_cut_rank, make_graph
from entmat.statevec import (
    Spectrum,
    entropy_dense,
    graph_state_vector,
    reduced_spectrum,
    renyi_entropy,
    von_neumann_entropy,
)
from entmat.verify import random_cases

PLUS = np.array([1.0, 1.0]) / math.sqrt(2)


def circuit_state(g: Graph) -> np.ndarray:
    """|+>^n then one full 2^n x 2^n CZ matrix per edge; qubit k is bit k-1."""
    n = g.n
    psi = np.array([1.0])
    for _ in range(n):
        psi = np.kron(PLUS, psi)  # later qubits are more significant
    for i, j in sorted(g.edges):
        diag = np.array([-1.0 if (x >> (i - 1)) & (x >> (j - 1)) & 1 else 1.0 for x in range(1 << n)])
        psi = np.diag(diag) @ psi
    return psi


def density_oracle(g: Graph, part):
    """Reduced density matrix by explicit partial trace over the complement."""
    n = g.n
    psi = circuit_state(g)
    rho = np.outer(psi, psi.conj()).reshape((2,) * (2 * n))
    keep = sorted(part)
    # tensor axis for qubit v is n - v
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for v in range(1, n + 1):
        if v not in keep:
            col[n - v] = row[n - v]
    out = [row[n - v] for v in keep] + [col[n - v] for v in keep]
    red = np.einsum("".join(row + col) + "->" + "".join(out), rho)
    d = 1 << len(keep)
    return red.reshape(d, d)


def oracle_entropy(g, part):
    w = np.linalg.eigvalsh(density_oracle(g, part))
    w = w[w > 1e-12]
    return float(-np.sum(w * np.log2(w)))


def test_state_matches_circuit():
    for g in (make_graph(3, [(1, 2)]), make_graph(4, [(1, 3), (2, 4), (3, 4)]), complete_graph(5)):
        assert np.allclose(graph_state_vector(g).amplitudes, circuit_state(g))
        assert graph_state_vector(g).norm == pytest.approx(1.0)


def test_bell_pair():
    sp = reduced_spectrum(graph_state_vector(make_graph(2, [(1, 2)])), [1])
    assert np.allclose(sp.eigenvalues, [0.5, 0.5])
    assert von_neumann_entropy(sp) == pytest.approx(1.0, abs=1e-12)


def test_product_state_has_zero_entropy():
    assert entropy_dense(make_graph(4), [1, 2]) == 0.0


@pytest.mark.parametrize("seed", range(6))
def test_spectrum_matches_density_oracle(seed):
    for g, part in random_cases(seed, 5, 2, 7):
        mine = reduced_spectrum(graph_state_vector(g), part).eigenvalues
        ref = np.sort(np.linalg.eigvalsh(density_oracle(g, part)))[::-1]
        ref[ref < 1e-12] = 0.0
        # the SVD path returns min(|A|, |B|) values; the rest of rho_A is zero
        mine = np.pad(mine, (0, ref.size - mine.size))
        assert np.allclose(mine, ref, atol=1e-10)
        assert entropy_dense(g, part) == pytest.approx(oracle_entropy(g, part), abs=1e-9)


def test_asymmetric_cut_orders_qubits_correctly():
    # a star centered on 1 looks different from a star centered on 4
    g = make_graph(4, [(1, 2), (1, 3)])
    assert entropy_dense(g, [1]) == pytest.approx(1.0)
    assert entropy_dense(g, [4]) == pytest.approx(0.0, abs=1e-12)
    assert entropy_dense(g, [2, 3]) == pytest.approx(1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1) // 2)) - 1), st.integers(1, (1 << n) - 2))))
def test_dense_equals_cut_rank(args):
    n, mask, sub = args
    g = Graph.from_mask(n, mask)
    part = [v for v in range(1, n + 1) if sub >> (v - 1) & 1]
    assert abs(entropy_dense(g, part) - entropy_cut_rank(g, part)) <= 1e-9


def test_spectrum_is_flat_on_support():
    for g, part in random_cases(99, 20, 3, 8):
        p = reduced_spectrum(graph_state_vector(g), part).support()
        assert np.allclose(p, p[0])
        assert math.log2(len(p)) == pytest.approx(entropy_cut_rank(g, part))


def test_renyi_domain():
    sp = Spectrum(np.array([0.5, 0.5]))
    for bad in (0, -1, 1, 1.0):
        with pytest.raises(DomainError):
            renyi_entropy(sp, bad)
    assert renyi_entropy(sp, 2) == pytest.approx(1.0)


def test_renyi_on_non_flat_spectrum_differs():
    sp = Spectrum(np.array([0.75, 0.25]))
    assert renyi_entropy(sp, 2) < von_neumann_entropy(sp) < renyi_entropy(sp, 0.5)


def test_limits():
    with pytest.raises(SizeLimitError):
        graph_state_vector(make_graph(15))
    s = graph_state_vector(make_graph(3))
    for part in ([], [1, 2, 3], [0], [4]):
        with pytest.raises(InvalidBipartitionError):
            reduced_spectrum(s, part)
