"""Dense state-vector graph states and spectral entropies.

Basis index bit ``k`` holds the computational value of qubit ``k+1``.
Entropies use base-2 logarithms, so values are in ebits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, InvalidBipartitionError, SizeLimitError
from .graphs import Graph

MAX_QUBITS = 14
CLAMP = 1e-12


@dataclass(frozen=True)
class StateVector:
    n: int
    amplitudes: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray

    def support(self, atol: float = CLAMP) -> np.ndarray:
        return self.eigenvalues[self.eigenvalues > atol]


def graph_state_vector(g: Graph) -> StateVector:
    """Apply one CZ per edge to the uniform superposition on ``g.n`` qubits."""
    n = g.n
    if n > MAX_QUBITS:
        raise SizeLimitError(f"dense simulation supports n <= {MAX_QUBITS}, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n)) & 1
    parity = np.zeros(1 << n, dtype=np.int64)
    for i, j in g.edges:
        parity ^= bits[:, i - 1] & bits[:, j - 1]
    amp = np.where(parity, -1.0, 1.0).astype(np.complex128) * 2.0 ** (-n / 2)
    return StateVector(n, amp)


def reduced_spectrum(s: StateVector, part_a: Iterable[int]) -> Spectrum:
    """Eigenvalues of the reduced density operator on ``part_a``.

    Obtained as squared singular values of the amplitude array reshaped to
    (``part_a`` qubits) x (rest), so no density matrix is formed.
    """
    n = s.n
    a = sorted({int(v) for v in part_a})
    if not a or len(a) >= n or a[0] < 1 or a[-1] > n:
        raise InvalidBipartitionError(f"invalid subsystem {a} for n={n}")
    b = [v for v in range(1, n + 1) if v not in a]
    # reshape puts the most significant bit (qubit n) on axis 0
    psi = s.amplitudes.reshape((2,) * n)
    axes = [n - v for v in a] + [n - v for v in b]
    m = np.transpose(psi, axes).reshape(1 << len(a), 1 << len(b))
    sv = np.linalg.svd(m, compute_uv=False)
    p = sv**2
    p[p < CLAMP] = 0.0
    return Spectrum(np.sort(p)[::-1])


def von_neumann_entropy(sp: Spectrum) -> float:
    p = sp.support()
    if p.size == 0:
        return 0.0
    return max(0.0, float(-np.sum(p * np.log2(p))))


def renyi_entropy(sp: Spectrum, alpha: float) -> float:
    if alpha <= 0 or alpha == 1:
        raise DomainError(f"Renyi order must be positive and != 1, got {alpha}")
    p = sp.support()
    return float(np.log2(np.sum(p**alpha)) / (1.0 - alpha))


def entropy_dense(g: Graph, part_a: Iterable[int]) -> float:
    """Von Neumann entropy of ``part_a`` for the graph state of ``g``."""
    return von_neumann_entropy(reduced_spectrum(graph_state_vector(g), part_a))
