from __future__ import annotations

import numpy as np
import pytest

from entmat.graphs import make_graph

# four qubits: sides 1-2 and 2-3 plus both diagonals' worth of edges 1-3 and 2-4
WORKED_EDGES = [(1, 2), (1, 3), (2, 3), (2, 4)]


@pytest.fixture
def worked_graph():
    return make_graph(4, WORKED_EDGES)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
