"""Entanglement Matrix analysis of n-qubit graph states."""

__version__ = "0.1.0"

from .classify import ClassificationTable, ClassRecord, classify, enumerate_classes  # noqa: E402
from .formulas import (  # noqa: E402
    census_table,
    compare_report,
    degree_count_model,
    emax_constructive,
    emax_formula,
    replacement_model,
)
from .geometry import (  # noqa: E402
    Chord,
    Point2,
    build_midpoint_census,
    chord_midpoint,
    embed_polygon,
    point_on_chord,
    ring_degree_profile,
)
from .gf2 import gf2_rank  # noqa: E402
from .graphs import (  # noqa: E402
    Graph,
    adjacency_matrix,
    canonical_form,
    complete_graph,
    entropy_cut_rank,
    make_graph,
)
from .matrix import (  # noqa: E402
    EntanglementMatrix,
    bipartition_from_primary_pair,
    build_entanglement_matrix,
    edge_attribution,
    label_midpoints,
    total_entanglement,
)
from .statevec import (  # noqa: E402
    graph_state_vector,
    reduced_spectrum,
    renyi_entropy,
    von_neumann_entropy,
)
