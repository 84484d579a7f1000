"""Isomorphism classes of n-qubit graph states ranked by total entanglement."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import SizeLimitError
from .graphs import (
    MAX_ENUMERATE_N,
    CanonicalForm,
    Graph,
    descriptor,
    orbit_classes,
    orbit_members,
)
from .matrix import CUT_RANK, TotalEvaluator, build_entanglement_matrix, total_entanglement

# largest n for which every labeled member is evaluated to report a total range
MAX_RANGE_N = 6


@dataclass(frozen=True)
class ClassRecord:
    canonical: CanonicalForm
    representative: Graph
    labeled_count: int
    total_entanglement: int
    descriptor: str
    min_total: Optional[int] = None
    max_total: Optional[int] = None

    @property
    def n_edges(self) -> int:
        return len(self.representative.edges)


@dataclass(frozen=True)
class ClassificationTable:
    n: int
    rows: tuple
    backend: str = CUT_RANK

    def __len__(self) -> int:
        return len(self.rows)


@lru_cache(maxsize=8)
def _evaluator(n: int) -> TotalEvaluator:
    return TotalEvaluator(n)


def _class_record(form: CanonicalForm, count: int, backend: str) -> ClassRecord:
    rep = form.graph()
    total = total_entanglement(build_entanglement_matrix(rep, backend))
    lo = hi = None
    if form.n <= MAX_RANGE_N:
        ev = _evaluator(form.n)
        totals = [ev.total(int(m)) for m in orbit_members(form)]
        lo, hi = min(totals), max(totals)
    return ClassRecord(form, rep, count, total, descriptor(rep), lo, hi)


def enumerate_classes(n: int, backend: str = CUT_RANK, mapper=map) -> list[ClassRecord]:
    """All non-isomorphic graphs on ``n`` qubits with their class totals.

    The class total is evaluated once, on the representative whose packed
    edge mask is the canonical form.  The total depends on how qubits sit
    around the polygon, so for ``n <= 6`` the range over all labeled
    members is recorded as well.  ``mapper`` must preserve order.
    """
    if not 2 <= n <= MAX_ENUMERATE_N:
        raise SizeLimitError(f"class enumeration supports 2 <= n <= {MAX_ENUMERATE_N}, got {n}")
    classes = orbit_classes(n)
    forms = [f for f, _ in classes]
    counts = [c for _, c in classes]
    records = list(mapper(_class_record, forms, counts, [backend] * len(forms)))
    records.sort(key=lambda r: (r.total_entanglement, r.canonical))
    return records


def classify(n: int, backend: str = CUT_RANK, mapper=map) -> ClassificationTable:
    if not 2 <= n <= MAX_ENUMERATE_N:
        raise SizeLimitError(f"classification supports 2 <= n <= {MAX_ENUMERATE_N}, got {n}")
    return ClassificationTable(n, tuple(enumerate_classes(n, backend, mapper)), backend)
