"""Cross-checks behind ``entmat verify``.

Each check is a zero-argument-friendly function returning a ``CheckResult``;
they are seeded so results do not depend on run or worker count.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .cache import CacheError, cached_tables
from .classify import classify
from .formulas import compare_report, expected_midpoints
from .geometry import CENTER, DEFAULT_TOL, PRIMARY, build_midpoint_census
from .graphs import Graph, descriptor, entropy_cut_rank
from .matrix import CUT_RANK, DENSE_SIM, build_entanglement_matrix
from .statevec import entropy_dense

ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return asdict(self)


def random_graph(rng: np.random.Generator, n: int, p: Optional[float] = None) -> Graph:
    if p is None:
        p = float(rng.uniform(0.1, 0.9))
    edges = [(i, j) for j in range(2, n + 1) for i in range(1, j) if rng.random() < p]
    return Graph(n, frozenset(edges))


def random_subset(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    k = int(rng.integers(1, n))
    return tuple(sorted(int(v) + 1 for v in rng.choice(n, size=k, replace=False)))


def random_cases(seed: int, count: int, n_min: int, n_max: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield random_graph(rng, n), random_subset(rng, n)


def check_oracle_equivalence(samples: int = 200, n_max: int = 10, seed: int = 2024) -> CheckResult:
    worst = 0.0
    bad = []
    for g, part in random_cases(seed, samples, 2, n_max):
        diff = abs(entropy_dense(g, part) - entropy_cut_rank(g, part))
        worst = max(worst, diff)
        if diff > ORACLE_TOL:
            bad.append((sorted(g.edges), part))
    detail = f"{samples} cuts, max |dense - cut rank| = {worst:.3e}"
    if bad:
        detail += f"; first failure {bad[0]}"
    return CheckResult("oracle-equivalence", not bad, detail)


def check_backend_agreement(samples: int = 40, n_max: int = 8, seed: int = 7) -> CheckResult:
    bad = []
    for g, _ in random_cases(seed, samples, 2, n_max):
        a = build_entanglement_matrix(g, CUT_RANK).entries
        b = build_entanglement_matrix(g, DENSE_SIM).entries
        if not np.array_equal(a, b):
            bad.append(sorted(g.edges))
    return CheckResult(
        "backend-agreement",
        not bad,
        f"{samples} matrices compared" + (f"; mismatch for {bad[0]}" if bad else ""),
    )


def census_problems(n: int, tol: float = DEFAULT_TOL) -> list[str]:
    """Violations of the complete-graph census invariants at one ``n``."""
    out = []
    census = build_midpoint_census(n, None, tol)
    recs = census.records
    if len(recs) != expected_midpoints(n):
        out.append(f"n={n}: {len(recs)} midpoints, expected {expected_midpoints(n)}")
    for r in recs:
        if r.kind == PRIMARY and r.degree != 2:
            out.append(f"n={n}: side midpoint {r.id} has degree {r.degree} via {sorted(map(str, r.incident_chords))}")
    if n % 2:
        degs = {r.degree for r in recs}
        if degs != {2}:
            out.append(f"n={n}: odd polygon has degrees {sorted(degs)}")
    elif n >= 4:
        centers = [r for r in recs if r.kind == CENTER]
        if len(centers) != 1 or centers[0].degree != n:
            out.append(f"n={n}: center records {[c.degree for c in centers]}, expected one of degree {n}")
        for ring in census.rings:
            if not ring.is_center and len(ring.members) != n:
                out.append(f"n={n}: ring {ring.index} holds {len(ring.members)} midpoints")
    base = Counter((round(r.ring_radius, 6), r.degree) for r in recs)
    for scale in (10.0, 0.1):
        other = build_midpoint_census(n, None, tol * scale)
        if Counter((round(r.ring_radius, 6), r.degree) for r in other.records) != base:
            out.append(f"n={n}: census changes at tol x {scale:g}")
    return out


def check_census_invariants(n_max: int = 30, tol: float = DEFAULT_TOL) -> CheckResult:
    problems = []
    for n in range(2, n_max + 1):
        problems.extend(census_problems(n, tol))
    return CheckResult(
        "census-invariants",
        not problems,
        f"n = 2..{n_max}" + (f"; {problems[0]}" if problems else ""),
    )


def check_formulas(n_max: int = 30, tol: float = DEFAULT_TOL) -> CheckResult:
    rows = compare_report(2, n_max, tol)
    bad = [(r.n, r.formula, r.constructive) for r in rows if not r.match]
    return CheckResult(
        "formula-vs-constructive",
        not bad,
        f"n = 2..{n_max}" + (f"; mismatches (n, formula, constructive) {bad}" if bad else ""),
    )


def check_three_qubit_table() -> CheckResult:
    t = classify(3)
    got = [(r.labeled_count, r.total_entanglement, r.descriptor) for r in t.rows]
    want = [
        (1, 0, "Fully Separable"),
        (3, 3, "Bi-Separable"),
        (3, 5, "Entangled"),
        (1, 6, "Fully Entangled"),
    ]
    return CheckResult("three-qubit-table", got == want, f"rows {got}")


def check_cache(path: Path) -> CheckResult:
    """Every cached table must equal a fresh computation."""
    try:
        tables = cached_tables(path)
    except CacheError as exc:
        return CheckResult("cache-consistency", False, str(exc))
    stale = []
    for key, table in tables.items():
        fresh = classify(table.n, table.backend)
        if fresh != table:
            stale.append(key)
    return CheckResult(
        "cache-consistency",
        not stale,
        f"{len(tables)} cached tables" + (f"; differ from recomputation: {stale}" if stale else ""),
    )


def check_descriptor_vocabulary() -> CheckResult:
    # descriptors must reproduce the four three-qubit labels on every labeled graph
    labels = {descriptor(Graph.from_mask(3, m)) for m in range(8)}
    return CheckResult("descriptor-vocabulary", len(labels) == 4, f"labels {sorted(labels)}")


DEFAULT_CHECKS = (
    check_oracle_equivalence,
    check_backend_agreement,
    check_census_invariants,
    check_formulas,
    check_three_qubit_table,
    check_descriptor_vocabulary,
)


def _run(check):
    return check()


def run_checks(cache_path: Optional[Path] = None, mapper=map) -> list[CheckResult]:
    results = list(mapper(_run, DEFAULT_CHECKS))
    if cache_path is not None and Path(cache_path).exists():
        results.append(check_cache(Path(cache_path)))
    return results
