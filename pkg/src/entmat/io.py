"""CSV and JSON encodings for matrices, tables and reports.

Every CSV writer here has a matching reader that rebuilds the same
in-memory value.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional

import numpy as np

from .classify import ClassificationTable, ClassRecord
from .formulas import CensusTableRow, MaxEntBreakdown, ReportRow
from .geometry import MidpointCensus, ring_separation
from .graphs import CanonicalForm, Graph
from .matrix import CUT_RANK, EntanglementMatrix

REPORT_HEADER = ["n", "case", "formula_ebits", "constructive_ebits", "match"]
TABLE_HEADER = [
    "class",
    "canonical",
    "n_edges",
    "labeled_count",
    "total_ebits",
    "min_total_ebits",
    "max_total_ebits",
    "descriptor",
    "edges",
]
CENSUS_HEADER = ["n", "total_midpoints", "rings", "histogram"]
RING_HEADER = ["ring", "separation", "radius", "size", "degrees", "mixed", "center"]
SERIES_HEADER = ["n", "value"]


def _write(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _read(text: str, header: list[str]) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != header:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}, want {header}")
    return list(reader)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# -- entanglement matrix ---------------------------------------------------


def matrix_to_csv(em: EntanglementMatrix) -> str:
    names = em.names
    rows = [[name, *map(int, row)] for name, row in zip(names, em.entries.tolist())]
    return _write(rows, ["", *names])


def read_matrix_csv(text: str) -> tuple[list[str], np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    names = rows[0][1:]
    body = [r[1:] for r in rows[1:]]
    if [r[0] for r in rows[1:]] != names:
        raise ValueError("row labels do not match column labels")
    return names, np.array([[int(x) for x in r] for r in body], dtype=np.int64).reshape(
        len(names), len(names)
    )


def _edge(e) -> list[int]:
    return [int(e[0]), int(e[1])]


def analysis_to_dict(g: Graph, em: EntanglementMatrix, total: int, attribution: dict, units) -> dict:
    labels = []
    for lb in em.labeling.labels:
        labels.append(
            {
                "label": lb.name,
                "kind": lb.kind,
                "chord": None if lb.chord is None else [lb.chord.a, lb.chord.b],
            }
        )
    return {
        "n": g.n,
        "edges": [_edge(e) for e in g.sorted_edges()],
        "backend": em.backend,
        "units": units,
        "labels": labels,
        "matrix": em.entries.tolist(),
        "total_ebits": total,
        "edge_attribution": [{"edge": _edge(e), "ebits": v} for e, v in attribution.items()],
    }


# -- classification table --------------------------------------------------


def _edges_str(g: Graph) -> str:
    return " ".join(f"{i}-{j}" for i, j in g.sorted_edges())


def _parse_edges(n: int, s: str) -> Graph:
    pairs = [tuple(int(x) for x in tok.split("-")) for tok in s.split()]
    return Graph(n, frozenset(pairs))


def _opt(v: Optional[int]) -> str:
    return "" if v is None else str(v)


def _opt_int(s: str) -> Optional[int]:
    return None if s == "" else int(s)


def table_to_csv(table: ClassificationTable) -> str:
    rows = []
    for k, r in enumerate(table.rows, start=1):
        rows.append(
            [
                k,
                r.canonical.hex(),
                r.n_edges,
                r.labeled_count,
                r.total_entanglement,
                _opt(r.min_total),
                _opt(r.max_total),
                r.descriptor,
                _edges_str(r.representative),
            ]
        )
    return _write(rows, TABLE_HEADER)


def _form_from_hex(h: str) -> CanonicalForm:
    raw = bytes.fromhex(h)
    return CanonicalForm(raw[0], int.from_bytes(raw[1:], "big"))


def read_table_csv(text: str, backend: str = CUT_RANK) -> ClassificationTable:
    recs = []
    n = None
    for row in _read(text, TABLE_HEADER):
        form = _form_from_hex(row["canonical"])
        n = form.n
        recs.append(
            ClassRecord(
                form,
                _parse_edges(form.n, row["edges"]),
                int(row["labeled_count"]),
                int(row["total_ebits"]),
                row["descriptor"],
                _opt_int(row["min_total_ebits"]),
                _opt_int(row["max_total_ebits"]),
            )
        )
    return ClassificationTable(n, tuple(recs), backend)


def table_to_dict(table: ClassificationTable) -> dict:
    return {
        "n": table.n,
        "backend": table.backend,
        "classes": len(table.rows),
        "rows": [
            {
                "class": k,
                "canonical": r.canonical.hex(),
                "edges": [_edge(e) for e in r.representative.sorted_edges()],
                "n_edges": r.n_edges,
                "labeled_count": r.labeled_count,
                "total_ebits": r.total_entanglement,
                "min_total_ebits": r.min_total,
                "max_total_ebits": r.max_total,
                "descriptor": r.descriptor,
            }
            for k, r in enumerate(table.rows, start=1)
        ],
    }


def table_from_dict(d: dict) -> ClassificationTable:
    recs = []
    for row in d["rows"]:
        form = _form_from_hex(row["canonical"])
        recs.append(
            ClassRecord(
                form,
                Graph(form.n, frozenset(tuple(e) for e in row["edges"])),
                int(row["labeled_count"]),
                int(row["total_ebits"]),
                row["descriptor"],
                row["min_total_ebits"],
                row["max_total_ebits"],
            )
        )
    return ClassificationTable(int(d["n"]), tuple(recs), d["backend"])


# -- formula report --------------------------------------------------------


def report_to_csv(rows: list[ReportRow]) -> str:
    return _write(
        [[r.n, r.case, r.formula, r.constructive, str(r.match).lower()] for r in rows],
        REPORT_HEADER,
    )


def read_report_csv(text: str) -> list[ReportRow]:
    out = []
    for row in _read(text, REPORT_HEADER):
        if row["match"] not in ("true", "false"):
            raise ValueError(f"bad match flag {row['match']!r}")
        out.append(
            ReportRow(
                int(row["n"]),
                row["case"],
                int(row["formula_ebits"]),
                int(row["constructive_ebits"]),
                row["match"] == "true",
            )
        )
    return out


def breakdown_to_dict(b: MaxEntBreakdown) -> dict:
    return {
        "n": b.n,
        "case": b.case_tag,
        "primary_block": b.primary_block,
        "rings": [
            {
                "ring": r.index,
                "separation": r.separation,
                "count": r.count,
                "multiplicity": r.multiplicity,
                "subtotal": r.subtotal,
            }
            for r in b.per_ring
        ],
        "center": b.center,
        "constructive_ebits": b.constructive_total,
        "formula_ebits": b.formula_total,
        "match": b.match,
    }


def series_to_csv(pairs: list[tuple[int, int]]) -> str:
    return _write([list(p) for p in pairs], SERIES_HEADER)


def read_series_csv(text: str) -> list[tuple[int, int]]:
    return [(int(r["n"]), int(r["value"])) for r in _read(text, SERIES_HEADER)]


# -- census ----------------------------------------------------------------


def census_rows_to_csv(rows: list[CensusTableRow]) -> str:
    return _write(
        [[r.n, r.total_midpoints, r.rings, r.histogram_str()] for r in rows], CENSUS_HEADER
    )


def read_census_csv(text: str) -> list[CensusTableRow]:
    out = []
    for row in _read(text, CENSUS_HEADER):
        hist = {}
        for tok in row["histogram"].split():
            d, c = tok.split(":")
            hist[int(d)] = int(c)
        out.append(CensusTableRow(int(row["n"]), int(row["total_midpoints"]), hist, int(row["rings"])))
    return out


def _radius(r: float) -> str:
    return f"{r:.12f}"


def _ring_fields(census: MidpointCensus) -> list[dict]:
    out = []
    for ring in census.rings:
        degs = sorted(set(ring.degrees))
        out.append(
            {
                "ring": ring.index,
                "separation": ring_separation(census.n, ring.radius),
                "radius": round(ring.radius, 12),
                "size": len(ring.members),
                "degrees": degs,
                "mixed": len(degs) > 1,
                "center": ring.is_center,
            }
        )
    return out


def rings_to_csv(census: MidpointCensus) -> str:
    rows = [
        [
            f["ring"],
            f["separation"],
            _radius(f["radius"]),
            f["size"],
            " ".join(map(str, f["degrees"])),
            str(f["mixed"]).lower(),
            str(f["center"]).lower(),
        ]
        for f in _ring_fields(census)
    ]
    return _write(rows, RING_HEADER)


def census_to_dict(row: CensusTableRow, census: MidpointCensus) -> dict:
    return {
        "n": row.n,
        "total_midpoints": row.total_midpoints,
        "rings": row.rings,
        "histogram": {str(d): c for d, c in row.histogram.items()},
        "ring_profile": _ring_fields(census),
    }
