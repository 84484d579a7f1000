"""Command-line entry point: ``entmat {analyze,classify,maxent,census,verify}``.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 size limit,
4 geometric ambiguity.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from . import cache as cache_mod
from . import io as eio
from .classify import classify
from .errors import (
    CoincidenceAmbiguityError,
    EntmatError,
    GraphValidationError,
    InvalidBipartitionError,
    SizeLimitError,
)
from .formulas import (
    FAMILIES,
    MAX_CONSTRUCTIVE_N,
    census_row,
    census_table,
    compare_rows,
    emax_constructive,
    plot_series,
)
from .geometry import DEFAULT_TOL, build_midpoint_census
from .graphs import MAX_ENUMERATE_N, adjacency_matrix, graph_from_json
from .matrix import BACKENDS, CUT_RANK, build_entanglement_matrix, edge_attribution, total_entanglement

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_SIZE = 3
EXIT_AMBIGUOUS = 4

log = logging.getLogger("entmat")


class InputError(EntmatError):
    pass


@contextlib.contextmanager
def worker_map(jobs: int):
    """An order-preserving ``map`` backed by a process pool when ``jobs > 1``."""
    if jobs <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield pool.map


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _sidecar_dir(args) -> Optional[Path]:
    if args.plot_dir:
        return Path(args.plot_dir)
    if args.output and args.output != "-":
        return Path(args.output).parent
    return None


def _stem(args, default: str) -> str:
    if args.output and args.output != "-":
        return Path(args.output).stem
    return default


def _units(value: int, units: str) -> str:
    return f"{value} x log2(2)" if units == "log2" else f"{value} ebits"


def _read_graph(source: str):
    text = source
    if source == "-":
        text = sys.stdin.read()
    elif not source.lstrip().startswith("{"):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read graph file {source}: {exc}") from exc
    return graph_from_json(text)


# -- commands --------------------------------------------------------------


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    em = build_entanglement_matrix(g, args.backend, args.tol)
    total = total_entanglement(em)
    attribution = edge_attribution(em, adjacency_matrix(g))
    if args.format == "csv":
        _emit(eio.matrix_to_csv(em), args.output)
    else:
        _emit(eio.dumps_json(eio.analysis_to_dict(g, em, total, attribution, args.units)), args.output)
    log.info("total entanglement: %s", _units(total, args.units))
    return EXIT_OK


def cmd_classify(args) -> int:
    n = args.n
    if n < 2:
        raise InputError(f"classification needs n >= 2, got {n}")
    if n > MAX_ENUMERATE_N:
        raise SizeLimitError(f"classification supports n <= {MAX_ENUMERATE_N}, got {n}")
    cache_path = cache_mod.resolve_path(args.cache)
    table = cache_mod.load_table(cache_path, n, args.backend)
    if table is None:
        with worker_map(args.jobs) as mapper:
            table = classify(n, args.backend, mapper)
        if cache_path is not None:
            cache_mod.store_table(cache_path, table)
    else:
        log.info("using cached table from %s", cache_path)
    if args.format == "csv":
        _emit(eio.table_to_csv(table), args.output)
    else:
        _emit(eio.dumps_json(eio.table_to_dict(table)), args.output)
    side = _sidecar_dir(args)
    if args.plot_dir:
        from .plotting import plot_classification

        plot_classification(table, side / f"{_stem(args, f'classify_{n}')}.png")
    log.info("%d non-isomorphic classes on %d qubits", len(table), n)
    return EXIT_OK


def cmd_maxent(args) -> int:
    lo = args.n_min
    hi = args.n_max if args.n_max is not None else lo
    if not 2 <= lo <= hi <= MAX_CONSTRUCTIVE_N:
        raise InputError(f"range must satisfy 2 <= n_min <= n_max <= {MAX_CONSTRUCTIVE_N}, got {lo}..{hi}")
    ns = list(range(lo, hi + 1))
    with worker_map(args.jobs) as mapper:
        breakdowns = list(mapper(emax_constructive, ns, [args.tol] * len(ns)))
    rows = compare_rows(ns, breakdowns)
    series = plot_series(rows)
    if args.format == "csv":
        _emit(eio.report_to_csv(rows), args.output)
    else:
        doc = {
            "units": args.units,
            "rows": [eio.breakdown_to_dict(b) for b in breakdowns],
            "series": {fam: [list(p) for p in pts] for fam, pts in series.items()},
        }
        _emit(eio.dumps_json(doc), args.output)
    side = _sidecar_dir(args)
    if side is not None:
        stem = _stem(args, "maxent")
        side.mkdir(parents=True, exist_ok=True)
        for fam in FAMILIES:
            (side / f"{stem}_series_{fam}.csv").write_text(eio.series_to_csv(series[fam]))
        if args.plot_dir:
            from .plotting import plot_maxent

            plot_maxent(rows, side / f"{stem}.png")
    mism = [r.n for r in rows if not r.match]
    log.info("%d rows, formula/constructive mismatches: %s", len(rows), mism or "none")
    return EXIT_OK


def cmd_census(args) -> int:
    n = args.n
    if n < 2:
        raise InputError(f"census needs n >= 2, got {n}")
    if n > MAX_CONSTRUCTIVE_N:
        raise SizeLimitError(f"census supports n <= {MAX_CONSTRUCTIVE_N}, got {n}")
    census = build_midpoint_census(n, None, args.tol)
    rows = census_table(n, args.tol) if args.table else [census_row(n, args.tol)]
    if args.format == "csv":
        _emit(eio.census_rows_to_csv(rows), args.output)
    else:
        doc = eio.census_to_dict(census_row(n, args.tol), census)
        if args.table:
            doc["table"] = [
                {"n": r.n, "total_midpoints": r.total_midpoints, "rings": r.rings,
                 "histogram": {str(d): c for d, c in r.histogram.items()}}
                for r in rows
            ]
        _emit(eio.dumps_json(doc), args.output)
    side = _sidecar_dir(args)
    if side is not None:
        stem = _stem(args, f"census_{n}")
        side.mkdir(parents=True, exist_ok=True)
        (side / f"{stem}_rings.csv").write_text(eio.rings_to_csv(census))
        if args.plot_dir:
            from .plotting import plot_census

            plot_census(census, side / f"{stem}.png")
    log.info("n=%d: %d midpoints, degrees %s", n, len(census.records), census.degree_histogram())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_checks

    cache_path = cache_mod.resolve_path(args.cache)
    with worker_map(args.jobs) as mapper:
        results = run_checks(cache_path, mapper)
    ok = all(r.passed for r in results)
    doc = {"passed": ok, "checks": [r.as_dict() for r in results]}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    for r in results:
        log.info("%s %s: %s", "PASS" if r.passed else "FAIL", r.name, r.detail)
    if not ok:
        failed = ", ".join(r.name for r in results if not r.passed)
        log.error("failed checks: %s", failed)
        return EXIT_VERIFY
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-o", "--output", help="write here instead of stdout")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                        help="geometric coincidence tolerance (default %(default)g)")
    common.add_argument("--jobs", type=_positive_int, default=1)
    common.add_argument("--units", choices=("ebits", "log2"), default="ebits")
    common.add_argument("--plot-dir", help="render matplotlib figures and series CSVs here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="entmat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="entanglement matrix of one graph state")
    a.add_argument("graph", help='graph JSON file, "-" for stdin, or inline {"n":..,"edges":..}')
    a.add_argument("--backend", choices=BACKENDS, default=CUT_RANK)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", parents=[common], help="non-isomorphic classes on n qubits")
    c.add_argument("n", type=int)
    c.add_argument("--backend", choices=BACKENDS, default=CUT_RANK)
    c.add_argument("--cache", help=f"cache file (overridden by ${cache_mod.ENV_VAR})")
    c.set_defaults(func=cmd_classify)

    m = sub.add_parser("maxent", parents=[common], help="closed form vs constructive maximum")
    m.add_argument("n_min", type=int)
    m.add_argument("n_max", type=int, nargs="?")
    m.set_defaults(func=cmd_maxent)

    s = sub.add_parser("census", parents=[common], help="midpoint census of the complete graph")
    s.add_argument("n", type=int)
    s.add_argument("--table", action="store_true", help="one row per n in 3..N")
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", parents=[common], help="run the cross-backend and invariant checks")
    v.add_argument("--cache", help=f"also check this cache (overridden by ${cache_mod.ENV_VAR})")
    v.set_defaults(func=cmd_verify)
    return p


def _configure_logging(verbose: bool) -> None:
    # bind to the current stderr on every call so embedded runs see their own stream
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    log.propagate = False


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except CoincidenceAmbiguityError as exc:
        log.error("geometric ambiguity: %s", exc)
        return EXIT_AMBIGUOUS
    except SizeLimitError as exc:
        log.error("size limit: %s", exc)
        return EXIT_SIZE
    except (InputError, GraphValidationError, InvalidBipartitionError, ValueError) as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
