"""Versioned JSON cache of classification tables.

Entries are keyed by backend and ``n`` and stamped with the package
version; anything that does not match is recomputed, never migrated.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from . import __version__
from .classify import ClassificationTable
from .errors import EntmatError
from .io import table_from_dict, table_to_dict

SCHEMA = "entmat.classify-cache"
SCHEMA_VERSION = 1
ENV_VAR = "ENTMAT_CACHE"


class CacheError(EntmatError):
    pass


def resolve_path(explicit: Optional[str] = None) -> Optional[Path]:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(explicit) if explicit else None


def _key(n: int, backend: str) -> str:
    return f"{backend}:{n}"


def read_cache(path: Path) -> dict:
    """Parse and validate the whole cache file; raise ``CacheError`` if unusable."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CacheError(f"{path} is not a classification cache")
    if not isinstance(doc.get("entries"), dict):
        raise CacheError(f"{path} has no entries table")
    return doc


def _compatible(doc: dict) -> bool:
    return doc.get("schema_version") == SCHEMA_VERSION and doc.get("code_version") == __version__


def cached_tables(path: Path) -> dict[str, ClassificationTable]:
    doc = read_cache(path)
    if not _compatible(doc):
        return {}
    try:
        return {k: table_from_dict(v) for k, v in doc["entries"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(f"malformed cache entry in {path}: {exc}") from exc


def load_table(path: Optional[Path], n: int, backend: str) -> Optional[ClassificationTable]:
    if path is None or not Path(path).exists():
        return None
    try:
        return cached_tables(path).get(_key(n, backend))
    except CacheError:
        return None


def store_table(path: Path, table: ClassificationTable) -> None:
    path = Path(path)
    doc = None
    if path.exists():
        try:
            doc = read_cache(path)
        except CacheError:
            doc = None
    if doc is None or not _compatible(doc):
        doc = {
            "schema": SCHEMA,
            "schema_version": SCHEMA_VERSION,
            "code_version": __version__,
            "entries": {},
        }
    doc["entries"][_key(table.n, table.backend)] = table_to_dict(table)
    doc["entries"] = dict(sorted(doc["entries"].items()))
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, indent=1) + "\n")
    tmp.replace(path)
