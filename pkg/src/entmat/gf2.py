"""GF(2) rank with rows packed into Python ints."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def pack_rows(m) -> list[int]:
    """Pack each row of a 0/1 matrix into an int, column ``j`` at bit ``j``."""
    arr = np.asarray(m, dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.size == 0:
        return []
    weights = [1 << j for j in range(arr.shape[1])]
    return [sum(w for w, bit in zip(weights, row) if bit & 1) for row in arr.tolist()]


def gf2_rank_packed(rows: Iterable[int]) -> int:
    """Rank of bit-packed rows, keeping a basis keyed by leading bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = r
                break
            r ^= b
    return len(basis)


def gf2_rank(m: Sequence) -> int:
    """Rank of a 0/1 matrix over the two-element field."""
    return gf2_rank_packed(pack_rows(m))


__all__ = ["pack_rows", "gf2_rank_packed", "gf2_rank"]
