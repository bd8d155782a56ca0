"""Pure-numpy backend for the permutation-group engine.

Permutations are rows of point images.  Closure does a batched BFS with
vectorized row composition (fancy indexing) and a Python dict keyed by the
row bytes for membership.  Selected via BLOCKINV_BACKEND=numpy; also the
fallback when numba is unavailable.
"""

from __future__ import annotations

import numpy as np


class CapExceeded(RuntimeError):
    """Raised when a closure would enumerate more elements than allowed."""


class ElementTable:
    """Closed element set with O(1) row lookup."""

    def __init__(self, elements: np.ndarray, index: dict[bytes, int]):
        self.elements = elements
        self._index = index

    def __len__(self) -> int:
        return self.elements.shape[0]

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows)
        out = np.empty(rows.shape[0], dtype=np.int64)
        get = self._index.get
        for r in range(rows.shape[0]):
            out[r] = get(rows[r].tobytes(), -1)
        return out


def closure(gens: np.ndarray, cap: int) -> ElementTable:
    """Enumerate the group generated by the given permutation rows.

    Raises CapExceeded once more than `cap` elements appear.
    """
    gens = np.ascontiguousarray(gens)
    deg = gens.shape[1]
    ident = np.arange(deg, dtype=gens.dtype)
    index: dict[bytes, int] = {ident.tobytes(): 0}
    elems = [ident]
    frontier = ident.reshape(1, deg)
    while frontier.shape[0]:
        new_rows = []
        for g in gens:
            candidates = np.ascontiguousarray(frontier[:, g])
            for r in range(candidates.shape[0]):
                row = candidates[r]
                key = row.tobytes()
                if key not in index:
                    if len(elems) >= cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
                    index[key] = len(elems)
                    elems.append(row.copy())
                    new_rows.append(row.copy())
        frontier = np.array(new_rows, dtype=gens.dtype) if new_rows else np.empty((0, deg), gens.dtype)
    return ElementTable(np.array(elems, dtype=gens.dtype), index)


def union_pairs(parent: np.ndarray, targets: np.ndarray) -> None:
    """Union element i with targets[i] for all i (targets of -1 skipped)."""

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(parent.shape[0]):
        t = targets[i]
        if t < 0:
            continue
        ra, rb = find(i), find(int(t))
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
