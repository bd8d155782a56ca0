"""Numba backend for the permutation-group engine.

Same interface as _kernels_numpy, with the hot loops (BFS closure over an
open-addressing table, row lookup, union-find merging) compiled by @njit.
Kernels are cached on disk, so repeated processes skip recompilation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._kernels_numpy import CapExceeded

_FNV_OFFSET = np.uint64(0xCBF29CE484222325)
_FNV_PRIME = np.uint64(0x100000001B3)


@njit(cache=True, inline="always")
def _row_hash(arr, i):
    h = _FNV_OFFSET
    for p in range(arr.shape[1]):
        h = (h ^ np.uint64(arr[i, p])) * _FNV_PRIME
    return h


@njit(cache=True, inline="always")
def _rows_equal(a, i, b, j):
    for p in range(a.shape[1]):
        if a[i, p] != b[j, p]:
            return False
    return True


@njit(cache=True)
def _closure(gens, cap):
    k, deg = gens.shape
    size = 1
    while size < 2 * (cap + 2):
        size <<= 1
    mask = np.uint64(size - 1)
    slots = np.full(size, -1, np.int64)

    room = 256
    if room > cap + 1:
        room = cap + 1
    elems = np.empty((room, deg), gens.dtype)
    for p in range(deg):
        elems[0, p] = p
    slots[_row_hash(elems, 0) & mask] = 0
    n = 1
    head = 0
    while head < n:
        for gi in range(k):
            if n == room:
                room = min(2 * room, cap + 1)
                bigger = np.empty((room, deg), gens.dtype)
                bigger[:n] = elems[:n]
                elems = bigger
            for p in range(deg):
                elems[n, p] = elems[head, gens[gi, p]]
            h = _row_hash(elems, n) & mask
            found = np.int64(-1)
            while True:
                s = slots[h]
                if s < 0:
                    break
                if _rows_equal(elems, s, elems, n):
                    found = s
                    break
                h = (h + np.uint64(1)) & mask
            if found < 0:
                if n >= cap:
                    return elems[:0], slots, mask, -1
                slots[h] = n
                n += 1
        head += 1
    return elems[:n], slots, mask, n


@njit(cache=True)
def _index_of(elems, slots, mask, rows):
    out = np.empty(rows.shape[0], np.int64)
    for r in range(rows.shape[0]):
        h = _row_hash(rows, r) & mask
        res = np.int64(-1)
        while True:
            s = slots[h]
            if s < 0:
                break
            if _rows_equal(elems, s, rows, r):
                res = s
                break
            h = (h + np.uint64(1)) & mask
        out[r] = res
    return out


@njit(cache=True, inline="always")
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _union_pairs(parent, targets):
    for i in range(parent.shape[0]):
        t = targets[i]
        if t < 0:
            continue
        ra = _find(parent, i)
        rb = _find(parent, t)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb


class ElementTable:
    def __init__(self, elements: np.ndarray, slots: np.ndarray, mask: np.uint64):
        self.elements = elements
        self._slots = slots
        self._mask = mask

    def __len__(self) -> int:
        return self.elements.shape[0]

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=self.elements.dtype)
        return _index_of(self.elements, self._slots, self._mask, rows)


def closure(gens: np.ndarray, cap: int) -> ElementTable:
    gens = np.ascontiguousarray(gens)
    elems, slots, mask, n = _closure(gens, cap)
    if n < 0:
        raise CapExceeded(f"group closure exceeds cap {cap}")
    return ElementTable(elems, slots, mask)


def union_pairs(parent: np.ndarray, targets: np.ndarray) -> None:
    _union_pairs(parent, targets)
