"""Brute-force permutation groups: element enumeration, conjugacy classes,
derived subgroups.

This is the oracle side of the class-counting machinery: everything is
computed by explicit orbit enumeration, with no structural shortcuts, so it
can cross-check the closed-form counts.  Groups are given by generator rows
(arrays of point images); enumeration is capped.
"""

from __future__ import annotations

import numpy as np

from ._backend import default_cap, get_backend
from ._kernels_numpy import CapExceeded

__all__ = ["PermGroup", "CapExceeded", "brute_class_count", "derived_subgroup"]


def _as_rows(generators, degree=None) -> np.ndarray:
    rows = [np.asarray(g) for g in generators]
    if degree is None:
        if not rows:
            raise ValueError("degree required for a generator-free group")
        degree = len(rows[0])
    dtype = np.uint8 if degree <= 256 else (np.uint16 if degree <= 65536 else np.uint32)
    if not rows:
        return np.arange(degree, dtype=dtype).reshape(1, degree)
    out = np.empty((len(rows), degree), dtype)
    for i, r in enumerate(rows):
        if len(r) != degree:
            raise ValueError("generators of mixed degree")
        arr = np.asarray(r, dtype=np.int64)
        if sorted(arr.tolist()) != list(range(degree)):
            raise ValueError(f"generator {i} is not a permutation of 0..{degree - 1}")
        out[i] = arr.astype(dtype)
    return out


def _inverse(row: np.ndarray) -> np.ndarray:
    inv = np.empty_like(row)
    inv[row] = np.arange(len(row), dtype=row.dtype)
    return inv


class PermGroup:
    """Permutation group on {0..degree-1} given by generators.

    Element list, conjugacy classes and the derived subgroup are computed on
    demand and cached; enumeration beyond `cap` elements raises CapExceeded.
    A single instance is not safe for concurrent mutation, but distinct
    instances may be processed in parallel.
    """

    def __init__(self, generators, degree=None, cap=None, backend=None):
        self.gens = _as_rows(generators, degree)
        self.degree = self.gens.shape[1]
        self.cap = default_cap() if cap is None else cap
        self._backend = get_backend(backend) if isinstance(backend, (str, type(None))) else backend
        self._table = None
        self._class_count = None
        self._derived = None

    # -- enumeration ---------------------------------------------------------

    def _element_table(self):
        if self._table is None:
            self._table = self._backend.closure(self.gens, self.cap)
        return self._table

    def elements(self) -> np.ndarray:
        return self._element_table().elements

    def order(self) -> int:
        return len(self._element_table())

    def __contains__(self, row) -> bool:
        arr = np.asarray(row, dtype=self.gens.dtype).reshape(1, self.degree)
        return int(self._element_table().index_of(arr)[0]) >= 0

    # -- conjugacy classes ---------------------------------------------------

    def class_count(self) -> int:
        """Number of conjugacy classes, via the orbit partition of the
        conjugation action of the generators on the element list."""
        if self._class_count is None:
            table = self._element_table()
            elems = table.elements
            n = elems.shape[0]
            parent = np.arange(n, dtype=np.int64)
            for g in self.gens:
                ginv = _inverse(g)
                conj = g[elems[:, ginv]]
                targets = table.index_of(conj)
                if (targets < 0).any():
                    raise AssertionError("conjugate fell outside the enumerated group")
                self._backend.union_pairs(parent, targets)
            roots = 0
            for i in range(n):
                x = i
                while parent[x] != x:
                    x = parent[x]
                parent[i] = x
                if x == i:
                    roots += 1
            self._class_count = roots
        return self._class_count

    # -- derived subgroup ----------------------------------------------------

    def derived_subgroup(self) -> "PermGroup":
        """Normal closure of the commutators of the generators.

        Only the derived subgroup itself is enumerated (never the parent), so
        this works even when the parent is far beyond the cap.
        """
        if self._derived is None:
            gens = self._normal_closure_gens()
            self._derived = PermGroup(gens, degree=self.degree, cap=self.cap, backend=self._backend)
        return self._derived

    def _normal_closure_gens(self) -> list[np.ndarray]:
        ident = np.arange(self.degree, dtype=self.gens.dtype)
        seeds: list[np.ndarray] = []
        seen = {ident.tobytes()}
        for a in self.gens:
            ainv = _inverse(a)
            for b in self.gens:
                binv = _inverse(b)
                comm = ainv[binv[a[b]]]
                key = comm.tobytes()
                if key not in seen:
                    seen.add(key)
                    seeds.append(comm)
        if not seeds:
            return [ident]
        parent_invs = [(g, _inverse(g)) for g in self.gens]
        while True:
            table = self._backend.closure(np.array(seeds, dtype=self.gens.dtype), self.cap)
            added = False
            current = np.array(seeds, dtype=self.gens.dtype)
            for g, ginv in parent_invs:
                conj = g[current[:, ginv]]
                missing = table.index_of(conj) < 0
                for row in conj[missing]:
                    key = row.tobytes()
                    if key not in seen:
                        seen.add(key)
                        seeds.append(row.copy())
                        added = True
            if not added:
                return seeds


def brute_class_count(group: PermGroup) -> int:
    """Exact conjugacy class count by enumeration."""
    return group.class_count()


def derived_subgroup(group: PermGroup) -> PermGroup:
    return group.derived_subgroup()
