"""Permutations as integer arrays and breadth-first closure of permutation sets.

A permutation of degree ``d`` is a sequence ``p`` with ``p[i]`` the image of
``i``.  Composition is ``compose(p, q)[i] == p[q[i]]`` (apply ``q`` first).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import OrderCapExceeded

DEFAULT_CAP = 10**6
_BATCH_ROWS = 1 << 17   # candidate rows materialized at once


def default_cap() -> int:
    """Closure cap, overridable with ``LOOPSMITH_CAP``."""
    env = os.environ.get("LOOPSMITH_CAP")
    return int(env) if env else DEFAULT_CAP


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def _dtype(degree: int):
    return np.int16 if degree < 2**15 else np.int32


class _Codec:
    """Hashable key per permutation row; integers for small degree."""

    def __init__(self, degree: int):
        self.small = degree ** degree < 2**62 if degree > 1 else True
        if self.small:
            self.weights = np.array([degree ** k for k in range(degree)], dtype=np.int64)

    def keys(self, rows: np.ndarray) -> list:
        if self.small:
            return (rows.astype(np.int64) @ self.weights).tolist()
        rows = np.ascontiguousarray(rows)
        return [r.tobytes() for r in rows]


@dataclass(frozen=True, eq=False)
class PermClosure:
    """The permutation group generated by ``generators``; ``elements[0]`` is the identity."""

    degree: int
    elements: np.ndarray
    generators: tuple[tuple[int, ...], ...]
    _index: dict = field(repr=False)
    _codec: _Codec = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, perm: Sequence[int]) -> int:
        """Position of ``perm`` in :attr:`elements`; ``KeyError`` if absent."""
        row = np.asarray(perm, dtype=self.elements.dtype)[None, :]
        return self._index[self._codec.keys(row)[0]]

    def __contains__(self, perm) -> bool:
        try:
            self.index(perm)
        except KeyError:
            return False
        return True

    def perm(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.elements[i])

    def mul(self, i: int, j: int) -> int:
        return self.index(self.elements[i][self.elements[j]])

    def is_closed(self) -> bool:
        """Exhaustive check of closure under composition and inversion."""
        E = self.elements
        for i in range(len(E)):
            prods = E[i][E]  # E[i] o E[j] for every j
            for k in self._codec.keys(prods):
                if k not in self._index:
                    return False
            inv = np.empty_like(E[i])
            inv[E[i]] = np.arange(self.degree, dtype=E.dtype)
            if self._codec.keys(inv[None, :])[0] not in self._index:
                return False
        return True


def perm_closure(perms: Iterable[Sequence[int]], cap: int | None = None,
                 degree: int | None = None) -> PermClosure:
    """Breadth-first closure of ``perms`` under composition.

    Raises :class:`OrderCapExceeded` as soon as more than ``cap`` elements
    have been found.
    """
    cap = default_cap() if cap is None else cap
    gens = [tuple(int(v) for v in p) for p in perms]
    if degree is None:
        if not gens:
            raise ValueError("degree is required when no permutations are given")
        degree = len(gens[0])
    if any(len(p) != degree for p in gens):
        raise ValueError("all permutations must share one degree")
    for p in gens:
        if not is_permutation(p):
            raise ValueError(f"not a permutation: {p}")
    dt = _dtype(degree)
    codec = _Codec(degree)
    ident = np.arange(degree, dtype=dt)
    # drop the identity and duplicates from the generator set
    uniq = sorted(set(gens) - {tuple(range(degree))})
    G = np.array(uniq, dtype=dt).reshape(len(uniq), degree)
    index = {codec.keys(ident[None, :])[0]: 0}
    chunks = [ident[None, :]]
    count = 1
    frontier = ident[None, :]
    step = max(1, _BATCH_ROWS // max(len(G), 1))
    while len(frontier):
        fresh = []
        for lo in range(0, len(frontier) if len(G) else 0, step):
            # frontier[f] o gens[g] for every pair: right multiplication by generators
            cand = frontier[lo:lo + step][:, G].reshape(-1, degree)
            keep = []
            for row, key in enumerate(codec.keys(cand)):
                if key not in index:
                    index[key] = count
                    count += 1
                    keep.append(row)
                    if count > cap:
                        raise OrderCapExceeded(
                            f"generated group has more than {cap} elements", cap=cap)
            if keep:
                fresh.append(cand[keep])
        frontier = np.concatenate(fresh) if fresh else frontier[:0]
        if len(frontier):
            chunks.append(frontier)
    elements = np.concatenate(chunks)
    elements.flags.writeable = False
    return PermClosure(degree, elements, tuple(gens), index, codec)
