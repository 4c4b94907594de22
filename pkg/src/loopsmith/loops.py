"""Finite loops given by Latin-square Cayley tables with identity 0."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import NotLatin, NotNormal, NoTwoSidedIdentity, SizeCapExceeded
from .perm import PermClosure, perm_closure

Triple = tuple[int, int, int]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.flags.writeable = False
    return a


def latin_violation(table: np.ndarray) -> Optional[tuple[str, int, int]]:
    """First cell repeating a value in its row (or column): ``("row"|"column", i, j)``."""
    n = table.shape[0]
    for i in range(n):
        seen = {}
        for j in range(n):
            v = int(table[i, j])
            if v in seen:
                return ("row", i, j)
            seen[v] = j
    for j in range(n):
        seen = {}
        for i in range(n):
            v = int(table[i, j])
            if v in seen:
                return ("column", i, j)
            seen[v] = i
    return None


def _check_square(table) -> np.ndarray:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise ValueError(f"entry at ({bad[0]}, {bad[1]}) out of range 0..{n - 1}")
    return t


def relabel(table: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Table of the same operation after renaming element ``x`` to ``perm[x]``."""
    perm = np.asarray(perm)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return perm[table[np.ix_(inv, inv)]]


def two_sided_identity(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    return None


def _swap_to_front(table: np.ndarray, e: int) -> np.ndarray:
    if e == 0:
        return table
    perm = np.arange(table.shape[0])
    perm[0], perm[e] = e, 0
    return relabel(table, perm)


@dataclass(frozen=True, eq=False)
class FiniteLoop:
    """A loop on ``0..order-1`` with identity 0.

    ``left_div[a, b]`` solves ``a*y = b`` and ``right_div[a, b]`` solves ``x*a = b``.
    Build with :func:`make_loop`, which validates the table.
    """

    table: np.ndarray
    left_div: np.ndarray
    right_div: np.ndarray

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.table.shape[0]

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def ldiv(self, a: int, b: int) -> int:
        return int(self.left_div[a, b])

    def rdiv(self, b: int, a: int) -> int:
        """``b / a``: the ``x`` with ``x*a = b``."""
        return int(self.right_div[a, b])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order})"


def _division_tables(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = t.shape[0]
    rows = np.arange(n)[:, None]
    ld = np.empty_like(t)
    ld[rows, t] = np.arange(n)[None, :]        # ld[a, a*y] = y
    rd = np.empty_like(t)
    rd[rows, t.T] = np.arange(n)[None, :]      # rd[a, x*a] = x
    return ld, rd


def _loop_parts(table) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = _check_square(table)
    bad = latin_violation(t)
    if bad:
        kind, i, j = bad
        raise NotLatin(f"value {t[i, j]} repeats in {kind} at cell ({i}, {j})", cell=(i, j))
    e = two_sided_identity(t)
    if e is None:
        raise NoTwoSidedIdentity("no element is a two-sided identity")
    t = _swap_to_front(t, e)
    ld, rd = _division_tables(t)
    return _frozen(t), _frozen(ld), _frozen(rd)


def make_loop(table) -> FiniteLoop:
    """Validate a Latin square with a two-sided identity.

    An identity found at index ``e != 0`` is moved to 0 by swapping the labels
    ``0`` and ``e``.
    """
    return FiniteLoop(*_loop_parts(table))


def loop_of(L) -> FiniteLoop:
    """View any loop-like object (including groups) as a plain FiniteLoop."""
    return L if type(L) is FiniteLoop else FiniteLoop(L.table, L.left_div, L.right_div)


# ---------------------------------------------------------------------------
# exhaustive triple scans

def _scan(n: int, first_bad: Callable[[int], Optional[tuple[int, int]]],
          workers: int = 1) -> Optional[Triple]:
    """Lexicographically first ``(x, y, z)``; ``first_bad(x)`` returns ``(y, z)`` or None."""
    if workers <= 1:
        for x in range(n):
            hit = first_bad(x)
            if hit is not None:
                return (x, *hit)
        return None
    chunks = np.array_split(np.arange(n), workers)

    def run(xs):
        return _scan_range(xs, first_bad)

    with ThreadPoolExecutor(max_workers=workers) as ex:
        found = [w for w in ex.map(run, chunks) if w is not None]
    return min(found) if found else None


def _scan_range(xs, first_bad):
    for x in xs:
        hit = first_bad(int(x))
        if hit is not None:
            return (int(x), *hit)
    return None


def _first_true(mask: np.ndarray) -> Optional[tuple[int, int]]:
    if not mask.any():
        return None
    k = int(np.argmax(mask))
    return divmod(k, mask.shape[1])


def first_associator_witness(L, workers: int = 1) -> Optional[Triple]:
    """First ``(x, y, z)`` in lexicographic order with ``(xy)z != x(yz)``."""
    T = L.table

    def bad(x):
        return _first_true(T[T[x]] != T[x][T])

    return _scan(L.order, bad, workers)


def is_associative(L, workers: int = 1) -> bool:
    return first_associator_witness(L, workers) is None


def first_moufang_witness(L, workers: int = 1) -> Optional[Triple]:
    """First ``(x, y, z)`` violating ``(xy)(zx) = (x(yz))x``."""
    T = L.table

    def bad(x):
        lhs = T[T[x][:, None], T[:, x][None, :]]
        rhs = T[:, x][T[x][T]]
        return _first_true(lhs != rhs)

    return _scan(L.order, bad, workers)


def is_moufang(L, workers: int = 1) -> bool:
    return first_moufang_witness(L, workers) is None


def first_alternative_witness(L) -> Optional[tuple[str, int, int]]:
    """Check ``x(xy) = (xx)y`` and ``(yx)x = y(xx)`` for all pairs."""
    T = L.table
    n = L.order
    sq = T[np.arange(n), np.arange(n)]
    left = T[np.arange(n)[:, None], T] != T[sq][:, :]          # [x, y]: x(xy) vs (xx)y
    hit = _first_true(left)
    if hit:
        return ("left", *hit)
    right = T[T.T, np.arange(n)[:, None]] != T[:, sq].T       # [x, y]: (yx)x vs y(xx)
    hit = _first_true(right)
    return ("right", *hit) if hit else None


# ---------------------------------------------------------------------------
# left translations

def left_translations(L) -> list[tuple[int, ...]]:
    """``lambda_a`` is row ``a`` of the table: ``y -> a*y``."""
    return [tuple(int(v) for v in row) for row in L.table]


def mlt_left(L, cap: int | None = None) -> PermClosure:
    """Group generated by all left translations (breadth-first closure)."""
    return perm_closure(left_translations(L), cap=cap, degree=L.order)


def stabilizer_of_identity(closure: PermClosure, degree: int | None = None) -> list[int]:
    """Indices into ``closure.elements`` of the permutations fixing point 0."""
    if degree is not None and degree != closure.degree:
        raise ValueError("degree does not match the closure")
    return np.flatnonzero(closure.elements[:, 0] == 0).tolist()


# ---------------------------------------------------------------------------
# subloops

@dataclass(frozen=True, eq=False)
class Subloop:
    parent: FiniteLoop
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def as_loop(self) -> FiniteLoop:
        """The subloop as a loop on ``0..len-1`` in the order of :attr:`members`."""
        m = np.asarray(self.members)
        pos = np.full(self.parent.order, -1)
        pos[m] = np.arange(len(m))
        return make_loop(pos[self.parent.table[np.ix_(m, m)]])


def _closure(L, seed: Iterable[int]) -> np.ndarray:
    S = np.unique(np.asarray([0, *seed], dtype=np.int64))
    while True:
        ix = np.ix_(S, S)
        grown = np.unique(np.concatenate(
            [S, L.table[ix].ravel(), L.left_div[ix].ravel(), L.right_div[ix].ravel()]))
        if len(grown) == len(S):
            return S
        S = grown


def subloop_generated(L, seed: Iterable[int]) -> Subloop:
    """Smallest subloop containing ``seed`` (closed under product and both divisions)."""
    return Subloop(L, tuple(int(v) for v in _closure(L, seed)))


def make_subloop(L, members: Iterable[int]) -> Subloop:
    S = sorted(set(int(m) for m in members))
    if _closure(L, S).tolist() != sorted(set(S) | {0}) or 0 not in S:
        raise ValueError("members are not closed under the loop operations")
    return Subloop(L, tuple(S))


def _restricted_associative(L, S: np.ndarray) -> bool:
    T = L.table
    sub = T[np.ix_(S, S)]
    # (xy)z vs x(yz) over x, y, z in S
    lhs = T[sub[:, :, None], S[None, None, :]]
    rhs = T[S[:, None, None], sub[None, :, :]]
    return bool(np.array_equal(lhs, rhs))


def two_generated_subloops_associative(L) -> bool:
    """Diassociativity: every subloop generated by two elements is a group.

    Pairs inside an already verified subloop are skipped.
    """
    n = L.order
    covered = np.zeros((n, n), dtype=bool)
    for x in range(n):
        for y in range(x, n):
            if covered[x, y]:
                continue
            S = _closure(L, (x, y))
            if not _restricted_associative(L, S):
                return False
            covered[np.ix_(S, S)] = True
    return True


def _sets_equal_columns(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.array_equal(np.sort(a, axis=0), np.sort(b, axis=0)))


def is_normal_subloop(L, N) -> bool:
    """Check ``xN = Nx``, ``(xN)y = x(Ny)`` and ``x(yN) = (xy)N`` for all ``x, y``."""
    T = L.table
    members = np.asarray(N.members if isinstance(N, Subloop) else sorted(N))
    for x in range(L.order):
        if set(T[x, members].tolist()) != set(T[members, x].tolist()):
            return False
        # columns indexed by y, rows by n in N
        if not _sets_equal_columns(T[T[x, members]], T[x][T[members]]):
            return False
        if not _sets_equal_columns(T[x][T[:, members].T], T[T[x]][:, members].T):
            return False
    return True


def quotient_blocks(L, N) -> list[tuple[int, ...]]:
    """The blocks ``x*N`` sorted by least member; block 0 is ``N`` itself."""
    members = np.asarray(N.members if isinstance(N, Subloop) else sorted(N))
    seen = np.full(L.order, -1)
    blocks = []
    for x in range(L.order):
        if seen[x] >= 0:
            continue
        block = np.unique(L.table[x, members])
        if (seen[block] >= 0).any() or x not in block:
            raise NotNormal(f"left cosets of N overlap at element {x}", element=x)
        seen[block] = len(blocks)
        blocks.append(tuple(int(b) for b in block))
    return blocks


def factor_loop(L, N) -> FiniteLoop:
    """``L/N`` on the blocks of :func:`quotient_blocks`.

    Well-definedness is checked over every pair of representatives; a block
    product that depends on the representatives raises :class:`NotNormal`.
    """
    blocks = quotient_blocks(L, N)
    block_of = np.empty(L.order, dtype=np.int64)
    for i, b in enumerate(blocks):
        block_of[list(b)] = i
    bt = block_of[L.table]                        # block of x*y for all x, y
    k = len(blocks)
    table = np.empty((k, k), dtype=np.int64)
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            vals = np.unique(bt[np.ix_(bi, bj)])
            if len(vals) != 1:
                raise NotNormal(f"product of blocks {i} and {j} depends on representatives",
                                blocks=(i, j))
            table[i, j] = vals[0]
    return make_loop(table)


def block_map(L, N) -> "LoopHom":
    """Homomorphism ``L -> L/N`` sending each element to its block."""
    blocks = quotient_blocks(L, N)
    image = np.empty(L.order, dtype=np.int64)
    for i, b in enumerate(blocks):
        image[list(b)] = i
    return LoopHom(L, factor_loop(L, N), tuple(int(v) for v in image))


# ---------------------------------------------------------------------------
# homomorphisms, centre, isomorphism

@dataclass(frozen=True, eq=False)
class LoopHom:
    source: FiniteLoop
    target: FiniteLoop
    image: tuple[int, ...]

    def is_valid(self) -> bool:
        f = np.asarray(self.image)
        if len(f) != self.source.order or f[0] != 0:
            return False
        return bool(np.array_equal(f[self.source.table], self.target.table[np.ix_(f, f)]))

    def is_bijective(self) -> bool:
        return sorted(self.image) == list(range(self.target.order)) \
            and self.source.order == self.target.order

    def kernel(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.image) if v == 0)


def centre_of_loop(L) -> Subloop:
    """Elements commuting with everything and associating in all three positions."""
    T = L.table
    n = L.order
    xs = np.arange(n)
    out = []
    for a in range(n):
        if not np.array_equal(T[a], T[:, a]):
            continue
        if not np.array_equal(T[a][T], T[T[a]]):                   # a(xy) = (ax)y
            continue
        if not np.array_equal(T[xs[:, None], T[a][None, :]],       # x(ay) = (xa)y
                              T[T[:, a]]):
            continue
        if not np.array_equal(T[xs[:, None], T[:, a][None, :]],    # x(ya) = (xy)a
                              T[:, a][T]):
            continue
        out.append(a)
    Z = Subloop(L, tuple(out))
    assert is_normal_subloop(L, Z), "centre failed the normality test"
    return Z


def _cycle_type(p: np.ndarray) -> tuple[int, ...]:
    n = len(p)
    seen = np.zeros(n, dtype=bool)
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        k, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def element_profile(L) -> list[tuple]:
    """Isomorphism invariant per element: cycle types of both translations, square."""
    T = L.table
    sq_is_e = [int(T[x, x]) == 0 for x in range(L.order)]
    return [(_cycle_type(T[x]), _cycle_type(T[:, x]), sq_is_e[x]) for x in range(L.order)]


def _generators(L) -> list[int]:
    gens: list[int] = []
    have = {0}
    for x in range(L.order):
        if x not in have:
            gens.append(x)
            have = set(_closure(L, gens).tolist())
    return gens


def is_isomorphic(L1, L2, cap: int = 64) -> Optional[LoopHom]:
    """Backtracking search for an isomorphism ``L1 -> L2`` fixing the identity.

    Generators of ``L1`` are mapped to candidates with the same element
    profile; each partial assignment is closed under products and checked.
    """
    n = L1.order
    if n != L2.order:
        return None
    if n > cap:
        raise SizeCapExceeded(f"order {n} exceeds isomorphism cap {cap}", cap=cap)
    p1, p2 = element_profile(L1), element_profile(L2)
    if sorted(p1) != sorted(p2):
        return None
    T1, T2 = L1.table, L2.table
    gens = _generators(L1)
    f = [-1] * n
    finv = [-1] * n
    f[0] = finv[0] = 0

    def extend(dom: list[int], start: int, undo: list[int]) -> bool:
        # close the assignment: every pair involving dom[i] for i >= start
        i = start
        while i < len(dom):
            u = dom[i]
            for j in range(i + 1):
                v = dom[j]
                for a, b in ((u, v), (v, u)):
                    z = int(T1[a, b])
                    w = int(T2[f[a], f[b]])
                    if f[z] >= 0:
                        if f[z] != w:
                            return False
                    elif finv[w] >= 0 or p1[z] != p2[w]:
                        return False
                    else:
                        f[z], finv[w] = w, z
                        dom.append(z)
                        undo.append(z)
            i += 1
        return True

    def search(k: int, dom: list[int]) -> bool:
        if k == len(gens):
            return len(dom) == n
        g = gens[k]
        if f[g] >= 0:
            return search(k + 1, dom)
        for w in range(n):
            if finv[w] >= 0 or p1[g] != p2[w]:
                continue
            f[g], finv[w] = w, g
            undo = [g]
            d = dom + [g]
            if extend(d, len(dom), undo) and search(k + 1, d):
                return True
            for z in undo:
                finv[f[z]] = -1
                f[z] = -1
        return False

    if not search(0, [0]):
        return None
    return LoopHom(loop_of(L1), loop_of(L2), tuple(f))


# ---------------------------------------------------------------------------
# enumeration of small loops

def normalized_latin_squares(n: int) -> Iterator[np.ndarray]:
    """All Latin squares with first row and first column ``0..n-1``, row by row."""
    if n < 1:
        return
    rows_by_start = {i: [p for p in itertools.permutations(range(n)) if p[0] == i]
                     for i in range(n)}
    full = (1 << n) - 1
    used = [1 << j for j in range(n)]   # used[j]: symbols already in column j
    square = [tuple(range(n))]

    def rec(i):
        if i == n:
            yield np.array(square, dtype=np.int64)
            return
        for p in rows_by_start[i]:
            if all(not used[j] >> p[j] & 1 for j in range(1, n)):
                for j in range(1, n):
                    used[j] |= 1 << p[j]
                square.append(p)
                yield from rec(i + 1)
                square.pop()
                for j in range(1, n):
                    used[j] &= full ^ (1 << p[j])

    for j in range(n):
        used[j] = 1 << j
    yield from rec(1)


def iter_loops(n: int) -> Iterator[FiniteLoop]:
    """Every loop on ``0..n-1`` whose table has identity first row and column."""
    for sq in normalized_latin_squares(n):
        yield make_loop(sq)
