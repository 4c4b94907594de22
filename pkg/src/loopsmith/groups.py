"""Finite groups as Cayley tables: builders, subgroups, cosets and mappings.

Elements are the indices ``0..order-1`` with the identity at 0.  Direct
products use lexicographic index pairing, ``i*|B| + j`` for ``A x B``,
iterated left-associatively for more factors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NoIdentity, NotAssociative, NotLatin, SizeCapExceeded
from .loops import (FiniteLoop, _check_square, _closure, _division_tables, _frozen,
                    _swap_to_front, first_associator_witness, latin_violation)

SYMMETRIC_MAX = 7


@dataclass(frozen=True, eq=False)
class FiniteGroup(FiniteLoop):
    """A group table; ``inverse[x]`` is the unique ``y`` with ``x*y = 0``.

    ``labels`` optionally names the elements (permutation tuples for
    :func:`symmetric`, coordinate tuples for :func:`direct_product`).
    """

    inverse: np.ndarray = field(default=None)
    labels: Optional[tuple] = field(default=None, repr=False)

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def elements(self) -> range:
        return range(self.order)


def make_group(table, labels: Optional[Sequence] = None) -> FiniteGroup:
    """Validate a group table, moving the identity to index 0 if needed.

    Errors name the first violating cell or triple.
    """
    t = _check_square(table)
    bad = latin_violation(t)
    if bad:
        kind, i, j = bad
        raise NotLatin(f"value {t[i, j]} repeats in {kind} at cell ({i}, {j})", cell=(i, j))
    n = t.shape[0]
    ar = np.arange(n)
    e = next((e for e in range(n)
              if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)), None)
    if e is None:
        raise NoIdentity("no element is a two-sided identity")
    t = _swap_to_front(t, e)
    if labels is not None and e != 0:
        labels = list(labels)
        labels[0], labels[e] = labels[e], labels[0]
    probe = FiniteLoop(t, t, t)
    w = first_associator_witness(probe)
    if w is not None:
        x, y, z = w
        raise NotAssociative(f"(x*y)*z != x*(y*z) at triple ({x}, {y}, {z})", triple=w)
    ld, rd = _division_tables(t)
    inverse = ld[:, 0]
    return FiniteGroup(_frozen(t), _frozen(ld), _frozen(rd), _frozen(inverse),
                       tuple(labels) if labels is not None else None)


# ---------------------------------------------------------------------------
# builders

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    a = np.arange(n)
    return make_group((a[:, None] + a[None, :]) % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order ``2n``; ``r^i s^j`` has index ``i + n*j``."""
    if n < 1:
        raise ValueError("n must be positive")
    idx = np.arange(2 * n)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return make_group(rot + n * ref)


def symmetric(n: int) -> FiniteGroup:
    """All permutations of ``0..n-1`` in lexicographic order.

    ``table[a, b]`` is ``p_a o p_b`` (apply ``p_b`` first); ``labels`` holds the tuples.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > SYMMETRIC_MAX:
        raise SizeCapExceeded(f"symmetric({n}) exceeds the cap n <= {SYMMETRIC_MAX}",
                              cap=SYMMETRIC_MAX)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = perms @ weights                       # increasing, lexicographic
    prods = perms[:, perms]                       # [a, b, i] = p_a[p_b[i]]
    table = np.searchsorted(codes, prods @ weights)
    return make_group(table, labels=[tuple(int(v) for v in p) for p in perms])


def quaternion8() -> FiniteGroup:
    """Elements ``1, -1, i, -i, j, -j, k, -k`` at indices 0..7."""
    # unit products: (unit_a * unit_b) = sign * unit_c over units 1, i, j, k
    unit = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    t = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            s, u = unit[a // 2, b // 2]
            s *= (-1) ** (a % 2) * (-1) ** (b % 2)
            t[a, b] = 2 * u + (s < 0)
    return make_group(t, labels=["1", "-1", "i", "-i", "j", "-j", "k", "-k"])


def direct_product(factors: Sequence[FiniteGroup]) -> FiniteGroup:
    """Product with index ``(...(i1*|G2| + i2)*|G3| + i3...)``; labels are coordinate tuples."""
    if not factors:
        return cyclic(1)
    t = factors[0].table
    for F in factors[1:]:
        na, nb = t.shape[0], F.order
        t = (t[:, None, :, None] * nb + F.table[None, :, None, :]).reshape(na * nb, na * nb)
    sizes = [F.order for F in factors]
    labels = list(itertools.product(*(range(s) for s in sizes)))
    return make_group(t, labels=labels)


def product_index(sizes: Sequence[int], coords: Sequence[int]) -> int:
    idx = 0
    for s, c in zip(sizes, coords):
        idx = idx * s + c
    return idx


def product_coords(sizes: Sequence[int], idx: int) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        idx, c = divmod(idx, s)
        out.append(c)
    return tuple(reversed(out))


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def as_group(L: FiniteLoop) -> FiniteGroup:
    """Validate that a loop table is a group."""
    return make_group(L.table)


# ---------------------------------------------------------------------------
# subgroups and cosets

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self.member_set

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __eq__(self, other) -> bool:
        if isinstance(other, Subgroup):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def is_trivial(self) -> bool:
        return self.members == (0,)


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``."""
    return Subgroup(G, tuple(int(v) for v in _closure(G, gens)))


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    S = tuple(sorted(set(int(m) for m in members)))
    if not S or S[0] != 0 or subgroup_closure(G, S).members != S:
        raise ValueError("members do not form a subgroup")
    return Subgroup(G, S)


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def center(G: FiniteGroup) -> Subgroup:
    T = G.table
    return Subgroup(G, tuple(int(a) for a in range(G.order) if np.array_equal(T[a], T[:, a])))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """``g H g^-1``."""
    return Subgroup(G, tuple(sorted({G.conj(g, h) for h in H.members})))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    m = np.asarray(H.members)
    for g in range(G.order):
        conj = G.table[G.table[g, m], G.inverse[g]]
        if not np.isin(conj, m).all():
            return False
    return True


def normal_core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``H``: the intersection of all conjugates."""
    core = set(H.members)
    for g in range(G.order):
        core &= set(conjugate_subgroup(G, H, g).members)
    return Subgroup(G, tuple(sorted(core)))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return Subgroup(G, tuple(g for g in range(G.order)
                             if conjugate_subgroup(G, H, g).members == H.members))


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return Subgroup(A.parent, tuple(sorted(A.member_set & B.member_set)))


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by adjoining one element at a time (small groups only)."""
    start = (0,)
    seen = {start}
    todo = [start]
    while todo:
        S = todo.pop()
        have = set(S)
        for g in range(G.order):
            if g in have:
                continue
            T = tuple(int(v) for v in _closure(G, (*S, g)))
            if T not in seen:
                seen.add(T)
                todo.append(T)
    return [Subgroup(G, S) for S in sorted(seen, key=lambda s: (len(s), s))]


def point_stabilizer(G: FiniteGroup, point: int) -> Subgroup:
    """For permutation-labelled groups (see :func:`symmetric`): elements fixing ``point``."""
    if G.labels is None or not isinstance(G.labels[0], tuple):
        raise ValueError("group elements are not labelled by permutations")
    return Subgroup(G, tuple(i for i, p in enumerate(G.labels) if p[point] == point))


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets ``gH``; coset 0 is ``H`` itself.

    ``action[g, c]`` is the coset ``g * representatives[c] * H``.
    """

    parent: FiniteGroup
    subgroup: Subgroup
    coset_of: np.ndarray
    representatives: np.ndarray

    @property
    def count(self) -> int:
        return len(self.representatives)

    @cached_property
    def action(self) -> np.ndarray:
        a = self.coset_of[self.parent.table[:, self.representatives]]
        a.flags.writeable = False
        return a

    def act(self, g: int, c: int) -> int:
        return int(self.action[g, c])

    def members(self, c: int) -> list[int]:
        return np.flatnonzero(self.coset_of == c).tolist()


def left_cosets(G: FiniteGroup, H: Subgroup,
                representatives: Optional[Sequence[int]] = None) -> CosetSpace:
    """Left cosets of ``H``.

    Cosets are numbered by least element unless ``representatives`` fixes the
    numbering; the first representative must lie in ``H``.
    """
    m = np.asarray(H.members)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    if representatives is None:
        reps = []
        for g in range(G.order):
            if coset_of[g] < 0:
                coset_of[G.table[g, m]] = len(reps)
                reps.append(g)
    else:
        reps = [int(r) for r in representatives]
        for c, r in enumerate(reps):
            block = G.table[r, m]
            if (coset_of[block] >= 0).any():
                raise ValueError(f"representative {r} repeats an earlier coset")
            coset_of[block] = c
        if (coset_of < 0).any() or coset_of[0] != 0:
            raise ValueError("representatives must cover every coset, starting inside H")
    coset_of.flags.writeable = False
    reps_arr = np.asarray(reps, dtype=np.int64)
    reps_arr.flags.writeable = False
    return CosetSpace(G, H, coset_of, reps_arr)


# ---------------------------------------------------------------------------
# mappings

@dataclass(frozen=True, eq=False)
class Mapping:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.order:
            raise ValueError(f"mapping needs {self.source.order} images, got {len(self.image)}")
        if any(not 0 <= v < self.target.order for v in self.image):
            raise ValueError("image index out of range")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def preserves_identity(self) -> bool:
        return self.image[0] == 0

    def compose(self, other: "Mapping") -> "Mapping":
        """``self o other``."""
        return Mapping(other.source, self.target, tuple(self.image[v] for v in other.image))


def first_hom_violation(f: Mapping) -> Optional[tuple[int, int]]:
    img = np.asarray(f.image)
    bad = img[f.source.table] != f.target.table[np.ix_(img, img)]
    if not bad.any():
        return None
    return divmod(int(np.argmax(bad)), f.source.order)


def is_homomorphism(f: Mapping) -> bool:
    return first_hom_violation(f) is None


def is_monomorphism(f: Mapping) -> bool:
    return is_homomorphism(f) and len(set(f.image)) == len(f.image)


def image_subgroup(f: Mapping) -> Subgroup:
    return subgroup_closure(f.target, f.image)


def projection(factors: Sequence[FiniteGroup], i: int, G: Optional[FiniteGroup] = None) -> Mapping:
    G = G or direct_product(factors)
    sizes = [F.order for F in factors]
    return Mapping(G, factors[i], tuple(product_coords(sizes, x)[i] for x in range(G.order)))


def perm_group(closure) -> FiniteGroup:
    """Cayley table of a :class:`~loopsmith.perm.PermClosure`, labelled by permutations."""
    E = closure.elements
    table = np.empty((len(E), len(E)), dtype=np.int64)
    for i in range(len(E)):
        table[i] = [closure._index[k] for k in closure._codec.keys(E[i][E])]
    return make_group(table, labels=[tuple(int(v) for v in p) for p in E])
