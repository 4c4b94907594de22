"""Sharply transitive sections and the loops they define.

A section picks one representative per left coset of ``H`` in ``G``.  Its
image ``S`` is sharply transitive when, for every pair of cosets ``xH, yH``,
exactly one ``z`` in ``S`` has ``z xH = yH``.  With ``sigma(H) = 1`` and ``H``
core-free, ``xH * yH = sigma(xH) yH`` is a loop with identity coset 0.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (CoreNotTrivial, NotSharplyTransitive, SectionNotPinned,
                     SizeMismatch)
from .groups import (CosetSpace, FiniteGroup, Subgroup, left_cosets, normal_core,
                     normalizer, subgroup_closure)
from .loops import FiniteLoop, element_profile, is_isomorphic, make_loop, mlt_left
from .perm import PermClosure

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointCosets:
    """Cosets of the stabilizer of point 0 in a transitive permutation group.

    The coset ``gH`` is identified with the point ``g(0)``.
    """

    parent: PermClosure
    subgroup: tuple[int, ...]

    @property
    def count(self) -> int:
        return self.parent.degree

    @property
    def action(self) -> np.ndarray:
        return self.parent.elements

    @cached_property
    def coset_of(self) -> np.ndarray:
        return self.parent.elements[:, 0]

    @cached_property
    def representatives(self) -> np.ndarray:
        return np.unique(self.coset_of, return_index=True)[1]

    def act(self, g: int, c: int) -> int:
        return int(self.parent.elements[g, c])

    def is_transitive(self) -> bool:
        return len(np.unique(self.coset_of)) == self.count


def point_cosets(G: PermClosure, H: Optional[Sequence[int]] = None) -> PointCosets:
    if H is None:
        H = np.flatnonzero(G.elements[:, 0] == 0).tolist()
    return PointCosets(G, tuple(int(h) for h in H))


@dataclass(frozen=True, eq=False)
class Section:
    """``choice[c]`` is the representative picked in coset ``c``.

    ``orbit_size`` is the number of sections represented when the search
    reports conjugacy-orbit representatives only.
    """

    cosets: CosetSpace | PointCosets
    choice: tuple[int, ...]
    orbit_size: int = 1

    def __post_init__(self):
        if len(self.choice) != self.cosets.count:
            raise ValueError(f"section needs {self.cosets.count} choices, got {len(self.choice)}")
        for c, z in enumerate(self.choice):
            if self.cosets.coset_of[z] != c:
                raise ValueError(f"choice {z} for coset {c} lies in coset {self.cosets.coset_of[z]}")

    @property
    def image(self) -> tuple[int, ...]:
        return self.choice

    @property
    def pinned(self) -> bool:
        """``sigma(H) = 1``."""
        return self.choice[0] == 0

    def normalized(self) -> "Section":
        """The pinned section ``h^-1 S`` where ``h = choice[0]``; needs a group coset space."""
        h = self.choice[0]
        if h == 0:
            return self
        G = self.cosets.parent
        hinv = int(G.inverse[h])
        moved = [int(G.table[hinv, z]) for z in self.choice]
        choice = [0] * len(moved)
        for z in moved:
            choice[int(self.cosets.coset_of[z])] = z
        return Section(self.cosets, tuple(choice), self.orbit_size)

    def __repr__(self) -> str:
        return f"Section({' '.join(map(str, self.choice))})"


@dataclass(frozen=True)
class SearchOptions:
    """Options for :func:`enumerate_sections`.

    ``pin_identity`` keeps ``sigma(H) = 1``.  Turning it off enumerates every
    sharply transitive transversal, whose coset-0 representative ranges over
    ``H``; there are exactly ``|H|`` times as many.
    """

    max_solutions: Optional[int] = None
    symmetry_breaking: bool = False
    parallel: bool = False
    require_generation: bool = False
    pin_identity: bool = True
    workers: Optional[int] = None

    def __post_init__(self):
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be at least 1 when bounded")


def _as_set(S: Iterable[int]) -> np.ndarray:
    return np.unique(np.asarray(list(S), dtype=np.int64))


def sharply_transitive_on(cosets, S: Iterable[int]) -> bool:
    """Every column of the action matrix restricted to ``S`` is a permutation."""
    S = _as_set(S)
    if len(S) != cosets.count:
        return False
    A = np.sort(cosets.action[S], axis=0)
    return bool((A == np.arange(cosets.count)[:, None]).all())


def is_sharply_transitive(G: FiniteGroup, H: Subgroup, S: Iterable[int],
                          cosets: Optional[CosetSpace] = None) -> bool:
    return sharply_transitive_on(cosets or left_cosets(G, H), S)


def fixed_cosets(cosets) -> np.ndarray:
    """``fixes[g, c]``: whether ``g`` fixes coset ``c``."""
    A = cosets.action
    return A == np.arange(cosets.count)[None, :]


def fpf_difference_check(G: FiniteGroup, H: Subgroup, S: Iterable[int],
                         cosets: Optional[CosetSpace] = None) -> bool:
    """``S`` of size ``[G:H]`` is sharply transitive iff no ``z1^-1 z2`` (z1 != z2) fixes a coset."""
    cosets = cosets or left_cosets(G, H)
    S = _as_set(S)
    if len(S) != cosets.count:
        raise SizeMismatch(f"|S| = {len(S)} but [G:H] = {cosets.count}")
    moving = ~fixed_cosets(cosets).any(axis=1)
    D = G.table[G.inverse[S][:, None], S[None, :]]
    ok = moving[D]
    np.fill_diagonal(ok, True)
    return bool(ok.all())


def _core_free(G, H, cosets) -> bool:
    if isinstance(cosets, PointCosets):
        # the kernel of a faithful transitive action is trivial
        return cosets.is_transitive()
    return normal_core(G, H).is_trivial()


def loop_from_section(G, H, sigma: Section) -> FiniteLoop:
    """Loop on coset indices with ``a * b = sigma(a) b``."""
    cosets = sigma.cosets
    if cosets.parent is not G:
        raise ValueError("section belongs to a different group")
    if not sigma.pinned:
        raise SectionNotPinned(f"sigma(H) = {sigma.choice[0]}, not the identity")
    if not _core_free(G, H, cosets):
        raise CoreNotTrivial("H contains a non-trivial normal subgroup of G")
    if not sharply_transitive_on(cosets, sigma.choice):
        raise NotSharplyTransitive("section image is not sharply transitive")
    return make_loop(cosets.action[np.asarray(sigma.choice)])


def section_from_loop(L: FiniteLoop, cap: Optional[int] = None
                      ) -> tuple[PermClosure, tuple[int, ...], Section]:
    """Left translations as a section of ``Mlt_left(L)`` over the identity stabilizer."""
    G = mlt_left(L, cap=cap)
    cosets = point_cosets(G)
    choice = tuple(G.index(L.table[a]) for a in range(L.order))
    return G, cosets.subgroup, Section(cosets, choice)


# ---------------------------------------------------------------------------
# backtracking enumeration

def _pack_rows(mask: np.ndarray) -> list[int]:
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass
class _Plan:
    count: int
    coset_masks: list[int]
    compat: list[int]
    root: list[int]


def _plan(G: FiniteGroup, cosets: CosetSpace, pin: bool) -> _Plan:
    n = G.order
    moving = ~fixed_cosets(cosets).any(axis=1)
    compat = moving[G.table[G.inverse[:, None], np.arange(n)[None, :]]]
    np.fill_diagonal(compat, False)
    coset_mask = np.zeros((cosets.count, n), dtype=bool)
    coset_mask[cosets.coset_of, np.arange(n)] = True
    masks = _pack_rows(coset_mask)
    root = list(masks)
    if pin:
        root[0] = 1
    return _Plan(cosets.count, masks, _pack_rows(compat), root)


def _dfs(plan: _Plan, domains: list[int], choice: list[int]) -> Iterator[tuple[int, ...]]:
    best, best_size = -1, None
    for c in range(plan.count):
        if choice[c] < 0:
            size = domains[c].bit_count()
            if best_size is None or size < best_size:
                best, best_size = c, size
                if size == 0:
                    return
    if best < 0:
        yield tuple(choice)
        return
    d = domains[best]
    compat = plan.compat
    while d:
        low = d & -d
        z = low.bit_length() - 1
        d ^= low
        cz = compat[z]
        choice[best] = z
        yield from _dfs(plan, [dom & cz for dom in domains], choice)
    choice[best] = -1


def _first_branch(plan: _Plan) -> tuple[list[int], list[int], list[list[int]]]:
    """Forced assignments from the root, then one task per candidate of the first branching coset."""
    domains, choice = list(plan.root), [-1] * plan.count
    while True:
        free = [c for c in range(plan.count) if choice[c] < 0]
        if not free:
            return domains, choice, []
        c = min(free, key=lambda k: (domains[k].bit_count(), k))
        d = domains[c]
        if d.bit_count() != 1:
            break
        z = d.bit_length() - 1
        choice[c] = z
        domains = [dom & plan.compat[z] for dom in domains]
    tasks = []
    while d:
        low = d & -d
        tasks.append([c, low.bit_length() - 1])
        d ^= low
    return domains, choice, tasks


def _run_task(args) -> list[tuple[int, ...]]:
    plan, domains, choice, (c, z) = args
    choice = list(choice)
    choice[c] = z
    return list(_dfs(plan, [dom & plan.compat[z] for dom in domains], choice))


def _raw_solutions(G, cosets, opts: SearchOptions) -> Iterator[tuple[int, ...]]:
    plan = _plan(G, cosets, opts.pin_identity)
    if not opts.parallel:
        yield from _dfs(plan, list(plan.root), [-1] * plan.count)
        return
    domains, choice, tasks = _first_branch(plan)
    if not tasks:
        if all(c >= 0 for c in choice):
            yield tuple(choice)
        return
    with ProcessPoolExecutor(max_workers=opts.workers) as ex:
        parts = ex.map(_run_task, [(plan, domains, choice, t) for t in tasks])
        merged = sorted(s for part in parts for s in part)
    yield from merged


def _conjugate_choice(G, cosets, choice, g) -> tuple[int, ...]:
    out = [0] * len(choice)
    ginv = int(G.inverse[g])
    for z in choice:
        w = int(G.table[G.table[g, z], ginv])
        out[int(cosets.coset_of[w])] = w
    return tuple(out)


def enumerate_sections(G: FiniteGroup, H: Subgroup,
                       opts: SearchOptions = SearchOptions(),
                       cosets: Optional[CosetSpace] = None) -> Iterator[Section]:
    """All sharply transitive sections of ``G/H``.

    Backtracking picks the coset with the fewest remaining candidates; a
    candidate ``z`` stays compatible with ``w`` when ``z^-1 w`` fixes no
    coset, kept as one bitmask over ``G`` per element.  With
    ``symmetry_breaking`` each conjugacy orbit under the normalizer of ``H``
    is reported once, by its least member, with its size in ``orbit_size``.
    """
    cosets = cosets or left_cosets(G, H)
    everything = G.order
    produced = 0
    seen: set[tuple[int, ...]] = set()
    conjugators = normalizer(G, H).members if opts.symmetry_breaking else ()
    for choice in _raw_solutions(G, cosets, opts):
        if opts.require_generation and len(subgroup_closure(G, choice)) != everything:
            continue
        if opts.symmetry_breaking:
            if choice in seen:
                continue
            orbit = {_conjugate_choice(G, cosets, choice, g) for g in conjugators}
            seen |= orbit
            section = Section(cosets, min(orbit), len(orbit))
        else:
            section = Section(cosets, choice)
        yield section
        produced += 1
        if opts.max_solutions is not None and produced >= opts.max_solutions:
            return


def count_sections(G: FiniteGroup, H: Subgroup, opts: SearchOptions = SearchOptions()) -> int:
    """Number of sections; orbit representatives count with their orbit size."""
    return sum(s.orbit_size for s in enumerate_sections(G, H, opts))


def classify_section_loops(G: FiniteGroup, H: Subgroup,
                           opts: SearchOptions = SearchOptions(),
                           cap: int = 64) -> list[tuple[FiniteLoop, int]]:
    """Isomorphism classes of the section loops with multiplicities.

    Unpinned sections are first normalized to ``sigma(H) = 1``; the
    multiplicities sum to :func:`count_sections` under the same options.
    """
    classes: list[list] = []          # [profile key, loop, multiplicity]
    for s in enumerate_sections(G, H, opts):
        L = loop_from_section(G, H, s.normalized())
        key = sorted(element_profile(L))
        for entry in classes:
            if entry[0] == key and is_isomorphic(L, entry[1], cap=cap) is not None:
                entry[2] += s.orbit_size
                break
        else:
            classes.append([key, L, s.orbit_size])
    log.debug("classified into %d classes", len(classes))
    return [(L, m) for _, L, m in classes]
