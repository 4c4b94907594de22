import itertools

import numpy as np
import pytest

from loopsmith.errors import (CoreNotTrivial, NotSharplyTransitive, SectionNotPinned,
                              SizeMismatch)
from loopsmith.groups import (conjugate_subgroup, cyclic, dihedral,
                              left_cosets, perm_group, point_stabilizer, quaternion8,
                              subgroup_closure, subgroups, symmetric, trivial_subgroup)
from loopsmith.loops import is_associative, is_isomorphic, iter_loops
from loopsmith.sections import (SearchOptions, Section, classify_section_loops,
                                count_sections, enumerate_sections, fpf_difference_check,
                                is_sharply_transitive, loop_from_section, section_from_loop)

import oracles

UNPINNED = SearchOptions(pin_identity=False)


def stab(n):
    G = symmetric(n)
    return G, point_stabilizer(G, n - 1)


# indices in symmetric(3): 1 = (0 2 1) swaps 1,2; 2 = (1 0 2) swaps 0,1; 3, 4 are 3-cycles
def test_sharply_transitive_examples(s3):
    H = subgroup_closure(s3, [1])
    T = s3.table.tolist()
    assert oracles.sharply_transitive_pairs(T, list(H.members), [0, 3, 4])
    assert is_sharply_transitive(s3, H, [0, 3, 4])
    assert not oracles.sharply_transitive_pairs(T, list(H.members), [0, 2, 3])
    assert not is_sharply_transitive(s3, H, [0, 2, 3])
    assert is_sharply_transitive(s3, trivial_subgroup(s3), range(6))


def test_fpf_examples(s3):
    H = subgroup_closure(s3, [1])
    assert fpf_difference_check(s3, H, [0, 3, 4])
    assert not fpf_difference_check(s3, H, [0, 2, 3])
    assert fpf_difference_check(s3, trivial_subgroup(s3), range(6))
    with pytest.raises(SizeMismatch):
        fpf_difference_check(s3, H, [0, 3])


EXHAUSTIVE = []
for _G in (symmetric(3), cyclic(6), dihedral(4), quaternion8(), symmetric(4)):
    for _H in subgroups(_G):
        _index = _G.order // len(_H)
        if 1 < _index and len(list(itertools.combinations(range(_G.order), _index))) <= 40_000:
            EXHAUSTIVE.append((_G, _H))


@pytest.mark.parametrize("G, H", EXHAUSTIVE,
                         ids=[f"G{G.order}-H{len(H)}-{H.members[-1]}" for G, H in EXHAUSTIVE])
def test_equivalence_exhaustive(G, H):
    cosets = left_cosets(G, H)
    T = G.table.tolist()
    for S in itertools.combinations(range(G.order), cosets.count):
        a = is_sharply_transitive(G, H, S, cosets=cosets)
        assert a == fpf_difference_check(G, H, S, cosets=cosets)
        if len(S) <= 4:
            assert a == oracles.sharply_transitive_pairs(T, list(H.members), list(S))


def test_exhaustive_instances_have_both_outcomes():
    pos = neg = 0
    for G, H in EXHAUSTIVE:
        cosets = left_cosets(G, H)
        for S in itertools.combinations(range(G.order), cosets.count):
            if is_sharply_transitive(G, H, S, cosets=cosets):
                pos += 1
            else:
                neg += 1
    assert pos > 50 and neg > 1000


@pytest.mark.parametrize("which", ["s5", "product"])
def test_equivalence_random(which, gs18):
    rng = np.random.default_rng(7)
    if which == "s5":
        G, H = stab(5)
        cosets = left_cosets(G, H)
        good = [s.choice for s in enumerate_sections(G, H, UNPINNED)]
    else:
        G, H, cosets = gs18.G, gs18.H, gs18.cosets
        good = [gs18.sigma.choice]
    seen = 0
    for trial in range(10_000):
        if trial % 10 == 0:
            S = list(good[rng.integers(len(good))])
            if trial % 20 == 0:
                outside = sorted(set(range(G.order)) - set(S))
                S[rng.integers(len(S))] = int(rng.choice(outside))
        else:
            S = list(rng.choice(G.order, size=cosets.count, replace=False))
        a = is_sharply_transitive(G, H, S, cosets=cosets)
        assert a == fpf_difference_check(G, H, S, cosets=cosets)
        seen += a
    assert seen >= 500


def test_loop_from_section_c3(s3):
    H = subgroup_closure(s3, [1])
    cosets = left_cosets(s3, H)
    choice = [0, 0, 0]
    for z in (0, 3, 4):
        choice[int(cosets.coset_of[z])] = z
    L = loop_from_section(s3, H, Section(cosets, tuple(choice)))
    assert L.order == 3
    assert is_isomorphic(L, cyclic(3)) is not None


def test_loop_from_trivial_stabilizer_is_group():
    G = dihedral(4)
    H = trivial_subgroup(G)
    cosets = left_cosets(G, H)
    L = loop_from_section(G, H, Section(cosets, tuple(range(8))))
    assert np.array_equal(L.table, G.table)


def test_loop_from_section_errors(s3):
    a3 = subgroup_closure(s3, [3])
    cosets = left_cosets(s3, a3)
    with pytest.raises(CoreNotTrivial):
        loop_from_section(s3, a3, Section(cosets, (0, int(cosets.representatives[1]))))
    H = subgroup_closure(s3, [1])
    cosets = left_cosets(s3, H)
    bad = [0, 0, 0]
    for z in (0, 2, 5):
        bad[int(cosets.coset_of[z])] = z
    assert sorted(bad) == [0, 2, 5]
    with pytest.raises(NotSharplyTransitive):
        loop_from_section(s3, H, Section(cosets, tuple(bad)))
    unpinned = next(enumerate_sections(s3, H, UNPINNED))
    if unpinned.pinned:
        unpinned = list(enumerate_sections(s3, H, UNPINNED))[-1]
    with pytest.raises(SectionNotPinned):
        loop_from_section(s3, H, unpinned)


def test_section_invariants_enforced(s3):
    cosets = left_cosets(s3, subgroup_closure(s3, [1]))
    with pytest.raises(ValueError):
        Section(cosets, (0, 0, 0))


def test_section_from_loop_small(loop18):
    G, H, s = section_from_loop(cyclic(3))
    assert G.order == 3 and H == (0,)
    assert [G.perm(c) for c in s.choice] == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    G, H, s = section_from_loop(loop18.base)
    assert G.order == 36 and len(H) == 2 and len(set(s.choice)) == 18


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_round_trip_through_cayley_table(n):
    for L in iter_loops(n):
        C, _, s = section_from_loop(L)
        G = perm_group(C)
        H = subgroup_closure(G, [i for i in range(G.order) if G.labels[i][0] == 0])
        cosets = left_cosets(G, H)
        choice = [0] * L.order
        for a in range(L.order):
            z = G.labels.index(C.perm(s.choice[a]))
            choice[int(cosets.coset_of[z])] = z
        M = loop_from_section(G, H, Section(cosets, tuple(choice)))
        assert is_isomorphic(L, M) is not None


@pytest.mark.parametrize("n", [3, 4, 5])
def test_counts_against_latin_square_oracle(n):
    G, H = stab(n)
    pinned = len(oracles.reduced_latin_squares(n))
    free = len(oracles.latin_squares_first_row_fixed(n))
    assert count_sections(G, H) == pinned
    assert count_sections(G, H, UNPINNED) == free == pinned * len(H)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_emitted_sections_are_valid(n):
    G, H = stab(n)
    cosets = left_cosets(G, H)
    for opts in (SearchOptions(), UNPINNED):
        for s in enumerate_sections(G, H, opts, cosets=cosets):
            assert is_sharply_transitive(G, H, s.choice, cosets=cosets)
            assert all(cosets.coset_of[z] == c for c, z in enumerate(s.choice))
            assert s.pinned or not opts.pin_identity


def test_sections_are_the_reduced_latin_squares():
    G, H = stab(4)
    squares = set()
    for s in enumerate_sections(G, H):
        rows = sorted(G.labels[z] for z in s.choice)
        # point 3 is stabilized; view each permutation as a row of a loop table on 0..3
        squares.add(tuple(rows))
    assert len(squares) == 4


def test_classify_examples():
    G, H = stab(3)
    assert [m for _, m in classify_section_loops(G, H)] == [1]
    assert [m for _, m in classify_section_loops(G, H, UNPINNED)] == [2]
    G, H = stab(4)
    classes = classify_section_loops(G, H)
    assert len(classes) == 2 and sum(m for _, m in classes) == 4
    assert all(is_associative(L) for L, _ in classes)
    G, H = stab(5)
    classes = classify_section_loops(G, H)
    assert len(classes) == 6 and sum(m for _, m in classes) == 56
    assert sum(1 for L, _ in classes if is_associative(L)) == 1


def test_require_generation():
    G, H = stab(4)
    assert count_sections(G, H, SearchOptions(require_generation=True)) == 0
    G, H = stab(5)
    expected = sum(1 for s in enumerate_sections(G, H)
                   if oracles.perm_group_order([G.labels[z] for z in s.choice]) == 120)
    assert expected == 50
    assert count_sections(G, H, SearchOptions(require_generation=True)) == expected


def test_limit_and_parallel():
    G, H = stab(5)
    first = list(enumerate_sections(G, H, SearchOptions(max_solutions=1)))
    assert len(first) == 1
    assert is_sharply_transitive(G, H, first[0].choice)
    seq = sorted(s.choice for s in enumerate_sections(G, H, UNPINNED))
    par = [s.choice for s in enumerate_sections(
        G, H, SearchOptions(pin_identity=False, parallel=True, workers=2))]
    assert par == seq
    assert list(enumerate_sections(G, H)) and \
        [s.choice for s in enumerate_sections(G, H)] == [s.choice for s in enumerate_sections(G, H)]


def test_symmetry_breaking_orbits_cover_all():
    G, H = stab(5)
    reps = list(enumerate_sections(G, H, SearchOptions(symmetry_breaking=True)))
    assert sum(s.orbit_size for s in reps) == 56
    assert len(reps) < 56
    assert count_sections(G, H, SearchOptions(symmetry_breaking=True, pin_identity=False)) == 1344


@pytest.mark.parametrize("g", [0, 5, 17, 23])
def test_counts_invariant_under_conjugating_h(g):
    G = symmetric(4)
    H = subgroup_closure(G, [1])       # a transposition
    K = conjugate_subgroup(G, H, g)
    assert count_sections(G, H) == count_sections(G, K)


def test_product_section_is_enumerated(gs18):
    found = {s.choice for s in enumerate_sections(gs18.G, gs18.H, cosets=gs18.cosets)}
    assert gs18.sigma.choice in found
