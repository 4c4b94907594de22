
import pytest
from hypothesis import given, settings, strategies as st

from loopsmith.errors import NoIdentity, NotAssociative, NotLatin, SizeCapExceeded
from loopsmith.groups import (Mapping, center, conjugate_subgroup, cyclic, dihedral,
                              direct_product, is_homomorphism, is_monomorphism, is_normal,
                              left_cosets, make_group, make_subgroup, normal_core, normalizer,
                              point_stabilizer, product_index, projection, quaternion8,
                              subgroup_closure, subgroups, symmetric, trivial_subgroup, whole)
from loopsmith.loops import latin_violation

import oracles

LOOP5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


def test_trivial_group():
    G = make_group([[0]])
    assert G.order == 1 and G.inverse.tolist() == [0]


def test_c6_addition():
    G = make_group(oracles.cyclic_table(6))
    assert G.inv(2) == 4
    assert G.is_abelian()


def test_nonassociative_latin_square_names_first_triple():
    expected = oracles.first_nonassociative_triple(LOOP5)
    assert expected == (1, 1, 2)
    with pytest.raises(NotAssociative) as e:
        make_group(LOOP5)
    assert e.value.context["triple"] == expected


def test_not_latin_and_no_identity():
    with pytest.raises(NotLatin) as e:
        make_group([[0, 1], [1, 1]])
    assert e.value.context["cell"] == (1, 1)
    with pytest.raises(NoIdentity):
        make_group([[0, 2, 1], [2, 1, 0], [1, 0, 2]])  # x*y = -x-y mod 3


def test_identity_relabelled_to_zero():
    t = [[2, 0, 1], [0, 1, 2], [1, 2, 0]]    # C3 with the identity at label 1
    G = make_group(t)
    assert G.table[0].tolist() == [0, 1, 2]
    assert G.table[:, 0].tolist() == [0, 1, 2]
    assert oracles.first_nonassociative_triple(G.table.tolist()) is None


@pytest.mark.parametrize("G, order", [
    (cyclic(1), 1), (cyclic(7), 7), (dihedral(4), 8), (dihedral(3), 6),
    (symmetric(4), 24), (quaternion8(), 8),
    (direct_product([cyclic(3), symmetric(3), cyclic(2)]), 36),
])
def test_builders_are_latin_groups(G, order):
    assert G.order == order
    assert latin_violation(G.table) is None
    assert oracles.first_nonassociative_triple(G.table.tolist()) is None


def test_symmetric_cap():
    with pytest.raises(SizeCapExceeded):
        symmetric(8)


def test_symmetric_composition_convention():
    G = symmetric(3)
    table, perms = oracles.s3_table()
    assert [tuple(p) for p in G.labels] == perms
    assert G.table.tolist() == table


def test_quaternion_centre_brute_force(q8):
    expected = oracles.commuting_elements(q8.table.tolist())
    assert expected == [0, 1]
    assert center(q8).members == (0, 1)


def test_center_of_s3_and_d4(s3):
    assert oracles.commuting_elements(s3.table.tolist()) == [0]
    assert center(s3).members == (0,)
    assert len(center(dihedral(4))) == 2


def test_subgroup_closure_examples(s3):
    assert subgroup_closure(s3, []).members == (0,)
    G = direct_product([cyclic(3), s3, cyclic(2)])
    g = [0, 1, 1]
    gens = [product_index((3, 6, 2), (k, 0, g[k])) for k in range(3)]
    expected = oracles.closure(G.table.tolist(), gens)
    assert len(expected) == 6
    assert list(subgroup_closure(G, gens).members) == expected
    C2 = direct_product([cyclic(2), cyclic(1), cyclic(2)])
    diag = subgroup_closure(C2, [product_index((2, 1, 2), (k, 0, k)) for k in range(2)])
    assert len(diag) == 2


def test_normal_core_examples(s3):
    transposition = subgroup_closure(s3, [1])
    conj = [conjugate_subgroup(s3, transposition, g).members for g in range(6)]
    expected = set(range(6)).intersection(*map(set, conj))
    assert expected == {0}
    assert normal_core(s3, transposition).members == (0,)
    a3 = subgroup_closure(s3, [3])
    assert len(a3) == 3
    assert normal_core(s3, a3).members == a3.members
    assert is_normal(s3, a3) and not is_normal(s3, transposition)


def test_left_cosets():
    G = symmetric(4)
    H = point_stabilizer(G, 3)
    C = left_cosets(G, H)
    assert C.count == 4
    assert C.coset_of[0] == 0
    for c, r in enumerate(C.representatives):
        assert C.coset_of[r] == c
    assert left_cosets(G, whole(G)).count == 1
    T = left_cosets(G, trivial_subgroup(G))
    assert T.coset_of.tolist() == list(range(24))


def test_left_cosets_with_representatives():
    G = symmetric(3)
    H = subgroup_closure(G, [1])
    reps = [0, 2, 4]
    C = left_cosets(G, H, reps)
    assert C.representatives.tolist() == reps
    with pytest.raises(ValueError):
        left_cosets(G, H, [0, 1, 2])


def test_homomorphism_examples(s3):
    g = Mapping(cyclic(3), cyclic(2), (0, 1, 1))
    assert not is_homomorphism(g)
    assert is_monomorphism(Mapping(cyclic(4), cyclic(4), (0, 1, 2, 3)))
    phi = Mapping(cyclic(2), s3, (0, 1))
    assert oracles.is_hom(cyclic(2).table.tolist(), s3.table.tolist(), [0, 1])
    assert is_monomorphism(phi)
    assert not is_monomorphism(Mapping(cyclic(2), s3, (0, 0)))


@pytest.mark.parametrize("factors", [
    [cyclic(2), cyclic(3)], [symmetric(3), cyclic(2)], [cyclic(2), quaternion8(), cyclic(1)],
])
def test_direct_product_projections_are_homs(factors):
    G = direct_product(factors)
    for i in range(len(factors)):
        assert is_homomorphism(projection(factors, i, G))


SMALL = [cyclic(6), symmetric(3), dihedral(4), quaternion8(), symmetric(4),
         direct_product([cyclic(2), cyclic(2), cyclic(2)]), dihedral(6)]


@pytest.mark.parametrize("G", SMALL, ids=lambda G: f"order{G.order}")
def test_normal_core_is_largest_normal_subgroup(G):
    subs = subgroups(G)
    normals = [N for N in subs if is_normal(G, N)]
    for H in subs:
        core = normal_core(G, H)
        assert is_normal(G, core)
        assert core.member_set <= H.member_set
        for N in normals:
            if N.member_set <= H.member_set:
                assert N.member_set <= core.member_set


def test_subgroup_counts():
    assert len(subgroups(symmetric(4))) == 30
    assert len(subgroups(quaternion8())) == 6


def test_normalizer():
    G = symmetric(4)
    H = point_stabilizer(G, 3)
    assert normalizer(G, H).members == H.members
    with pytest.raises(ValueError):
        make_subgroup(G, [0, 1, 2])


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(0, 23), max_size=4), st.sets(st.integers(0, 23), max_size=3))
def test_closure_idempotent_and_monotone(a, b):
    G = symmetric(4)
    A = subgroup_closure(G, a)
    assert subgroup_closure(G, A.members).members == A.members
    AB = subgroup_closure(G, a | b)
    assert A.member_set <= AB.member_set
