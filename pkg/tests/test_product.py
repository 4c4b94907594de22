import itertools

import numpy as np
import pytest

from loopsmith.errors import (CentreIntersection, GenerationFailure, GIsHomomorphism,
                              GNotIdentityPreserving, PhiNotMono, PNotNonAbelian, SpecError)
from loopsmith.groups import (cyclic, quaternion8, dihedral, direct_product, is_homomorphism, symmetric,
                              trivial_group)
from loopsmith.loops import (centre_of_loop, first_associator_witness, first_moufang_witness,
                             is_associative, is_isomorphic, mlt_left)
from loopsmith.product import (ProductSpec, associativity_criterion, build_group_and_section,
                               build_product_loop, check_unique_solutions, decomposition_report,
                               properness_report, solve_translation, torus_variant_builder,
                               validate_spec)
from loopsmith.sections import loop_from_section

import oracles

S3 = symmetric(3)
D4 = dihedral(4)
C2, C3, C4 = cyclic(2), cyclic(3), cyclic(4)
V4 = direct_product([C2, C2])
THREE_CYCLE = [0, 3, int(S3.table[3, 3])]


@pytest.mark.parametrize("args, error", [
    ((C3, C4, C2, [0, 2], [0, 1, 1]), PNotNonAbelian),
    ((C3, S3, C2, [0, 1], [1, 1, 0]), GNotIdentityPreserving),
    ((C3, S3, C2, [0, 0], [0, 1, 1]), PhiNotMono),
    ((C3, S3, C3, [0, 1, 1], [0, 1, 2]), PhiNotMono),
    ((C3, D4, C2, [0, 2], [0, 1, 1]), CentreIntersection),
    ((C3, quaternion8(), C2, [0, 1], [0, 1, 1]), CentreIntersection),
    ((C2, S3, C2, [0, 1], [0, 1]), GenerationFailure),
    ((C2, S3, trivial_group(), [0], [0, 0]), GIsHomomorphism),
], ids=["abelian-P", "g-identity", "phi-not-injective", "phi-not-hom", "centre-d4", "centre-q8",
        "generation", "g-hom"])
def test_validation_clauses(args, error):
    with pytest.raises(error) as info:
        validate_spec(ProductSpec.from_images(*args))
    assert isinstance(info.value, SpecError)
    with pytest.raises(error):
        build_product_loop(ProductSpec.from_images(*args))


def test_validation_order_first_failure_wins():
    # abelian P and a non-identity-preserving g: the P clause is reported
    with pytest.raises(PNotNonAbelian):
        validate_spec(ProductSpec.from_images(C3, C4, C2, [0, 2], [1, 0, 0]))


def test_centre_intersection_reports_elements():
    with pytest.raises(CentreIntersection) as info:
        validate_spec(ProductSpec.from_images(C3, D4, C2, [0, 2], [0, 1, 1]))
    assert info.value.context["elements"] == [0, 2]


def all_specs():
    for K in (C2, C3, C4, V4):
        for P, S, phi in ((S3, C2, [0, 1]), (S3, C3, THREE_CYCLE), (D4, C2, [0, 4])):
            for rest in itertools.product(range(S.order), repeat=K.order - 1):
                yield ProductSpec.from_images(K, P, S, phi, [0, *rest])


SPECS = list(all_specs())


def test_sweep_table_matches_oracle_and_criterion():
    valid = 0
    for spec in SPECS:
        L = build_product_loop(spec, validate=False)
        expected = oracles.eq1_table(spec.K.table.tolist(), spec.P.table.tolist(),
                                     list(spec.phi.image), list(spec.g.image))
        assert L.base.table.tolist() == expected
        hom = oracles.is_hom(spec.K.table.tolist(), spec.S.table.tolist(), list(spec.g.image))
        assert is_homomorphism(spec.g) == hom
        assert is_associative(L.base) == hom == associativity_criterion(spec)
        try:
            validate_spec(spec)
        except SpecError:
            continue
        valid += 1
        assert not hom
        assert mlt_left(L.base).order == spec.K.order * spec.P.order * spec.S.order
    assert valid == 86


def test_generation_failure_shrinks_mlt():
    spec = ProductSpec.from_images(C3, S3, C2, [0, 1], [0, 0, 0])
    with pytest.raises(GenerationFailure):
        validate_spec(spec)
    L = build_product_loop(spec, validate=False)
    assert mlt_left(L.base).order < 36


def test_loop18_frozen_values(loop18):
    L = loop18.base
    assert L.order == 18
    assert first_associator_witness(L) == (6, 6, 2)
    assert first_moufang_witness(L) == (2, 6, 6)
    assert first_associator_witness(L) == oracles.first_nonassociative_triple(L.table.tolist())
    assert first_moufang_witness(L) == oracles.first_non_moufang_triple(L.table.tolist())
    assert centre_of_loop(L).members == (0,)
    assert oracles.loop_centre(L.table.tolist()) == [0]
    assert mlt_left(L).order == 36
    assert loop18.decode(loop18.encode(2, 5)) == (2, 5)


def test_group_section_matches_product(loop18, gs18):
    assert gs18.G.order == 36 and len(gs18.H) == 2 and len(gs18.M) == 18
    M = loop_from_section(gs18.G, gs18.H, gs18.sigma)
    assert np.array_equal(M.table, loop18.base.table)


def test_unique_solutions(spec18, gs18):
    assert check_unique_solutions(spec18, gs18)
    k, l, d = solve_translation(spec18, (1, 2), (2, 4))
    assert k == 1 and d == spec18.g.image[1]


def test_reports(spec18):
    r = properness_report(spec18)
    assert r.values["associative"] is False
    assert r.values["witness"] == (6, 6, 2)
    assert r.values["g_homomorphism"] is False
    assert r.values["criterion"] is False
    assert r.values["equivalence"] is True
    d = decomposition_report(spec18).values
    for key in ("N_subloop", "N_iso_P", "N_normal", "K_subloop", "K_iso",
                "factorization_unique", "factor_iso_K"):
        assert d[key] is True, key
    assert d["unique_factorizations"] == 18 and d["factor_order"] == 3


def test_properness_report_for_group_case():
    spec = ProductSpec.from_images(C2, S3, trivial_group(), [0], [0, 0])
    r = properness_report(spec).values
    assert r["associative"] is True and r["g_homomorphism"] is True
    assert r["equivalence"] is True


def test_torus_variant():
    spec = torus_variant_builder(4, 2, S3, [0, 1], [0, 1, 1, 0])
    validate_spec(spec)
    L = build_product_loop(spec)
    assert L.order == 24 and not is_associative(L.base)
    assert build_group_and_section(spec).G.order == 48
    assert mlt_left(L.base).order == 48
    with pytest.raises(GenerationFailure):
        validate_spec(torus_variant_builder(4, 2, S3, [0, 1], [0, 1, 0, 1]))
    with pytest.raises(ValueError):
        torus_variant_builder(4, 3, S3, THREE_CYCLE, [0, 1, 2, 0])
    with pytest.raises(ValueError):
        torus_variant_builder(4, 2, S3, [0, 1], [0, 0, 0, 0])


def test_factor_by_n_is_k(loop18, spec18):
    from loopsmith.loops import Subloop, factor_loop
    N = Subloop(loop18.base, tuple(loop18.encode(0, l) for l in range(6)))
    Q = factor_loop(loop18.base, N)
    assert is_isomorphic(Q, spec18.K) is not None
