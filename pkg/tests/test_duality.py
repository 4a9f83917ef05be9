"""Object maps, morphisms, induced maps, and the duality identities."""

import pytest

from devries.boolean import FiniteBooleanAlgebra
from devries.duality import (
    MorphismTable,
    PointMap,
    check_devries_morphism,
    check_dv_map,
    dual_morphism,
    dual_point_map,
    dual_space,
    identity_morphism,
    identity_point_map,
    star_compose,
    verify_duality_roundtrip,
    verify_hat_basics,
    verify_representation,
    verify_space_roundtrip,
)
from devries.errors import InputError, PreconditionError
from devries.spaces import is_dv_space, ro_algebra
from devries.subordination import SubordinationAlgebra

from conftest import hom_from_atom_map, leq_algebra, morphism_corpus, trivial_subordination


def test_dual_space_examples(b1, b2, c2):
    assert dual_space(b2).point_names == ("F{a}", "F{b}", "F1")
    assert dual_space(b1).point_count == 1
    assert dual_space(c2).point_count == 1
    assert dual_space(leq_algebra(0)).point_count == 0


def test_dual_space_of_three_atoms(b3):
    space = dual_space(b3)
    assert space.point_count == 7
    assert len(space.regular_opens) == 8


def test_ro_algebra_examples(s3, one_point, discrete2):
    alg, decode = ro_algebra(s3)
    assert alg.base.atom_count == 2
    assert alg.is_leq_relation()
    alg1, _ = ro_algebra(one_point)
    assert alg1.base.atom_count == 1
    assert alg1.is_leq_relation()
    alg2, _ = ro_algebra(discrete2)
    assert alg2.base.atom_count == 2
    assert alg2.is_leq_relation()


def test_verify_representation_corpus(corpus):
    for alg in corpus:
        assert verify_representation(alg).ok
        assert verify_hat_basics(alg).ok


def test_verify_representation_requires_compingent(c2):
    with pytest.raises(PreconditionError):
        verify_representation(c2)


def test_space_roundtrip(corpus_spaces, one_point):
    for space in corpus_spaces:
        assert verify_space_roundtrip(space).ok
    assert verify_space_roundtrip(one_point).ok


def test_space_roundtrip_rejects_non_dv(sierpinski):
    with pytest.raises(PreconditionError):
        verify_space_roundtrip(sierpinski)


def test_morphism_corpus_is_valid():
    corpus = morphism_corpus()
    assert len(corpus) >= 10
    for h in corpus:
        assert check_devries_morphism(h).ok


def test_collapse_example_is_valid(b2, b1):
    h = hom_from_atom_map(b2, b1, [1])
    assert h.mapping == (0, 0, 1, 1)
    assert check_devries_morphism(h).ok


def test_invalid_morphism_witnesses(b2):
    bad = MorphismTable(b2, b2, (3, 3, 3, 3))
    report = check_devries_morphism(bad)
    assert not report.check("V1").ok
    not_meet = MorphismTable(b2, b2, (0, 3, 3, 3))
    assert not check_devries_morphism(not_meet).check("V2").ok


def test_star_compose_identity_laws(b2, b1):
    h = hom_from_atom_map(b2, b1, [1])
    assert star_compose(identity_morphism(b1), h).mapping == h.mapping
    assert star_compose(h, identity_morphism(b2)).mapping == h.mapping


def test_star_compose_collapses(b3, b2, b1):
    drop = hom_from_atom_map(b3, b2, [0, 1])
    collapse = hom_from_atom_map(b2, b1, [1])
    both = star_compose(collapse, drop)
    direct = hom_from_atom_map(b3, b1, [1])
    assert both.mapping == direct.mapping


def test_star_associativity_on_corpus():
    corpus = morphism_corpus()
    triples = [
        (j, k, h)
        for h in corpus for k in corpus for j in corpus
        if h.target == k.source and k.target == j.source
    ]
    assert triples
    for j, k, h in triples:
        left = star_compose(j, star_compose(k, h))
        right = star_compose(star_compose(j, k), h)
        assert left.mapping == right.mapping


def test_star_domain_mismatch(b2, b3):
    with pytest.raises(InputError):
        star_compose(identity_morphism(b3), identity_morphism(b2))


def test_check_dv_map_examples(s3, one_point):
    assert check_dv_map(identity_point_map(s3)).ok
    collapse = PointMap(s3, one_point, (0, 0, 0))
    assert check_dv_map(collapse).ok
    to_bottom = PointMap(one_point, s3, (s3.point_index("F1"),))
    report = check_dv_map(to_bottom)
    assert report.check("continuous").ok
    assert not report.check("weakly-dense").ok


def test_dual_morphism_examples(s3, one_point):
    collapse = PointMap(s3, one_point, (0, 0, 0))
    h = dual_morphism(collapse)
    # every nonempty regular open of the point goes to the whole space
    assert h.mapping[0] == 0
    assert h.mapping[h.source.base.top] == h.target.base.top


def test_dual_point_map_examples(b2, b1):
    ident = dual_point_map(identity_morphism(b2))
    assert ident.mapping == tuple(range(3))
    h = hom_from_atom_map(b2, b1, [1])
    lam = dual_point_map(h)
    assert lam.source.point_count == 1
    # the single point lands on the filter generated by the second atom
    assert lam.target.point_names[lam.mapping[0]] == "F{b}"


def test_dual_point_map_into_degenerate(b2):
    b0 = leq_algebra(0)
    to_zero = MorphismTable(b2, b0, (0, 0, 0, 0))
    assert check_devries_morphism(to_zero).ok
    lam = dual_point_map(to_zero)
    assert lam.source.point_count == 0
    assert lam.mapping == ()


def test_weak_density_consequence():
    # down-closure of preimages of up-closed sets matches preimages of
    # down-closures, for every valid map in the small corpus
    maps = []
    for h in morphism_corpus():
        maps.append(dual_point_map(h))
    s3 = dual_space(leq_algebra(2))
    one = dual_space(leq_algebra(1))
    maps.append(PointMap(s3, one, (0, 0, 0)))
    for f in maps:
        tgt = f.target
        for v in range(tgt.full + 1):
            if tgt.up_interior(v) != v:
                continue
            assert f.source.down(f.preimage(v)) == f.preimage(tgt.down(v))


def test_duality_roundtrip_identities(b2, b1, s3):
    assert verify_duality_roundtrip(alg=b2).ok
    assert verify_duality_roundtrip(space=s3).ok
    assert verify_duality_roundtrip(h=identity_morphism(b2)).ok
    assert verify_duality_roundtrip(f=identity_point_map(s3)).ok
    h = hom_from_atom_map(b2, b1, [1])
    assert verify_duality_roundtrip(h=h).ok


def test_duality_roundtrip_on_corpus_maps():
    for h in morphism_corpus():
        assert verify_duality_roundtrip(h=h).ok


def test_functor_laws_pointwise(b2, s3):
    # identities go to identities
    lam_id = dual_point_map(identity_morphism(b2))
    assert lam_id.mapping == tuple(range(lam_id.source.point_count))
    phi_id = dual_morphism(identity_point_map(s3))
    assert phi_id.mapping == tuple(phi_id.source.base.elements())
    # composition goes to composition, contravariantly
    corpus = morphism_corpus()
    pairs = [
        (k, h) for h in corpus for k in corpus if h.target == k.source
    ]
    for k, h in pairs:
        lam_kh = dual_point_map(star_compose(k, h))
        lam_h = dual_point_map(h)
        lam_k = dual_point_map(k)
        composed = tuple(lam_h.mapping[lam_k.mapping[i]] for i in range(len(lam_k.mapping)))
        assert lam_kh.mapping == composed
