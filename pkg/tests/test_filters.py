"""Filters, ideals, concordance and roundness, with an independent
subset-enumeration oracle for the filter notions."""

import pytest

from devries.boolean import FiniteBooleanAlgebra
from devries.errors import InputError, PreconditionError
from devries.filters import (
    Filter,
    Ideal,
    concordant_filters,
    concordant_meet,
    dual_filter,
    ends,
    filter_from_element,
    ideal_is_round,
    is_concordant,
    reg_extension,
    round_ideals,
    round_part,
)
from devries.subordination import SubordinationAlgebra, enumerate_class_tables

from conftest import leq_algebra, trivial_subordination


def brute_proper_filters(alg):
    """All proper filters by direct subset enumeration: nonempty,
    upward-closed, meet-closed element sets avoiding 0."""
    size = alg.base.size
    out = []
    for mask in range(1, 1 << size):
        members = {e for e in range(size) if mask >> e & 1}
        if 0 in members:
            continue
        if alg.base.top not in members:
            continue
        if any(
            a & ~b == 0 and b not in members
            for a in members for b in range(size)
        ):
            continue
        if any(a & b not in members for a in members for b in members):
            continue
        out.append(frozenset(members))
    return out


def brute_concordant(alg):
    out = []
    for members in brute_proper_filters(alg):
        core = {
            a for a in members
            if any(alg.rows[b] >> a & 1 for b in members)
        }
        if core == members:
            out.append(members)
    return out


def test_round_part_examples(b2, c2):
    assert round_part(Filter(b2, 1)) == frozenset({1, 3})
    assert round_part(Filter(c2, 1)) == frozenset({3})
    assert round_part(Filter(c2, 3)) == frozenset({3})


def test_concordance_examples(b2, c2):
    assert is_concordant(Filter(b2, 1))
    assert not is_concordant(Filter(c2, 1))
    assert is_concordant(Filter(c2, 3))


def test_concordant_filters_examples(b1, b2, c2):
    assert [f.generator for f in concordant_filters(b2)] == [1, 2, 3]
    assert [f.generator for f in concordant_filters(b1)] == [1]
    assert [f.generator for f in concordant_filters(c2)] == [3]


def test_concordant_filters_against_oracle():
    for build in (leq_algebra, trivial_subordination):
        for n in (0, 1, 2, 3):
            alg = build(n)
            via_api = [f.members() for f in concordant_filters(alg)]
            assert sorted(via_api, key=sorted) == sorted(
                brute_concordant(alg), key=sorted
            )


def test_ends_examples(b1, b2, c2):
    assert [f.generator for f in ends(b2)] == [1, 2]
    assert [f.generator for f in ends(b1)] == [1]
    assert [f.generator for f in ends(c2)] == [3]


def test_round_ideals_examples(b1, b2, c2):
    assert [i.generator for i in round_ideals(b2)] == [0, 1, 2, 3]
    assert [i.generator for i in round_ideals(c2)] == [0, 3]
    assert [i.generator for i in round_ideals(b1)] == [0, 1]


def test_dual_filter_examples(b2, c2):
    assert dual_filter(Ideal(b2, 1)).generator == 2
    assert dual_filter(Ideal(b2, 0)).generator == 3
    d = dual_filter(Ideal(c2, 0))
    assert d.generator == 3 and is_concordant(d)
    with pytest.raises(InputError):
        dual_filter(Ideal(b2, b2.base.top))


def test_roundness_duality_exhaustive():
    # proper ideals: round iff the dual filter is concordant, over every
    # contact table on at most 3 atoms
    for n in range(4):
        for rows in enumerate_class_tables(n, "contact"):
            alg = SubordinationAlgebra(
                FiniteBooleanAlgebra(tuple("xyz"[:n])), rows
            )
            for g in alg.base.elements():
                ideal = Ideal(alg, g)
                if not ideal.proper:
                    continue
                assert ideal_is_round(ideal) == is_concordant(dual_filter(ideal))


def test_filter_from_element(b2, c2):
    f = filter_from_element(b2, 1)
    assert isinstance(f, Filter) and f.generator == 1
    assert filter_from_element(b2, 3).generator == 3
    g = filter_from_element(c2, 1)
    assert isinstance(g, Filter) and g.generator == 3
    with pytest.raises(InputError):
        filter_from_element(b2, 0)


def test_concordant_meet(b2, b3):
    assert concordant_meet(Filter(b2, 1), Filter(b2, 3), verify=True).generator == 1
    with pytest.raises(PreconditionError):
        concordant_meet(Filter(b2, 1), Filter(b2, 2))
    ab, bc = 0b011, 0b110
    assert concordant_meet(Filter(b3, ab), Filter(b3, bc), verify=True).generator == 0b010


def test_reg_extension_examples(b1, b2):
    assert reg_extension(Filter(b2, 3), 1).generator == 2
    assert reg_extension(Filter(b2, 2), 1).generator == 2
    assert reg_extension(Filter(b1, 1), 0).generator == 1
    with pytest.raises(PreconditionError):
        reg_extension(Filter(b2, 1), 1)


def test_reg_extension_excludes_element_from_all_extensions(b3):
    for g in (1, 3, 7):
        for a in b3.base.elements():
            f = Filter(b3, g)
            if a in f:
                continue
            bigger = reg_extension(f, a)
            for h in concordant_filters(b3):
                if bigger.members() <= h.members():
                    assert a not in h


def test_principality_exhaustive():
    # every nonempty, upward- and meet-closed, 0-free set is a principal
    # up-set of its meet, over all algebras with at most 2 atoms
    for n in (1, 2):
        alg = leq_algebra(n)
        for members in brute_proper_filters(alg):
            gen = alg.base.meet_all(members)
            assert Filter(alg, gen).members() == members


def test_concordance_criterion():
    # on a compingent algebra, an up-set is concordant iff its generator
    # is self-related
    for n in range(4):
        alg = leq_algebra(n)
        for g in alg.base.elements():
            if g == 0:
                continue
            assert is_concordant(Filter(alg, g)) == alg.prec(g, g)


def test_improper_filter_rejected(b2):
    with pytest.raises(InputError):
        Filter(b2, 0)


def test_degenerate_algebra_has_no_filters():
    alg = leq_algebra(0)
    assert concordant_filters(alg) == []
    assert [i.generator for i in round_ideals(alg)] == [0]
