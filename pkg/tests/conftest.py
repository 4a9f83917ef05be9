"""Shared fixtures: the small algebra corpus, its dual spaces, and a
builder for the morphism corpus."""

from pathlib import Path

import pytest

from devries.boolean import FiniteBooleanAlgebra
from devries.duality import MorphismTable, dual_space, identity_morphism, star_compose
from devries.spaces import FiniteSpace, discrete_space, sierpinski_space
from devries.subordination import SubordinationAlgebra

FIXTURES = Path(__file__).parent / "fixtures"

ATOM_LETTERS = ("a", "b", "c")


def leq_algebra(n: int) -> SubordinationAlgebra:
    return SubordinationAlgebra.with_leq(FiniteBooleanAlgebra(ATOM_LETTERS[:n]))


def trivial_subordination(n: int) -> SubordinationAlgebra:
    """Bottom relates to everything, everything relates to the top."""
    base = FiniteBooleanAlgebra(ATOM_LETTERS[:n])
    pairs = [(0, b) for b in base.elements()]
    pairs += [(a, base.top) for a in base.elements()]
    return SubordinationAlgebra.from_pairs(base, pairs)


@pytest.fixture(scope="session")
def b1():
    return leq_algebra(1)


@pytest.fixture(scope="session")
def b2():
    return leq_algebra(2)


@pytest.fixture(scope="session")
def b3():
    return leq_algebra(3)


@pytest.fixture(scope="session")
def c2():
    return trivial_subordination(2)


@pytest.fixture(scope="session")
def corpus():
    """All compingent algebras on at most three atoms: the order itself."""
    return [leq_algebra(n) for n in range(4)]


@pytest.fixture(scope="session")
def corpus_spaces(corpus):
    return [dual_space(alg) for alg in corpus]


@pytest.fixture(scope="session")
def s3(b2):
    return dual_space(b2)


@pytest.fixture(scope="session")
def sierpinski():
    return sierpinski_space()


@pytest.fixture(scope="session")
def discrete2():
    return discrete_space(("x", "y"))


@pytest.fixture(scope="session")
def one_point():
    return FiniteSpace(("x",), (0, 1))


@pytest.fixture(scope="session")
def empty_space():
    return FiniteSpace((), (0,))


def hom_from_atom_map(source, target, atom_to_atom):
    """The Boolean homomorphism dual to a map of target atoms into
    source atoms; between order-subordination algebras these are exactly
    the valid morphisms."""
    mapping = []
    for x in source.base.elements():
        y = 0
        for t, s in enumerate(atom_to_atom):
            if x >> s & 1:
                y |= 1 << t
        mapping.append(y)
    return MorphismTable(source, target, tuple(mapping))


def morphism_corpus():
    """At least ten valid morphisms between algebras on up to 3 atoms:
    identities, embeddings, collapses, permutations and a composite."""
    b0, b1, b2, b3 = (leq_algebra(n) for n in range(4))
    out = [
        identity_morphism(b0),
        identity_morphism(b1),
        identity_morphism(b2),
        identity_morphism(b3),
        hom_from_atom_map(b1, b2, [0, 0]),       # unit embedding
        hom_from_atom_map(b2, b1, [1]),          # collapse first atom
        hom_from_atom_map(b2, b1, [0]),          # collapse second atom
        hom_from_atom_map(b3, b2, [0, 1]),       # drop last atom
        hom_from_atom_map(b3, b2, [0, 0]),       # merge onto one atom
        hom_from_atom_map(b2, b2, [1, 0]),       # swap
        hom_from_atom_map(b3, b3, [1, 2, 0]),    # cycle
        hom_from_atom_map(b2, b3, [0, 1, 1]),    # split an atom
    ]
    out.append(star_compose(out[5], out[7]))     # 3 atoms -> 1 atom
    return out
