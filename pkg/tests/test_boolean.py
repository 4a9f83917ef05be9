import pytest

from devries.boolean import FiniteBooleanAlgebra
from devries.errors import InputError


@pytest.fixture
def b2():
    return FiniteBooleanAlgebra(("p", "q"))


def test_element_operations(b2):
    p, q = 1, 2
    assert b2.meet(p, q) == 0
    assert b2.join_all([p, q]) == b2.top
    assert b2.complement(p) == q
    assert b2.leq(p, b2.top)
    assert not b2.leq(b2.top, p)
    assert b2.meet_all([]) == b2.top
    assert b2.join_all([]) == 0


def test_out_of_range_element_rejected(b2):
    with pytest.raises(InputError):
        b2.meet(1, 4)
    with pytest.raises(InputError):
        b2.complement(-1)


def test_degenerate_algebra():
    b0 = FiniteBooleanAlgebra(())
    assert b0.size == 1
    assert b0.top == b0.bottom == 0
    assert b0.element_token(0) == "1"


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_de_morgan_exhaustive(n):
    alg = FiniteBooleanAlgebra(tuple(f"x{i}" for i in range(n)))
    for a in alg.elements():
        assert alg.complement(alg.complement(a)) == a
        for b in alg.elements():
            assert alg.complement(alg.meet(a, b)) == alg.join(
                alg.complement(a), alg.complement(b)
            )
            assert alg.complement(alg.join(a, b)) == alg.meet(
                alg.complement(a), alg.complement(b)
            )


def test_tokens_roundtrip(b2):
    for e in b2.elements():
        assert b2.parse_element(b2.element_token(e)) == e
    assert b2.element_token(0) == "0"
    assert b2.element_token(3) == "1"
    assert b2.element_token(1) == "{p}"
    assert b2.parse_element("{}") == 0
    with pytest.raises(InputError):
        b2.parse_element("{zz}")
    with pytest.raises(InputError):
        b2.parse_element("p")


def test_bad_atom_names():
    with pytest.raises(InputError):
        FiniteBooleanAlgebra(("a", "a"))
    with pytest.raises(InputError):
        FiniteBooleanAlgebra(("a,b",))
