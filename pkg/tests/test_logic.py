"""Formula parsing and both semantics, countermodels and agreement."""

import pytest

from devries.boolean import FiniteBooleanAlgebra
from devries.duality import dual_space
from devries.errors import InputError, PreconditionError
from devries.logic import (
    AlgebraicModel,
    And,
    Const,
    FormulaSyntaxError,
    Imp,
    Not,
    Or,
    StrictImp,
    TopologicalModel,
    Var,
    countermodel_search,
    delta,
    eval_algebraic,
    eval_topological,
    formula_variables,
    is_valid_on_algebra,
    is_valid_on_space,
    load_regression_formulas,
    parse,
    render,
    semantics_agreement,
)
from devries.subordination import SubordinationAlgebra, enumerate_class_tables

from conftest import leq_algebra, trivial_subordination


def test_parse_examples():
    assert parse("p => q") == StrictImp(Var("p"), Var("q"))
    assert parse("~p & q -> r") == Imp(And(Not(Var("p")), Var("q")), Var("r"))
    assert parse("p => q => r") == StrictImp(Var("p"), StrictImp(Var("q"), Var("r")))
    assert parse("p -> q -> r") == Imp(Var("p"), Imp(Var("q"), Var("r")))
    assert parse("p | q & r") == Or(Var("p"), And(Var("q"), Var("r")))
    assert parse("(p | q) & r") == And(Or(Var("p"), Var("q")), Var("r"))
    assert parse("0") == Const(False)
    assert parse("~~p") == Not(Not(Var("p")))


def test_parse_errors_carry_positions():
    with pytest.raises(FormulaSyntaxError) as err:
        parse("p & & q")
    assert err.value.column == 5
    with pytest.raises(FormulaSyntaxError):
        parse("p =>")
    with pytest.raises(FormulaSyntaxError):
        parse("(p & q")
    with pytest.raises(FormulaSyntaxError):
        parse("p ? q")
    with pytest.raises(FormulaSyntaxError):
        parse("")
    with pytest.raises(FormulaSyntaxError):
        parse("P")


def test_render_roundtrip_examples():
    for text in [
        "p => q => r",
        "~p & q -> r",
        "(p -> q) -> (p => q)",
        "p | ~p",
        "((p | q) => r) -> (p => r)",
    ]:
        assert parse(render(parse(text))) == parse(text)


def test_eval_algebraic_examples(b2, c2):
    phi = parse("p => p")
    assert eval_algebraic(AlgebraicModel.of(c2, {"p": 1}), phi) == 0
    assert eval_algebraic(AlgebraicModel.of(b2, {"p": 1}), phi) == b2.base.top
    top_arrow = parse("1 => 1")
    assert eval_algebraic(AlgebraicModel.of(c2, {}), top_arrow) == c2.base.top
    with pytest.raises(InputError):
        eval_algebraic(AlgebraicModel.of(b2, {}), parse("p"))


def test_eval_topological_examples(s3):
    fa = 1 << s3.point_index("F{a}")
    fb = 1 << s3.point_index("F{b}")
    self_arrow = parse("p => p")
    m = TopologicalModel.of(s3, {"p": fa})
    assert eval_topological(m, self_arrow) == s3.full
    cross = parse("p => q")
    m2 = TopologicalModel.of(s3, {"p": fa, "q": fb})
    assert eval_topological(m2, cross) == 0
    bottom_arrow = parse("0 => q")
    assert eval_topological(m2, bottom_arrow) == s3.full


def test_topological_values_stay_regular_open(s3):
    phi = parse("(p | ~p) & (q -> p)")
    ro = set(s3.regular_opens)
    for p_val in s3.regular_opens:
        for q_val in s3.regular_opens:
            m = TopologicalModel.of(s3, {"p": p_val, "q": q_val})
            assert eval_topological(m, phi) in ro


def test_valuation_must_be_regular_open(s3):
    fa = 1 << s3.point_index("F{a}")
    f1 = 1 << s3.point_index("F1")
    with pytest.raises(InputError):
        TopologicalModel.of(s3, {"p": fa | fb_mask(s3)})


def fb_mask(s3):
    # {F{a}, F{b}} is open but not regular open
    return 1 << s3.point_index("F{b}")


def test_validity_examples(s3):
    assert is_valid_on_space(s3, parse("(p => q) -> (p -> q)")).valid
    assert is_valid_on_space(s3, parse("p | ~p")).valid
    res = is_valid_on_space(s3, parse("p"))
    assert not res.valid
    assert res.countervaluation == (("p", 0),)


def test_validity_requires_dv_space(sierpinski):
    with pytest.raises(PreconditionError):
        is_valid_on_space(sierpinski, parse("p"))


def test_countermodel_search_examples(c2):
    found = countermodel_search(parse("(p -> p) -> (p => p)"), 2, "contact")
    assert found.found
    assert found.algebra.rows == c2.rows
    assert found.valuation == (("p", 1),)

    exhausted = countermodel_search(parse("(p => q) -> (p -> q)"), 2, "contact")
    assert not exhausted.found

    top = countermodel_search(parse("1"), 2, "contact")
    assert not top.found


def test_countermodel_search_compingent_class():
    # with the subordination forced to the order, strictness collapses
    res = countermodel_search(parse("(p -> p) -> (p => p)"), 2, "compingent")
    assert not res.found
    res2 = countermodel_search(parse("p => p"), 3, "compingent")
    assert not res2.found


def test_countermodel_resource_guard():
    with pytest.raises(InputError):
        countermodel_search(parse("p"), 4, "contact")
    with pytest.raises(InputError):
        countermodel_search(parse("p"), 2, "modal")


def test_countermodel_parallel_matches_sequential():
    phi = parse("(p => (q | r)) -> ((p => q) | (p => r))")
    seq = countermodel_search(phi, 2, "contact")
    par = countermodel_search(phi, 2, "contact", jobs=2)
    assert seq.found and par.found
    assert seq.algebra == par.algebra
    assert seq.valuation == par.valuation


def test_delta_normal_and_additive():
    # over every contact table on at most 2 atoms
    for n in range(3):
        base = FiniteBooleanAlgebra(tuple("xyz"[:n]))
        for rows in enumerate_class_tables(n, "contact"):
            alg = SubordinationAlgebra(base, rows)
            for c in base.elements():
                assert delta(alg, 0, c) == 0
                assert delta(alg, c, 0) == 0
                for a in base.elements():
                    for b in base.elements():
                        assert delta(alg, a | b, c) == delta(alg, a, c) | delta(
                            alg, b, c
                        )


def test_strictness_reflects_into_material():
    # strict implication at top forces material implication at top
    phi, psi = parse("p => q"), parse("p -> q")
    for n in range(3):
        base = FiniteBooleanAlgebra(tuple("xyz"[:n]))
        for rows in enumerate_class_tables(n, "contact"):
            alg = SubordinationAlgebra(base, rows)
            for p_val in base.elements():
                for q_val in base.elements():
                    m = AlgebraicModel.of(alg, {"p": p_val, "q": q_val})
                    if eval_algebraic(m, phi) == base.top:
                        assert eval_algebraic(m, psi) == base.top


def test_semantics_agreement_corpus(corpus):
    phi = parse("p => p")
    for alg in corpus:
        assert semantics_agreement(alg, phi).agree


def test_semantics_agreement_requires_compingent(c2):
    with pytest.raises(PreconditionError):
        semantics_agreement(c2, parse("p"))


def test_regression_formulas_statuses(corpus, corpus_spaces):
    rows = load_regression_formulas()
    assert len(rows) >= 20
    for status, text in rows:
        phi = parse(text)
        result = countermodel_search(phi, 2, "contact")
        assert result.found == (status == "refutable"), text
        if status == "valid":
            for space in corpus_spaces:
                assert is_valid_on_space(space, phi).valid, text
        for alg in corpus:
            assert semantics_agreement(alg, phi).agree, text


def test_transport_equals_hat_of_algebraic_value(b2):
    # the topological value is the extent of the algebraic value
    from devries.duality import hat_masks

    space = dual_space(b2)
    hats = hat_masks(b2)
    for text in ["p => q", "p -> q", "p & ~q", "p | q"]:
        phi = parse(text)
        for p_val in b2.base.elements():
            for q_val in b2.base.elements():
                alg_value = eval_algebraic(
                    AlgebraicModel.of(b2, {"p": p_val, "q": q_val}), phi
                )
                top_value = eval_topological(
                    TopologicalModel.of(
                        space, {"p": hats[p_val], "q": hats[q_val]}
                    ),
                    phi,
                )
                assert top_value == hats[alg_value]


def test_validity_on_empty_space():
    empty = dual_space(leq_algebra(0))
    assert is_valid_on_space(empty, parse("p")).valid
    assert is_valid_on_space(empty, parse("0")).valid
