import random

import pytest

from kripkelab import (
    And,
    ArityError,
    BExists,
    BForAll,
    Bottom,
    Eq,
    Exists,
    ForAll,
    Imp,
    Mem,
    Or,
    Param,
    ParseError,
    Var,
    build_universe,
    free_vars,
    is_delta0,
    make_chain,
    neg,
    parse,
    render,
    star_transform,
)
from kripkelab.formula import (
    all_var_names,
    atom_count,
    corpus,
    random_formula,
    rename_var,
    size,
    subformulas,
)


def test_parse_forall_identity():
    assert parse("forall x . (x = x)") == ForAll("x", Eq(Var("x"), Var("x")))


def test_parse_em_counterexample_shape():
    phi = parse("~ forall x . forall y . (x = y | ~(x = y))")
    inner = Or(Eq(Var("x"), Var("y")), neg(Eq(Var("x"), Var("y"))))
    assert phi == neg(ForAll("x", ForAll("y", inner)))


def test_parse_bounded_quantifiers_with_params():
    phi = parse("forall x in #5 . exists y in #5 . (x in y)")
    assert phi == BForAll("x", Param(5), BExists("y", Param(5), Mem(Var("x"), Var("y"))))


def test_parse_precedence_ladder():
    assert parse("x = y | y = z & z = w") == Or(
        Eq(Var("x"), Var("y")), And(Eq(Var("y"), Var("z")), Eq(Var("z"), Var("w")))
    )
    assert parse("x = y -> y = x -> x = x") == Imp(
        Eq(Var("x"), Var("y")), Imp(Eq(Var("y"), Var("x")), Eq(Var("x"), Var("x")))
    )
    assert parse("~x = y & z in w") == And(neg(Eq(Var("x"), Var("y"))), Mem(Var("z"), Var("w")))


def test_quantifier_scope_extends_right():
    assert parse("forall x . x = x & false") == ForAll("x", And(Eq(Var("x"), Var("x")), Bottom()))


def test_parse_error_non_formula_body():
    with pytest.raises(ParseError):
        parse("forall x . x")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse("x = ?")
    assert err.value.position == 4


def test_parse_bare_number_is_not_a_term():
    with pytest.raises(ParseError):
        parse("3 in x")


def test_parse_unknown_parameter_against_universe():
    u = build_universe(make_chain(2), 2)
    assert parse("#2 = #2", u) == Eq(Param(2), Param(2))
    with pytest.raises(ParseError):
        parse("#99 = #0", u)


def test_render_round_trip_spec_examples():
    for text in [
        "forall x . (x = x)",
        "~ forall x . forall y . (x = y | ~(x = y))",
        "forall x in #5 . exists y in #5 . (x in y)",
        "false",
        "x in y -> false",
    ]:
        phi = parse(text)
        assert parse(render(phi)) == phi


def test_render_round_trip_random_corpus():
    rng = random.Random(11)
    for phi in corpus(rng, 300, 4, ("x", "y"), (0, 1, 2)):
        assert parse(render(phi)) == phi


def test_is_delta0():
    assert is_delta0(parse("x in y"))
    assert not is_delta0(parse("forall x . (x = x)"))
    assert is_delta0(parse("forall x in #3 . ~(x in x)"))


def test_free_vars():
    assert free_vars(parse("forall x . x in y")) == {"y"}
    assert free_vars(parse("forall x in y . x in x")) == {"y"}
    assert free_vars(parse("#1 in #2")) == frozenset()


def test_star_atomic_clause():
    psi = parse("#1 in #2")
    assert star_transform(parse("x in y"), psi) == Or(Mem(Var("x"), Var("y")), psi)
    assert star_transform(Bottom(), psi) == Or(Bottom(), psi)


def test_star_homomorphic_implication():
    psi = parse("#1 in #2")
    got = star_transform(parse("a = b -> false"), psi)
    assert got == Imp(Or(Eq(Var("a"), Var("b")), psi), Or(Bottom(), psi))


def test_star_requires_closed_sentence():
    with pytest.raises(ArityError):
        star_transform(parse("x = x"), parse("y = y"))


def test_star_expands_bounded_quantifiers():
    psi = parse("#1 in #2")
    got = star_transform(parse("exists q in #0 . q = q"), psi)
    want = Exists("q", And(Or(Mem(Var("q"), Param(0)), psi),
                           Or(Eq(Var("q"), Var("q")), psi)))
    assert got == want
    got = star_transform(parse("forall q in #0 . q = q"), psi)
    want = ForAll("q", Imp(Or(Mem(Var("q"), Param(0)), psi),
                           Or(Eq(Var("q"), Var("q")), psi)))
    assert got == want


def test_star_renames_self_bounded_variable():
    psi = parse("#1 in #2")
    got = star_transform(BExists("x", Var("x"), Eq(Var("x"), Param(0))), psi)
    # The bound refers to the outer x, so the binder must move out of its way.
    assert got == Exists("x_", And(Or(Mem(Var("x_"), Var("x")), psi),
                                   Or(Eq(Var("x_"), Param(0)), psi)))


def test_star_size_law_and_double_application():
    psi = parse("#1 in #2")
    rng = random.Random(5)
    for phi in corpus(rng, 60, 3, ("x",), (0, 1)):
        starred = star_transform(phi, psi)
        bquants = sum(1 for s in subformulas(phi) if isinstance(s, (BForAll, BExists)))
        expected = size(phi) + atom_count(phi) * (size(psi) + 1) + bquants * (size(psi) + 3)
        assert size(starred) == expected
        assert size(star_transform(starred, psi)) > size(starred)


def test_rename_var_respects_shadowing():
    phi = And(Mem(Var("x"), Param(0)), ForAll("x", Eq(Var("x"), Var("x"))))
    got = rename_var(phi, "x", "w")
    assert got == And(Mem(Var("w"), Param(0)), ForAll("x", Eq(Var("x"), Var("x"))))


def test_rename_var_rejects_occurring_name():
    with pytest.raises(ArityError):
        rename_var(parse("x in y"), "x", "y")


def test_all_var_names_sees_binders():
    assert all_var_names(parse("forall q . #0 = #0")) == {"q"}


def test_corpus_covers_every_kind():
    rng = random.Random(0)
    phis = corpus(rng, 40, 4, ("x",), (0,))
    assert len(phis) >= 40
    kinds = set()
    for phi in phis:
        for sub in subformulas(phi):
            kinds.add(type(sub).__name__)
    assert kinds >= {"Bottom", "Mem", "Eq", "And", "Or", "Imp",
                     "ForAll", "Exists", "BForAll", "BExists"}


def test_random_formula_depth_bounded():
    rng = random.Random(3)

    def depth(phi):
        parts = [depth(s) for s in subformulas(phi) if s is not phi]
        return 1 + max(parts, default=0) if parts else 0

    for _ in range(50):
        assert depth(random_formula(rng, 4, ("x",), (0,))) <= 4
