import random

import pytest

from kripkelab import (
    ArityError,
    Bottom,
    DomainError,
    EmptyRestrictionError,
    Eq,
    EvalError,
    Mem,
    MemoTable,
    Or,
    Param,
    StructureError,
    Var,
    build_universe,
    decide_em_pair,
    eq_forced,
    forces,
    forces_restricted,
    make_chain,
    make_poset,
    mem_forced,
    monotonicity_violations,
    neg,
    parse,
    pre_psi_nodes,
    star_context,
    star_transform,
)
from kripkelab.formula import corpus


@pytest.fixture(scope="module")
def chain3():
    return build_universe(make_chain(3), 2)


@pytest.fixture(scope="module")
def chain2():
    return build_universe(make_chain(2), 3)


def test_mem_empty_in_singleton(chain3):
    u = chain3
    assert mem_forced(u, 0, u.numeral(0), u.numeral(1))


def test_mem_step_set_grows(chain3):
    u = chain3
    zero, k2 = u.numeral(0), u.one_kappa(2)
    assert not mem_forced(u, 0, zero, k2)
    assert not mem_forced(u, 1, zero, k2)
    assert mem_forced(u, 2, zero, k2)


def test_no_self_membership(chain3):
    u = chain3
    one = u.numeral(1)
    assert not mem_forced(u, 0, one, one)


def test_eq_reflexive_everywhere(chain2):
    u = chain2
    for node in u.poset.nodes:
        for sid in u.enumerated_ids():
            assert eq_forced(u, node, sid, sid)


def test_eq_step_sets_only_from_merge_point(chain3):
    u = chain3
    k1, k2 = u.one_kappa(1), u.one_kappa(2)
    assert eq_forced(u, 2, k1, k2)
    assert not eq_forced(u, 1, k1, k2)
    assert not eq_forced(u, 0, k1, k2)


def test_eq_empty_vs_step(chain2):
    u = chain2
    assert not eq_forced(u, 0, u.numeral(0), u.one_kappa(1))


def test_memoized_matches_fresh_recomputation(chain3):
    u = chain3
    pool = u.enumerated_ids()
    for node in u.poset.nodes:
        for f in pool:
            for g in pool:
                fresh = MemoTable()
                assert eq_forced(u, node, f, g) == eq_forced(u, node, f, g, memo=fresh)
                assert mem_forced(u, node, f, g) == mem_forced(u, node, f, g, memo=fresh)


def test_primitives_monotone(chain2):
    u = chain2
    pool = u.enumerated_ids()
    for f in pool:
        for g in pool:
            if eq_forced(u, 0, f, g):
                assert eq_forced(u, 1, f, g)
            if mem_forced(u, 0, f, g):
                assert mem_forced(u, 1, f, g)


def test_bottom_never_forced(chain3):
    u = chain3
    for node in u.poset.nodes:
        assert not forces(u, u.enumerated_ids(), node, Bottom())


def test_em_disjunction_for_step_pair(chain3):
    u = chain3
    pool = u.enumerated_ids()
    env = {"x": u.one_kappa(1), "y": u.one_kappa(2)}
    phi = parse("x = y | ~(x = y)")
    assert not forces(u, pool, 0, phi, env)
    assert forces(u, pool, 2, phi, env)


def test_top_node_is_classical_for_atomics(chain3):
    u = chain3
    pool = u.enumerated_ids()
    top = u.poset.nodes[-1]
    for f in pool:
        for g in pool:
            env = {"x": f, "y": g}
            assert forces(u, pool, top, parse("x = y | ~(x = y)"), env)
            assert forces(u, pool, top, parse("x in y | ~(x in y)"), env)


def test_unbound_variable_raises(chain3):
    with pytest.raises(EvalError):
        forces(chain3, (), 0, parse("x = x"))


def test_decide_em_pair_verdicts(chain3):
    u = chain3
    k1, k2 = u.one_kappa(1), u.one_kappa(2)
    assert decide_em_pair(u, 0, k1, k1) == "eq"
    assert decide_em_pair(u, 0, k1, k2) == "undecided"
    u2 = build_universe(make_chain(2), 2)
    assert decide_em_pair(u2, 0, u2.numeral(0), u2.one_kappa(1)) == "neq"


def test_forcing_monotone_on_corpus(chain3):
    u = chain3
    pool = u.enumerated_ids()
    rng = random.Random(2)
    phis = corpus(rng, 60, 4, ("x", "y", "z"), pool)
    env = {"x": pool[0], "y": pool[1], "z": pool[-1], "v": pool[0]}
    assert monotonicity_violations(u, pool, phis, env) == []


def test_quantifier_shadowing(chain3):
    u = chain3
    pool = u.enumerated_ids()
    # The inner binder wins; the outer x must not leak into the body.
    phi = parse("exists x . forall x in #1 . x = #0")
    assert forces(u, pool, 0, phi)


def test_bounded_quantifiers_ignore_pool(chain2):
    u = chain2
    two = u.numeral(2)
    phi = parse(f"forall q in #{two} . q in #{two}", u)
    assert forces(u, (), 0, phi) == forces(u, u.enumerated_ids(), 0, phi)


# ---------------------------------------------------------- restriction

def test_pre_psi_membership_sentence(chain3):
    u = chain3
    pool = u.enumerated_ids()
    psi = Mem(Param(u.numeral(0)), Param(u.one_kappa(2)))
    assert pre_psi_nodes(u, pool, psi) == {0, 1}


def test_pre_psi_false_keeps_everything(chain3):
    u = chain3
    assert pre_psi_nodes(u, u.enumerated_ids(), Bottom()) == {0, 1, 2}


def test_pre_psi_reflexive_sentence_empty(chain3):
    u = chain3
    psi = Eq(Param(0), Param(0))
    with pytest.raises(EmptyRestrictionError):
        pre_psi_nodes(u, u.enumerated_ids(), psi)


def test_pre_psi_requires_closed(chain3):
    with pytest.raises(ArityError):
        pre_psi_nodes(chain3, (), Eq(Var("x"), Var("x")))


def test_star_context_invariants(chain3):
    u = chain3
    psi = Mem(Param(u.numeral(0)), Param(u.one_kappa(1)))
    ctx = star_context(u, u.enumerated_ids(), psi)
    assert ctx.pre_psi == {0}
    assert u.poset.is_downclosed(ctx.pre_psi)


def test_restricted_matches_full_when_nothing_cut(chain3):
    u = chain3
    pool = u.enumerated_ids()
    rng = random.Random(9)
    env = {"x": pool[0], "y": pool[1], "z": pool[-1], "v": pool[0]}
    for phi in corpus(rng, 40, 3, ("x", "y", "z"), pool):
        for node in u.poset.nodes:
            assert forces_restricted(u, pool, set(u.poset.nodes), node, phi, env) == \
                forces(u, pool, node, phi, env)


def test_restricted_em_recovers_at_cut(chain3):
    u = chain3
    pool = u.enumerated_ids()
    env = {"x": u.one_kappa(1), "y": u.one_kappa(2)}
    phi = parse("x = y | ~(x = y)")
    # Node 2 is where the two step sets merge; removing it makes the
    # inequality decidable from below.
    assert forces_restricted(u, pool, {0, 1}, 0, phi, env)


def test_restricted_rejects_outside_node(chain3):
    with pytest.raises(DomainError):
        forces_restricted(chain3, (), {0, 1}, 2, Bottom())


def test_restricted_rejects_upward_set(chain3):
    with pytest.raises(StructureError):
        forces_restricted(chain3, (), {1, 2}, 1, Bottom())


def test_transfer_instance_from_star(chain3):
    u = chain3
    pool = u.enumerated_ids()
    psi = Mem(Param(u.numeral(0)), Param(u.one_kappa(2)))
    env = {"x": u.one_kappa(1), "y": u.one_kappa(2)}
    phi = parse("x = y | ~(x = y)")
    assert forces(u, pool, 0, star_transform(phi, psi), env)


def test_transfer_lemma_on_branching_poset():
    # The restriction argument is stated for arbitrary models, so exercise a
    # non-chain: psi holds on one branch only.
    p = make_poset(range(3), [(0, 1), (0, 2)])
    u = build_universe(p, 2)
    pool = u.enumerated_ids()
    psi = Mem(Param(u.numeral(0)), Param(u.one_kappa(1)))
    kept = pre_psi_nodes(u, pool, psi)
    assert kept == {0, 2}
    rng = random.Random(4)
    env = {"x": pool[0], "y": pool[1], "z": pool[-1], "v": pool[0]}
    for phi in corpus(rng, 60, 3, ("x", "y", "z"), pool):
        starred = star_transform(phi, psi)
        for node in sorted(kept):
            assert forces(u, pool, node, starred, env) == \
                forces_restricted(u, pool, kept, node, phi, env)
