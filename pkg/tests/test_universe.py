import itertools
import re

import pytest

from kripkelab import (
    BudgetError,
    ClosureError,
    InvalidNodeError,
    InvalidSizeError,
    MonotonicityError,
    OrderError,
    build_universe,
    make_chain,
)


def oracle_universe_size(n_nodes: int, cutoff: int) -> int:
    """Stagewise brute force, independent of the production enumerator.

    Elements are represented hereditarily by their own extent tuples; each
    stage tries every function from nodes to subsets of the elements so far
    and keeps the monotone ones.
    """
    elems: set = set()
    for _ in range(cutoff):
        pool = list(elems)
        subsets = [
            frozenset(p for i, p in enumerate(pool) if mask >> i & 1)
            for mask in range(1 << len(pool))
        ]
        new = set()
        for choice in itertools.product(subsets, repeat=n_nodes):
            if all(choice[i] <= choice[i + 1] for i in range(n_nodes - 1)):
                new.add(tuple(choice))
        elems |= new
    return len(elems)


def test_chain2_cutoff1_single_empty_set():
    u = build_universe(make_chain(2), 1)
    assert len(u) == 1
    assert all(u.extent_at(0, n) == frozenset() for n in (0, 1))


def test_chain2_cutoff2_three_elements():
    u = build_universe(make_chain(2), 2)
    assert len(u) == 3 == oracle_universe_size(2, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_chain_cutoff2_counts(n):
    # Monotone maps from an n-chain into a 2-element lattice: one per step position.
    u = build_universe(make_chain(n), 2)
    assert len(u) == n + 1 == oracle_universe_size(n, 2)


def test_chain2_cutoff3_is_27():
    u = build_universe(make_chain(2), 3)
    assert len(u) == 27 == oracle_universe_size(2, 3)


def test_chain3_cutoff3_is_256():
    u = build_universe(make_chain(3), 3)
    assert len(u) == 256 == oracle_universe_size(3, 3)


def test_cutoff_zero_rejected():
    with pytest.raises(InvalidSizeError):
        build_universe(make_chain(2), 0)


def test_budget_refusal_names_rank():
    with pytest.raises(BudgetError) as err:
        build_universe(make_chain(2), 4, budget=1000)
    assert err.value.rank == 4


def test_insert_dedup_is_idempotent():
    u = build_universe(make_chain(2), 2)
    empty = {0: (), 1: ()}
    assert u.insert(empty) == u.insert(empty) == 0


def test_insert_constant_singleton_matches_numeral_and_rank():
    u = build_universe(make_chain(2), 2)
    sid = u.insert({0: (0,), 1: (0,)})
    assert sid == u.numeral(1)
    assert u.rank_of(sid) == 2
    assert u.rank_of(0) == 1


def test_insert_rejects_non_monotone():
    u = build_universe(make_chain(2), 3)
    one = u.numeral(1)
    with pytest.raises(MonotonicityError):
        u.insert({0: (one,), 1: (0,)})


def test_insert_rejects_dangling_id():
    u = build_universe(make_chain(2), 2)
    with pytest.raises(ClosureError):
        u.insert({0: (), 1: (999,)})


def test_insert_requires_total_extent():
    u = build_universe(make_chain(2), 2)
    with pytest.raises(InvalidNodeError):
        u.insert({0: ()})


def test_insert_respects_budget():
    u = build_universe(make_chain(1), 2, budget=2)
    with pytest.raises(BudgetError):
        u.insert({0: (0, 1)})


def test_numeral_zero_and_two():
    u = build_universe(make_chain(2), 2)
    zero, two = u.numeral(0), u.numeral(2)
    assert zero == 0
    expected = frozenset([u.numeral(0), u.numeral(1)])
    assert all(u.extent_at(two, n) == expected for n in (0, 1))
    assert u.rank_of(two) == 3


def test_one_kappa_at_bottom_is_one():
    u = build_universe(make_chain(3), 2)
    assert u.one_kappa(0) == u.numeral(1)


def test_one_kappa_step_extent():
    u = build_universe(make_chain(3), 2)
    k2 = u.one_kappa(2)
    zero = u.numeral(0)
    assert u.extent_at(k2, 0) == frozenset()
    assert u.extent_at(k2, 1) == frozenset()
    assert u.extent_at(k2, 2) == frozenset([zero])


def test_one_kappa_ids_distinct():
    u = build_universe(make_chain(3), 2)
    assert u.one_kappa(1) != u.one_kappa(2)


def test_structurally_distinct_ids_survive_dedup():
    # The step set and the constant singleton agree from node 1 on, yet they
    # are different extents and must keep different ids.
    u = build_universe(make_chain(2), 2)
    assert u.one_kappa(1) != u.numeral(1)


def test_rank_stratification_no_cycles():
    u = build_universe(make_chain(2), 3)
    for entry in u:
        for part in entry.extent:
            for mid in part:
                assert u.rank_of(mid) < entry.rank


def test_transition_is_identity_and_composes():
    u = build_universe(make_chain(3), 2)
    x = u.one_kappa(1)
    assert u.transition(x, 0, 0) == x
    assert u.transition(x, 0, 2) == x
    assert u.transition(u.transition(x, 0, 1), 1, 2) == u.transition(x, 0, 2)


def test_transition_rejects_backwards():
    u = build_universe(make_chain(3), 2)
    with pytest.raises(OrderError):
        u.transition(0, 2, 0)


def test_dump_format():
    u = build_universe(make_chain(2), 2)
    lines = u.dump().splitlines()
    assert len(lines) == 3
    pat = re.compile(r"^\d+ \d+ node0:\{[\d,]*\} node1:\{[\d,]*\}$")
    for line in lines:
        assert pat.match(line), line
    assert lines[0] == "0 1 node0:{} node1:{}"


def test_enumerated_ids_prefix():
    u = build_universe(make_chain(2), 2)
    pool = u.enumerated_ids()
    u.numeral(3)
    assert pool == (0, 1, 2)
    assert len(u) > len(pool)
