import pytest

from kripkelab import (
    EmptyRestrictionError,
    InvalidNodeError,
    InvalidSizeError,
    StructureError,
    make_chain,
    make_poset,
    restrict_downclosed,
)


def test_single_node_chain_is_reflexive():
    p = make_chain(1)
    assert p.leq(0, 0)
    assert p.upset(0) == {0}


def test_chain_orders_nodes():
    p = make_chain(3)
    assert p.leq(0, 2)
    assert not p.leq(2, 0)


def test_chain_zero_rejected():
    with pytest.raises(InvalidSizeError):
        make_chain(0)


def test_upsets_on_chain_2():
    p = make_chain(2)
    assert p.upset(0) == {0, 1}
    assert p.upset(1) == {1}


def test_upsets_on_chain_3():
    p = make_chain(3)
    assert p.upset(1) == {1, 2}
    assert p.upset(2) == {2}


def test_upset_rejects_stray_node():
    with pytest.raises(InvalidNodeError):
        make_chain(3).upset(7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_partial_order_laws_exhaustive(n):
    p = make_chain(n)
    for a in p.nodes:
        assert p.leq(a, a)
        for b in p.nodes:
            if a != b and p.leq(a, b):
                assert not p.leq(b, a)
            for c in p.nodes:
                if p.leq(a, b) and p.leq(b, c):
                    assert p.leq(a, c)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_upset_antitone(n):
    p = make_chain(n)
    for a in p.nodes:
        for b in p.nodes:
            if p.leq(a, b):
                assert p.upset(a) >= p.upset(b)


def test_restrict_to_prefix():
    p = make_chain(3)
    q = restrict_downclosed(p, {0, 1})
    assert q.nodes == (0, 1)
    assert q.leq(0, 1)
    assert not any(2 in pair for pair in q.relation)


def test_restrict_full_is_identity():
    p = make_chain(3)
    assert restrict_downclosed(p, {0, 1, 2}) == p


def test_restrict_rejects_non_downclosed():
    with pytest.raises(StructureError):
        restrict_downclosed(make_chain(3), {1})


def test_restrict_rejects_empty():
    with pytest.raises(EmptyRestrictionError):
        restrict_downclosed(make_chain(3), set())


def test_restrict_preserves_order_on_kept_nodes():
    p = make_chain(4)
    q = restrict_downclosed(p, {0, 1, 2})
    for a in q.nodes:
        for b in q.nodes:
            assert q.leq(a, b) == p.leq(a, b)


def test_make_poset_diamond():
    p = make_poset(range(4), [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert p.leq(0, 3)
    assert not p.leq(1, 2)
    assert not p.leq(2, 1)
    assert p.upset(1) == {1, 3}


def test_make_poset_rejects_cycles():
    with pytest.raises(StructureError):
        make_poset(range(2), [(0, 1), (1, 0)])


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 3), (3, 4)])
def test_chain_upclosed_sets_count(n, expected):
    # A chain of n nodes has the empty filter plus one filter per start node.
    assert len(make_chain(n).upclosed_sets()) == expected


def test_diamond_upclosed_sets_are_upclosed():
    p = make_poset(range(4), [(0, 1), (0, 2), (1, 3), (2, 3)])
    for f in p.upclosed_sets():
        for a in f:
            assert p.upset(a) <= f


def test_is_bottom():
    p = make_chain(3)
    assert p.is_bottom(0)
    assert not p.is_bottom(1)
