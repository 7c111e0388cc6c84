"""Finite partial orders over integer node ids.

Chains are the primary instantiation; arbitrary finite posets are accepted so
the satisfaction machinery can be exercised on branching node structures too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import EmptyRestrictionError, InvalidNodeError, InvalidSizeError, StructureError


@dataclass(frozen=True)
class Poset:
    """An explicit finite partial order: node ids plus the full leq relation."""

    nodes: tuple[int, ...]
    relation: frozenset[tuple[int, int]]
    _upsets: dict = field(init=False, compare=False, repr=False, default=None)

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes))
        if len(set(nodes)) != len(nodes):
            raise StructureError("duplicate node ids")
        if not nodes:
            raise InvalidSizeError("a poset needs at least one node")
        object.__setattr__(self, "nodes", nodes)
        node_set = set(nodes)
        for a, b in self.relation:
            if a not in node_set or b not in node_set:
                raise InvalidNodeError(f"relation mentions unknown node in ({a}, {b})")
        rel = self.relation
        for a in nodes:
            if (a, a) not in rel:
                raise StructureError(f"relation is not reflexive at node {a}")
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise StructureError(f"relation is not antisymmetric on ({a}, {b})")
        for a, b in rel:
            for c in nodes:
                if (b, c) in rel and (a, c) not in rel:
                    raise StructureError(f"relation is not transitive via ({a}, {b}, {c})")
        upsets = {a: tuple(sorted(b for b in nodes if (a, b) in rel)) for a in nodes}
        object.__setattr__(self, "_upsets", upsets)

    @property
    def size(self) -> int:
        return len(self.nodes)

    def check_node(self, a: int) -> None:
        if a not in self._upsets:
            raise InvalidNodeError(f"node {a} is not in this poset")

    def leq(self, a: int, b: int) -> bool:
        self.check_node(a)
        self.check_node(b)
        return (a, b) in self.relation

    def upset(self, a: int) -> frozenset[int]:
        """All nodes at or above ``a``; always contains ``a`` itself."""
        self.check_node(a)
        return frozenset(self._upsets[a])

    def upset_sorted(self, a: int) -> tuple[int, ...]:
        self.check_node(a)
        return self._upsets[a]

    def is_downclosed(self, keep) -> bool:
        kept = set(keep)
        return all(a in kept for b in kept for a in self.nodes if (a, b) in self.relation)

    def is_bottom(self, a: int) -> bool:
        """True when every node lies above ``a``."""
        return len(self._upsets[a]) == self.size

    def upclosed_sets(self) -> tuple[frozenset[int], ...]:
        """Every up-closed subset of the nodes, the empty set included.

        Monotone extents assign one of these to each candidate member, so the
        universe enumerator leans on this list. Ordered by (size, elements)
        for reproducible enumeration order.
        """
        out = [frozenset()]
        for r in range(1, self.size + 1):
            for combo in combinations(self.nodes, r):
                chosen = set(combo)
                if all(b in chosen for a in combo for b in self._upsets[a]):
                    out.append(frozenset(combo))
        out.sort(key=lambda s: (len(s), tuple(sorted(s))))
        return tuple(out)


def make_chain(n: int) -> Poset:
    """Linear order on nodes 0..n-1."""
    if n < 1:
        raise InvalidSizeError("a chain needs at least one node")
    pairs = frozenset((a, b) for a in range(n) for b in range(a, n))
    return Poset(tuple(range(n)), pairs)


def make_poset(nodes, covers) -> Poset:
    """Build a poset from covering pairs, closing under reflexivity/transitivity."""
    nodes = tuple(sorted(set(nodes)))
    rel = {(a, a) for a in nodes} | {(a, b) for a, b in covers}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return Poset(nodes, frozenset(rel))


def restrict_downclosed(p: Poset, keep) -> Poset:
    """Induced sub-order on a nonempty downward-closed node set, ids preserved."""
    kept = frozenset(keep)
    if not kept:
        raise EmptyRestrictionError("cannot restrict to an empty node set")
    for a in kept:
        p.check_node(a)
    if not p.is_downclosed(kept):
        raise StructureError("restriction set is not downward-closed")
    rel = frozenset((a, b) for a, b in p.relation if a in kept and b in kept)
    return Poset(tuple(sorted(kept)), rel)
