"""Rank-stratified construction and canonical storage of Kripke sets.

A Kripke set is its extent: a total map from nodes to finite sets of
previously built set ids, growing along the node order. Because an extent is
monotone exactly when each member occupies an up-closed region of nodes,
stage r of the exhaustive build enumerates all assignments of up-closed node
sets to the ids already in the table.

The table is deduplicated structurally. Extents that are forced equal at
some node but differ as raw maps are deliberately kept distinct: collapsing
them would erase exactly the phenomena this workbench measures.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import (
    BudgetError,
    ClosureError,
    InvalidNodeError,
    InvalidSizeError,
    MonotonicityError,
    OrderError,
)
from .poset import Poset

DEFAULT_BUDGET = 50_000
BUDGET_ENV_VAR = "KRIPKELAB_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class KSet:
    """One table entry: id, stratification rank, and extent per node.

    The extent tuple is aligned with the poset's node tuple. Every member id
    has rank strictly below this entry's rank, so recursion through members
    terminates.
    """

    id: int
    rank: int
    extent: tuple[frozenset[int], ...]


class Universe:
    """Canonical table of Kripke sets over a fixed poset.

    Construction is single-writer: build or insert first, then read from any
    number of workers. The memo dict only caches facts about frozen extents,
    so later inserts never invalidate it.
    """

    def __init__(self, poset: Poset, rank_cutoff: int, budget: int | None = None):
        if rank_cutoff < 1:
            raise InvalidSizeError("rank cutoff must be at least 1")
        self.poset = poset
        self.rank_cutoff = rank_cutoff
        self.budget = default_budget() if budget is None else budget
        self._entries: list[KSet] = []
        self._index: dict[tuple[frozenset[int], ...], int] = {}
        self._node_pos = {node: i for i, node in enumerate(poset.nodes)}
        self.enumerated = 0
        self.memo: dict = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def get(self, sid: int) -> KSet:
        self.check_id(sid)
        return self._entries[sid]

    def check_id(self, sid: int) -> None:
        if not isinstance(sid, int) or not 0 <= sid < len(self._entries):
            raise ClosureError(f"id {sid!r} is not in the universe table")

    def check_node(self, node: int) -> None:
        if node not in self._node_pos:
            raise InvalidNodeError(f"node {node} is not in the universe's poset")

    def extent_at(self, sid: int, node: int) -> frozenset[int]:
        self.check_id(sid)
        self.check_node(node)
        return self._entries[sid].extent[self._node_pos[node]]

    def rank_of(self, sid: int) -> int:
        self.check_id(sid)
        return self._entries[sid].rank

    def enumerated_ids(self) -> tuple[int, ...]:
        """Ids produced by the exhaustive build; the default quantifier pool."""
        return tuple(range(self.enumerated))

    def insert(self, extent) -> int:
        """Intern an extent given as a mapping node -> iterable of ids.

        Returns the existing id when the extent is already present. The rank
        is recomputed from the members (1 + max member rank, 1 when empty);
        callers cannot violate stratification.
        """
        mapping = dict(extent)
        missing = [node for node in self.poset.nodes if node not in mapping]
        if missing:
            raise InvalidNodeError(f"extent is not total: missing node {missing[0]}")
        unknown = [node for node in mapping if node not in self._node_pos]
        if unknown:
            raise InvalidNodeError(f"extent mentions unknown node {unknown[0]}")
        ext = []
        for node in self.poset.nodes:
            members = frozenset(mapping[node])
            for mid in members:
                if not isinstance(mid, int) or not 0 <= mid < len(self._entries):
                    raise ClosureError(f"extent at node {node} references unknown id {mid!r}")
            ext.append(members)
        ext = tuple(ext)
        self._check_monotone(ext)
        return self._insert_canonical(ext)

    def _check_monotone(self, ext: tuple[frozenset[int], ...]) -> None:
        for a, b in self.poset.relation:
            if not ext[self._node_pos[a]] <= ext[self._node_pos[b]]:
                raise MonotonicityError(f"extent shrinks from node {a} to node {b}")

    def _insert_canonical(self, ext: tuple[frozenset[int], ...]) -> int:
        hit = self._index.get(ext)
        if hit is not None:
            return hit
        if len(self._entries) + 1 > self.budget:
            raise BudgetError(f"table would exceed the budget of {self.budget} entries")
        rank = 1 + max((self._entries[mid].rank for part in ext for mid in part), default=0)
        sid = len(self._entries)
        self._entries.append(KSet(sid, rank, ext))
        self._index[ext] = sid
        return sid

    def numeral(self, n: int) -> int:
        """Constant-extent von Neumann numeral: n has members 0..n-1 everywhere."""
        if n < 0:
            raise InvalidSizeError("numerals are defined for naturals only")
        ids: list[int] = []
        for _ in range(n + 1):
            ext = {node: frozenset(ids) for node in self.poset.nodes}
            ids.append(self.insert(ext))
        return ids[n]

    def one_kappa(self, node: int) -> int:
        """The step subset of 1: empty strictly below ``node``, {0} from it on."""
        self.check_node(node)
        zero = self.numeral(0)
        ext = {
            other: (frozenset([zero]) if self.poset.leq(node, other) else frozenset())
            for other in self.poset.nodes
        }
        return self.insert(ext)

    def transition(self, sid: int, frm: int, to: int) -> int:
        """Move a set from one node to a later one.

        All transitions are the identity here; the operation exists so suite
        code can mirror transition-function notation and assert composition.
        """
        self.check_id(sid)
        if not self.poset.leq(frm, to):
            raise OrderError(f"no transition from node {frm} to non-successor {to}")
        return sid

    def dump(self) -> str:
        """One line per entry: ``id rank node0:{ids} node1:{ids} ...``."""
        lines = []
        for entry in self._entries:
            cells = " ".join(
                f"node{node}:{{{','.join(str(m) for m in sorted(part))}}}"
                for node, part in zip(self.poset.nodes, entry.extent)
            )
            lines.append(f"{entry.id} {entry.rank} {cells}")
        return "\n".join(lines)


def build_universe(poset: Poset, rank_cutoff: int, budget: int | None = None) -> Universe:
    """Enumerate every monotone extent of rank up to the cutoff.

    Stage r enumerates all monotone maps into the table built so far; after
    stage r the table holds exactly the sets of rank <= r, each recorded at
    the least stage where its extent appears. Cutoffs whose enumeration would
    overflow the budget are refused before any work is done.
    """
    u = Universe(poset, rank_cutoff, budget)
    filters = poset.upclosed_sets()
    for stage in range(1, rank_cutoff + 1):
        pool = list(range(len(u._entries)))
        count = len(filters) ** len(pool)
        if count > u.budget:
            raise BudgetError(
                f"rank {stage} would enumerate {count} extents, over the budget of {u.budget}",
                rank=stage,
            )
        for assignment in product(range(len(filters)), repeat=len(pool)):
            ext = tuple(
                frozenset(mid for mid, fi in zip(pool, assignment) if node in filters[fi])
                for node in poset.nodes
            )
            u._insert_canonical(ext)
    u.enumerated = len(u._entries)
    return u
