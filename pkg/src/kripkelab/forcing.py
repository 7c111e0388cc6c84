"""Finite conditions on a bit grid, generic samples, and the density checks.

Conditions are finite partial maps from grid cells to bits, ordered by
extension. Genericity is finitized: a sample is a total bit map meeting an
explicit list of density requirements (row and column totality always
included), with the remaining cells filled pseudo-randomly from a seed.
The two arguments that matter are implemented as density operators: one
extension kills a given total relation as a subrelation of the generic one,
the other secures totality of a row.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from . import formula as fm
from .axiomlab import kuratowski, subrelation_formula, total_relation_formula, totality_forced
from .errors import (
    GridTooSmallError,
    IncompatibilityError,
    InvalidSizeError,
    NoRoomError,
    ParseError,
    SaturationError,
)
from .report import FAIL, PASS, CheckReport
from .semantics import eq_forced, forces
from .universe import Universe


@dataclass(frozen=True)
class Condition:
    """A finite partial map from (row, col) cells to bits, sorted for hashing."""

    assignments: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        cells = [cell for cell, _ in self.assignments]
        if len(set(cells)) != len(cells):
            raise IncompatibilityError("a cell is assigned twice")
        object.__setattr__(self, "assignments", tuple(sorted(self.assignments)))

    @classmethod
    def empty(cls) -> "Condition":
        return cls(())

    @classmethod
    def from_dict(cls, mapping) -> "Condition":
        return cls(tuple(mapping.items()))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.assignments)

    def domain(self) -> frozenset[tuple[int, int]]:
        return frozenset(cell for cell, _ in self.assignments)

    def __len__(self) -> int:
        return len(self.assignments)


def extend(p: Condition, cell, bit: int) -> Condition:
    """One more assignment; refuses to touch a cell already decided."""
    cell = (int(cell[0]), int(cell[1]))
    if bit not in (0, 1):
        raise IncompatibilityError(f"bit must be 0 or 1, got {bit!r}")
    if cell[0] < 0 or cell[1] < 0:
        raise IncompatibilityError(f"cell {cell} is outside the grid")
    current = p.as_dict()
    if cell in current:
        if current[cell] != bit:
            raise IncompatibilityError(f"cell {cell} already assigned {current[cell]}")
        raise IncompatibilityError(f"cell {cell} is already assigned")
    return Condition(p.assignments + ((cell, bit),))


def extends(p: Condition, q: Condition) -> bool:
    """True when p refines q, i.e. p agrees with q on all of q's cells."""
    return set(p.assignments) >= set(q.assignments)


def compatible(p: Condition, q: Condition) -> bool:
    pd, qd = p.as_dict(), q.as_dict()
    return all(pd[c] == qd[c] for c in pd.keys() & qd.keys())


def join(p: Condition, q: Condition) -> Condition:
    """Least upper bound of two compatible conditions (their union)."""
    if not compatible(p, q):
        raise IncompatibilityError("conditions disagree on a shared cell")
    return Condition(tuple(set(p.assignments) | set(q.assignments)))


def density_kill_subrelation(p: Condition, rel) -> Condition:
    """Extend p with a 0 on some cell of the relation, lexicographically least.

    Any total map refining the result omits that cell, so the relation can
    no longer embed into the generic one. Needs a relation cell outside p's
    domain; a finite condition always leaves one when the relation is total
    on an unexhausted grid.
    """
    dom = p.domain()
    for cell in sorted(rel):
        if cell not in dom:
            return extend(p, cell, 0)
    raise NoRoomError("every cell of the relation is already decided")


def density_totality(p: Condition, row: int, k: int) -> Condition:
    """Secure a 1 somewhere in the given row, first free cell wins."""
    assigned = p.as_dict()
    for col in range(k):
        if assigned.get((row, col)) == 1:
            return p
    for col in range(k):
        if (row, col) not in assigned:
            return extend(p, (row, col), 1)
    raise GridTooSmallError(f"row {row} is fully assigned 0 on a grid of size {k}")


def density_column_totality(p: Condition, col: int, k: int) -> Condition:
    assigned = p.as_dict()
    for row in range(k):
        if assigned.get((row, col)) == 1:
            return p
    for row in range(k):
        if (row, col) not in assigned:
            return extend(p, (row, col), 1)
    raise GridTooSmallError(f"column {col} is fully assigned 0 on a grid of size {k}")


@dataclass(frozen=True)
class GenericSample:
    """A total bit map on a k x k grid with its provenance.

    Both the relation and its converse are total by construction; violating
    maps are rejected instead of repaired.
    """

    k: int
    bits: tuple[tuple[int, ...], ...]
    seed: int
    requirements: tuple[str, ...]

    def __post_init__(self):
        if len(self.bits) != self.k or any(len(row) != self.k for row in self.bits):
            raise InvalidSizeError("bit map does not match the grid size")
        for m in range(self.k):
            if not any(self.bits[m][n] for n in range(self.k)):
                raise SaturationError(f"row {m} of the sample has no 1")
        for n in range(self.k):
            if not any(self.bits[m][n] for m in range(self.k)):
                raise SaturationError(f"column {n} of the sample has no 1")

    def bit(self, m: int, n: int) -> int:
        return self.bits[m][n]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (m, n) for m in range(self.k) for n in range(self.k) if self.bits[m][n]
        )


def sample_generic(seed: int, k: int, dense_ops=()) -> GenericSample:
    """A deterministic sample meeting every requirement in order.

    ``dense_ops`` are callables (condition, k) -> condition; row and column
    totality are appended automatically. Cells left open afterwards are
    filled from the seeded generator. Jointly unsatisfiable requirements
    surface as a saturation error.
    """
    if k < 1:
        raise InvalidSizeError("the grid needs at least one row")
    cond = Condition.empty()
    met = []
    try:
        for op in dense_ops:
            cond = op(cond, k)
            met.append(getattr(op, "__name__", repr(op)))
        for m in range(k):
            cond = density_totality(cond, m, k)
            met.append(f"row_total({m})")
        for n in range(k):
            cond = density_column_totality(cond, n, k)
            met.append(f"col_total({n})")
    except (GridTooSmallError, IncompatibilityError, NoRoomError) as exc:
        raise SaturationError(f"requirements are jointly unsatisfiable: {exc}") from exc
    rng = random.Random(seed)
    assigned = cond.as_dict()
    bits = tuple(
        tuple(assigned.get((m, n), rng.getrandbits(1)) for n in range(k))
        for m in range(k)
    )
    return GenericSample(k, bits, seed, tuple(met))


# ------------------------------------------------------------ dump formats

def render_sample(sample: GenericSample) -> str:
    """Grid size, then one line of bits per row."""
    rows = "\n".join("".join(str(b) for b in row) for row in sample.bits)
    return f"{sample.k}\n{rows}"


def render_condition(p: Condition) -> str:
    return ",".join(f"({m},{n})={b}" for (m, n), b in p.assignments)


_CONDITION_CELL = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*=\s*([01])")


def parse_condition(text: str) -> Condition:
    """Parse the CLI literal syntax ``(m,n)=b`` comma-separated."""
    text = text.strip()
    if not text:
        return Condition.empty()
    items = []
    pat = _CONDITION_CELL
    pos = 0
    while pos < len(text):
        m = pat.match(text, pos)
        if not m:
            raise ParseError(f"bad condition literal near {text[pos:pos + 12]!r}", position=pos)
        items.append(((int(m.group(1)), int(m.group(2))), int(m.group(3))))
        pos = m.end()
        if pos < len(text):
            if text[pos] != ",":
                raise ParseError("expected ',' between condition cells", position=pos)
            pos += 1
    return Condition(tuple(items))


# ------------------------------------------------------- grid relations

def total_grid_relations(k: int) -> list[frozenset[tuple[int, int]]]:
    """All row-total subsets of the k x k grid, by brute force over all graphs."""
    cells = [(m, n) for m in range(k) for n in range(k)]
    out = []
    for mask in range(1 << len(cells)):
        rel = frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
        if all(any((m, n) in rel for n in range(k)) for m in range(k)):
            out.append(rel)
    return out


def all_conditions(k: int, max_size: int | None = None):
    """Every condition on the grid, optionally capped by domain size."""
    cells = [(m, n) for m in range(k) for n in range(k)]
    for choice in _ternary(cells):
        cond = Condition(tuple(choice))
        if max_size is None or len(cond) <= max_size:
            yield cond


def _ternary(cells):
    if not cells:
        yield ()
        return
    head, rest = cells[0], cells[1:]
    for tail in _ternary(rest):
        yield tail
        yield ((head, 0),) + tail
        yield ((head, 1),) + tail


# ------------------------------------------------- Kripke-side bridge

def pair_id_table(u: Universe, k: int) -> dict[tuple[int, int], int]:
    """Internal ordered-pair ids for every cell of the k x k grid."""
    nums = [u.numeral(i) for i in range(k)]
    return {(m, n): kuratowski(u, nums[m], nums[n]) for m in range(k) for n in range(k)}


def build_generic_term(u: Universe, sample: GenericSample, lam: int) -> int:
    """The generic relation as a Kripke set.

    Strictly below the switch node the extent holds the sample's internal
    pairs; from the switch node on it is the full grid relation, which keeps
    the extent monotone and totality forced everywhere.
    """
    u.check_node(lam)
    table = pair_id_table(u, sample.k)
    sample_ids = frozenset(table[c] for c in sample.pairs())
    full_ids = frozenset(table.values())
    ext = {
        node: (full_ids if u.poset.leq(lam, node) else sample_ids)
        for node in u.poset.nodes
    }
    return u.insert(ext)


def decode_relation(u: Universe, rel_id: int, node: int, k: int) -> frozenset[tuple[int, int]]:
    """Grid cells of a relation's extent at a node, via the pair id table."""
    table = pair_id_table(u, k)
    reverse = {pid: cell for cell, pid in table.items()}
    cells = set()
    for mid in u.extent_at(rel_id, node):
        if mid not in reverse:
            raise ParseError(f"id {mid} at node {node} is not an internal grid pair")
        cells.add(reverse[mid])
    return frozenset(cells)


def check_no_total_subrelation(u: Universe, sample: GenericSample, lam: int,
                               candidates, max_condition_size: int | None = None) -> CheckReport:
    """Density of the conditions killing each candidate as a subrelation.

    Decodes the candidates on the grid, then from every condition that still
    has an undecided candidate cell runs the killing extension and verifies
    it: the extension refines the condition, zeroes a candidate cell, and no
    total bit map refining it contains the candidate. Which candidates happen
    to sit inside the concrete sample is reported as information; a single
    sample is not generic, the density family is the content.
    """
    k = sample.k
    if max_condition_size is None and k > 2:
        max_condition_size = 4
    decoded = []
    seen = set()
    bottom = u.poset.nodes[0]
    for rid in candidates:
        cells = decode_relation(u, rid, bottom, k)
        if cells not in seen:
            seen.add(cells)
            decoded.append((rid, cells))
    params = {
        "grid": k,
        "candidates": len(candidates),
        "distinct_decoded": len(decoded),
        "switch_node": lam,
        "contained_in_sample": sorted(
            rid for rid, cells in decoded if cells <= sample.pairs()
        ),
    }
    conditions = list(all_conditions(k, max_condition_size))
    params["conditions"] = len(conditions)
    verified = 0
    for rid, cells in decoded:
        for p in conditions:
            if not (cells - p.domain()):
                continue
            q = density_kill_subrelation(p, cells)
            zeroed = [c for c, b in q.assignments if b == 0 and c in cells]
            ok = extends(q, p) and len(q) == len(p) + 1 and zeroed
            if ok:
                open_cells = [c for c in ((m, n) for m in range(k) for n in range(k))
                              if c not in q.domain()]
                qd = q.as_dict()
                for mask in range(1 << len(open_cells)):
                    filled = dict(qd)
                    for i, c in enumerate(open_cells):
                        filled[c] = mask >> i & 1
                    total = frozenset(c for c, b in filled.items() if b)
                    if cells <= total:
                        ok = False
                        break
            if not ok:
                witness = {
                    "relation": rid,
                    "cells": sorted(map(list, cells)),
                    "condition": render_condition(p),
                    "extension": render_condition(q),
                }
                return CheckReport("forcing-density", FAIL, params, witness)
            verified += 1
    params["verified_extensions"] = verified
    return CheckReport("forcing-density", PASS, params)


def check_function_rigidity(u: Universe, a: int, b: int, f: int, g: int,
                            node: int) -> CheckReport:
    """Forced subfunction implies forced equality, for one pair of relations.

    Pairs where either side is not forced a total function at the node are
    out of scope and reported vacuous.
    """
    from .axiomlab import is_function_forced
    from .report import VACUOUS

    params = {"a": a, "b": b, "f": f, "g": g, "node": node}
    if not (is_function_forced(u, node, f, a, b) and is_function_forced(u, node, g, a, b)):
        return CheckReport("function-rigidity", VACUOUS, params,
                           {"detail": "not a pair of forced total functions"})
    sub = subrelation_formula(fm.Param(f), fm.Param(g))
    if not forces(u, (), node, sub):
        return CheckReport("function-rigidity", PASS, params)
    if eq_forced(u, node, f, g):
        return CheckReport("function-rigidity", PASS, params)
    witness = {"node": node, "ids": [f, g], "formula": fm.render(sub)}
    return CheckReport("function-rigidity", FAIL, params, witness)
