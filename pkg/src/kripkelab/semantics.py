"""Forced membership and equality, and intuitionistic Kripke satisfaction.

The two primitives are a mutual recursion over a universe:

  * membership is forced at a node when some member of the right-hand
    extent there is forced equal to the left-hand set;
  * equality is forced at a node when, at every node from there on, the two
    extents are mutually forced-membered.

Nodes outside the up-set of the evaluation node are disregarded, which is
what makes identity transitions sound. Termination: each step descends into
extent members, whose ranks are strictly smaller, so the combined rank of
the two arguments strictly decreases. Stratified stage relations are never
materialized; rank descent plays their role.

Satisfaction follows the standard intuitionistic clauses. Implication and
universal quantifiers range over the up-set of the node; unbounded
quantifiers range over an explicit pool of ids (a finite, auditable
approximation of quantifying over the whole model), while bounded
quantifiers draw candidates from the bound's extent plus the pool, so
bounded-only evaluation never depends on pool completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import formula as fm
from .errors import ArityError, DomainError, EmptyRestrictionError, EvalError, StructureError
from .universe import Universe


class MemoTable(dict):
    """Cache from (kind, node, left id, right id) to a forced verdict."""


# ----------------------------------------------------------- primitives

def mem_forced(u: Universe, node: int, f: int, g: int, memo=None) -> bool:
    """True when some member of g's extent at the node is forced equal to f."""
    u.check_node(node)
    u.check_id(f)
    u.check_id(g)
    return _mem(u, node, f, g, u.memo if memo is None else memo)


def eq_forced(u: Universe, node: int, f: int, g: int, memo=None) -> bool:
    """True when f and g are mutually forced-membered at every later node."""
    u.check_node(node)
    u.check_id(f)
    u.check_id(g)
    return _eq(u, node, f, g, u.memo if memo is None else memo)


def _mem(u, node, f, g, memo):
    key = ("mem", node, f, g)
    hit = memo.get(key)
    if hit is not None:
        return hit
    res = False
    for h in u.extent_at(g, node):
        if _eq(u, node, f, h, memo):
            res = True
            break
    memo[key] = res
    return res


def _eq(u, node, f, g, memo):
    key = ("eq", node, f, g)
    hit = memo.get(key)
    if hit is not None:
        return hit
    res = True
    for later in u.poset.upset_sorted(node):
        for h in u.extent_at(f, later):
            if not _mem(u, later, h, g, memo):
                res = False
                break
        if not res:
            break
        for h in u.extent_at(g, later):
            if not _mem(u, later, h, f, memo):
                res = False
                break
        if not res:
            break
    memo[key] = res
    return res


def decide_em_pair(u: Universe, node: int, x: int, y: int) -> str:
    """Classify a pair at a node: 'eq', 'neq', or 'undecided'.

    'neq' means no later node forces the equality, i.e. the inequality is
    forced; 'undecided' pairs witness the failure of excluded middle.
    """
    if eq_forced(u, node, x, y):
        return "eq"
    if all(not eq_forced(u, later, x, y) for later in u.poset.upset_sorted(node)):
        return "neq"
    return "undecided"


# ---------------------------------------------------------- satisfaction

def _term_id(u, term, env):
    if isinstance(term, fm.Var):
        try:
            return env[term.name]
        except KeyError:
            raise EvalError(f"unbound variable {term.name!r}") from None
    if isinstance(term, fm.Param):
        u.check_id(term.id)
        return term.id
    raise EvalError(f"not a term: {term!r}")


def forces(u: Universe, pool, node: int, phi, env: Mapping[str, int] | None = None) -> bool:
    """Intuitionistic satisfaction at a node, unbounded quantifiers over ``pool``."""
    u.check_node(node)
    return _forces(u, tuple(pool), node, phi, dict(env or {}), None)


def forces_restricted(u: Universe, pool, nodes, node: int, phi,
                      env: Mapping[str, int] | None = None) -> bool:
    """Satisfaction in the model cut down to a downward-closed node set.

    Implication and universal clauses range over the up-set intersected with
    the kept nodes; the atomic relations are still those of the full model.
    """
    allowed = frozenset(nodes)
    for a in allowed:
        u.check_node(a)
    if not u.poset.is_downclosed(allowed):
        raise StructureError("restricted node set is not downward-closed")
    if node not in allowed:
        raise DomainError(f"node {node} is outside the restricted node set")
    return _forces(u, tuple(pool), node, phi, dict(env or {}), allowed)


def _later_nodes(u, node, allowed):
    ups = u.poset.upset_sorted(node)
    if allowed is None:
        return ups
    return tuple(t for t in ups if t in allowed)


def _bounded_candidates(u, pool, aid, node):
    extras = u.extent_at(aid, node) - set(pool)
    return list(pool) + sorted(extras)


def _forces(u, pool, node, phi, env, allowed):
    memo = u.memo
    match phi:
        case fm.Bottom():
            return False
        case fm.Mem(left, right):
            return _mem(u, node, _term_id(u, left, env), _term_id(u, right, env), memo)
        case fm.Eq(left, right):
            return _eq(u, node, _term_id(u, left, env), _term_id(u, right, env), memo)
        case fm.And(left, right):
            return (_forces(u, pool, node, left, env, allowed)
                    and _forces(u, pool, node, right, env, allowed))
        case fm.Or(left, right):
            return (_forces(u, pool, node, left, env, allowed)
                    or _forces(u, pool, node, right, env, allowed))
        case fm.Imp(left, right):
            return all(
                not _forces(u, pool, later, left, env, allowed)
                or _forces(u, pool, later, right, env, allowed)
                for later in _later_nodes(u, node, allowed)
            )
        case fm.ForAll(var, body):
            inner = dict(env)
            for later in _later_nodes(u, node, allowed):
                for x in pool:
                    inner[var] = x
                    if not _forces(u, pool, later, body, inner, allowed):
                        return False
            return True
        case fm.Exists(var, body):
            inner = dict(env)
            for x in pool:
                inner[var] = x
                if _forces(u, pool, node, body, inner, allowed):
                    return True
            return False
        case fm.BForAll(var, bound, body):
            aid = _term_id(u, bound, env)
            inner = dict(env)
            for later in _later_nodes(u, node, allowed):
                for h in _bounded_candidates(u, pool, aid, later):
                    if _mem(u, later, h, aid, memo):
                        inner[var] = h
                        if not _forces(u, pool, later, body, inner, allowed):
                            return False
            return True
        case fm.BExists(var, bound, body):
            aid = _term_id(u, bound, env)
            inner = dict(env)
            for h in _bounded_candidates(u, pool, aid, node):
                if _mem(u, node, h, aid, memo):
                    inner[var] = h
                    if _forces(u, pool, node, body, inner, allowed):
                        return True
            return False
    raise EvalError(f"not a formula: {phi!r}")


# --------------------------------------------------- restricted models

@dataclass(frozen=True)
class StarContext:
    """A closed sentence together with the nodes where it is not yet forced."""

    psi: object
    pre_psi: frozenset[int]


def pre_psi_nodes(u: Universe, pool, psi) -> frozenset[int]:
    """Nodes where the sentence is not forced; nonempty and downward-closed.

    Forcing is monotone, so the complement is up-closed; the closure check
    here is a regression guard, not a real case.
    """
    if fm.free_vars(psi):
        raise ArityError("the restricting sentence must be closed")
    kept = frozenset(n for n in u.poset.nodes if not forces(u, pool, n, psi))
    if not kept:
        raise EmptyRestrictionError("the sentence is forced at every node")
    if not u.poset.is_downclosed(kept):
        raise StructureError("pre-sentence nodes are not downward-closed")
    return kept


def star_context(u: Universe, pool, psi) -> StarContext:
    return StarContext(psi, pre_psi_nodes(u, pool, psi))


# ------------------------------------------------------------ properties

def monotonicity_violations(u: Universe, pool, formulas, env=None) -> list[tuple]:
    """All (formula, earlier, later) with the formula forced earlier but not later."""
    bad = []
    for phi in formulas:
        verdicts = {n: forces(u, pool, n, phi, env) for n in u.poset.nodes}
        for a, b in u.poset.relation:
            if verdicts[a] and not verdicts[b]:
                bad.append((phi, a, b))
    return bad
