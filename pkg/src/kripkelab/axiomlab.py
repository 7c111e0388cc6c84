"""Constructions and checkers for the set-theoretic axiom suites.

Builders produce witness sets (pairs, unions, separation/collection sets,
the total-relation pool) as ordinary universe entries; checkers replay the
defining biconditionals through the satisfaction evaluator and return
structured reports. Internal formulas use variable names prefixed with an
underscore; caller-supplied terms must avoid that prefix.
"""

from __future__ import annotations

from itertools import product

from . import formula as fm
from .errors import ArityError, BudgetError, StructureError
from .report import FAIL, PASS, VACUOUS, CheckReport
from .semantics import _eq, _forces, _mem, decide_em_pair, eq_forced, forces, mem_forced
from .universe import Universe

_PAIR_INTERNAL = {"_s", "_t", "_c", "_m"}


# ------------------------------------------------------------- builders

def constant_extent(u: Universe, members) -> dict:
    ms = frozenset(members)
    return {node: ms for node in u.poset.nodes}


def build_pair(u: Universe, a: int, b: int) -> int:
    """The unordered pair {a, b} with constant extent."""
    u.check_id(a)
    u.check_id(b)
    return u.insert(constant_extent(u, (a, b)))


def kuratowski(u: Universe, a: int, b: int) -> int:
    """The ordered pair {{a}, {a, b}}."""
    return build_pair(u, build_pair(u, a, a), build_pair(u, a, b))


def build_union(u: Universe, a: int) -> int:
    """Union of a set: at each node, the union of the members' extents there."""
    u.check_id(a)
    ext = {}
    for node in u.poset.nodes:
        out = set()
        for mid in u.extent_at(a, node):
            out |= u.extent_at(mid, node)
        ext[node] = frozenset(out)
    return u.insert(ext)


def _check_designated(phi, designated, env):
    bound = set(env or {}) | set(designated)
    stray = fm.free_vars(phi) - bound
    if stray:
        raise ArityError(f"formula has unexpected free variables: {sorted(stray)}")


def build_sep(u: Universe, a: int, phi, var: str = "x", env=None, pool=None) -> int:
    """Separation set: at each node, the members of ``a`` there that satisfy phi."""
    u.check_id(a)
    _check_designated(phi, {var}, env)
    pool = u.enumerated_ids() if pool is None else tuple(pool)
    env = dict(env or {})
    ext = {}
    for node in u.poset.nodes:
        kept = set()
        for x in u.extent_at(a, node):
            env[var] = x
            if forces(u, pool, node, phi, env):
                kept.add(x)
        ext[node] = frozenset(kept)
    return u.insert(ext)


def check_sep_axiom(u: Universe, pool, a: int, phi, var: str = "x",
                    env=None, sep: int | None = None) -> CheckReport:
    """Replay the separation biconditional for every pool element at every node.

    ``sep`` defaults to the set built here; passing a corrupted id turns the
    check into a negative control.
    """
    pool = tuple(pool)
    if sep is None:
        sep = build_sep(u, a, phi, var, env, pool)
    lhs = fm.Mem(fm.Var(var), fm.Param(sep))
    rhs = fm.And(fm.Mem(fm.Var(var), fm.Param(a)), phi)
    bic = fm.iff(lhs, rhs)
    env = dict(env or {})
    params = {"a": a, "sep": sep, "formula": fm.render(phi), "pool_size": len(pool)}
    for node in u.poset.nodes:
        for x in pool:
            env[var] = x
            if not forces(u, pool, node, bic, env):
                witness = {
                    "node": node,
                    "bindings": {var: x},
                    "formula": fm.render(bic),
                }
                return CheckReport("separation", FAIL, params, witness)
    return CheckReport("separation", PASS, params)


# ------------------------------------------ relations as Kripke sets

def pair_matches(w, x, y):
    """Delta0 formula: ``w`` is the ordered pair of ``x`` and ``y``.

    Spelled out through the two-level set encoding: some member of w is
    {x}, some member is {x, y}, and every member is one of the two.
    """
    for t in (w, x, y):
        if isinstance(t, fm.Var) and t.name in _PAIR_INTERNAL:
            raise ArityError(f"term name {t.name!r} collides with internal variables")

    def sing(c):
        return fm.And(fm.Mem(x, c), fm.BForAll("_m", c, fm.Eq(fm.Var("_m"), x)))

    def doub(c):
        return fm.And(
            fm.And(fm.Mem(x, c), fm.Mem(y, c)),
            fm.BForAll("_m", c, fm.Or(fm.Eq(fm.Var("_m"), x), fm.Eq(fm.Var("_m"), y))),
        )

    return fm.And(
        fm.And(fm.BExists("_s", w, sing(fm.Var("_s"))), fm.BExists("_t", w, doub(fm.Var("_t")))),
        fm.BForAll("_c", w, fm.Or(sing(fm.Var("_c")), doub(fm.Var("_c")))),
    )


def total_relation_formula(r, a, b):
    """Delta0: every member of ``a`` is paired with some member of ``b`` in ``r``."""
    return fm.BForAll(
        "_x", a,
        fm.BExists("_y", b, fm.BExists("_w", r, pair_matches(fm.Var("_w"), fm.Var("_x"), fm.Var("_y")))),
    )


def subrelation_formula(small, big):
    return fm.BForAll("_w", small, fm.Mem(fm.Var("_w"), big))


def is_function_formula(r, a, b):
    """Delta0: ``r`` is a total, single-valued relation of pairs from a x b."""
    relness = fm.BForAll(
        "_w", r,
        fm.BExists("_x", a, fm.BExists("_y", b, pair_matches(fm.Var("_w"), fm.Var("_x"), fm.Var("_y")))),
    )
    single = fm.BForAll(
        "_w", r,
        fm.BForAll(
            "_v", r,
            fm.BForAll(
                "_x", a,
                fm.BForAll(
                    "_y", b,
                    fm.BForAll(
                        "_z", b,
                        fm.Imp(
                            fm.And(
                                pair_matches(fm.Var("_w"), fm.Var("_x"), fm.Var("_y")),
                                pair_matches(fm.Var("_v"), fm.Var("_x"), fm.Var("_z")),
                            ),
                            fm.Eq(fm.Var("_y"), fm.Var("_z")),
                        ),
                    ),
                ),
            ),
        ),
    )
    return fm.And(fm.And(relness, total_relation_formula(r, a, b)), single)


def _pair_forced(u, node, w, x, y) -> bool:
    # Verdicts of pair_matches recur across every relation scan; cache them.
    key = ("pairm", node, w, x, y)
    hit = u.memo.get(key)
    if hit is None:
        phi = pair_matches(fm.Param(w), fm.Param(x), fm.Param(y))
        hit = _forces(u, (), node, phi, {}, None)
        u.memo[key] = hit
    return hit


def totality_forced(u: Universe, node: int, r: int, a: int, b: int) -> bool:
    return forces(u, (), node, total_relation_formula(fm.Param(r), fm.Param(a), fm.Param(b)))


def is_function_forced(u: Universe, node: int, r: int, a: int, b: int) -> bool:
    """Function-hood of ``r`` at a node, equivalent to is_function_formula.

    Unfolds the bounded quantifiers directly over extents with cached pair
    verdicts; the formula route is quadratic in the relation size per node
    and too slow for whole-pool scans.
    """
    if not totality_forced(u, node, r, a, b):
        return False
    memo = u.memo
    for later in u.poset.upset_sorted(node):
        ws = u.extent_at(r, later)
        xs = u.extent_at(a, later)
        ys = u.extent_at(b, later)
        decoded = {}
        for w in ws:
            hits = [(x, y) for x in xs for y in ys if _pair_forced(u, later, w, x, y)]
            if not hits:
                return False
            decoded[w] = hits
        for w in ws:
            for v in ws:
                for x1, y1 in decoded[w]:
                    for x2, y2 in decoded[v]:
                        if x1 == x2 and not _eq(u, later, y1, y2, memo):
                            return False
    return True


def enumerate_relations(u: Universe, a: int, b: int) -> list[int]:
    """All monotone relations of ordered pairs from a x b, total or not.

    Requires constant extents on ``a`` and ``b`` so the pair grid is the
    same at every node. A monotone relation assigns each grid pair the
    up-closed node region where it is present.
    """
    u.check_id(a)
    u.check_id(b)
    nodes = u.poset.nodes
    ext_a = [u.extent_at(a, n) for n in nodes]
    ext_b = [u.extent_at(b, n) for n in nodes]
    if any(e != ext_a[0] for e in ext_a) or any(e != ext_b[0] for e in ext_b):
        raise StructureError("relation enumeration needs constant-extent endpoints")
    xs = sorted(ext_a[0])
    ys = sorted(ext_b[0])
    pair_ids = [kuratowski(u, x, y) for x in xs for y in ys]
    filters = u.poset.upclosed_sets()
    count = len(filters) ** len(pair_ids)
    if count + len(u) > u.budget:
        raise BudgetError(
            f"enumerating {count} relations would exceed the budget of {u.budget}"
        )
    out = []
    for assignment in product(filters, repeat=len(pair_ids)):
        ext = {
            node: frozenset(pid for pid, flt in zip(pair_ids, assignment) if node in flt)
            for node in nodes
        }
        out.append(u.insert(ext))
    return out


def enumerate_total_relations(u: Universe, a: int, b: int) -> list[int]:
    """The monotone relations forced total at every node."""
    return [
        r for r in enumerate_relations(u, a, b)
        if all(totality_forced(u, n, r, a, b) for n in u.poset.nodes)
    ]


def build_subcoll(u: Universe, a: int, b: int, relations=None) -> int:
    """At each node, the enumerated relations forced total there."""
    rels = enumerate_relations(u, a, b) if relations is None else list(relations)
    ext = {
        node: frozenset(r for r in rels if totality_forced(u, node, r, a, b))
        for node in u.poset.nodes
    }
    return u.insert(ext)


def check_fullness(u: Universe, a: int, b: int, subcoll: int | None = None,
                   relations=None) -> CheckReport:
    """Every relation total at a node thins to a forced-total member of SubColl."""
    rels = enumerate_relations(u, a, b) if relations is None else list(relations)
    if subcoll is None:
        subcoll = build_subcoll(u, a, b, rels)
    total_at = {}
    for node in u.poset.nodes:
        total_at[node] = [r for r in rels if totality_forced(u, node, r, a, b)]
    params = {
        "a": a,
        "b": b,
        "subcoll": subcoll,
        "relations": len(rels),
        "total_per_node": {str(n): len(total_at[n]) for n in u.poset.nodes},
    }
    for node in u.poset.nodes:
        for x in total_at[node]:
            found = None
            candidates = sorted(u.extent_at(subcoll, node), key=lambda z: (z != x, z))
            for z in candidates:
                if not mem_forced(u, node, z, subcoll):
                    continue
                sub = subrelation_formula(fm.Param(z), fm.Param(x))
                if forces(u, (), node, sub) and totality_forced(u, node, z, a, b):
                    found = z
                    break
            if found is None:
                witness = {"node": node, "relation": x, "subcoll": subcoll}
                return CheckReport("fullness", FAIL, params, witness)
    return CheckReport("fullness", PASS, params)


def build_strcoll(u: Universe, pool, a: int, phi, xvar: str = "x", yvar: str = "y",
                  env=None) -> tuple[int | None, CheckReport]:
    """Strong-collection bounding set for a binary formula over ``a``.

    The premise (everything in ``a`` relates to some pool witness, forced at
    every minimal node) is checked first; when it fails the result is a
    failure report rather than an exception. Otherwise the set collects, at
    each node, all pool witnesses related to some current member of ``a``,
    and both bounding conditions are replayed.
    """
    u.check_id(a)
    _check_designated(phi, {xvar, yvar}, env)
    pool = tuple(pool)
    env = dict(env or {})
    premise = fm.BForAll(xvar, fm.Param(a), fm.Exists(yvar, phi))
    params = {"a": a, "formula": fm.render(phi), "pool_size": len(pool)}
    minimal = [n for n in u.poset.nodes
               if not any(m != n and u.poset.leq(m, n) for m in u.poset.nodes)]
    for node in minimal:
        if not forces(u, pool, node, premise, env):
            witness = {"node": node, "formula": fm.render(premise)}
            return None, CheckReport("strcoll-premise", FAIL, params, witness)
    ext = {}
    for node in u.poset.nodes:
        members = u.extent_at(a, node)
        kept = set()
        for y in pool:
            env[yvar] = y
            hit = False
            for x in members:
                env[xvar] = x
                if forces(u, pool, node, phi, env):
                    hit = True
                    break
            if hit:
                kept.add(y)
        ext[node] = frozenset(kept)
    env.pop(xvar, None)
    env.pop(yvar, None)
    sid = u.insert(ext)
    params["strcoll"] = sid
    for node in u.poset.nodes:
        members = u.extent_at(a, node)
        collected = u.extent_at(sid, node)
        for x in members:
            env[xvar] = x
            ok = False
            for y in collected:
                env[yvar] = y
                if forces(u, pool, node, phi, env):
                    ok = True
                    break
            if not ok:
                witness = {"node": node, "bindings": {xvar: x}, "detail": "no collected witness"}
                return sid, CheckReport("strcoll", FAIL, params, witness)
        for y in collected:
            env[yvar] = y
            ok = False
            for x in members:
                env[xvar] = x
                if forces(u, pool, node, phi, env):
                    ok = True
                    break
            if not ok:
                witness = {"node": node, "bindings": {yvar: y}, "detail": "collected junk"}
                return sid, CheckReport("strcoll", FAIL, params, witness)
    return sid, CheckReport("strcoll", PASS, params)


# ------------------------------------------------ powerset growth

def count_distinct_subsets_of_one(u: Universe, node: int) -> tuple[int, list[int]]:
    """Pairwise non-forced-equal subsets of 1 among the empty set and step sets.

    Every candidate must be forced a subset of 1 at the node; the count at
    the bottom of an n-chain comes out n+1, growing without bound in the
    chain length even though all candidates sit inside the two-element set.
    """
    u.check_node(node)
    one = u.numeral(1)
    seen = []
    for c in [u.numeral(0)] + [u.one_kappa(k) for k in u.poset.nodes]:
        if c not in seen:
            seen.append(c)
    subset_one = fm.BForAll("_z", fm.Var("c"), fm.Mem(fm.Var("_z"), fm.Param(one)))
    for c in seen:
        if not forces(u, (), node, subset_one, {"c": c}):
            raise StructureError(f"candidate {c} is not forced a subset of 1 at node {node}")
    reps: list[int] = []
    for c in seen:
        if not any(eq_forced(u, node, c, r) for r in reps):
            reps.append(c)
    return len(reps), reps


# ------------------------------------------------- axiom checkers

def check_extensionality(u: Universe, pool, spot_checks: int = 48) -> CheckReport:
    """Forced equality against the membership biconditional, exhaustively.

    The right-hand side unfolds clause by clause to: at every node from here
    on, every pool element is a forced member of one set exactly when it is
    of the other. That unfolded form is evaluated through per-node membership
    signatures so whole-table scans stay tractable; a deterministic sample of
    cells (and any failing cell) is re-verified through the plain evaluator.
    """
    pool = tuple(pool)
    nodes = u.poset.nodes
    memo = u.memo
    sig = {}
    for n in nodes:
        for f in pool:
            sig[(n, f)] = bytes(bytearray(1 if _mem(u, n, z, f, memo) else 0 for z in pool))

    def rhs(node, f, g):
        return all(sig[(m, f)] == sig[(m, g)] for m in u.poset.upset_sorted(node))

    def rhs_formula(f, g):
        zf = fm.Mem(fm.Var("_z"), fm.Param(f))
        zg = fm.Mem(fm.Var("_z"), fm.Param(g))
        return fm.ForAll("_z", fm.iff(zf, zg))

    params = {"pool_size": len(pool), "nodes": len(nodes)}
    stride = max(1, (len(pool) * len(pool)) // max(spot_checks, 1))
    checked = 0
    for n in nodes:
        for i, f in enumerate(pool):
            for j, g in enumerate(pool):
                left = _eq(u, n, f, g, memo)
                right = rhs(n, f, g)
                cell = i * len(pool) + j
                if cell % stride == 0:
                    direct = forces(u, pool, n, rhs_formula(f, g))
                    if direct != right:
                        witness = {"node": n, "ids": [f, g], "detail": "signature/evaluator mismatch"}
                        return CheckReport("extensionality", FAIL, params, witness)
                    checked += 1
                if left != right:
                    direct = forces(u, pool, n, rhs_formula(f, g))
                    witness = {
                        "node": n,
                        "ids": [f, g],
                        "formula": fm.render(rhs_formula(f, g)),
                        "eq_forced": left,
                        "membership_side": direct,
                    }
                    return CheckReport("extensionality", FAIL, params, witness)
    params["spot_checked"] = checked
    return CheckReport("extensionality", PASS, params)


def check_equality_axioms(u: Universe, pool) -> list[CheckReport]:
    """The five equality laws, exhaustively over the pool at every node.

    Reflexivity, symmetry, transitivity, and the two membership-respect laws
    (left and right argument). Quantified combinations are folded through
    per-element bitmasks so triple loops only walk forced-equal pairs.
    """
    pool = tuple(pool)
    n_pool = len(pool)
    memo = u.memo
    params = {"pool_size": n_pool, "nodes": len(u.poset.nodes)}
    failures: dict[str, dict] = {}

    for node in u.poset.nodes:
        eqm = [[_eq(u, node, f, g, memo) for g in pool] for f in pool]
        memm = [[_mem(u, node, f, g, memo) for g in pool] for f in pool]
        eq_mask = []
        mem_row = []
        mem_col = []
        for i in range(n_pool):
            em = rm = 0
            for j in range(n_pool):
                if eqm[i][j]:
                    em |= 1 << j
                if memm[i][j]:
                    rm |= 1 << j
            eq_mask.append(em)
            mem_row.append(rm)
        for j in range(n_pool):
            cm = 0
            for i in range(n_pool):
                if memm[i][j]:
                    cm |= 1 << i
            mem_col.append(cm)

        for i in range(n_pool):
            if "reflexivity" not in failures and not eqm[i][i]:
                failures["reflexivity"] = {"node": node, "ids": [pool[i]]}
            for j in range(n_pool):
                if not eqm[i][j]:
                    continue
                if "symmetry" not in failures and not eqm[j][i]:
                    failures["symmetry"] = {"node": node, "ids": [pool[i], pool[j]]}
                if "transitivity" not in failures and eq_mask[j] & ~eq_mask[i]:
                    k = (eq_mask[j] & ~eq_mask[i]).bit_length() - 1
                    failures["transitivity"] = {"node": node, "ids": [pool[i], pool[j], pool[k]]}
                if "membership-right" not in failures and mem_row[i] & ~mem_row[j]:
                    k = (mem_row[i] & ~mem_row[j]).bit_length() - 1
                    failures["membership-right"] = {"node": node, "ids": [pool[i], pool[j], pool[k]]}
                if "membership-left" not in failures and mem_col[i] & ~mem_col[j]:
                    k = (mem_col[i] & ~mem_col[j]).bit_length() - 1
                    failures["membership-left"] = {"node": node, "ids": [pool[i], pool[j], pool[k]]}

    names = ("reflexivity", "symmetry", "transitivity", "membership-right", "membership-left")
    return [
        CheckReport(
            f"equality-{name}",
            FAIL if name in failures else PASS,
            dict(params),
            failures.get(name),
        )
        for name in names
    ]


def find_em_counterexample(u: Universe, pool, node: int) -> CheckReport:
    """Search the pool for a pair undecided between equality and inequality.

    A hit is double-checked through the evaluator: neither the disjunction
    nor its negation may be forced at the node. With no hit the check is
    vacuous, except at the bottom of a chain long enough that a witness is
    guaranteed, where absence is a failure.
    """
    pool = tuple(pool)
    params = {"node": node, "pool_size": len(pool)}
    for i, x in enumerate(pool):
        for y in pool[i + 1:]:
            if decide_em_pair(u, node, x, y) != "undecided":
                continue
            em = fm.Or(fm.Eq(fm.Var("a"), fm.Var("b")), fm.neg(fm.Eq(fm.Var("a"), fm.Var("b"))))
            env = {"a": x, "b": y}
            genuinely = (not forces(u, pool, node, em, env)
                         and not forces(u, pool, node, fm.neg(em), env))
            witness = {"node": node, "ids": [x, y], "formula": fm.render(em)}
            if not genuinely:
                witness["detail"] = "decide/evaluator disagreement"
                return CheckReport("excluded-middle", FAIL, params, witness)
            return CheckReport("excluded-middle", PASS, params, witness)
    if u.poset.is_bottom(node) and u.poset.size >= 3:
        return CheckReport("excluded-middle", FAIL, params,
                           {"detail": "expected an undecided pair, found none"})
    return CheckReport("excluded-middle", VACUOUS, params)
