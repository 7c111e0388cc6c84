"""Named verification suites wired together for the command line."""

from __future__ import annotations

import random

from . import formula as fm
from .axiomlab import (
    build_strcoll,
    check_equality_axioms,
    check_extensionality,
    check_fullness,
    check_sep_axiom,
    count_distinct_subsets_of_one,
    decide_em_pair,
    enumerate_relations,
    enumerate_total_relations,
    find_em_counterexample,
)
from .forcing import (
    build_generic_term,
    check_function_rigidity,
    check_no_total_subrelation,
    render_sample,
    sample_generic,
    total_grid_relations,
)
from .axiomlab import is_function_forced, totality_forced
from .poset import make_chain
from .report import FAIL, PASS, VACUOUS, CheckReport
from .semantics import eq_forced, forces, forces_restricted, pre_psi_nodes
from .universe import Universe, build_universe

CORPUS_SIZE = 200
CORPUS_DEPTH = 4


def _universe(cfg) -> Universe:
    return build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget)


def _corpus_env(pool):
    pool = tuple(pool)
    return {
        "x": pool[0],
        "y": pool[min(1, len(pool) - 1)],
        "z": pool[-1],
        "v": pool[0],
    }


def suite_equality(cfg, u: Universe) -> list[CheckReport]:
    return check_equality_axioms(u, u.enumerated_ids())


def suite_extensionality(cfg, u: Universe) -> list[CheckReport]:
    return [check_extensionality(u, u.enumerated_ids())]


def _separation_corpus(u: Universe):
    zero = u.numeral(0)
    one = u.numeral(1)
    two = u.numeral(2)
    p0, p1 = fm.Param(zero), fm.Param(one)
    x = fm.Var("x")
    return two, [
        fm.Mem(p0, x),
        fm.Mem(x, p1),
        fm.Eq(x, x),
        fm.Eq(x, p0),
        fm.Bottom(),
        fm.neg(fm.Mem(x, x)),
        fm.And(fm.Mem(p0, x), fm.Mem(x, fm.Param(two))),
        fm.Or(fm.Eq(x, p0), fm.Eq(x, p1)),
        fm.Imp(fm.Mem(p0, x), fm.Mem(x, fm.Param(two))),
        fm.BForAll("q", x, fm.Mem(fm.Var("q"), p1)),
        fm.BExists("q", x, fm.Eq(fm.Var("q"), p0)),
    ]


def suite_separation(cfg, u: Universe) -> list[CheckReport]:
    pool = u.enumerated_ids()
    a, phis = _separation_corpus(u)
    reports = []
    for i, phi in enumerate(phis):
        rep = check_sep_axiom(u, pool, a, phi)
        rep.name = f"separation-{i:02d}"
        reports.append(rep)

    # Negative control: a deliberately corrupted separation set must fail.
    from .axiomlab import build_sep

    phi = fm.Mem(fm.Param(u.numeral(0)), fm.Var("x"))
    good = build_sep(u, a, phi)
    corrupted = {}
    for node in u.poset.nodes:
        members = u.extent_at(good, node)
        corrupted[node] = frozenset(sorted(members)[1:]) if members else members
    bad = u.insert(corrupted)
    inner = check_sep_axiom(u, pool, a, phi, sep=bad)
    status = PASS if inner.status == FAIL else FAIL
    reports.append(CheckReport("separation-negative-control", status,
                               inner.params, inner.witness))
    return reports


def suite_fullness(cfg, u: Universe) -> list[CheckReport]:
    reports = []
    for n in (1, 2):
        a = u.numeral(n)
        rels = enumerate_relations(u, a, a)
        rep = check_fullness(u, a, a, relations=rels)
        rep.name = f"fullness-a{n}-b{n}"
        reports.append(rep)
        if u.poset.size == 1:
            forced_total = [r for r in rels
                            if totality_forced(u, u.poset.nodes[0], r, a, a)]
            oracle = len(total_grid_relations(n))
            status = PASS if len(forced_total) == oracle else FAIL
            reports.append(CheckReport(
                f"fullness-count-oracle-{n}", status,
                {"enumerated": len(forced_total), "grid_oracle": oracle},
            ))
    return reports


def suite_strcoll(cfg, u: Universe) -> list[CheckReport]:
    pool = u.enumerated_ids()
    reports = []
    two = u.numeral(2)
    phi = fm.Mem(fm.Var("x"), fm.Var("y"))
    sid, rep = build_strcoll(u, pool, two, phi)
    rep.name = "strcoll-membership"
    reports.append(rep)

    zero = u.numeral(0)
    sid, rep = build_strcoll(u, pool, zero, phi)
    rep.name = "strcoll-empty-domain"
    reports.append(rep)

    sid, rep = build_strcoll(u, pool, two, fm.Bottom())
    status = PASS if (sid is None and rep.status == FAIL) else FAIL
    reports.append(CheckReport("strcoll-unwitnessed-premise", status, rep.params, rep.witness))
    return reports


def _transfer_check(u, pool, mu, corpus, env) -> list[CheckReport]:
    psi = fm.Mem(fm.Param(u.numeral(0)), fm.Param(u.one_kappa(mu)))
    kept = pre_psi_nodes(u, pool, psi)
    outside = [n for n in u.poset.nodes if n not in kept]
    transfer = CheckReport(f"star-transfer-mu{mu}", PASS,
                           {"psi": fm.render(psi), "pre_psi": sorted(kept),
                            "corpus": len(corpus)})
    for phi in corpus:
        starred = fm.star_transform(phi, psi)
        for node in sorted(kept):
            full = forces(u, pool, node, starred, env)
            cut = forces_restricted(u, pool, kept, node, phi, env)
            if full != cut:
                transfer.status = FAIL
                transfer.witness = {
                    "node": node,
                    "formula": fm.render(phi),
                    "psi": fm.render(psi),
                    "full_model": full,
                    "restricted": cut,
                }
                return [transfer]
    absorption = CheckReport(f"star-absorption-mu{mu}", PASS,
                             {"psi": fm.render(psi), "nodes": outside})
    if not outside:
        absorption.status = VACUOUS
    for phi in corpus:
        starred = fm.star_transform(phi, psi)
        for node in outside:
            if not forces(u, pool, node, starred, env):
                absorption.status = FAIL
                absorption.witness = {"node": node, "formula": fm.render(starred)}
                return [transfer, absorption]
    return [transfer, absorption]


def suite_star_lemma(cfg, u: Universe) -> list[CheckReport]:
    pool = u.enumerated_ids()
    rng = random.Random(cfg.seed)
    corpus = fm.corpus(rng, CORPUS_SIZE, CORPUS_DEPTH, ("x", "y", "z"), pool)
    env = _corpus_env(pool)
    reports = []
    for mu in u.poset.nodes[1:]:
        reports.extend(_transfer_check(u, pool, mu, corpus, env))
    if not reports:
        reports.append(CheckReport("star-transfer", VACUOUS,
                                   {"detail": "chain too short for a proper restriction"}))
    return reports


def suite_powerset_growth(cfg, u: Universe) -> list[CheckReport]:
    reports = []
    for n in (1, 2, 3, 4):
        un = build_universe(make_chain(n), 2, cfg.budget)
        bottom = un.poset.nodes[0]
        count, reps = count_distinct_subsets_of_one(un, bottom)
        # Independent confirmation: pairwise forced equality recomputed from
        # a cold cache, greedy class count.
        fresh: dict = {}
        classes: list[int] = []
        cands = [un.numeral(0)] + [un.one_kappa(k) for k in un.poset.nodes]
        cands = list(dict.fromkeys(cands))
        for c in cands:
            if not any(eq_forced(un, bottom, c, r, memo=fresh) for r in classes):
                classes.append(c)
        ok = count == n + 1 and len(classes) == n + 1
        reports.append(CheckReport(
            f"powerset-growth-n{n}", PASS if ok else FAIL,
            {"chain": n, "count": count, "oracle": len(classes), "expected": n + 1},
            None if ok else {"ids": reps},
        ))
    u3 = build_universe(make_chain(3), 2, cfg.budget)
    top = u3.poset.nodes[-1]
    count, reps = count_distinct_subsets_of_one(u3, top)
    reports.append(CheckReport(
        "powerset-growth-top-collapse", PASS if count == 2 else FAIL,
        {"chain": 3, "node": top, "count": count, "expected": 2},
        None if count == 2 else {"ids": reps},
    ))
    return reports


def suite_em(cfg, u: Universe) -> list[CheckReport]:
    pool = u.enumerated_ids()
    bottom = u.poset.nodes[0]
    top = u.poset.nodes[-1]
    reports = []
    rep = find_em_counterexample(u, pool, bottom)
    rep.name = "em-undecided-bottom"
    reports.append(rep)

    inner = find_em_counterexample(u, pool, top)
    if u.poset.size == 1:
        status, witness = VACUOUS, None
    else:
        status = PASS if inner.witness is None or "ids" not in inner.witness else FAIL
        witness = inner.witness if status == FAIL else None
    reports.append(CheckReport("em-top-classical", status, {"node": top}, witness))

    if u.poset.size >= 3:
        x, y = u.one_kappa(u.poset.nodes[1]), u.one_kappa(u.poset.nodes[2])
        verdict = decide_em_pair(u, bottom, x, y)
        reports.append(CheckReport(
            "em-named-pair", PASS if verdict == "undecided" else FAIL,
            {"ids": [x, y], "verdict": verdict},
        ))
    return reports


def suite_forcing_density(cfg, u: Universe) -> list[CheckReport]:
    k = cfg.grid
    reports = []
    sample = sample_generic(cfg.seed, k)
    again = sample_generic(cfg.seed, k)
    reports.append(CheckReport(
        "density-sample-deterministic", PASS if sample == again else FAIL,
        {"seed": cfg.seed, "grid": k, "sample": render_sample(sample)},
    ))

    kn = u.numeral(k)
    candidates = enumerate_total_relations(u, kn, kn)
    lam = u.poset.nodes[-1]
    term = build_generic_term(u, sample, lam)
    total_everywhere = all(totality_forced(u, n, term, kn, kn) for n in u.poset.nodes)
    reports.append(CheckReport(
        "density-generic-term-total", PASS if total_everywhere else FAIL,
        {"term": term, "switch_node": lam},
    ))

    rep = check_no_total_subrelation(u, sample, lam, candidates)
    rep.name = "density-kill-exhaustive"
    reports.append(rep)
    return reports


def suite_rigidity(cfg, u: Universe) -> list[CheckReport]:
    a = u.numeral(2)
    rels = enumerate_relations(u, a, a)
    checked = 0
    applicable = 0
    for node in u.poset.nodes:
        funcs = [r for r in rels if is_function_forced(u, node, r, a, a)]
        for f in funcs:
            for g in funcs:
                rep = check_function_rigidity(u, a, a, f, g, node)
                checked += 1
                if rep.status == FAIL:
                    rep.name = "rigidity-subfunction-equality"
                    return [rep]
                if rep.status == PASS:
                    applicable += 1
    return [CheckReport(
        "rigidity-subfunction-equality", PASS,
        {"pairs_checked": checked, "applicable": applicable, "relations": len(rels)},
    )]


SUITES = {
    "equality": suite_equality,
    "extensionality": suite_extensionality,
    "separation": suite_separation,
    "fullness": suite_fullness,
    "strcoll": suite_strcoll,
    "star-lemma": suite_star_lemma,
    "powerset-growth": suite_powerset_growth,
    "em": suite_em,
    "forcing-density": suite_forcing_density,
    "rigidity": suite_rigidity,
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite_checks(name: str, cfg) -> tuple[Universe, list[CheckReport]]:
    u = _universe(cfg)
    if name == "all":
        reports = []
        for key in SUITES:
            reports.extend(SUITES[key](cfg, u))
    else:
        reports = SUITES[name](cfg, u)
    reports.sort(key=lambda r: r.name)
    return u, reports
