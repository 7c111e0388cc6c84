"""Command-line front-end: run suites, evaluate formulas, dump universes.

Exit codes: 0 when every non-vacuous check passes, 1 on check failures,
2 for usage/parsing problems, 3 when an enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import formula as fm
from .axiomlab import build_pair, build_union, kuratowski
from .errors import BudgetError, KripkelabError, ParseError
from .poset import make_chain
from .report import summarize
from .semantics import forces
from .suites import SUITE_NAMES, run_suite_checks
from .universe import Universe, build_universe, default_budget


@dataclass
class SuiteConfig:
    chain: int = 2
    rank: int = 3
    grid: int = 2
    seed: int = 0
    suite: str | None = None
    fmt: str = "text"
    budget: int | None = None
    dump: bool = False


def _add_common(parser):
    parser.add_argument("--chain", type=int, default=2, help="chain length (number of nodes)")
    parser.add_argument("--rank", type=int, default=3, help="rank cutoff for the exhaustive build")
    parser.add_argument("--grid", type=int, default=2, help="grid bound for forcing conditions")
    parser.add_argument("--seed", type=int, default=0, help="seed for corpora and samples")
    parser.add_argument("--budget", type=int, default=None,
                        help="max universe table size (default: KRIPKELAB_BUDGET or 50000)")


def _suite_parser():
    parser = argparse.ArgumentParser(
        prog="kripkelab",
        description="Finite Kripke-model verification workbench",
    )
    _add_common(parser)
    parser.add_argument("--suite", choices=SUITE_NAMES, help="verification suite to run")
    parser.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    parser.add_argument("--dump", action="store_true", help="print the universe table")
    return parser


def _eval_parser():
    parser = argparse.ArgumentParser(
        prog="kripkelab eval",
        description="Evaluate one formula at a node",
    )
    _add_common(parser)
    parser.add_argument("--node", type=int, default=0)
    parser.add_argument("--formula", required=True)
    parser.add_argument("--bind", action="append", default=[],
                        metavar="VAR=BUILDER", help="e.g. x=one_kappa(2) or y=numeral(1)")
    parser.add_argument("--trace", action="store_true",
                        help="print per-node truth of every subformula")
    return parser


# ------------------------------------------------- builder expressions

_BUILDERS = ("numeral", "one_kappa", "pair", "kuratowski", "union")


def _eval_builder(u: Universe, text: str) -> int:
    """Evaluate a nested builder expression like kuratowski(numeral(0), one_kappa(1))."""

    def parse_expr(s: str) -> tuple:
        s = s.strip()
        if s.isdigit():
            return ("literal", int(s))
        open_at = s.find("(")
        if open_at < 0 or not s.endswith(")"):
            raise ParseError(f"bad builder expression {s!r}")
        name = s[:open_at].strip()
        if name not in _BUILDERS:
            raise ParseError(f"unknown builder {name!r}; expected one of {_BUILDERS}")
        inner = s[open_at + 1:-1]
        args, depth, start = [], 0, 0
        for i, c in enumerate(inner):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "," and depth == 0:
                args.append(inner[start:i])
                start = i + 1
        if inner.strip():
            args.append(inner[start:])
        return (name, [parse_expr(a) for a in args])

    def run(expr) -> int:
        kind, payload = expr
        if kind == "literal":
            return payload
        args = [run(a) for a in payload]
        if kind == "numeral":
            return u.numeral(*args)
        if kind == "one_kappa":
            return u.one_kappa(*args)
        if kind == "pair":
            return build_pair(u, *args)
        if kind == "kuratowski":
            return kuratowski(u, *args)
        if kind == "union":
            return build_union(u, *args)
        raise ParseError(f"unknown builder {kind!r}")

    expr = parse_expr(text)
    if expr[0] == "literal":
        raise ParseError(f"raw ids are not accepted; use a builder, got {text!r}")
    return run(expr)


# ---------------------------------------------------------- suite mode

def _config_from(args) -> SuiteConfig:
    return SuiteConfig(
        chain=args.chain, rank=args.rank, grid=args.grid, seed=args.seed,
        suite=getattr(args, "suite", None), fmt=getattr(args, "fmt", "text"),
        budget=args.budget, dump=getattr(args, "dump", False),
    )


def run_suite(cfg: SuiteConfig) -> int:
    u, reports = run_suite_checks(cfg.suite, cfg)
    summary = summarize(reports)
    payload = {
        "suite": cfg.suite,
        "params": {
            "chain": cfg.chain,
            "rank": cfg.rank,
            "grid": cfg.grid,
            "seed": cfg.seed,
            "budget": cfg.budget if cfg.budget is not None else default_budget(),
            "pool": list(u.enumerated_ids()),
        },
        "checks": [r.to_check_entry() for r in reports],
        "summary": summary,
    }
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"suite: {cfg.suite}")
        p = payload["params"]
        print(f"params: chain={p['chain']} rank={p['rank']} grid={p['grid']} "
              f"seed={p['seed']} budget={p['budget']} pool_size={len(p['pool'])}")
        for r in reports:
            line = f"{r.status.upper():7s} {r.name}"
            if r.witness is not None:
                line += f"  witness={json.dumps(r.witness, sort_keys=True)}"
            print(line)
        s = payload["summary"]
        print(f"summary: pass={s['pass']} fail={s['fail']} vacuous={s['vacuous']}")
    return 0 if summary["fail"] == 0 else 1


def eval_formula(cfg: SuiteConfig, node: int, text: str, binds, trace: bool = False) -> int:
    u = build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget)
    env = {}
    for item in binds:
        if "=" not in item:
            raise ParseError(f"bad binding {item!r}; expected VAR=BUILDER(...)")
        var, expr = item.split("=", 1)
        env[var.strip()] = _eval_builder(u, expr)
    phi = fm.parse(text, u)
    pool = u.enumerated_ids()
    verdict = forces(u, pool, node, phi, env)
    print("forced" if verdict else "not forced")
    if trace:
        seen = []
        for sub in fm.subformulas(phi):
            if sub in seen or fm.free_vars(sub) - set(env):
                continue
            seen.append(sub)
            cells = " ".join(
                f"{n}:{'T' if forces(u, pool, n, sub, env) else 'F'}"
                for n in u.poset.nodes
            )
            print(f"  {fm.render(sub):48s} {cells}")
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "eval":
            args = _eval_parser().parse_args(argv[1:])
            return eval_formula(_config_from(args), args.node, args.formula,
                                args.bind, args.trace)
        parser = _suite_parser()
        args = parser.parse_args(argv)
        cfg = _config_from(args)
        if cfg.dump:
            u = build_universe(make_chain(cfg.chain), cfg.rank, cfg.budget)
            print(u.dump())
            if cfg.suite is None:
                return 0
        if cfg.suite is None:
            parser.error("nothing to do: pass --suite or --dump")
        return run_suite(cfg)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ParseError, KripkelabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
