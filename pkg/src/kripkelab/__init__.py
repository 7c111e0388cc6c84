"""Finite Kripke-model workbench for constructive set theory constructions.

Builds full Kripke models over finite posets at a bounded rank, evaluates
intuitionistic satisfaction, and mechanically checks the lemma-level facts
that are checkable at desk scale: equality laws, extensionality, separation,
fullness, strong collection, the star-transfer lemma for restricted models,
subset growth inside 1, excluded-middle countermodels, forcing density, and
function rigidity.
"""

from .errors import (
    ArityError,
    BudgetError,
    ClosureError,
    DomainError,
    EmptyRestrictionError,
    EvalError,
    GridTooSmallError,
    IncompatibilityError,
    InvalidNodeError,
    InvalidSizeError,
    KripkelabError,
    MonotonicityError,
    NoRoomError,
    OrderError,
    ParseError,
    SaturationError,
    StructureError,
)
from .formula import (
    And,
    BExists,
    BForAll,
    Bottom,
    Eq,
    Exists,
    ForAll,
    Imp,
    Mem,
    Or,
    Param,
    Var,
    free_vars,
    is_delta0,
    neg,
    parse,
    render,
    star_transform,
)
from .poset import Poset, make_chain, make_poset, restrict_downclosed
from .report import FAIL, PASS, VACUOUS, CheckReport
from .semantics import (
    MemoTable,
    StarContext,
    decide_em_pair,
    eq_forced,
    forces,
    forces_restricted,
    mem_forced,
    monotonicity_violations,
    pre_psi_nodes,
    star_context,
)
from .universe import KSet, Universe, build_universe, default_budget

__version__ = "0.1.0"

__all__ = [
    "And", "ArityError", "BExists", "BForAll", "Bottom", "BudgetError",
    "CheckReport", "ClosureError", "DomainError", "EmptyRestrictionError",
    "Eq", "EvalError", "Exists", "FAIL", "ForAll", "GridTooSmallError",
    "Imp", "IncompatibilityError", "InvalidNodeError", "InvalidSizeError",
    "KSet", "KripkelabError", "Mem", "MemoTable", "MonotonicityError",
    "NoRoomError", "Or", "OrderError", "PASS", "Param", "ParseError",
    "Poset", "SaturationError", "StarContext", "StructureError", "Universe",
    "VACUOUS", "Var", "build_universe", "decide_em_pair", "default_budget",
    "eq_forced", "forces", "forces_restricted", "free_vars", "is_delta0",
    "make_chain", "make_poset", "mem_forced", "monotonicity_violations",
    "neg", "parse", "pre_psi_nodes", "render", "restrict_downclosed",
    "star_context", "star_transform",
]
