"""Formula language: AST, text parser, renderer, and syntactic transforms.

Grammar (whitespace-insensitive):

    phi  ::= "false" | term "in" term | term "=" term | "~" phi
           | phi "&" phi | phi "|" phi | phi "->" phi
           | "forall" var "." phi | "exists" var "." phi
           | "forall" var "in" term "." phi | "exists" var "in" term "." phi
           | "(" phi ")"
    term ::= var | "#" natural

Precedence: "~" binds tightest, then "&", then "|", then "->"; "->" is
right-associative and quantifier scope extends maximally to the right.
"#7" is a parameter naming universe table id 7. Negation is sugar:
the parser emits Imp(phi, Bottom()).

Bounded quantifiers are first-class AST nodes, not sugar over unbounded
ones, so restricted-quantifier code paths can be syntax-directed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ArityError, ParseError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    id: int


Term = Union[Var, Param]


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Mem:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class BForAll:
    var: str
    bound: Term
    body: "Formula"


@dataclass(frozen=True)
class BExists:
    var: str
    bound: Term
    body: "Formula"


Formula = Union[Bottom, Mem, Eq, And, Or, Imp, ForAll, Exists, BForAll, BExists]


def neg(phi: Formula) -> Formula:
    return Imp(phi, Bottom())


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


# ---------------------------------------------------------------- parsing

_KEYWORDS = frozenset({"false", "forall", "exists", "in"})
_SINGLE = frozenset("()~&|=.#")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            toks.append(("op", "->", i))
            i += 2
            continue
        if c in _SINGLE:
            toks.append(("op", c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("nat", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            toks.append(("kw" if word in _KEYWORDS else "name", word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", position=i)
    return toks


class _Parser:
    def __init__(self, text, universe=None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.universe = universe

    def _peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("eof", "", len(self.text))

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> Formula:
        phi = self.formula()
        kind, value, pos = self._peek()
        if kind != "eof":
            raise ParseError(f"unexpected trailing {value!r}", position=pos)
        return phi

    def formula(self) -> Formula:
        left = self.disjunct()
        kind, value, _ = self._peek()
        if (kind, value) == ("op", "->"):
            self._take()
            return Imp(left, self.formula())
        return left

    def disjunct(self) -> Formula:
        phi = self.conjunct()
        while self._peek()[:2] == ("op", "|"):
            self._take()
            phi = Or(phi, self.conjunct())
        return phi

    def conjunct(self) -> Formula:
        phi = self.prefix()
        while self._peek()[:2] == ("op", "&"):
            self._take()
            phi = And(phi, self.prefix())
        return phi

    def prefix(self) -> Formula:
        kind, value, _ = self._peek()
        if (kind, value) == ("op", "~"):
            self._take()
            return neg(self.prefix())
        if kind == "kw" and value in ("forall", "exists"):
            return self.quantifier()
        return self.atom()

    def quantifier(self) -> Formula:
        _, which, _ = self._take()
        kind, name, pos = self._take()
        if kind != "name":
            raise ParseError(f"expected a variable after {which!r}, found {name!r}", position=pos)
        bound = None
        if self._peek()[:2] == ("kw", "in"):
            self._take()
            bound = self.term()
        kind, value, pos = self._take()
        if (kind, value) != ("op", "."):
            raise ParseError(f"expected '.' in quantifier, found {value!r}", position=pos)
        body = self.formula()
        if which == "forall":
            return ForAll(name, body) if bound is None else BForAll(name, bound, body)
        return Exists(name, body) if bound is None else BExists(name, bound, body)

    def atom(self) -> Formula:
        kind, value, pos = self._peek()
        if (kind, value) == ("kw", "false"):
            self._take()
            return Bottom()
        if (kind, value) == ("op", "("):
            self._take()
            phi = self.formula()
            kind, value, pos = self._take()
            if (kind, value) != ("op", ")"):
                raise ParseError(f"expected ')', found {value!r}", position=pos)
            return phi
        left = self.term()
        kind, value, pos = self._take()
        if (kind, value) == ("kw", "in"):
            return Mem(left, self.term())
        if (kind, value) == ("op", "="):
            return Eq(left, self.term())
        raise ParseError(f"expected 'in' or '=' after a term, found {value!r}", position=pos)

    def term(self) -> Term:
        kind, value, pos = self._take()
        if (kind, value) == ("op", "#"):
            kind, value, numpos = self._take()
            if kind != "nat":
                raise ParseError(f"expected a number after '#', found {value!r}", position=numpos)
            pid = int(value)
            if self.universe is not None and not 0 <= pid < len(self.universe):
                raise ParseError(f"unknown parameter id {pid}", position=numpos)
            return Param(pid)
        if kind == "name":
            return Var(value)
        if kind == "nat":
            raise ParseError("a bare number is not a term; write #N for a parameter", position=pos)
        raise ParseError(f"expected a term, found {value!r}", position=pos)


def parse(text: str, universe=None) -> Formula:
    """Parse formula text; with a universe, parameter ids are range-checked."""
    return _Parser(text, universe).parse()


# --------------------------------------------------------------- rendering

def render_term(t: Term) -> str:
    return t.name if isinstance(t, Var) else f"#{t.id}"


def render(phi: Formula) -> str:
    """Reparseable text for a formula; parse(render(phi)) == phi."""
    match phi:
        case Bottom():
            return "false"
        case Mem(left, right):
            return f"{render_term(left)} in {render_term(right)}"
        case Eq(left, right):
            return f"{render_term(left)} = {render_term(right)}"
        case Imp(left, Bottom()):
            return f"~{render(left)}"
        case And(left, right):
            return f"({render(left)} & {render(right)})"
        case Or(left, right):
            return f"({render(left)} | {render(right)})"
        case Imp(left, right):
            return f"({render(left)} -> {render(right)})"
        case ForAll(var, body):
            return f"(forall {var} . {render(body)})"
        case Exists(var, body):
            return f"(exists {var} . {render(body)})"
        case BForAll(var, bound, body):
            return f"(forall {var} in {render_term(bound)} . {render(body)})"
        case BExists(var, bound, body):
            return f"(exists {var} in {render_term(bound)} . {render(body)})"
    raise TypeError(f"not a formula: {phi!r}")


# ------------------------------------------------------------ structure

def _term_vars(t: Term) -> frozenset[str]:
    return frozenset([t.name]) if isinstance(t, Var) else frozenset()


def free_vars(phi: Formula) -> frozenset[str]:
    match phi:
        case Bottom():
            return frozenset()
        case Mem(left, right) | Eq(left, right):
            return _term_vars(left) | _term_vars(right)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return free_vars(left) | free_vars(right)
        case ForAll(var, body) | Exists(var, body):
            return free_vars(body) - {var}
        case BForAll(var, bound, body) | BExists(var, bound, body):
            return _term_vars(bound) | (free_vars(body) - {var})
    raise TypeError(f"not a formula: {phi!r}")


def params_of(phi: Formula) -> frozenset[int]:
    def tp(t):
        return frozenset([t.id]) if isinstance(t, Param) else frozenset()

    match phi:
        case Bottom():
            return frozenset()
        case Mem(left, right) | Eq(left, right):
            return tp(left) | tp(right)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return params_of(left) | params_of(right)
        case ForAll(_, body) | Exists(_, body):
            return params_of(body)
        case BForAll(_, bound, body) | BExists(_, bound, body):
            return tp(bound) | params_of(body)
    raise TypeError(f"not a formula: {phi!r}")


def is_delta0(phi: Formula) -> bool:
    """True when every quantifier in the formula is bounded."""
    match phi:
        case Bottom() | Mem() | Eq():
            return True
        case And(left, right) | Or(left, right) | Imp(left, right):
            return is_delta0(left) and is_delta0(right)
        case ForAll() | Exists():
            return False
        case BForAll(_, _, body) | BExists(_, _, body):
            return is_delta0(body)
    raise TypeError(f"not a formula: {phi!r}")


def size(phi: Formula) -> int:
    """Connective/atom count, terms not included."""
    match phi:
        case Bottom() | Mem() | Eq():
            return 1
        case And(left, right) | Or(left, right) | Imp(left, right):
            return 1 + size(left) + size(right)
        case ForAll(_, body) | Exists(_, body) | BForAll(_, _, body) | BExists(_, _, body):
            return 1 + size(body)
    raise TypeError(f"not a formula: {phi!r}")


def atom_count(phi: Formula) -> int:
    match phi:
        case Bottom() | Mem() | Eq():
            return 1
        case And(left, right) | Or(left, right) | Imp(left, right):
            return atom_count(left) + atom_count(right)
        case ForAll(_, body) | Exists(_, body) | BForAll(_, _, body) | BExists(_, _, body):
            return atom_count(body)
    raise TypeError(f"not a formula: {phi!r}")


def subformulas(phi: Formula):
    """Post-order traversal, the formula itself last."""
    match phi:
        case Bottom() | Mem() | Eq():
            pass
        case And(left, right) | Or(left, right) | Imp(left, right):
            yield from subformulas(left)
            yield from subformulas(right)
        case ForAll(_, body) | Exists(_, body) | BForAll(_, _, body) | BExists(_, _, body):
            yield from subformulas(body)
    yield phi


# ----------------------------------------------------------- renaming

def all_var_names(phi: Formula) -> frozenset[str]:
    """Every variable name occurring in the formula, free, bound, or binding."""
    match phi:
        case Bottom():
            return frozenset()
        case Mem(left, right) | Eq(left, right):
            return _term_vars(left) | _term_vars(right)
        case And(left, right) | Or(left, right) | Imp(left, right):
            return all_var_names(left) | all_var_names(right)
        case ForAll(var, body) | Exists(var, body):
            return frozenset([var]) | all_var_names(body)
        case BForAll(var, bound, body) | BExists(var, bound, body):
            return frozenset([var]) | _term_vars(bound) | all_var_names(body)
    raise TypeError(f"not a formula: {phi!r}")


def rename_var(phi: Formula, old: str, new: str) -> Formula:
    """Rename free occurrences of a variable.

    ``new`` must not occur anywhere in the formula, or the rename would be
    captured by an inner binder.
    """
    if new in all_var_names(phi):
        raise ArityError(f"fresh name {new!r} already occurs in the formula")

    def rt(t: Term) -> Term:
        return Var(new) if isinstance(t, Var) and t.name == old else t

    def go(f: Formula) -> Formula:
        match f:
            case Bottom():
                return f
            case Mem(left, right):
                return Mem(rt(left), rt(right))
            case Eq(left, right):
                return Eq(rt(left), rt(right))
            case And(left, right):
                return And(go(left), go(right))
            case Or(left, right):
                return Or(go(left), go(right))
            case Imp(left, right):
                return Imp(go(left), go(right))
            case ForAll(var, body):
                return f if var == old else ForAll(var, go(body))
            case Exists(var, body):
                return f if var == old else Exists(var, go(body))
            case BForAll(var, bound, body):
                return BForAll(var, rt(bound), body if var == old else go(body))
            case BExists(var, bound, body):
                return BExists(var, rt(bound), body if var == old else go(body))
        raise TypeError(f"not a formula: {f!r}")

    return go(phi)


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


# ------------------------------------------------------- star transform

def star_transform(phi: Formula, psi: Formula) -> Formula:
    """Disjoin a fixed closed sentence onto every atomic subformula.

    Atoms (membership, equality, and falsum) become (atom | psi); the
    connectives and the unbounded quantifiers pass through unchanged.
    Bounded quantifiers are expanded through their definitions, so the
    implicit bound membership is treated as the atom it is:

        (forall x in a . phi)*  =  forall x . ((x in a | psi) -> phi*)
        (exists x in a . phi)*  =  exists x . ((x in a | psi) & phi*)

    Keeping bounded quantifiers opaque instead would let a node forcing psi
    refute (exists x in a . phi)* whenever a is empty there, and the
    transfer of truth into the restricted model would fail under
    implications. The expansion renames the binder when the bound term is
    the quantified variable itself. Purely syntactic: applying the
    transform twice inserts psi twice.
    """
    if free_vars(psi):
        raise ArityError("the disjoined sentence must be closed")

    def expand(var, bound, body, starred_body):
        if isinstance(bound, Var) and bound.name == var:
            fresh = _fresh_name(var, all_var_names(body) | {bound.name})
            starred_body = star_transform(rename_var(body, var, fresh), psi)
            var = fresh
        return var, Or(Mem(Var(var), bound), psi), starred_body

    def go(f: Formula) -> Formula:
        match f:
            case Bottom() | Mem() | Eq():
                return Or(f, psi)
            case And(left, right):
                return And(go(left), go(right))
            case Or(left, right):
                return Or(go(left), go(right))
            case Imp(left, right):
                return Imp(go(left), go(right))
            case ForAll(var, body):
                return ForAll(var, go(body))
            case Exists(var, body):
                return Exists(var, go(body))
            case BForAll(var, bound, body):
                var, guard, starred = expand(var, bound, body, go(body))
                return ForAll(var, Imp(guard, starred))
            case BExists(var, bound, body):
                var, guard, starred = expand(var, bound, body, go(body))
                return Exists(var, And(guard, starred))
        raise TypeError(f"not a formula: {f!r}")

    return go(phi)


# ---------------------------------------------------------- test corpus

_KINDS = ("atom", "and", "or", "imp", "not", "forall", "exists", "bforall", "bexists")


def random_formula(rng, depth: int, scope, params) -> Formula:
    """One random formula of at most the given quantifier/connective depth.

    ``scope`` lists variable names usable free (the evaluation environment
    must bind them); quantifiers may shadow. ``params`` lists set ids usable
    as parameters and as bounds.
    """
    scope = tuple(scope)
    params = tuple(params)
    if not params:
        raise ArityError("corpus generation needs at least one parameter id")

    def term(local):
        if local and rng.random() < 0.6:
            return Var(rng.choice(local))
        return Param(rng.choice(params))

    def atom(local):
        r = rng.random()
        if r < 0.08:
            return Bottom()
        left, right = term(local), term(local)
        return Mem(left, right) if r < 0.54 else Eq(left, right)

    def go(d, local):
        if d == 0:
            return atom(local)
        kind = rng.choice(_KINDS)
        if kind == "atom":
            return atom(local)
        if kind in ("and", "or", "imp"):
            ctor = {"and": And, "or": Or, "imp": Imp}[kind]
            return ctor(go(d - 1, local), go(d - 1, local))
        if kind == "not":
            return neg(go(d - 1, local))
        var = rng.choice(("x", "y", "z", "v"))
        body = go(d - 1, local + (var,))
        if kind == "forall":
            return ForAll(var, body)
        if kind == "exists":
            return Exists(var, body)
        bound = Param(rng.choice(params)) if (not local or rng.random() < 0.7) else Var(rng.choice(local))
        return BForAll(var, bound, body) if kind == "bforall" else BExists(var, bound, body)

    return go(depth, scope)


def corpus(rng, count: int, depth: int, scope, params) -> list[Formula]:
    """At least ``count`` formulas covering every connective and quantifier kind.

    A fixed template block is appended after the random draw so coverage
    never depends on the seed.
    """
    out = [random_formula(rng, depth, scope, params) for _ in range(count)]
    p = Param(tuple(params)[0])
    a = Mem(Var("x"), p)
    out += [
        Bottom(),
        And(a, Eq(Var("x"), Var("x"))),
        Or(a, Bottom()),
        Imp(a, a),
        neg(a),
        ForAll("q", Eq(Var("q"), Var("q"))),
        Exists("q", Mem(Var("q"), p)),
        BForAll("q", p, neg(Mem(Var("q"), Var("q")))),
        BExists("q", p, Eq(Var("q"), Var("q"))),
    ]
    return out
