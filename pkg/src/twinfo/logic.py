"""First-order formulas over the signature {E} and a brute-force evaluator.

Grammar (whitespace separated, parentheses for grouping)::

    formula := disj
    disj    := conj ('or' conj)*
    conj    := unary ('and' unary)*
    unary   := 'not' unary | ('exists'|'forall') VAR formula
             | '(' formula ')' | 'E' VAR VAR | VAR '=' VAR

A quantifier's scope extends as far to the right as possible.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import ParseError
from .graph import Graph

KEYWORDS = {"exists", "forall", "not", "and", "or", "E"}
_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def var_key(name: str):
    """Position of a variable in the fixed global enumeration."""
    m = re.match(r"(.*?)(\d*)\Z", name)
    stem, digits = m.group(1), m.group(2)
    return (stem, int(digits) if digits else -1, name)


def sort_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


@dataclass(frozen=True)
class Formula:
    def free(self) -> frozenset[str]:
        raise NotImplementedError

    def rank(self) -> int:
        raise NotImplementedError

    @property
    def free_vars(self) -> tuple[str, ...]:
        return sort_vars(self.free())


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str

    def free(self):
        return frozenset((self.x, self.y))

    def rank(self):
        return 0

    def __str__(self):
        return f"{self.x} = {self.y}"


@dataclass(frozen=True)
class Edge(Formula):
    x: str
    y: str

    def free(self):
        return frozenset((self.x, self.y))

    def rank(self):
        return 0

    def __str__(self):
        return f"E {self.x} {self.y}"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def free(self):
        return self.body.free()

    def rank(self):
        return self.body.rank()

    def __str__(self):
        return f"not ({self.body})"


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def free(self):
        return frozenset().union(*(p.free() for p in self.parts))

    def rank(self):
        return max(p.rank() for p in self.parts)

    def __str__(self):
        return " and ".join(f"({p})" for p in self.parts)


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def free(self):
        return frozenset().union(*(p.free() for p in self.parts))

    def rank(self):
        return max(p.rank() for p in self.parts)

    def __str__(self):
        return " or ".join(f"({p})" for p in self.parts)


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def free(self):
        return self.body.free() - {self.var}

    def rank(self):
        return 1 + self.body.rank()

    def __str__(self):
        return f"exists {self.var} ({self.body})"


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def free(self):
        return self.body.free() - {self.var}

    def rank(self):
        return 1 + self.body.rank()

    def __str__(self):
        return f"forall {self.var} ({self.body})"


# ----------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(\()|(\))|(=)|([^\s()=]+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at offset {pos}")
        toks.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of formula{'' if expected is None else f', expected {expected!r}'}")
        tok, off = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} at offset {off}, got {tok!r}")
        self.i += 1
        return tok

    def var(self) -> str:
        tok = self.take()
        if tok in KEYWORDS or not _VAR_RE.match(tok):
            raise ParseError(f"expected a variable, got {tok!r}")
        return tok

    def formula(self) -> Formula:
        parts = [self.conj()]
        while self.peek() == "or":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek() == "and":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "not":
            self.take()
            return Not(self.unary())
        if tok in ("exists", "forall"):
            self.take()
            v = self.var()
            body = self.formula()
            return Exists(v, body) if tok == "exists" else Forall(v, body)
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "E":
            self.take()
            return Edge(self.var(), self.var())
        x = self.var()
        self.take("=")
        return Eq(x, self.var())


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    if p.peek() is None:
        raise ParseError("empty formula")
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input starting at {p.peek()!r}")
    return f


# -------------------------------------------------------------- evaluation

def naive_eval(g: Graph, phi: Formula, asg: Mapping[str, int]) -> bool:
    missing = phi.free() - set(asg)
    if missing:
        raise KeyError(f"no value for free variable(s) {sorted(missing)}")
    return _eval(g, phi, dict(asg))


def _eval(g: Graph, phi: Formula, env: dict[str, int]) -> bool:
    if isinstance(phi, Edge):
        return g.has_edge(env[phi.x], env[phi.y])
    if isinstance(phi, Eq):
        return env[phi.x] == env[phi.y]
    if isinstance(phi, Not):
        return not _eval(g, phi.body, env)
    if isinstance(phi, And):
        return all(_eval(g, p, env) for p in phi.parts)
    if isinstance(phi, Or):
        return any(_eval(g, p, env) for p in phi.parts)
    if isinstance(phi, (Exists, Forall)):
        saved = env.get(phi.var)
        want = isinstance(phi, Exists)
        result = not want
        for v in g.vertices():
            env[phi.var] = v
            if _eval(g, phi.body, env) == want:
                result = want
                break
        if saved is None:
            env.pop(phi.var, None)
        else:
            env[phi.var] = saved
        return result
    raise TypeError(f"not a formula: {phi!r}")


def all_assignments(g: Graph, variables) -> Iterator[dict[str, int]]:
    variables = sort_vars(variables)
    for combo in itertools.product(g.vertices(), repeat=len(variables)):
        yield dict(zip(variables, combo))


def naive_satisfying_set(g: Graph, phi: Formula) -> set[tuple[int, ...]]:
    """phi(G) as vertex tuples ordered by the sorted free variables."""
    xs = phi.free_vars
    if not xs:
        raise ValueError("formula has no free variables")
    return {tuple(a[x] for x in xs) for a in all_assignments(g, xs) if _eval(g, phi, a)}
