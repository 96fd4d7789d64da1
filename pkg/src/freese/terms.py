"""Lattice terms and inequalities.

Syntax: ``^`` (or ``∧``) is meet, ``v`` (or ``∨``) is join, parentheses
group, ``<=`` separates the two sides of an inequality.  Because ``v``
is the join symbol, variable names never contain a lowercase ``v``;
``yv(x^z)`` therefore reads as ``y v (x ^ z)``.  Meet binds tighter
than join.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import DomainError, ParseError
from .lattice import FiniteLattice


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Meet:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} ^ {self.right})"


@dataclass(frozen=True)
class Join:
    left: object
    right: object

    def __str__(self):
        return f"({self.left} v {self.right})"


LatticeTerm = Var | Meet | Join


class UnboundVariable(DomainError):
    pass


_TOKEN = re.compile(r"\s*(?:(<=)|([\^∧])|([v∨])|(\()|(\))|([A-Za-uw-z_][A-Za-uw-z0-9_]*))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos}")
        kinds = ("le", "meet", "join", "lp", "rp", "var")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            got = self.toks[self.i][1] if self.i < len(self.toks) else "end of input"
            raise ParseError(f"expected {kind}, got {got!r}")
        self.i += 1
        return self.toks[self.i - 1][1]

    def join_expr(self):
        t = self.meet_expr()
        while self.peek() == "join":
            self.i += 1
            t = Join(t, self.meet_expr())
        return t

    def meet_expr(self):
        t = self.atom()
        while self.peek() == "meet":
            self.i += 1
            t = Meet(t, self.atom())
        return t

    def atom(self):
        if self.peek() == "lp":
            self.i += 1
            t = self.join_expr()
            self.take("rp")
            return t
        return Var(self.take("var"))


def parse_term(text: str) -> LatticeTerm:
    p = _Parser(_tokenize(text))
    t = p.join_expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input in term {text!r}")
    return t


def parse_inequality(text: str):
    p = _Parser(_tokenize(text))
    lhs = p.join_expr()
    p.take("le")
    rhs = p.join_expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input in inequality {text!r}")
    return lhs, rhs


def variables(t: LatticeTerm) -> set:
    if isinstance(t, Var):
        return {t.name}
    return variables(t.left) | variables(t.right)


def evaluate(t: LatticeTerm, L: FiniteLattice, assign: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return int(assign[t.name])
        except KeyError:
            raise UnboundVariable(f"variable {t.name!r} is not assigned") from None
    a, b = evaluate(t.left, L, assign), evaluate(t.right, L, assign)
    table = L.meet if isinstance(t, Meet) else L.join
    return int(table[a, b])


def eval_inequality(p: LatticeTerm, q: LatticeTerm, L: FiniteLattice,
                    assign: Mapping[str, int]) -> bool:
    return L.le(evaluate(p, L, assign), evaluate(q, L, assign))


def holds_everywhere(p: LatticeTerm, q: LatticeTerm, L: FiniteLattice):
    """Check p <= q under every assignment; return (True, None) or (False, assignment)."""
    import itertools
    names = sorted(variables(p) | variables(q))
    for values in itertools.product(range(len(L)), repeat=len(names)):
        assign = dict(zip(names, values))
        if not eval_inequality(p, q, L, assign):
            return False, assign
    return True, None
