"""Named-variable surface syntax: parsing and pretty-printing.

Grammar, loosest binding first; a quantifier body always extends as far
right as possible::

    formula    := implies
    implies    := or ('->' implies)?          right associative
    or         := and ('|' and)*              left associative
    and        := unary ('&' unary)*          left associative
    unary      := '~' unary | quantified | primary
    quantified := ('forall' | 'exists') name '.' formula
    primary    := '(' formula ')' | 'false' | 'true' | atom
    atom       := term ('=' | '!=') term
    term       := name ('+' nat)? | nat

``x+3`` means three successors of x, a bare natural is a numeral, ``!=`` is
sugar for a negated equation, ``true`` for ``false -> false``.  Free names
are supplied in order: with binders counted innermost first, the name at
position i of ``free_vars`` maps to de Bruijn index (binder depth + i).
Shadowing is allowed; the innermost binder wins.

``pretty`` is the inverse: bound variables are named x0, x1, ... skipping
any free names, operands of binary connectives are always parenthesized,
``Implies(p, Falsum)`` prints as ``~p`` (or with ``!=`` when p is an
atom), and ``Implies(Falsum, Falsum)`` prints as ``true``.
``parse(pretty(phi, ns), ns)`` reproduces phi exactly.
"""

from __future__ import annotations

import re
from typing import Sequence

from .formula import (
    And,
    ArityError,
    Atom,
    Exists,
    Falsum,
    Forall,
    Formula,
    Implies,
    Or,
    mk_not,
)
from .successor import SNAtom, SNTerm


class ParseError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundNameError(ParseError):
    def __init__(self, name: str, position: int) -> None:
        super().__init__(f"unbound name {name!r}", position)
        self.name = name


_KEYWORDS = {"forall": "FORALL", "exists": "EXISTS", "false": "FALSE", "true": "TRUE"}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<nat>\d+)
    | (?P<arrow>->)
    | (?P<neq>!=)
    | (?P<sym>[=|&~().+])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "name":
            tokens.append((_KEYWORDS.get(value, "NAME"), value, pos))
        elif kind == "nat":
            tokens.append(("NAT", value, pos))
        elif kind == "arrow":
            tokens.append(("ARROW", value, pos))
        elif kind == "neq":
            tokens.append(("NEQ", value, pos))
        elif kind == "sym":
            tokens.append((value, value, pos))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


# Cap on syntactic nesting (parens, negations, quantifier bodies).  The
# parser is recursive-descent, so unbounded nesting would hit the interpreter
# recursion limit; past the cap it reports a ParseError instead.  Formulas
# deeper than this should be built as ASTs directly.
MAX_NESTING = 100


class SurfaceParser:
    """Recursive-descent parser for the surface grammar."""

    def __init__(self, text: str, free_vars: Sequence[str] = ()) -> None:
        self.free_vars = list(free_vars)
        if len(set(self.free_vars)) != len(self.free_vars):
            raise ValueError(f"duplicate free variable names: {self.free_vars!r}")
        self.tokens = _tokenize(text)
        self.pos = 0
        self.binders: list[str] = []
        self.used_free_names: set[str] = set()
        self._depth = 0

    def _nest(self, at: int) -> None:
        self._depth += 1
        if self._depth > MAX_NESTING:
            raise ParseError(f"nesting deeper than {MAX_NESTING}", at)

    def _unnest(self) -> None:
        self._depth -= 1

    def parse(self) -> Formula:
        phi = self._formula()
        kind, value, at = self.tokens[self.pos]
        if kind != "EOF":
            raise ParseError(f"trailing input {value!r}", at)
        return phi

    # token plumbing

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def _advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    @property
    def _arity(self) -> int:
        return len(self.binders) + len(self.free_vars)

    # grammar rules

    def _formula(self) -> Formula:
        return self._implies()

    def _implies(self) -> Formula:
        parts = [self._or()]
        while self._peek()[0] == "ARROW":
            self._advance()
            parts.append(self._or())
        node = parts[-1]
        for part in reversed(parts[:-1]):
            node = Implies(part, node)
        return node

    def _or(self) -> Formula:
        node = self._and()
        while self._peek()[0] == "|":
            self._advance()
            node = Or(node, self._and())
        return node

    def _and(self) -> Formula:
        node = self._unary()
        while self._peek()[0] == "&":
            self._advance()
            node = And(node, self._unary())
        return node

    def _unary(self) -> Formula:
        kind, _, at = self._peek()
        if kind == "~":
            self._advance()
            self._nest(at)
            try:
                return mk_not(self._unary())
            finally:
                self._unnest()
        if kind in ("FORALL", "EXISTS"):
            return self._quantified()
        return self._primary()

    def _quantified(self) -> Formula:
        kind, _, at = self._advance()
        _, name, _ = self._expect("NAME")
        self._expect(".")
        self.binders.insert(0, name)
        self._nest(at)
        try:
            body = self._formula()
        finally:
            self._unnest()
            self.binders.pop(0)
        return Exists(body) if kind == "EXISTS" else Forall(body)

    def _primary(self) -> Formula:
        kind, value, at = self._peek()
        if kind == "(":
            self._advance()
            self._nest(at)
            try:
                phi = self._formula()
            finally:
                self._unnest()
            self._expect(")")
            return phi
        if kind == "FALSE":
            self._advance()
            return Falsum(self._arity)
        if kind == "TRUE":
            self._advance()
            return Implies(Falsum(self._arity), Falsum(self._arity))
        if kind in ("NAME", "NAT"):
            return self._atom()
        raise ParseError(f"expected a formula, found {value!r}", at)

    def _atom(self) -> Formula:
        lhs = self._term()
        kind, value, at = self._advance()
        if kind not in ("=", "NEQ"):
            raise ParseError(f"expected '=' or '!=', found {value!r}", at)
        rhs = self._term()
        node = Atom(SNAtom(lhs, rhs), self._arity)
        return node if kind == "=" else mk_not(node)

    def _term(self) -> SNTerm:
        kind, value, at = self._advance()
        if kind == "NAT":
            return SNTerm(None, int(value))
        if kind != "NAME":
            raise ParseError(f"expected a term, found {value!r}", at)
        index = self._resolve(value, at)
        shift = 0
        if self._peek()[0] == "+":
            self._advance()
            _, nat, _ = self._expect("NAT")
            shift = int(nat)
        return SNTerm(index, shift)

    def _resolve(self, name: str, at: int) -> int:
        for depth, bound in enumerate(self.binders):
            if bound == name:
                return depth
        if name in self.free_vars:
            self.used_free_names.add(name)
            return len(self.binders) + self.free_vars.index(name)
        raise UnboundNameError(name, at)


def parse(text: str, free_vars: Sequence[str] = ()) -> Formula:
    """Parse surface syntax into a formula of arity len(free_vars)."""
    return SurfaceParser(text, free_vars).parse()


_LEVEL_IMPLIES = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_UNARY = 4
_LEVEL_ATOM = 5


def pretty(phi: Formula, free_names: Sequence[str] = ()) -> str:
    """Render a formula; inverse of parse for the same free names."""
    free_names = tuple(free_names)
    if len(free_names) != phi.arity:
        raise ArityError(
            f"{len(free_names)} names supplied for a formula of arity {phi.arity}"
        )
    taken = set(free_names)
    counter = [0]

    def fresh_name() -> str:
        while True:
            name = f"x{counter[0]}"
            counter[0] += 1
            if name not in taken:
                return name

    def term(t: SNTerm, names: tuple[str, ...]) -> str:
        if t.is_zero:
            return str(t.shift)
        base = names[t.index]
        return f"{base}+{t.shift}" if t.shift else base

    # Iterative post-order walk: eliminated formulas can chain one connective
    # per DNF product, far past the recursion limit.  Quantifier names are
    # assigned at first visit, which is pre-order, left subtree first.
    todo: list[tuple] = [("visit", phi, free_names)]
    results: list[tuple[str, int]] = []
    while todo:
        entry = todo.pop()
        kind = entry[0]
        if kind == "visit":
            _, f, names = entry
            if isinstance(f, Falsum):
                results.append(("false", _LEVEL_ATOM))
            elif isinstance(f, Atom):
                a = f.atom
                results.append(
                    (f"{term(a.lhs, names)} = {term(a.rhs, names)}", _LEVEL_ATOM)
                )
            elif isinstance(f, Implies) and isinstance(f.rhs, Falsum):
                if isinstance(f.lhs, Falsum):
                    results.append(("true", _LEVEL_ATOM))
                elif isinstance(f.lhs, Atom):
                    a = f.lhs.atom
                    results.append(
                        (f"{term(a.lhs, names)} != {term(a.rhs, names)}", _LEVEL_ATOM)
                    )
                else:
                    todo.append(("negate",))
                    todo.append(("visit", f.lhs, names))
            elif isinstance(f, (Implies, Or, And)):
                if isinstance(f, Implies):
                    op, level = "->", _LEVEL_IMPLIES
                elif isinstance(f, Or):
                    op, level = "|", _LEVEL_OR
                else:
                    op, level = "&", _LEVEL_AND
                todo.append(("join", op, level))
                todo.append(("visit", f.rhs, names))
                todo.append(("visit", f.lhs, names))
            elif isinstance(f, (Exists, Forall)):
                word = "exists" if isinstance(f, Exists) else "forall"
                name = fresh_name()
                todo.append(("close", word, name))
                todo.append(("visit", f.body, (name,) + names))
            else:
                raise TypeError(f"not a Formula: {f!r}")
        elif kind == "negate":
            inner, level = results.pop()
            if level < _LEVEL_UNARY:
                inner = f"({inner})"
            results.append(("~" + inner, _LEVEL_UNARY))
        elif kind == "join":
            # Binary-connective operands are always parenthesized.
            _, op, level = entry
            rhs_text, _ = results.pop()
            lhs_text, _ = results.pop()
            results.append((f"({lhs_text}) {op} ({rhs_text})", level))
        else:
            _, word, name = entry
            body, _ = results.pop()
            results.append((f"{word} {name}. {body}", 0))
    return results[0][0]
