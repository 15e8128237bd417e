"""Disjunctive normal form over theory literals.

A ``Literal`` is a signed atom, a ``Product`` a conjunction of literals, a
``Dnf`` a disjunction of products.  The empty product means truth and the
empty DNF means falsity, matching ``interpret_product`` / ``interpret_dnf``.

``to_dnf`` converts any quantifier-free formula by computing positive and
negative DNFs side by side, so implication needs no separate negation pass:
the positive track of ``Implies(a, b)`` is ``neg(a) + pos(b)`` and the
negative track is the pairwise product of ``pos(a)`` with ``neg(b)``.  The
De Morgan steps this relies on are sound here because atoms are decidable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable

from .formula import (
    And,
    Atom,
    Falsum,
    Formula,
    Implies,
    NotQuantifierFree,
    Or,
    mk_not,
    mk_true,
)


class Truth(enum.Enum):
    """Verdict of the per-literal simplification hook."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class DnfLimitError(RuntimeError):
    """The product count blew past the configured ceiling."""


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Any

    @classmethod
    def pos(cls, atom: Any) -> "Literal":
        return cls(True, atom)

    @classmethod
    def neg(cls, atom: Any) -> "Literal":
        return cls(False, atom)

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def as_formula(self, arity: int) -> Formula:
        node = Atom(self.atom, arity)
        return node if self.positive else mk_not(node)


@dataclass(frozen=True)
class Product:
    literals: tuple[Literal, ...]
    arity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", tuple(self.literals))


@dataclass(frozen=True)
class Dnf:
    products: tuple[Product, ...]
    arity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "products", tuple(self.products))


def interpret_product(p: Product) -> Formula:
    """Right-fold of And; the empty product reads as truth."""
    if not p.literals:
        return mk_true(p.arity)
    parts = [lit.as_formula(p.arity) for lit in p.literals]
    acc = parts[-1]
    for part in reversed(parts[:-1]):
        acc = And(part, acc)
    return acc


def interpret_dnf(d: Dnf) -> Formula:
    """Right-fold of Or; the empty DNF reads as Falsum."""
    if not d.products:
        return Falsum(d.arity)
    parts = [interpret_product(p) for p in d.products]
    acc = parts[-1]
    for part in reversed(parts[:-1]):
        acc = Or(part, acc)
    return acc


LiteralTruth = Callable[[Literal], Truth]
CanonicalAtom = Callable[[Any], Any]

_Track = list[tuple[Literal, ...]]


def to_dnf(
    phi: Formula,
    *,
    literal_truth: LiteralTruth | None = None,
    canonical_atom: CanonicalAtom | None = None,
    max_products: int | None = None,
) -> Dnf:
    """Convert a quantifier-free formula to an equivalent DNF.

    When a ``literal_truth`` hook is supplied, trivially true literals are
    dropped from their product and a trivially false literal drops the whole
    product.  Duplicate literals are removed, keyed on ``canonical_atom``
    when given.  ``max_products`` bounds either track; crossing it raises
    DnfLimitError.
    """
    pos, _neg = _tracks(phi, literal_truth, canonical_atom, max_products)
    return Dnf(tuple(Product(lits, phi.arity) for lits in pos), phi.arity)


def _tracks(
    phi: Formula,
    literal_truth: LiteralTruth | None,
    canonical_atom: CanonicalAtom | None,
    max_products: int | None,
) -> tuple[_Track, _Track]:
    if isinstance(phi, Atom):
        pos = _simplify_track([(Literal.pos(phi.atom),)], literal_truth, canonical_atom)
        neg = _simplify_track([(Literal.neg(phi.atom),)], literal_truth, canonical_atom)
        return pos, neg
    if isinstance(phi, Falsum):
        return [], [()]
    if isinstance(phi, Or):
        lp, ln = _tracks(phi.lhs, literal_truth, canonical_atom, max_products)
        rp, rn = _tracks(phi.rhs, literal_truth, canonical_atom, max_products)
        pos = _union(lp, rp, max_products)
        neg = _cross(ln, rn, literal_truth, canonical_atom, max_products)
        return pos, neg
    if isinstance(phi, And):
        lp, ln = _tracks(phi.lhs, literal_truth, canonical_atom, max_products)
        rp, rn = _tracks(phi.rhs, literal_truth, canonical_atom, max_products)
        pos = _cross(lp, rp, literal_truth, canonical_atom, max_products)
        neg = _union(ln, rn, max_products)
        return pos, neg
    if isinstance(phi, Implies):
        lp, ln = _tracks(phi.lhs, literal_truth, canonical_atom, max_products)
        rp, rn = _tracks(phi.rhs, literal_truth, canonical_atom, max_products)
        pos = _union(ln, rp, max_products)
        neg = _cross(lp, rn, literal_truth, canonical_atom, max_products)
        return pos, neg
    raise NotQuantifierFree(f"to_dnf on quantified formula: {phi!r}")


def _union(a: _Track, b: _Track, max_products: int | None) -> _Track:
    out = a + b
    _check_limit(out, max_products)
    return out


def _cross(
    a: _Track,
    b: _Track,
    literal_truth: LiteralTruth | None,
    canonical_atom: CanonicalAtom | None,
    max_products: int | None,
) -> _Track:
    out: _Track = []
    for xs in a:
        for ys in b:
            lits = simplify_literals(xs + ys, literal_truth, canonical_atom)
            if lits is not None:
                out.append(lits)
            _check_limit(out, max_products)
    return out


def _simplify_track(
    track: _Track,
    literal_truth: LiteralTruth | None,
    canonical_atom: CanonicalAtom | None,
) -> _Track:
    out: _Track = []
    for lits in track:
        kept = simplify_literals(lits, literal_truth, canonical_atom)
        if kept is not None:
            out.append(kept)
    return out


def simplify_literals(
    lits: tuple[Literal, ...],
    literal_truth: LiteralTruth | None,
    canonical_atom: CanonicalAtom | None,
) -> tuple[Literal, ...] | None:
    """Drop true literals and duplicates; None when a literal is false."""
    out: list[Literal] = []
    seen: set[tuple[bool, Any]] = set()
    for lit in lits:
        if literal_truth is not None:
            verdict = literal_truth(lit)
            if verdict is Truth.TRUE:
                continue
            if verdict is Truth.FALSE:
                return None
        key_atom = canonical_atom(lit.atom) if canonical_atom is not None else lit.atom
        key = (lit.positive, key_atom)
        if key in seen:
            continue
        seen.add(key)
        out.append(lit)
    return tuple(out)


def _check_limit(track: _Track, max_products: int | None) -> None:
    if max_products is not None and len(track) > max_products:
        raise DnfLimitError(
            f"DNF has more than {max_products} products; raise the limit to proceed"
        )
