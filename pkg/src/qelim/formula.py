"""Formula AST over decidable theory atoms, with constructive evidence.

Formulas use de Bruijn indices: a variable is a natural number counting
binders outward, so index 0 always refers to the innermost enclosing
quantifier.  Every formula carries an ``arity``: an upper bound on its free
indices.  A formula of arity n is evaluated under an ``Environment`` of
exactly n values, ordered innermost first (index 0 is the most recently
bound variable).  Example: in ``Exists(Exists(body))`` the body has arity 2
and environment ``(y, x)`` where y belongs to the inner quantifier.

Negation is not a constructor.  ``mk_not(p)`` builds ``Implies(p, Falsum)``,
and ``mk_true(n)`` builds ``Implies(Falsum, Falsum)``; everything downstream
treats these as ordinary implications.

Evidence and Refutation are the constructive content of a Decision.  They
mirror the formula shape: a witness value for an existential, a reusable
provider function for a universal, and mirrored forms on the refuting side
(a counterexample refutes a universal, a provider refutes an existential).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Protocol, Sequence, Union

Environment = tuple


class ArityError(ValueError):
    """Environment length or variable index does not fit the formula arity."""


class NotQuantifierFree(ValueError):
    """Raised when a quantifier-free-only operation meets Exists/Forall."""


class TheoryAtom(Protocol):
    """What the core needs from an atom: decidable truth and index bounds."""

    def holds(self, env: Sequence[Any]) -> bool: ...

    def fits_arity(self, arity: int) -> bool: ...


class Formula:
    """Base class for formula nodes.  Every node exposes ``.arity``."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    atom: Any
    arity: int

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ArityError(f"negative arity {self.arity}")
        if not self.atom.fits_arity(self.arity):
            raise ArityError(f"atom {self.atom!r} does not fit arity {self.arity}")


@dataclass(frozen=True)
class Falsum(Formula):
    arity: int

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ArityError(f"negative arity {self.arity}")


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula

    def __post_init__(self) -> None:
        if self.lhs.arity != self.rhs.arity:
            raise ArityError(
                f"arity mismatch in Or: {self.lhs.arity} vs {self.rhs.arity}"
            )

    @property
    def arity(self) -> int:
        return self.lhs.arity


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula

    def __post_init__(self) -> None:
        if self.lhs.arity != self.rhs.arity:
            raise ArityError(
                f"arity mismatch in And: {self.lhs.arity} vs {self.rhs.arity}"
            )

    @property
    def arity(self) -> int:
        return self.lhs.arity


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula

    def __post_init__(self) -> None:
        if self.lhs.arity != self.rhs.arity:
            raise ArityError(
                f"arity mismatch in Implies: {self.lhs.arity} vs {self.rhs.arity}"
            )

    @property
    def arity(self) -> int:
        return self.lhs.arity


@dataclass(frozen=True)
class Exists(Formula):
    body: Formula

    def __post_init__(self) -> None:
        if self.body.arity < 1:
            raise ArityError("Exists body must bind at least index 0")

    @property
    def arity(self) -> int:
        return self.body.arity - 1


@dataclass(frozen=True)
class Forall(Formula):
    body: Formula

    def __post_init__(self) -> None:
        if self.body.arity < 1:
            raise ArityError("Forall body must bind at least index 0")

    @property
    def arity(self) -> int:
        return self.body.arity - 1


def mk_not(phi: Formula) -> Formula:
    return Implies(phi, Falsum(phi.arity))


def mk_true(arity: int) -> Formula:
    return Implies(Falsum(arity), Falsum(arity))


def extend(env: Environment, value: Any) -> Environment:
    """Push a value for a newly bound index 0; existing values shift up."""
    return (value,) + tuple(env)


def check_env(phi: Formula, env: Sequence[Any]) -> Environment:
    env = tuple(env)
    if len(env) != phi.arity:
        raise ArityError(
            f"environment length {len(env)} does not match arity {phi.arity}"
        )
    return env


def is_qfree(phi: Formula) -> bool:
    """True when the formula contains no quantifier anywhere."""
    todo = [phi]
    while todo:
        f = todo.pop()
        if isinstance(f, (Atom, Falsum)):
            continue
        if isinstance(f, (Or, And, Implies)):
            todo.append(f.lhs)
            todo.append(f.rhs)
        elif isinstance(f, (Exists, Forall)):
            return False
        else:
            raise TypeError(f"not a Formula: {f!r}")
    return True


def eval_qfree(phi: Formula, env: Sequence[Any]) -> bool:
    """Decide a quantifier-free formula under an environment of matching length."""
    env = check_env(phi, env)
    return _eval(phi, env)


def _eval(phi: Formula, env: Environment) -> bool:
    # Iterative: interpreted DNFs chain one connective per product, which
    # for machine-built formulas runs far past the recursion limit.
    todo: list[tuple[Formula, bool]] = [(phi, False)]
    done: list[bool] = []
    while todo:
        f, expanded = todo.pop()
        if expanded:
            rhs = done.pop()
            lhs = done.pop()
            if isinstance(f, Or):
                done.append(lhs or rhs)
            elif isinstance(f, And):
                done.append(lhs and rhs)
            else:
                done.append((not lhs) or rhs)
        elif isinstance(f, Atom):
            done.append(bool(f.atom.holds(env)))
        elif isinstance(f, Falsum):
            done.append(False)
        elif isinstance(f, (Or, And, Implies)):
            todo.append((f, True))
            todo.append((f.rhs, False))
            todo.append((f.lhs, False))
        elif isinstance(f, (Exists, Forall)):
            raise NotQuantifierFree(f"eval_qfree on quantified formula: {f!r}")
        else:
            raise TypeError(f"not a Formula: {f!r}")
    return done[0]


# --- evidence ---------------------------------------------------------------


class Evidence:
    """Base class for constructive proof terms."""

    __slots__ = ()


class Refutation:
    """Base class for constructive disproof terms (the mirror of Evidence)."""

    __slots__ = ()


@dataclass(frozen=True)
class AtomHolds(Evidence):
    pass


@dataclass(frozen=True)
class OrLeft(Evidence):
    sub: Evidence


@dataclass(frozen=True)
class OrRight(Evidence):
    sub: Evidence


@dataclass(frozen=True)
class Both(Evidence):
    left: Evidence
    right: Evidence


@dataclass(frozen=True)
class NegAntecedent(Evidence):
    """An implication holds because its antecedent is refuted."""

    refutation: Refutation


@dataclass(frozen=True)
class Consequent(Evidence):
    """An implication holds because its consequent holds."""

    evidence: Evidence


@dataclass(frozen=True)
class Witness(Evidence):
    """An existential holds at ``value`` with evidence for the body."""

    value: int
    sub: Evidence


@dataclass(frozen=True)
class UniversalEvidence(Evidence):
    """Deferred evidence for a universal: yields body evidence on demand.

    The provider is pure and re-entrant; each call recomputes evidence for
    the requested value, so it may be queried any number of times in any
    order.
    """

    provider: Callable[[int], Evidence] = field(compare=False, repr=False)

    def instantiate(self, value: int) -> Evidence:
        return self.provider(value)


@dataclass(frozen=True)
class FalsumRefuted(Refutation):
    pass


@dataclass(frozen=True)
class AtomFails(Refutation):
    pass


@dataclass(frozen=True)
class NeitherHolds(Refutation):
    left: Refutation
    right: Refutation


@dataclass(frozen=True)
class LeftFails(Refutation):
    sub: Refutation


@dataclass(frozen=True)
class RightFails(Refutation):
    sub: Refutation


@dataclass(frozen=True)
class Unimplied(Refutation):
    """An implication fails: the antecedent holds yet the consequent fails."""

    antecedent: Evidence
    consequent: Refutation


@dataclass(frozen=True)
class Counterexample(Refutation):
    """A universal fails at ``value`` with a refutation of the body there."""

    value: int
    sub: Refutation


@dataclass(frozen=True)
class ExistsRefuted(Refutation):
    """Deferred refutation of an existential: refutes the body at any value."""

    provider: Callable[[int], Refutation] = field(compare=False, repr=False)

    def refute_at(self, value: int) -> Refutation:
        return self.provider(value)


class Decision:
    """Base class: Yes carries Evidence, No carries a Refutation."""

    __slots__ = ()


@dataclass(frozen=True)
class Yes(Decision):
    evidence: Evidence


@dataclass(frozen=True)
class No(Decision):
    refutation: Refutation


Sampler = Callable[[Formula, Environment], Iterable[int]]


def _default_samples(body: Formula, env: Environment) -> Iterable[int]:
    # Universal evidence can only be spot-checked.  Use the theory's candidate
    # set when the atoms support it; plain {0, 1} otherwise.
    values = {0, 1}
    try:
        from .successor import candidates

        values |= set(candidates(body, env))
    except Exception:
        pass
    return sorted(values)


def check_evidence(
    decision: Decision,
    phi: Formula,
    env: Sequence[Any],
    samples: Sampler | None = None,
) -> bool:
    """Structurally validate a decision against a formula.

    Leaves are re-evaluated, witnesses are checked by recursion under the
    extended environment, and provider-style evidence (universals, refuted
    existentials) is spot-checked at a sample of values.  A shape mismatch
    returns False rather than raising; only a bad environment length raises.
    """
    env = check_env(phi, env)
    sampler = samples if samples is not None else _default_samples
    if isinstance(decision, Yes):
        return _check_holds(decision.evidence, phi, env, sampler)
    if isinstance(decision, No):
        return _check_fails(decision.refutation, phi, env, sampler)
    return False


def _check_holds(ev: Evidence, phi: Formula, env: Environment, sampler: Sampler) -> bool:
    if isinstance(phi, Atom):
        return isinstance(ev, AtomHolds) and bool(phi.atom.holds(env))
    if isinstance(phi, Falsum):
        return False
    if isinstance(phi, Or):
        if isinstance(ev, OrLeft):
            return _check_holds(ev.sub, phi.lhs, env, sampler)
        if isinstance(ev, OrRight):
            return _check_holds(ev.sub, phi.rhs, env, sampler)
        return False
    if isinstance(phi, And):
        return (
            isinstance(ev, Both)
            and _check_holds(ev.left, phi.lhs, env, sampler)
            and _check_holds(ev.right, phi.rhs, env, sampler)
        )
    if isinstance(phi, Implies):
        if isinstance(ev, NegAntecedent):
            return _check_fails(ev.refutation, phi.lhs, env, sampler)
        if isinstance(ev, Consequent):
            return _check_holds(ev.evidence, phi.rhs, env, sampler)
        return False
    if isinstance(phi, Exists):
        return isinstance(ev, Witness) and _check_holds(
            ev.sub, phi.body, extend(env, ev.value), sampler
        )
    if isinstance(phi, Forall):
        if not isinstance(ev, UniversalEvidence):
            return False
        for value in sampler(phi.body, env):
            try:
                sub = ev.instantiate(value)
            except Exception:
                return False
            if not _check_holds(sub, phi.body, extend(env, value), sampler):
                return False
        return True
    raise TypeError(f"not a Formula: {phi!r}")


def _check_fails(rf: Refutation, phi: Formula, env: Environment, sampler: Sampler) -> bool:
    if isinstance(phi, Falsum):
        return isinstance(rf, FalsumRefuted)
    if isinstance(phi, Atom):
        return isinstance(rf, AtomFails) and not phi.atom.holds(env)
    if isinstance(phi, Or):
        return (
            isinstance(rf, NeitherHolds)
            and _check_fails(rf.left, phi.lhs, env, sampler)
            and _check_fails(rf.right, phi.rhs, env, sampler)
        )
    if isinstance(phi, And):
        if isinstance(rf, LeftFails):
            return _check_fails(rf.sub, phi.lhs, env, sampler)
        if isinstance(rf, RightFails):
            return _check_fails(rf.sub, phi.rhs, env, sampler)
        return False
    if isinstance(phi, Implies):
        return (
            isinstance(rf, Unimplied)
            and _check_holds(rf.antecedent, phi.lhs, env, sampler)
            and _check_fails(rf.consequent, phi.rhs, env, sampler)
        )
    if isinstance(phi, Exists):
        if not isinstance(rf, ExistsRefuted):
            return False
        for value in sampler(phi.body, env):
            try:
                sub = rf.refute_at(value)
            except Exception:
                return False
            if not _check_fails(sub, phi.body, extend(env, value), sampler):
                return False
        return True
    if isinstance(phi, Forall):
        return isinstance(rf, Counterexample) and _check_fails(
            rf.sub, phi.body, extend(env, rf.value), sampler
        )
    raise TypeError(f"not a Formula: {phi!r}")
