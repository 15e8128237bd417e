"""Theory-generic quantifier elimination engine.

Given a single-variable elimination step for products (the ``ProdQEStep``
protocol), ``lift_qe`` removes every quantifier from a formula working
inside out, with no prenex normal form: each quantifier is eliminated from
the already quantifier-free result of recursing into its body.  An
existential becomes the disjunction of per-product eliminations of the
body's DNF; a universal is the negation of the eliminated negation, which
is constructively fine because quantifier-free formulas are decidable.

``decide`` then evaluates the quantifier-free equivalent and rebuilds
constructive evidence over the original formula: witness values come from
the theory's ``prod_witness`` on the first true product, universal evidence
is a deferred provider that re-runs decision for any requested value, and
refutations mirror the same structure.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from .dnf import Dnf, Literal, Product, Truth, to_dnf
from .formula import (
    And,
    Atom,
    AtomFails,
    AtomHolds,
    Both,
    Consequent,
    Counterexample,
    Decision,
    Environment,
    Evidence,
    Exists,
    ExistsRefuted,
    Falsum,
    FalsumRefuted,
    Forall,
    Formula,
    Implies,
    LeftFails,
    NegAntecedent,
    NeitherHolds,
    No,
    Or,
    OrLeft,
    OrRight,
    Refutation,
    RightFails,
    Unimplied,
    UniversalEvidence,
    Witness,
    Yes,
    check_env,
    eval_qfree,
    extend,
    mk_not,
)


class EngineError(RuntimeError):
    """The engine's own invariants broke; indicates a bug, not bad input."""


class ProdQEStep(Protocol):
    """What a theory must supply to drive the generic engine.

    ``eliminate_product`` removes index 0 from a product of literals,
    returning a formula one arity down.  ``prod_witness`` produces a value
    for index 0 when the eliminated product is true under the environment.
    ``literal_truth`` lets DNF construction drop decided literals.  A step
    may additionally offer ``canonical_atom`` for literal deduplication.
    """

    def eliminate_product(self, p: Product) -> Formula: ...

    def prod_witness(self, p: Product, env: Sequence) -> int: ...

    def literal_truth(self, lit: Literal) -> Truth: ...


def _theory_dnf(step: ProdQEStep, phi: Formula, max_products: int | None) -> Dnf:
    return to_dnf(
        phi,
        literal_truth=step.literal_truth,
        canonical_atom=getattr(step, "canonical_atom", None),
        max_products=max_products,
    )


def eliminate_dnf(step: ProdQEStep, d: Dnf) -> Formula:
    """Disjunction of per-product eliminations; empty DNF gives Falsum."""
    if d.arity < 1:
        raise ValueError("eliminate_dnf needs arity at least 1")
    if not d.products:
        return Falsum(d.arity - 1)
    parts = [step.eliminate_product(p) for p in d.products]
    acc = parts[-1]
    for part in reversed(parts[:-1]):
        acc = Or(part, acc)
    return acc


def lift_qe(
    step: ProdQEStep, phi: Formula, *, max_products: int | None = None
) -> Formula:
    """Quantifier-free equivalent of phi at the same arity."""
    if isinstance(phi, (Atom, Falsum)):
        return phi
    if isinstance(phi, Or):
        return Or(
            lift_qe(step, phi.lhs, max_products=max_products),
            lift_qe(step, phi.rhs, max_products=max_products),
        )
    if isinstance(phi, And):
        return And(
            lift_qe(step, phi.lhs, max_products=max_products),
            lift_qe(step, phi.rhs, max_products=max_products),
        )
    if isinstance(phi, Implies):
        return Implies(
            lift_qe(step, phi.lhs, max_products=max_products),
            lift_qe(step, phi.rhs, max_products=max_products),
        )
    if isinstance(phi, Exists):
        body = lift_qe(step, phi.body, max_products=max_products)
        return eliminate_dnf(step, _theory_dnf(step, body, max_products))
    if isinstance(phi, Forall):
        body = lift_qe(step, phi.body, max_products=max_products)
        negated = eliminate_dnf(step, _theory_dnf(step, mk_not(body), max_products))
        return mk_not(negated)
    raise TypeError(f"not a Formula: {phi!r}")


def _truth(
    step: ProdQEStep, phi: Formula, env: Environment, max_products: int | None
) -> bool:
    return eval_qfree(lift_qe(step, phi, max_products=max_products), env)


def _first_witness(
    step: ProdQEStep, qfree: Formula, env: Environment, max_products: int | None
) -> int:
    """Witness from the first product whose elimination is true under env."""
    d = _theory_dnf(step, qfree, max_products)
    for p in d.products:
        if eval_qfree(step.eliminate_product(p), env):
            return step.prod_witness(p, env)
    raise EngineError("no true product although the existential decided true")


def decide(
    step: ProdQEStep,
    phi: Formula,
    env: Sequence = (),
    *,
    max_products: int | None = None,
) -> Decision:
    """Decide phi under env, with evidence or a refutation to show for it."""
    env = check_env(phi, env)
    if _truth(step, phi, env, max_products):
        return Yes(_evidence(step, phi, env, max_products))
    return No(_refutation(step, phi, env, max_products))


def _evidence(
    step: ProdQEStep, phi: Formula, env: Environment, max_products: int | None
) -> Evidence:
    if isinstance(phi, Atom):
        return AtomHolds()
    if isinstance(phi, Falsum):
        raise EngineError("no evidence exists for Falsum")
    if isinstance(phi, Or):
        if _truth(step, phi.lhs, env, max_products):
            return OrLeft(_evidence(step, phi.lhs, env, max_products))
        return OrRight(_evidence(step, phi.rhs, env, max_products))
    if isinstance(phi, And):
        return Both(
            _evidence(step, phi.lhs, env, max_products),
            _evidence(step, phi.rhs, env, max_products),
        )
    if isinstance(phi, Implies):
        if _truth(step, phi.lhs, env, max_products):
            return Consequent(_evidence(step, phi.rhs, env, max_products))
        return NegAntecedent(_refutation(step, phi.lhs, env, max_products))
    if isinstance(phi, Exists):
        body = lift_qe(step, phi.body, max_products=max_products)
        value = _first_witness(step, body, env, max_products)
        return Witness(value, _evidence(step, phi.body, extend(env, value), max_products))
    if isinstance(phi, Forall):
        return UniversalEvidence(_universal_provider(step, phi.body, env, max_products))
    raise TypeError(f"not a Formula: {phi!r}")


def _universal_provider(
    step: ProdQEStep, body: Formula, env: Environment, max_products: int | None
):
    def provide(value: int) -> Evidence:
        inner = extend(env, value)
        if not _truth(step, body, inner, max_products):
            raise EngineError(
                f"universal evidence queried at {value} where the body fails"
            )
        return _evidence(step, body, inner, max_products)

    return provide


def _existential_refuter(
    step: ProdQEStep, body: Formula, env: Environment, max_products: int | None
):
    def refute(value: int) -> Refutation:
        inner = extend(env, value)
        if _truth(step, body, inner, max_products):
            raise EngineError(
                f"existential refutation queried at {value} where the body holds"
            )
        return _refutation(step, body, inner, max_products)

    return refute


def _refutation(
    step: ProdQEStep, phi: Formula, env: Environment, max_products: int | None
) -> Refutation:
    if isinstance(phi, Falsum):
        return FalsumRefuted()
    if isinstance(phi, Atom):
        return AtomFails()
    if isinstance(phi, Or):
        return NeitherHolds(
            _refutation(step, phi.lhs, env, max_products),
            _refutation(step, phi.rhs, env, max_products),
        )
    if isinstance(phi, And):
        if not _truth(step, phi.lhs, env, max_products):
            return LeftFails(_refutation(step, phi.lhs, env, max_products))
        return RightFails(_refutation(step, phi.rhs, env, max_products))
    if isinstance(phi, Implies):
        return Unimplied(
            _evidence(step, phi.lhs, env, max_products),
            _refutation(step, phi.rhs, env, max_products),
        )
    if isinstance(phi, Exists):
        return ExistsRefuted(_existential_refuter(step, phi.body, env, max_products))
    if isinstance(phi, Forall):
        # A false universal is a true negated existential; reuse its pipeline
        # to land on a concrete counterexample value.
        body = mk_not(lift_qe(step, phi.body, max_products=max_products))
        value = _first_witness(step, body, env, max_products)
        return Counterexample(
            value, _refutation(step, phi.body, extend(env, value), max_products)
        )
    raise TypeError(f"not a Formula: {phi!r}")


def lem(
    step: ProdQEStep,
    phi: Formula,
    env: Sequence = (),
    *,
    max_products: int | None = None,
) -> Evidence | Refutation:
    """Excluded middle, realized: evidence for phi or a refutation of it."""
    decision = decide(step, phi, env, max_products=max_products)
    if isinstance(decision, Yes):
        return decision.evidence
    return decision.refutation


def forall_or_counterexample(
    step: ProdQEStep,
    body: Formula,
    env: Sequence = (),
    *,
    max_products: int | None = None,
) -> UniversalEvidence | tuple[int, Refutation]:
    """For a body at arity n+1: universal evidence or a counterexample pair."""
    decision = decide(step, Forall(body), env, max_products=max_products)
    if isinstance(decision, Yes):
        evidence = decision.evidence
        if not isinstance(evidence, UniversalEvidence):
            raise EngineError(f"unexpected evidence shape for Forall: {evidence!r}")
        return evidence
    refutation = decision.refutation
    if not isinstance(refutation, Counterexample):
        raise EngineError(f"unexpected refutation shape for Forall: {refutation!r}")
    return refutation.value, refutation.sub


def exists_or_refutation(
    step: ProdQEStep,
    body: Formula,
    env: Sequence = (),
    *,
    max_products: int | None = None,
) -> tuple[int, Evidence] | ExistsRefuted:
    """For a body at arity n+1: a witness pair or a deferred refutation."""
    decision = decide(step, Exists(body), env, max_products=max_products)
    if isinstance(decision, Yes):
        evidence = decision.evidence
        if not isinstance(evidence, Witness):
            raise EngineError(f"unexpected evidence shape for Exists: {evidence!r}")
        return evidence.value, evidence.sub
    refutation = decision.refutation
    if not isinstance(refutation, ExistsRefuted):
        raise EngineError(f"unexpected refutation shape for Exists: {refutation!r}")
    return refutation


def instantiate_universal(evidence: UniversalEvidence, value: int) -> Evidence:
    """Evidence for the body at the given value, from universal evidence."""
    if not isinstance(evidence, UniversalEvidence):
        raise TypeError(f"not universal evidence: {evidence!r}")
    return evidence.instantiate(value)
