"""The elimination engine over the successor step: lifting, deciding, evidence."""

from random import Random

import pytest

from qelim import (
    And,
    ArityError,
    Atom,
    AtomFails,
    AtomHolds,
    Both,
    Consequent,
    Counterexample,
    Dnf,
    DnfLimitError,
    Evidence,
    Exists,
    ExistsRefuted,
    Falsum,
    FalsumRefuted,
    Forall,
    Implies,
    Literal,
    NegAntecedent,
    NeitherHolds,
    No,
    Or,
    OrLeft,
    OrRight,
    Product,
    SNAtom,
    STEP,
    UniversalEvidence,
    Unimplied,
    Witness,
    Yes,
    candidates,
    check_evidence,
    decide,
    eliminate_dnf,
    eval_qfree,
    exists_or_refutation,
    forall_or_counterexample,
    instantiate_universal,
    is_qfree,
    lem,
    lift_qe,
    mk_not,
    mk_true,
    oracle_decide,
    var_term,
    zero_term,
)
from randgen import random_env, random_formula
from samples import sample0, sample1, sample1_body, sample2_body


def x_eq(k: int) -> Atom:
    return Atom(SNAtom(var_term(0), zero_term(k)), 1)


def _nobody(value: int):
    raise AssertionError("dummy provider should never be called")


# --- eliminate_dnf ---------------------------------------------------------------


def test_eliminate_dnf_empty():
    assert eliminate_dnf(STEP, Dnf((), 1)) == Falsum(0)


def test_eliminate_dnf_singleton_and_pair():
    p1 = Product((Literal.pos(SNAtom(var_term(0), zero_term(5))),), 1)
    p2 = Product((Literal.neg(SNAtom(var_term(0), zero_term(0))),), 1)
    assert eliminate_dnf(STEP, Dnf((p1,), 1)) == STEP.eliminate_product(p1)
    assert eliminate_dnf(STEP, Dnf((p1, p2), 1)) == Or(
        STEP.eliminate_product(p1), STEP.eliminate_product(p2)
    )


# --- lift_qe ------------------------------------------------------------------------


def test_lift_qe_leaves_qfree_untouched():
    phi = Or(x_eq(3), mk_not(x_eq(0)))
    assert lift_qe(STEP, phi) == phi


def test_lift_qe_examples():
    lifted = lift_qe(STEP, Exists(x_eq(5)))
    assert is_qfree(lifted)
    assert lifted.arity == 0
    assert eval_qfree(lifted, ()) is True

    lifted = lift_qe(STEP, Forall(x_eq(0)))
    assert is_qfree(lifted)
    assert eval_qfree(lifted, ()) is False

    assert eval_qfree(lift_qe(STEP, sample0()), ()) is True
    assert eval_qfree(lift_qe(STEP, Forall(sample2_body())), ()) is False


def test_lift_qe_idempotent():
    rng = Random(41)
    for _ in range(200):
        arity = rng.randint(0, 2)
        phi = random_formula(rng, arity, rng.randint(1, 5), 3)
        once = lift_qe(STEP, phi)
        again = lift_qe(STEP, once)
        assert again == once
        env = random_env(rng, arity)
        assert eval_qfree(again, env) == eval_qfree(once, env)


def test_lift_qe_matches_oracle():
    rng = Random(42)
    for _ in range(400):
        arity = rng.randint(0, 2)
        phi = random_formula(rng, arity, rng.randint(1, 5), 3)
        lifted = lift_qe(STEP, phi)
        assert is_qfree(lifted)
        env = random_env(rng, arity)
        assert eval_qfree(lifted, env) == oracle_decide(phi, env), repr(phi)


# --- decide --------------------------------------------------------------------------


def test_decide_bundled_existential():
    assert decide(STEP, sample0()) == Yes(
        Witness(2, Witness(4, Both(AtomHolds(), AtomHolds())))
    )


def test_decide_falsum():
    assert decide(STEP, Falsum(0)) == No(FalsumRefuted())


def test_decide_open_body_at_one():
    decision = decide(STEP, sample2_body(), (1,))
    assert decision == No(NeitherHolds(AtomFails(), ExistsRefuted(_nobody)))
    assert check_evidence(decision, sample2_body(), (1,))


def test_decide_failing_universal():
    decision = decide(STEP, Forall(sample2_body()))
    assert decision == No(
        Counterexample(1, NeitherHolds(AtomFails(), ExistsRefuted(_nobody)))
    )
    assert check_evidence(decision, Forall(sample2_body()), ())


def test_decide_env_mismatch():
    with pytest.raises(ArityError):
        decide(STEP, Falsum(1), ())


def test_decide_prefers_left_disjunct_and_first_product():
    assert decide(STEP, Exists(Or(x_eq(1), x_eq(0)))) == Yes(
        Witness(1, OrLeft(AtomHolds()))
    )


def test_decide_implication_branches():
    assert decide(STEP, Implies(Falsum(0), mk_true(0))) == Yes(
        NegAntecedent(FalsumRefuted())
    )
    assert decide(STEP, Implies(mk_true(0), mk_true(0))) == Yes(
        Consequent(NegAntecedent(FalsumRefuted()))
    )


# --- lem -----------------------------------------------------------------------------


def test_lem_examples():
    assert lem(STEP, Falsum(0)) == FalsumRefuted()
    assert lem(STEP, sample0()) == Witness(2, Witness(4, Both(AtomHolds(), AtomHolds())))
    assert isinstance(lem(STEP, sample1()), UniversalEvidence)


def test_lem_consistent_with_decide():
    rng = Random(43)
    for _ in range(50):
        arity = rng.randint(0, 1)
        phi = random_formula(rng, arity, rng.randint(1, 4), 2)
        env = random_env(rng, arity)
        branch = lem(STEP, phi, env)
        decision = decide(STEP, phi, env)
        assert isinstance(branch, Evidence) == isinstance(decision, Yes)


# --- quantifier front doors -------------------------------------------------------------


def test_forall_or_counterexample_bundled_body():
    result = forall_or_counterexample(STEP, sample2_body())
    assert isinstance(result, tuple)
    value, refutation = result
    assert value == 1
    assert check_evidence(No(refutation), sample2_body(), (1,))


def test_forall_or_counterexample_reflexive():
    body = Atom(SNAtom(var_term(0), var_term(0)), 1)
    result = forall_or_counterexample(STEP, body)
    assert isinstance(result, UniversalEvidence)
    for v in {0, 1} | candidates(body, ()):
        assert check_evidence(Yes(result.instantiate(v)), body, (v,))


def test_forall_or_counterexample_negated_atom():
    body = mk_not(x_eq(3))
    for v in range(11):
        assert eval_qfree(body, (v,)) == (v != 3)
    result = forall_or_counterexample(STEP, body)
    assert result == (3, Unimplied(AtomHolds(), FalsumRefuted()))
    assert check_evidence(No(result[1]), body, (3,))


def test_exists_or_refutation_examples():
    assert exists_or_refutation(STEP, x_eq(5)) == (5, AtomHolds())

    refuted = exists_or_refutation(STEP, Falsum(1))
    assert isinstance(refuted, ExistsRefuted)
    assert check_evidence(No(refuted), Exists(Falsum(1)), ())

    inner = sample0().body
    assert exists_or_refutation(STEP, inner) == (
        2,
        Witness(4, Both(AtomHolds(), AtomHolds())),
    )


def test_instantiate_universal_bundled():
    decision = decide(STEP, sample1())
    assert isinstance(decision, Yes)
    ev = decision.evidence
    assert instantiate_universal(ev, 0) == OrLeft(AtomHolds())
    assert instantiate_universal(ev, 5) == OrRight(Witness(4, AtomHolds()))
    rng = Random(44)
    for _ in range(100):
        v = rng.randint(0, 60)
        sub = instantiate_universal(ev, v)
        assert check_evidence(Yes(sub), sample1_body(), (v,))


def test_instantiate_universal_rejects_other_evidence():
    with pytest.raises(TypeError):
        instantiate_universal(AtomHolds(), 0)


# --- resource ceiling ----------------------------------------------------------------------


def test_max_products_threads_through():
    phi = x_eq(1)
    k = 1
    for _ in range(8):
        phi = And(phi, Or(x_eq(2 * k), x_eq(2 * k + 1)))
        k += 1
    blowup = Exists(phi)
    assert decide(STEP, blowup, max_products=None) == decide(STEP, blowup)
    with pytest.raises(DnfLimitError):
        decide(STEP, blowup, max_products=100)
    with pytest.raises(DnfLimitError):
        lift_qe(STEP, blowup, max_products=100)
