"""Quantifier elimination and constructive decision for the theory of successor.

The public surface mirrors the module layout: ``formula`` for the AST and
evidence, ``dnf`` for products and conversion, ``engine`` for the
theory-generic elimination and decision entry points, ``successor`` for the
shipped theory with its oracles, ``parser`` for the named-variable syntax,
and ``cli`` for the command line tool.
"""

from .dnf import (
    Dnf,
    DnfLimitError,
    Literal,
    Product,
    Truth,
    interpret_dnf,
    interpret_product,
    to_dnf,
)
from .engine import (
    EngineError,
    ProdQEStep,
    decide,
    eliminate_dnf,
    exists_or_refutation,
    forall_or_counterexample,
    instantiate_universal,
    lem,
    lift_qe,
)
from .formula import (
    And,
    ArityError,
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
    NotQuantifierFree,
    Or,
    OrLeft,
    OrRight,
    Refutation,
    RightFails,
    Unimplied,
    UniversalEvidence,
    Witness,
    Yes,
    check_evidence,
    eval_qfree,
    extend,
    is_qfree,
    mk_not,
    mk_true,
)
from .parser import ParseError, SurfaceParser, UnboundNameError, parse, pretty
from .successor import (
    STEP,
    PivotError,
    SNAtom,
    SNTerm,
    SuccessorStep,
    UnsatisfiableProductError,
    atom_eval,
    candidates,
    canonicalize,
    eliminate_product,
    literal_truth,
    naive_decide,
    oracle_decide,
    prod_witness,
    subst_pivot,
    var_term,
    zero_term,
)

__all__ = [
    "And",
    "ArityError",
    "Atom",
    "AtomFails",
    "AtomHolds",
    "Both",
    "Consequent",
    "Counterexample",
    "Decision",
    "Dnf",
    "DnfLimitError",
    "EngineError",
    "Environment",
    "Evidence",
    "Exists",
    "ExistsRefuted",
    "Falsum",
    "FalsumRefuted",
    "Forall",
    "Formula",
    "Implies",
    "LeftFails",
    "Literal",
    "NegAntecedent",
    "NeitherHolds",
    "No",
    "NotQuantifierFree",
    "Or",
    "OrLeft",
    "OrRight",
    "ParseError",
    "PivotError",
    "ProdQEStep",
    "Product",
    "Refutation",
    "RightFails",
    "STEP",
    "SNAtom",
    "SNTerm",
    "SuccessorStep",
    "SurfaceParser",
    "Truth",
    "UnboundNameError",
    "Unimplied",
    "UniversalEvidence",
    "UnsatisfiableProductError",
    "Witness",
    "Yes",
    "atom_eval",
    "candidates",
    "canonicalize",
    "check_evidence",
    "decide",
    "eliminate_dnf",
    "eliminate_product",
    "eval_qfree",
    "exists_or_refutation",
    "extend",
    "forall_or_counterexample",
    "instantiate_universal",
    "interpret_dnf",
    "interpret_product",
    "is_qfree",
    "lem",
    "lift_qe",
    "literal_truth",
    "mk_not",
    "mk_true",
    "naive_decide",
    "oracle_decide",
    "parse",
    "pretty",
    "prod_witness",
    "subst_pivot",
    "to_dnf",
    "var_term",
    "zero_term",
]
