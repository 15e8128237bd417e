"""The three bundled example formulas, built directly as de Bruijn ASTs.

Kept separate from the parser so AST-level tests do not depend on parsing.
Environments list the innermost binding first, so inside both binders of
``exists x. exists y. ...`` the variable y is index 0 and x is index 1.
"""

from qelim import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Or,
    SNAtom,
    var_term,
    zero_term,
)


def sample0() -> Formula:
    """exists x. exists y. (x+3 = y+1 & 8 = y+4), closed."""
    return Exists(
        Exists(
            And(
                Atom(SNAtom(var_term(1, 3), var_term(0, 1)), 2),
                Atom(SNAtom(zero_term(8), var_term(0, 4)), 2),
            )
        )
    )


def sample1() -> Formula:
    """forall x. (x = 0 | exists y. x = y+1), closed."""
    return Forall(sample1_body())


def sample1_body() -> Formula:
    return Or(
        Atom(SNAtom(var_term(0), zero_term()), 1),
        Exists(Atom(SNAtom(var_term(1), var_term(0, 1)), 2)),
    )


def sample2_body() -> Formula:
    """x = 0 | exists y. x = y+2, one free variable."""
    return Or(
        Atom(SNAtom(var_term(0), zero_term()), 1),
        Exists(Atom(SNAtom(var_term(1), var_term(0, 2)), 2)),
    )
