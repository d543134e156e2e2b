"""Random terms, formulas and critical formulas.

Two flavours: hypothesis strategies for property tests, and seeded
``random.Random`` builders for the fixed-size acceptance samples.
"""
from __future__ import annotations

import random

from hypothesis import strategies as st

from clarith.cl12 import Cl12Proof, Justification, ProofLine, Sequent

from clarith.syntax import (
    ALL, AND, CALL, CEX, EX, IMP, JOIN, MEET, OR, ZERO, Add, Atom, Bin, Const,
    Mul, Not, Quant, Succ, Var, close,
)

VARS = ("u", "v", "x", "y", "z")
RELS = ("=", "<=", "<")


# ---------------------------------------------------------------------------
# hypothesis

def terms(vars_=VARS, depth: int = 3):
    leaves = st.one_of(
        st.sampled_from(vars_).map(Var),
        st.just(ZERO),
        st.integers(1, 40).map(Const),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Succ),
            st.tuples(sub, sub).map(lambda p: Add(*p)),
            st.tuples(sub, sub).map(lambda p: Mul(*p)),
        ),
        max_leaves=depth * 2,
    )


def atoms(vars_=VARS):
    return st.builds(lambda r, a, b: Atom(r, (a, b)), st.sampled_from(RELS), terms(vars_), terms(vars_))


def elementary_formulas(vars_=VARS):
    return st.recursive(
        atoms(vars_),
        lambda sub: st.one_of(
            sub.map(Not),
            st.builds(Bin, st.sampled_from((AND, OR, IMP)), sub, sub),
            st.builds(Quant, st.sampled_from((ALL, EX)), st.sampled_from(vars_), sub),
        ),
        max_leaves=6,
    )


def formulas(vars_=VARS):
    """Formulas whose negations only sit on elementary parts."""
    return st.recursive(
        elementary_formulas(vars_),
        lambda sub: st.one_of(
            st.builds(Bin, st.sampled_from((AND, OR, IMP, MEET, JOIN)), sub, sub),
            st.builds(Quant, st.sampled_from((ALL, EX, CALL, CEX)), st.sampled_from(vars_), sub),
        ),
        max_leaves=6,
    )


# ---------------------------------------------------------------------------
# seeded builders

def random_term(rng: random.Random, depth: int = 2, vars_=VARS):
    if depth == 0 or rng.random() < 0.35:
        k = rng.randrange(3)
        if k == 0:
            return Var(rng.choice(vars_))
        return ZERO if k == 1 else Const(rng.randrange(1, 40))
    k = rng.randrange(3)
    if k == 0:
        return Succ(random_term(rng, depth - 1, vars_))
    cls = Add if k == 1 else Mul
    return cls(random_term(rng, depth - 1, vars_), random_term(rng, depth - 1, vars_))


def random_atom(rng: random.Random, vars_=VARS):
    return Atom(rng.choice(RELS), (random_term(rng, 2, vars_), random_term(rng, 2, vars_)))


def random_elementary(rng: random.Random, depth: int = 2, vars_=VARS):
    if depth == 0 or rng.random() < 0.3:
        a = random_atom(rng, vars_)
        return Not(a) if rng.random() < 0.2 else a
    k = rng.randrange(3)
    if k == 0:
        return Bin(rng.choice((AND, OR, IMP)), random_elementary(rng, depth - 1, vars_),
                   random_elementary(rng, depth - 1, vars_))
    if k == 1:
        return Quant(rng.choice((ALL, EX)), rng.choice(vars_), random_elementary(rng, depth - 1, vars_))
    return Not(random_elementary(rng, depth - 1, vars_))


def random_formula(rng: random.Random, depth: int = 3, vars_=VARS):
    if depth == 0 or rng.random() < 0.25:
        return random_elementary(rng, 1, vars_)
    k = rng.randrange(4)
    if k == 0:
        return Bin(rng.choice((MEET, JOIN)), random_formula(rng, depth - 1, vars_),
                   random_formula(rng, depth - 1, vars_))
    if k == 1:
        return Quant(rng.choice((CALL, CEX)), rng.choice(vars_), random_formula(rng, depth - 1, vars_))
    if k == 2:
        return Bin(rng.choice((AND, OR, IMP)), random_formula(rng, depth - 1, vars_),
                   random_formula(rng, depth - 1, vars_))
    return Quant(rng.choice((ALL, EX)), rng.choice(vars_), random_formula(rng, depth - 1, vars_))


def random_critical(rng: random.Random, depth: int = 3, vars_=VARS):
    """A formula built by the four clauses of the inductive definition of critical:

    a cor/cex formula; a disjunction of two critical formulas; a conjunction
    with at least one critical conjunct; a blind quantification of a critical
    formula.
    """
    clause = 0 if depth == 0 else rng.randrange(4)
    if clause == 0:
        if rng.random() < 0.5:
            return Bin(JOIN, random_formula(rng, 1, vars_), random_formula(rng, 1, vars_))
        return Quant(CEX, rng.choice(vars_), random_formula(rng, 1, vars_))
    if clause == 1:
        return Bin(OR, random_critical(rng, depth - 1, vars_), random_critical(rng, depth - 1, vars_))
    if clause == 2:
        crit, other = random_critical(rng, depth - 1, vars_), random_formula(rng, 2, vars_)
        return Bin(AND, crit, other) if rng.random() < 0.5 else Bin(AND, other, crit)
    return Quant(rng.choice((ALL, EX)), rng.choice(vars_), random_critical(rng, depth - 1, vars_))


def random_sentence(rng: random.Random, depth: int = 3):
    """A formula with every free variable choice-quantified (so moves are available)."""
    return close(random_formula(rng, depth), rng.choice((CALL, CEX)))


def random_proof(rng: random.Random) -> Cl12Proof:
    """A well-formed (not necessarily correct) CL12 proof object."""
    lines = []
    for n in range(1, rng.randrange(2, 7)):
        ante = tuple(random_formula(rng, 2) for _ in range(rng.randrange(3)))
        seq = Sequent(ante, random_formula(rng, 2))
        earlier = list(range(1, n))
        rule = rng.choice(["Wait", "MeetChoose", "JoinChoose", "Replicate"]) if earlier else "Wait"
        if rule == "Wait":
            j = Justification("Wait", tuple(rng.sample(earlier, min(len(earlier), rng.randrange(3)))))
        elif rule == "Replicate":
            j = Justification("Replicate", (rng.choice(earlier),), index=rng.randrange(3))
        else:
            addr = rng.choice(["S", "A0", "A1.0", "S.1.0"])
            inst = rng.choice([None, "0", "1", "y2", "#101"])
            j = Justification(rule, (rng.choice(earlier),), addr, inst)
        lines.append(ProofLine(n, seq, j))
    return Cl12Proof(lines)
