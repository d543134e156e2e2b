"""Bound expressions: variable | 0 | b' | b+b | b*b | |b| | 2^b.

Every constructor is monotone, so every expression denotes a monotone
total function.  Bounds share the term AST of the syntax package.
"""
from __future__ import annotations

import itertools

from ..syntax.parser import parse_term, render_term
from ..syntax.terms import (
    ZERO, Add, BlowUp, Fn, Mul, Succ, Term, Var, Zero, subst_term, subterms,
    term_vars,
)

DEFAULT_GUARD = 1 << 20   # largest exponent allowed in 2^b, in bits


class BoundSyntaxError(ValueError):
    pass


def check_bound(b: Term) -> Term:
    if isinstance(b, (Var, Zero)):
        return b
    if isinstance(b, (Succ, Add, Mul)) or (isinstance(b, Fn) and b.name in ("len", "pow2")):
        for k in subterms(b):
            check_bound(k)
        return b
    raise BoundSyntaxError(f"{render_term(b)} is outside the bound grammar")


def parse_bound(text: str) -> Term:
    return check_bound(parse_term(text))


def render_bound(b: Term) -> str:
    return render_term(b)


def bound_vars(b: Term) -> list[str]:
    return sorted(term_vars(b))


def eval_bound(b: Term, env: dict, guard: int = DEFAULT_GUARD) -> int:
    """Exact value; raises BlowUp when an exponent or intermediate exceeds the guard."""
    if isinstance(b, Var):
        return env[b.name]
    if isinstance(b, Zero):
        return 0
    if isinstance(b, Succ):
        return eval_bound(b.arg, env, guard) + 1
    if isinstance(b, Add):
        return eval_bound(b.left, env, guard) + eval_bound(b.right, env, guard)
    if isinstance(b, Mul):
        x = eval_bound(b.left, env, guard)
        y = eval_bound(b.right, env, guard)
        if x.bit_length() + y.bit_length() > guard + 1:
            raise BlowUp("product exceeds the blow-up guard")
        return x * y
    v = eval_bound(b.args[0], env, guard)
    if b.name == "len":
        return v.bit_length()
    if v > guard:
        raise BlowUp(f"2^{v} exceeds the blow-up guard")
    return 1 << v


def apply_lengths(b: Term, args: dict | None = None) -> Term:
    """b|s|: every variable x replaced by |x| (or by |args[x]| when given)."""
    args = args or {}
    return subst_term(b, {v: Fn("len", (args.get(v, Var(v)),)) for v in term_vars(b)})


def compose(b: Term, mapping: dict) -> Term:
    return subst_term(b, mapping)


def rename_to_x(b: Term) -> Term:
    """Unary bounds are written over x by convention."""
    vs = bound_vars(b)
    if len(vs) == 1 and vs[0] != "x":
        return subst_term(b, {vs[0]: Var("x")})
    return b


def is_variation(candidate: Term, original: Term) -> bool:
    """Whether candidate arises from original by an onto renaming of variables.

    Bounds bind no variables, so the injectivity requirement is vacuous and
    the check is a consistent parallel walk.
    """
    mapping: dict = {}

    def walk(c, o) -> bool:
        if isinstance(o, Var):
            if not isinstance(c, Var):
                return False
            if mapping.setdefault(o.name, c.name) != c.name:
                return False
            return True
        if type(c) is not type(o):
            return False
        if isinstance(o, Fn) and (o.name != c.name or len(o.args) != len(c.args)):
            return False
        return all(walk(a, b) for a, b in zip(subterms(c), subterms(o)))

    return walk(candidate, original)


def syntactic_variation_eq(b1: Term, b2: Term) -> bool:
    """True iff b1 is a syntactic variation of b2."""
    return is_variation(b1, b2)


def variation_by_search(b1: Term, b2: Term) -> bool:
    """Brute-force check over all maps from vars(b2) onto vars(b1)."""
    src, dst = bound_vars(b2), bound_vars(b1)
    for image in itertools.product(dst, repeat=len(src)):
        if set(image) != set(dst):
            continue
        if subst_term(b2, {s: Var(d) for s, d in zip(src, image)}) == b1:
            return True
    return not src and not dst and b1 == b2


def power(b: Term, k: int) -> Term:
    out = b
    for _ in range(k - 1):
        out = Mul(out, b)
    return out


def times(b: Term, k: int) -> Term:
    """k*b as a k-fold sum (k >= 1)."""
    out = b
    for _ in range(k - 1):
        out = Add(out, b)
    return out


def plus_const(b: Term, m: int) -> Term:
    for _ in range(m):
        b = Succ(b)
    return b


X = Var("x")
LEN_X = Fn("len", (X,))
