"""Formula AST and the purely syntactic operations on it."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .terms import (
    ZERO, Const, Fn, Succ, Add, Mul, Term, Var, has_constants, has_pterms,
    subst_term, term_vars, subterms,
)

AND, OR, IMP, MEET, JOIN = "&", "|", "->", "cand", "cor"
ALL, EX, CALL, CEX = "all", "ex", "call", "cex"

BINARY_OPS = (AND, OR, IMP, MEET, JOIN)
QUANT_OPS = (ALL, EX, CALL, CEX)
CHOICE_OPS = (MEET, JOIN, CALL, CEX)
RELATIONS = ("=", "<=", "<", "Bit")


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Quant:
    op: str
    var: str
    body: "Formula"


Formula = Union[Atom, Not, Bin, Quant]


class CaptureError(ValueError):
    pass


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


def le(a: Term, b: Term) -> Atom:
    return Atom("<=", (a, b))


def lt(a: Term, b: Term) -> Atom:
    return Atom("<", (a, b))


def bit_atom(y: Term, x: Term) -> Atom:
    return Atom("Bit", (y, x))


TRUE_ATOM = eq(ZERO, ZERO)
FALSE_ATOM = eq(ZERO, Succ(ZERO))


def iff(a: Formula, b: Formula) -> Formula:
    return Bin(AND, Bin(IMP, a, b), Bin(IMP, b, a))


def children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, Bin):
        return (f.left, f.right)
    if isinstance(f, Quant):
        return (f.body,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    yield f
    for c in children(f):
        yield from walk(c)


def atoms(f: Formula) -> Iterator[Atom]:
    return (g for g in walk(f) if isinstance(g, Atom))


def is_elementary(f: Formula) -> bool:
    for g in walk(f):
        if isinstance(g, (Bin, Quant)) and g.op in CHOICE_OPS:
            return False
    return True


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        out: set[str] = set()
        for t in f.args:
            out |= term_vars(t)
        return out
    if isinstance(f, Quant):
        return free_vars(f.body) - {f.var}
    out = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f: Formula) -> set[str]:
    """Every variable name occurring in f, free or bound."""
    out: set[str] = set()
    for g in walk(f):
        if isinstance(g, Atom):
            for t in g.args:
                out |= term_vars(t)
        elif isinstance(g, Quant):
            out.add(g.var)
    return out


def bound_vars(f: Formula) -> set[str]:
    return {g.var for g in walk(f) if isinstance(g, Quant)}


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def is_paraformula(f: Formula) -> bool:
    """True when a binary constant other than 0 occurs."""
    return any(has_constants(t) for a in atoms(f) for t in a.args)


def has_abbreviations(f: Formula) -> bool:
    return any(a.rel != "=" or any(has_pterms(t) for t in a.args) for a in atoms(f))


def is_pure(f: Formula) -> bool:
    """Built from 0, ', +, * and = only, with no constants besides 0."""
    return not is_paraformula(f) and not has_abbreviations(f)


def map_terms(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(fn(t) for t in f.args))
    if isinstance(f, Not):
        return Not(map_terms(f.body, fn))
    if isinstance(f, Bin):
        return Bin(f.op, map_terms(f.left, fn), map_terms(f.right, fn))
    return Quant(f.op, f.var, map_terms(f.body, fn))


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace free occurrences of x by t; refuses to capture variables of t."""
    tv = term_vars(t)

    def go(g: Formula, binders: tuple) -> Formula:
        if isinstance(g, Atom):
            if x not in free_vars(g):
                return g
            clash = [b for b in binders if b in tv]
            if clash:
                raise CaptureError(f"substituting for {x} would be captured by the binder of {clash[-1]}")
            return Atom(g.rel, tuple(subst_term(a, {x: t}) for a in g.args))
        if isinstance(g, Not):
            return Not(go(g.body, binders))
        if isinstance(g, Bin):
            return Bin(g.op, go(g.left, binders), go(g.right, binders))
        if g.var == x:
            return g
        return Quant(g.op, g.var, go(g.body, binders + (g.var,)))

    return go(f, ())


def substitute_many(f: Formula, mapping: dict) -> Formula:
    """Simultaneous substitution; mapping values must be closed terms or fresh variables."""
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(subst_term(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute_many(f.body, mapping))
    if isinstance(f, Bin):
        return Bin(f.op, substitute_many(f.left, mapping), substitute_many(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    body_free = free_vars(f.body)
    for k, v in inner.items():
        if k in body_free and f.var in term_vars(v):
            raise CaptureError(f"simultaneous substitution captured by the binder of {f.var}")
    return Quant(f.op, f.var, substitute_many(f.body, inner))


def close(f: Formula, kind: str) -> Formula:
    """Prefix quantifiers of the given kind over the free variables, alphabetically."""
    if kind not in QUANT_OPS:
        raise ValueError(f"unknown quantifier kind {kind!r}")
    for v in sorted(free_vars(f), reverse=True):
        f = Quant(kind, v, f)
    return f


def alpha_key(f: Formula, env: dict | None = None, depth: int = 0):
    """A hashable key equal for alpha-equivalent formulas."""
    env = env or {}
    if isinstance(f, Atom):
        ren = {k: Var(v) for k, v in env.items()}
        return ("atom", f.rel, tuple(subst_term(t, ren) for t in f.args))
    if isinstance(f, Not):
        return ("not", alpha_key(f.body, env, depth))
    if isinstance(f, Bin):
        return (f.op, alpha_key(f.left, env, depth), alpha_key(f.right, env, depth))
    inner = dict(env)
    inner[f.var] = f"%{depth}"
    return (f.op, alpha_key(f.body, inner, depth + 1))


def alpha_eq(f: Formula, g: Formula) -> bool:
    return alpha_key(f) == alpha_key(g)


def fresh_var(avoid, base: str = "y") -> str:
    """Lowest-indexed variable base1, base2, ... not in ``avoid``."""
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def dual_op(op: str) -> str:
    return {AND: OR, OR: AND, MEET: JOIN, JOIN: MEET,
            ALL: EX, EX: ALL, CALL: CEX, CEX: CALL}[op]


def negate(f: Formula) -> Formula:
    """Negation pushed inward so that ~ only ever sits on elementary parts."""
    if is_elementary(f):
        return f.body if isinstance(f, Not) else Not(f)
    if isinstance(f, Bin):
        if f.op == IMP:
            return Bin(AND, f.left, negate(f.right))
        return Bin(dual_op(f.op), negate(f.left), negate(f.right))
    if isinstance(f, Quant):
        return Quant(dual_op(f.op), f.var, negate(f.body))
    return negate(f.body) if isinstance(f, Not) else Not(f)


def normalize(f: Formula) -> Formula:
    """Remove every ~ that dominates a choice operator."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        body = normalize(f.body)
        return Not(body) if is_elementary(body) else negate(body)
    if isinstance(f, Bin):
        return Bin(f.op, normalize(f.left), normalize(f.right))
    return Quant(f.op, f.var, normalize(f.body))


def check_negations(f: Formula) -> Formula | None:
    """The first ~-subformula whose operand is not elementary, if any."""
    for g in walk(f):
        if isinstance(g, Not) and not is_elementary(g.body):
            return g
    return None


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))


# ---------------------------------------------------------------------------
# Fixed defining formulas for the abbreviations.  Each helper builds a pure
# formula in the language of 0, ', +, *, = only.

class _Fresh:
    def __init__(self, avoid):
        self.avoid = set(avoid)

    def __call__(self, base="w") -> str:
        v = fresh_var(self.avoid, base)
        self.avoid.add(v)
        return v


def _ex(vs, body):
    for v in reversed(vs):
        body = Quant(EX, v, body)
    return body


def _conj(*fs):
    out = fs[0]
    for g in fs[1:]:
        out = Bin(AND, out, g)
    return out


def _le(a, b, fr):
    w = fr()
    return Quant(EX, w, eq(Add(a, Var(w)), b))


def _lt(a, b, fr):
    w = fr()
    return Quant(EX, w, eq(Add(a, Succ(Var(w))), b))


def _beta(a, b, i, c, fr):
    # remainder of a modulo 1+(i+1)*b equals c (Goedel's beta function)
    q = fr()
    m = Add(Succ(ZERO), Mul(Succ(i), b))
    return Quant(EX, q, _conj(eq(a, Add(Mul(Var(q), m), c)), _lt(c, m, fr)))


def pow2_relation(y: Term, p: Term, fr) -> Formula:
    """p = 2^y, via a beta-coded sequence 1, 2, 4, ..., 2^y."""
    a, b, i, c = fr("a"), fr("b"), fr("i"), fr("c")
    A, B, I, C = Var(a), Var(b), Var(i), Var(c)
    step = Quant(ALL, i, Bin(IMP, _lt(I, y, fr),
                             Quant(EX, c, _conj(_beta(A, B, I, C, fr),
                                                _beta(A, B, Succ(I), Add(C, C), fr)))))
    return _ex([a, b], _conj(_beta(A, B, ZERO, Succ(ZERO), fr), step, _beta(A, B, y, p, fr)))


def len_relation(v: Term, x: Term, fr) -> Formula:
    """v = |x|: the least t with x < 2^t."""
    p, w, q = fr("p"), fr("w"), fr("q")
    least = Quant(ALL, w, Bin(IMP, _lt(Var(w), v, fr),
                              Quant(EX, q, _conj(pow2_relation(Var(w), Var(q), fr),
                                                 _le(Var(q), x, fr)))))
    return Quant(EX, p, _conj(pow2_relation(v, Var(p), fr), _lt(x, Var(p), fr), least))


def bit_relation(y: Term, x: Term, fr) -> Formula:
    """(x)_y = 1: x = q*2^(y+1) + 2^y + r with r < 2^y."""
    p, q, r = fr("p"), fr("q"), fr("r")
    P, Q, R = Var(p), Var(q), Var(r)
    return _ex([p, q, r], _conj(pow2_relation(y, P, fr),
                                eq(x, Add(Add(Mul(Q, Add(P, P)), P), R)),
                                _lt(R, P, fr)))


_FN_RELATIONS = {
    "len": lambda v, args, fr: len_relation(v, args[0], fr),
    "pow2": lambda v, args, fr: pow2_relation(args[0], v, fr),
}


def _innermost_fn(t: Term):
    for k in subterms(t):
        found = _innermost_fn(k)
        if found is not None:
            return found
    return t if isinstance(t, Fn) else None


def _replace_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    kids = subterms(t)
    if not kids:
        return t
    from .terms import rebuild
    return rebuild(t, [_replace_term(k, old, new) for k in kids])


def expand(f: Formula) -> Formula:
    """Rewrite abbreviations into their fixed defining formulas."""
    fr = _Fresh(all_vars(f))

    def atom(a: Atom) -> Formula:
        for t in a.args:
            fn = _innermost_fn(t)
            if fn is not None:
                if fn.name not in _FN_RELATIONS:
                    raise ValueError(f"no defining formula for {fn.name}")
                v = fr("v")
                rest = Atom(a.rel, tuple(_replace_term(s, fn, Var(v)) for s in a.args))
                return Quant(EX, v, Bin(AND, _FN_RELATIONS[fn.name](Var(v), fn.args, fr), atom(rest)))
        if a.rel == "<=":
            return _le(a.args[0], a.args[1], fr)
        if a.rel == "<":
            return _lt(a.args[0], a.args[1], fr)
        if a.rel == "Bit":
            return bit_relation(a.args[0], a.args[1], fr)
        return a

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return atom(g)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, Bin):
            return Bin(g.op, go(g.left), go(g.right))
        return Quant(g.op, g.var, go(g.body))

    return go(f)

