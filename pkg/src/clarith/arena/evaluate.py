"""Truth in the standard model, three-valued.

Closed terms are evaluated exactly.  A blind quantifier is decided by,
in order: evaluating its body with the bound variable left unknown
(Kleene logic), an exact search when the body is guarded by an explicit
bound, the polynomial rule (a quantifier-free polynomial body is
eventually constant in the variable), and finally a search up to the
blind bound.  When none of these settles it the answer is UNKNOWN.
"""
from __future__ import annotations

from ..syntax.formulas import (
    ALL, AND, EX, IMP, OR, Atom, Bin, Formula, Not, Quant, is_elementary,
)
from ..syntax.terms import (
    PTERMS, Add, BlowUp, Const, Fn, Mul, Succ, Term, Var, Zero, term_vars,
)

TRUE, FALSE, UNKNOWN = "true", "false", "unknown"

DEFAULT_RULES = frozenset({"reflexive", "succ-nonzero", "bounded", "polynomial"})
EXACT_CAP = 1 << 16      # largest range searched exhaustively by the exact rules
DEFAULT_WORK = 400_000   # evaluation steps before giving up with UNKNOWN


class _Unassigned(Exception):
    pass


class _OutOfWork(Exception):
    pass


def eval_term(t: Term, env: dict | None = None) -> int:
    """Value of a term; all its variables must be assigned in env."""
    env = env or {}
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        if t.name not in env:
            raise _Unassigned(t.name)
        return env[t.name]
    if isinstance(t, Succ):
        return eval_term(t.arg, env) + 1
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    _, fn = PTERMS[t.name]
    return fn(*(eval_term(a, env) for a in t.args))


def _not(v):
    return {TRUE: FALSE, FALSE: TRUE}.get(v, UNKNOWN)


def _and(a, b):
    if a == FALSE or b == FALSE:
        return FALSE
    return TRUE if a == TRUE and b == TRUE else UNKNOWN


def _or(a, b):
    if a == TRUE or b == TRUE:
        return TRUE
    return FALSE if a == FALSE and b == FALSE else UNKNOWN


def _positive_const(t: Term) -> bool:
    return isinstance(t, (Succ, Const))


class Evaluator:
    def __init__(self, blind_bound: int = 4096, rules=DEFAULT_RULES, work: int = DEFAULT_WORK):
        self.blind_bound = blind_bound
        self.rules = frozenset(rules)
        self.work = work
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.work:
            raise _OutOfWork()

    # -- atoms
    def atom(self, a: Atom, env: dict) -> str:
        self.tick()
        try:
            vals = [eval_term(t, env) for t in a.args]
        except _Unassigned:
            return self._symbolic_atom(a)
        except BlowUp:
            return UNKNOWN
        if a.rel == "=":
            return TRUE if vals[0] == vals[1] else FALSE
        if a.rel == "<=":
            return TRUE if vals[0] <= vals[1] else FALSE
        if a.rel == "<":
            return TRUE if vals[0] < vals[1] else FALSE
        if a.rel == "Bit":
            return TRUE if (vals[1] >> vals[0]) & 1 else FALSE
        raise ValueError(f"unknown relation {a.rel}")

    def _symbolic_atom(self, a: Atom) -> str:
        l, r = a.args if len(a.args) == 2 else (None, None)
        if "reflexive" in self.rules and l is not None and l == r:
            return FALSE if a.rel == "<" else TRUE
        if "succ-nonzero" in self.rules and a.rel == "=":
            if (isinstance(l, Zero) and _positive_const(r)) or (isinstance(r, Zero) and _positive_const(l)):
                return FALSE
        return UNKNOWN

    # -- formulas
    def value(self, f: Formula, env: dict, search: bool = True) -> str:
        """search=False: decide symbolically only, never enumerate."""
        if isinstance(f, Atom):
            return self.atom(f, env)
        if isinstance(f, Not):
            return _not(self.value(f.body, env, search))
        if isinstance(f, Bin):
            a = self.value(f.left, env, search)
            if f.op == AND:
                return FALSE if a == FALSE else _and(a, self.value(f.right, env, search))
            if f.op == OR:
                return TRUE if a == TRUE else _or(a, self.value(f.right, env, search))
            if f.op == IMP:
                return TRUE if a == FALSE else _or(_not(a), self.value(f.right, env, search))
            raise ValueError("choice connective in an elementary evaluation")
        if f.op not in (ALL, EX):
            raise ValueError("choice quantifier in an elementary evaluation")
        return self.quantifier(f, env, search)

    def quantifier(self, f: Quant, env: dict, search: bool = True) -> str:
        inner = {k: v for k, v in env.items() if k != f.var}
        v = self.value(f.body, inner, search=False)
        if v != UNKNOWN or not search:
            return v
        rng = self._guarded_range(f, env) if "bounded" in self.rules else None
        if rng is not None:
            return self._search(f, env, rng, complete=True)
        if "polynomial" in self.rules:
            rng = self._polynomial_range(f, env)
            if rng is not None:
                return self._search(f, env, rng, complete=True)
        return self._search(f, env, range(self.blind_bound + 1), complete=False)

    def _search(self, f: Quant, env: dict, rng, complete: bool) -> str:
        universal = f.op == ALL
        stop = FALSE if universal else TRUE
        seen_unknown = False
        for n in rng:
            env2 = dict(env)
            env2[f.var] = n
            v = self.value(f.body, env2)
            if v == stop:
                return stop
            if v == UNKNOWN:
                seen_unknown = True
        if complete and not seen_unknown:
            return TRUE if universal else FALSE
        return UNKNOWN

    def _guarded_range(self, f: Quant, env: dict):
        body = f.body
        want = IMP if f.op == ALL else AND
        if not (isinstance(body, Bin) and body.op == want and isinstance(body.left, Atom)):
            return None
        g = body.left
        if g.rel not in ("<=", "<") or f.var in term_vars(g.args[1]):
            return None
        try:
            limit = eval_term(g.args[1], env)
        except (_Unassigned, BlowUp):
            return None
        lhs = g.args[0]
        if lhs == Var(f.var):
            top = limit if g.rel == "<=" else limit - 1
        elif isinstance(lhs, Fn) and lhs.name == "len" and lhs.args[0] == Var(f.var):
            # |x| <= b  iff  x < 2^b
            bits = limit if g.rel == "<=" else limit - 1
            if bits < 0:
                return range(0)
            if bits > 20:
                return None
            top = (1 << bits) - 1
        else:
            return None
        if top + 1 > EXACT_CAP:
            return None
        return range(max(top + 1, 0))

    def _polynomial_range(self, f: Quant, env: dict):
        """A range after which the quantifier-free body no longer changes."""
        threshold = 0
        for g in _qf_atoms(f.body):
            if g is None or g.rel not in ("=", "<=", "<"):
                return None
            try:
                p = _poly_sub(_to_poly(g.args[0], f.var, env), _to_poly(g.args[1], f.var, env))
            except (_Unassigned, _NotPoly):
                return None
            threshold = max(threshold, _sign_threshold(p))
        if threshold + 1 > EXACT_CAP:
            return None
        return range(threshold + 1)


def _qf_atoms(f: Formula):
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from _qf_atoms(f.body)
    elif isinstance(f, Bin):
        yield from _qf_atoms(f.left)
        yield from _qf_atoms(f.right)
    else:
        yield None


class _NotPoly(Exception):
    pass


def _to_poly(t: Term, x: str, env: dict) -> dict:
    """Coefficients {degree: int} of t as a polynomial in x."""
    if isinstance(t, Var):
        if t.name == x:
            return {1: 1}
        if t.name not in env:
            raise _Unassigned(t.name)
        return {0: env[t.name]}
    if isinstance(t, Zero):
        return {}
    if isinstance(t, Const):
        return {0: t.value}
    if isinstance(t, Succ):
        return _poly_add(_to_poly(t.arg, x, env), {0: 1})
    if isinstance(t, Add):
        return _poly_add(_to_poly(t.left, x, env), _to_poly(t.right, x, env))
    if isinstance(t, Mul):
        a, b = _to_poly(t.left, x, env), _to_poly(t.right, x, env)
        out: dict = {}
        for i, ca in a.items():
            for j, cb in b.items():
                out[i + j] = out.get(i + j, 0) + ca * cb
        return out
    if x not in term_vars(t):
        try:
            return {0: eval_term(t, env)}
        except BlowUp:
            raise _NotPoly()
    raise _NotPoly()


def _poly_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


def _poly_sub(a, b):
    return _poly_add(a, {k: -v for k, v in b.items()})


def _sign_threshold(p: dict) -> int:
    """Every real root of p lies below the returned integer (Cauchy bound)."""
    p = {k: v for k, v in p.items() if v}
    if not p:
        return 0
    n = max(p)
    lead = abs(p[n])
    biggest = max((abs(v) for k, v in p.items() if k != n), default=0)
    return 2 + -(-biggest // lead)


def eval_elementary(p: Formula, blind_bound: int = 4096, rules=DEFAULT_RULES,
                    work: int = DEFAULT_WORK, env: dict | None = None) -> str:
    """TRUE, FALSE or UNKNOWN for an elementary (para)sentence."""
    if not is_elementary(p):
        raise ValueError("eval_elementary needs an elementary formula")
    ev = Evaluator(blind_bound, rules, work)
    try:
        return ev.value(p, dict(env or {}))
    except _OutOfWork:
        return UNKNOWN


def eval_closed_term(t: Term) -> int:
    if term_vars(t):
        raise ValueError("eval_term needs a closed term")
    return eval_term(t)
