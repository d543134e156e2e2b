"""Classical validity of the elementarization of a sequent.

The negation of (E1 & ... & En) -> F is refuted by a ground tableau:
existentials get fresh constants, universals are instantiated with the
ground terms of the branch, and literal sets are tested for consistency
by congruence closure with every function symbol uninterpreted.  The
atoms 0=0 and 0=0' are the logical constants true and false.

``valid`` means the tableau closed.  ``invalid`` needs a certificate:
either an open, saturated branch without universals over a signature
free of defined symbols (a genuine countermodel), or a ground
instantiation that is false in the standard model.  Anything else is
``unknown``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..arena.evaluate import FALSE, eval_elementary
from ..syntax.formulas import (
    ALL, AND, EX, FALSE_ATOM, IMP, OR, TRUE_ATOM, Atom, Bin, Formula, Not,
    Quant, atoms, free_vars, substitute, substitute_many,
)
from ..syntax.game import elementarize
from ..syntax.terms import Const, Fn, Term, Var, Zero, const, has_pterms, subterms
from .sequent import Sequent

VALID, INVALID, UNKNOWN = "valid", "invalid", "unknown"
DEFAULT_BUDGET = 2000


@dataclass(frozen=True)
class StabilityResult:
    verdict: str
    reason: str = ""
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.verdict == VALID


def sequent_formula(s: Sequent) -> Formula:
    """(E1 & ... & En) -> F over the elementarizations."""
    succ = elementarize(s.succedent)
    if not s.antecedent:
        return succ
    ante = [elementarize(a) for a in s.antecedent]
    conj = ante[0]
    for a in ante[1:]:
        conj = Bin(AND, conj, a)
    return Bin(IMP, conj, succ)


# ---------------------------------------------------------------------------
# negation normal form with logical constants

_T, _F = ("top",), ("bot",)


def _nnf(f: Formula, positive: bool):
    """Nested tuples: ("lit", pos, Atom), ("and"/"or", a, b), ("all"/"ex", var, Formula, pos), _T, _F."""
    if isinstance(f, Atom):
        if f == TRUE_ATOM:
            return _T if positive else _F
        if f == FALSE_ATOM:
            return _F if positive else _T
        return ("lit", positive, f)
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, Bin):
        if f.op == IMP:
            l, r = _nnf(f.left, not positive), _nnf(f.right, positive)
            return _or(l, r) if positive else _and(l, r)
        l, r = _nnf(f.left, positive), _nnf(f.right, positive)
        conj = (f.op == AND) == positive
        return _and(l, r) if conj else _or(l, r)
    kind = "all" if (f.op == ALL) == positive else "ex"
    return (kind, f.var, f.body, positive)


def _and(a, b):
    if a == _F or b == _F:
        return _F
    if a == _T:
        return b
    if b == _T:
        return a
    return ("and", a, b)


def _or(a, b):
    if a == _T or b == _T:
        return _T
    if a == _F:
        return b
    if b == _F:
        return a
    return ("or", a, b)


# ---------------------------------------------------------------------------
# congruence closure

_TRUE_C = Fn("@true", ())


def _lit_eq(atom: Atom):
    """An atom as an equation between ground terms."""
    if atom.rel == "=":
        return atom.args
    return Fn("@" + atom.rel, tuple(atom.args)), _TRUE_C


def _head(t: Term):
    if isinstance(t, Fn):
        return ("fn", t.name, len(t.args))
    if isinstance(t, Const):
        return ("const", t.value)
    return (type(t).__name__,)


class _Closure:
    def __init__(self):
        self.parent: dict = {}
        self.terms: list = []

    def add(self, t: Term):
        if t in self.parent:
            return
        for k in subterms(t):
            self.add(k)
        self.parent[t] = t
        self.terms.append(t)

    def find(self, t):
        while self.parent[t] != t:
            self.parent[t] = self.parent[self.parent[t]]
            t = self.parent[t]
        return t

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def close(self):
        changed = True
        while changed:
            changed = False
            sig: dict = {}
            for t in self.terms:
                kids = subterms(t)
                if not kids:
                    continue
                key = (_head(t),) + tuple(self.find(k) for k in kids)
                if key in sig:
                    changed |= self.union(t, sig[key])
                else:
                    sig[key] = t


def consistent(literals) -> bool:
    """Whether a set of (positive, Atom) ground literals has a model with uninterpreted symbols."""
    cc = _Closure()
    eqs, neqs = [], []
    cc.add(_TRUE_C)
    for pos, atom in literals:
        a, b = _lit_eq(atom)
        cc.add(a)
        cc.add(b)
        (eqs if pos else neqs).append((a, b))
    for a, b in eqs:
        cc.union(a, b)
    cc.close()
    if any(cc.find(a) == cc.find(b) for a, b in neqs):
        return False
    # constants denote themselves, so two of them never share a class
    roots = set()
    for t in cc.terms:
        if isinstance(t, (Zero, Const)):
            r = cc.find(t)
            if r in roots:
                return False
            roots.add(r)
    return True


# ---------------------------------------------------------------------------
# tableau

class _OutOfBudget(Exception):
    pass


class _Tableau:
    def __init__(self, budget: int, rounds: int = 3):
        self.budget = budget
        self.rounds = rounds
        self.nodes = 0
        self.fresh = 0
        self.used_gamma = False
        self.open_model = None

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget()

    def skolem(self) -> Term:
        self.fresh += 1
        return Fn(f"@c{self.fresh}", ())

    def closed(self, todo: list, lits: tuple, gammas: tuple, used: frozenset, rounds: int) -> bool:
        """True if every branch below closes."""
        self.tick()
        todo = list(todo)
        lits = list(lits)
        gammas = list(gammas)
        while todo:
            f = todo.pop()
            if f == _F:
                return True
            if f == _T:
                continue
            tag = f[0]
            if tag == "lit":
                lits.append((f[1], f[2]))
                if not consistent(lits):
                    return True
            elif tag == "and":
                todo += [f[1], f[2]]
            elif tag == "ex":
                c = self.skolem()
                todo.append(_nnf(substitute(f[2], f[1], c), f[3]))
            elif tag == "all":
                gammas.append(f)
            else:  # or: branch, after the linear work is done
                rest = [g for g in todo if g[0] != "or"]
                if rest:
                    todo = [g for g in todo if g[0] == "or"] + [f] + rest
                    continue
                return (self.closed(todo + [f[1]], tuple(lits), tuple(gammas), used, rounds)
                        and self.closed(todo + [f[2]], tuple(lits), tuple(gammas), used, rounds))
        if not gammas:
            self.open_model = lits
            return False
        if rounds <= 0:
            return False
        self.used_gamma = True
        ground = _ground_terms(lits)
        new = []
        used = set(used)
        for g in gammas:
            for t in ground:
                key = (g, t)
                if key in used:
                    continue
                used.add(key)
                new.append(_nnf(substitute(g[2], g[1], t), g[3]))
        if not new:
            return False
        return self.closed(new, tuple(lits), tuple(gammas), frozenset(used), rounds - 1)


def _ground_terms(lits) -> list:
    out: list = [Zero()]
    seen = {Zero()}

    def add(t):
        for k in subterms(t):
            add(k)
        if t not in seen and not isinstance(t, Var):
            seen.add(t)
            out.append(t)

    for _, atom in lits:
        for t in atom.args:
            add(t)
    return out


_DEFINED_RELS = {"<", "<=", "Bit"}


def _uses_defined_symbols(f: Formula) -> bool:
    for a in atoms(f):
        if a.rel in _DEFINED_RELS or any(has_pterms(t) for t in a.args):
            return True
    return False


def stability(s: Sequent, budget: int = DEFAULT_BUDGET, samples=(0, 1, 2, 3),
              blind_bound: int = 256) -> StabilityResult:
    phi = sequent_formula(s)
    names = sorted(free_vars(phi))
    rigid = {v: Fn(f"@v:{v}", ()) for v in names}
    ground = substitute_many(phi, rigid) if rigid else phi
    tab = _Tableau(budget)
    try:
        closed = tab.closed([_nnf(ground, False)], (), (), frozenset(), tab.rounds)
    except _OutOfBudget:
        closed = None
    if closed:
        return StabilityResult(VALID, "tableau closed", tab.nodes)
    if closed is False and not tab.used_gamma and tab.open_model is not None \
            and not _uses_defined_symbols(phi):
        return StabilityResult(INVALID, "open branch: countermodel with uninterpreted symbols", tab.nodes)
    # a counterexample in the standard model
    combos = itertools.islice(itertools.product(samples, repeat=len(names)), 256)
    for vals in combos:
        inst = substitute_many(phi, {v: const(n) for v, n in zip(names, vals)}) if names else phi
        if eval_elementary(inst, blind_bound, work=20_000) == FALSE:
            where = ", ".join(f"{v}={n}" for v, n in zip(names, vals))
            return StabilityResult(INVALID, f"false in the standard model at {where or 'the empty assignment'}",
                                   tab.nodes)
    why = "budget exhausted" if closed is None else "no proof or countermodel found"
    return StabilityResult(UNKNOWN, why, tab.nodes)
