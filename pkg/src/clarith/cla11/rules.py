"""The CLA11 rules: Logical Consequence, Induction and Comprehension.

Lines are sentences; a rule premise or conclusion written with free
variables stands for its ⊓-closure.  Comparisons go through
``matches_closure``, which accepts any order and naming of the closing
⊓-prefix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..bounds.classes import Boundclass, closure_contains
from ..bounds.expr import BoundSyntaxError, apply_lengths, check_bound, render_bound
from ..cl12.proof import Cl12Proof, check_proof
from ..cl12.sequent import Sequent, sequent_alpha_eq
from ..syntax.formulas import (
    ALL, AND, CALL, CEX, IMP, JOIN, Atom, Bin, Formula, Not, Quant, all_vars,
    alpha_eq, close, free_vars, is_elementary, substitute, substitute_many, walk,
)
from ..syntax.parser import render
from ..syntax.terms import ZERO, Fn, Succ, Term, Var, rebuild, subterms, term_vars


@dataclass
class RuleCheck:
    ok: bool
    errors: list = field(default_factory=list)
    obligations: list = field(default_factory=list)

    @classmethod
    def from_errors(cls, errors, obligations=()) -> "RuleCheck":
        return cls(not errors, list(errors), list(obligations))

    @property
    def reason(self) -> str:
        return "; ".join(self.errors)


# ---------------------------------------------------------------------------
# closures

def matches_closure(line: Formula, f: Formula) -> bool:
    """Whether line is a ⊓-closure of f (any prefix order, any names)."""
    fv = sorted(free_vars(f))
    if alpha_eq(line, close(f, CALL)):
        return True
    names, body = [], line
    for _ in fv:
        if not (isinstance(body, Quant) and body.op == CALL):
            return False
        names.append(body.var)
        body = body.body
    if len(fv) > 6:
        return False
    for perm in itertools.permutations(fv):
        try:
            renamed = substitute_many(body, {n: Var(v) for n, v in zip(names, perm)})
        except ValueError:
            continue
        if alpha_eq(renamed, f):
            return True
    return False


def strip_closure(line: Formula) -> tuple:
    """(names, body): the maximal leading ⊓-prefix and what it binds."""
    names = []
    while isinstance(line, Quant) and line.op == CALL:
        names.append(line.var)
        line = line.body
    return names, line


# ---------------------------------------------------------------------------
# bounded formulas

def strip_lengths(t: Term) -> Term | None:
    """b with b|s| = t, or None when some variable occurs outside |.|."""
    if isinstance(t, Fn) and t.name == "len" and len(t.args) == 1 and isinstance(t.args[0], Var):
        return t.args[0]
    if isinstance(t, Var):
        return None
    kids = subterms(t)
    if not kids:
        return t
    out = [strip_lengths(k) for k in kids]
    if any(k is None for k in out):
        return None
    return rebuild(t, out)


def bound_of(t: Term) -> Term | None:
    b = strip_lengths(t)
    if b is None:
        return None
    try:
        return check_bound(b)
    except BoundSyntaxError:
        return None


@dataclass
class Boundedness:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_bounded_formula(f: Formula, bclass: Boundclass, budget: int = 500) -> Boundedness:
    """Every ⊓/⊔-quantifier has the form ⊓|z|<=b|s| H / ⊔|z|<=b|s| H with b in bclass."""
    blind = {q.var for q in walk(f) if isinstance(q, Quant) and q.op not in (CALL, CEX)}
    for q in walk(f):
        if not (isinstance(q, Quant) and q.op in (CALL, CEX)):
            continue
        connective = IMP if q.op == CALL else AND
        body = q.body
        shape = f"{'call' if q.op == CALL else 'cex'} {q.var} . |{q.var}| <= b|s| {'->' if q.op == CALL else '&'} H"
        if not (isinstance(body, Bin) and body.op == connective and isinstance(body.left, Atom)
                and body.left.rel == "<=" and body.left.args[0] == Fn("len", (Var(q.var),))):
            return Boundedness(False, f"{render(q)} is not of the form {shape}")
        b = bound_of(body.left.args[1])
        if b is None:
            return Boundedness(False, f"{render(q)}: {render(Atom('<=', body.left.args))} is not |z| <= b|s|")
        params = term_vars(b)
        if q.var in params:
            return Boundedness(False, f"{render(q)}: {q.var} occurs among the bound's variables")
        clash = ({q.var} | params) & blind
        if clash:
            return Boundedness(False, f"{render(q)}: {', '.join(sorted(clash))} bound by all/ex in the formula")
        if not closure_contains(bclass, b, budget).found:
            return Boundedness(False, f"{render(q)}: bound {render_bound(b)} not in {bclass.label()}")
    return Boundedness(True)


# ---------------------------------------------------------------------------
# LC

def check_lc(conclusion: Formula, premises: list, attached: Cl12Proof | None,
             budget: int = 2000, permissive: bool = False, extended: bool = True) -> RuleCheck:
    """premises: the cited sentences in order."""
    if attached is None:
        if extended:
            return RuleCheck.from_errors(["LC needs an attached CL12 proof in extended mode"])
        return RuleCheck(True, [], ["LC premise-to-conclusion sequent not machine-checked"])
    report = check_proof(attached, budget, permissive)
    if not report.accepted:
        return RuleCheck.from_errors([f"attached proof rejected at line {report.line}: {report.reason}"])
    want = Sequent(tuple(close(e, CALL) for e in premises), close(conclusion, CALL))
    if not sequent_alpha_eq(attached.final, want):
        return RuleCheck.from_errors([f"attached proof ends in {attached.final.render()}, "
                                      f"expected {want.render()}"])
    return RuleCheck(True, [], list(report.obligations))


# ---------------------------------------------------------------------------
# Induction

@dataclass(frozen=True)
class InductionParams:
    var: str
    bound: Term
    params: tuple


def _distinct(names) -> list:
    names = list(names)
    dup = sorted({n for n in names if names.count(n) > 1})
    return [f"variables {', '.join(dup)} are not pairwise distinct"] if dup else []


def _param_errors(bound: Term, params: tuple, extra: tuple) -> list:
    errs = _distinct(extra + params)
    stray = term_vars(bound) - set(params)
    if stray:
        errs.append(f"bound {render_bound(bound)} uses {', '.join(sorted(stray))} outside the listed parameters")
    return errs


def induction_formula(conclusion: Formula, ip: InductionParams):
    """F(x) read off a conclusion x <= b|s| -> F(x), or None."""
    _, body = strip_closure(conclusion)
    guard = Atom("<=", (Var(ip.var), apply_lengths(ip.bound)))
    if isinstance(body, Bin) and body.op == IMP and body.left == guard:
        return body.right
    return None


def check_induction(conclusion: Formula, basis: Formula, step: Formula, ip: InductionParams,
                    space: Boundclass, time: Boundclass, reasonable: bool = False,
                    budget: int = 500) -> RuleCheck:
    errs = _param_errors(ip.bound, ip.params, (ip.var,))
    x = Var(ip.var)
    bterm = apply_lengths(ip.bound)
    F = induction_formula(conclusion, ip)
    if F is None:
        errs.append(f"conclusion is not the closure of {ip.var} <= {render_bound(bterm)} -> F({ip.var})")
        return RuleCheck.from_errors(errs)
    if not matches_closure(conclusion, Bin(IMP, Atom("<=", (x, bterm)), F)):
        errs.append("conclusion is not a ⊓-closure")
    if not matches_closure(basis, substitute(F, ip.var, ZERO)):
        errs.append(f"basis is not the closure of F(0) = {render(substitute(F, ip.var, ZERO))}")
    succ = substitute(F, ip.var, Succ(x))
    want = Bin(IMP, F, succ)
    if reasonable:
        want = Bin(IMP, Bin(AND, Atom("<", (x, bterm)), F), succ)
    if not matches_closure(step, want):
        errs.append(f"step is not the closure of {render(want)}")
    bounded = is_bounded_formula(F, space, budget)
    if not bounded:
        errs.append(f"induction formula is not {space.label()}-bounded: {bounded.reason}")
    if not closure_contains(time, ip.bound, budget).found:
        errs.append(f"induction bound {render_bound(ip.bound)} not in the time class {time.label()}")
    return RuleCheck.from_errors(errs)


def weaken_step(F: Formula, ip: InductionParams) -> Formula:
    """The reasonable step x < b|s| & F(x) -> F(x') for the plain step of F."""
    x = Var(ip.var)
    return Bin(IMP, Bin(AND, Atom("<", (x, apply_lengths(ip.bound))), F),
               substitute(F, ip.var, Succ(x)))


# ---------------------------------------------------------------------------
# Comprehension

@dataclass(frozen=True)
class ComprehensionParams:
    var: str          # x, the constructed number
    bitvar: str       # y, the bit position
    bound: Term
    params: tuple


def comprehension_conclusion(p: Formula, cp: ComprehensionParams) -> Formula:
    x, y = Var(cp.var), Var(cp.bitvar)
    bterm = apply_lengths(cp.bound)
    bit = Atom("Bit", (y, x))
    iff = Bin(AND, Bin(IMP, bit, p), Bin(IMP, p, bit))
    inner = Quant(ALL, cp.bitvar, Bin(IMP, Atom("<", (y, bterm)), iff))
    return Quant(CEX, cp.var, Bin(AND, Atom("<=", (Fn("len", (x,)), bterm)), inner))


def comprehension_formula(conclusion: Formula, cp: ComprehensionParams):
    """p(y) read off the conclusion, or None."""
    _, body = strip_closure(conclusion)
    try:
        inner = body.body.right.body.right      # ⊔x(|x|<=b & ∀y(y<b -> (Bit->p)&(p->Bit)))
        p = inner.left.right
    except AttributeError:
        return None
    return p


def check_comprehension(conclusion: Formula, premise: Formula, cp: ComprehensionParams,
                        amplitude: Boundclass, reasonable: bool = False,
                        budget: int = 500) -> RuleCheck:
    errs = _param_errors(cp.bound, cp.params, (cp.var, cp.bitvar))
    p = comprehension_formula(conclusion, cp)
    if p is None or not matches_closure(conclusion, comprehension_conclusion(p, cp)):
        errs.append(f"conclusion is not the closure of cex |{cp.var}| <= b|s| all {cp.bitvar} < b|s| "
                    f"(Bit({cp.bitvar}, {cp.var}) <-> p({cp.bitvar}))")
        return RuleCheck.from_errors(errs)
    if not is_elementary(p):
        errs.append("comprehension formula is not elementary")
    if cp.var in all_vars(p):
        errs.append(f"comprehension formula contains {cp.var}")
    choice = Bin(JOIN, p, Not(p))
    want = choice
    if reasonable:
        want = Bin(IMP, Atom("<", (Var(cp.bitvar), apply_lengths(cp.bound))), choice)
    if not matches_closure(premise, want):
        errs.append(f"premise is not the closure of {render(want)}")
    if not closure_contains(amplitude, cp.bound, budget).found:
        errs.append(f"comprehension bound {render_bound(cp.bound)} not in the amplitude class {amplitude.label()}")
    return RuleCheck.from_errors(errs)
