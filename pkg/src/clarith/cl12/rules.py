"""The CL12 rules: Wait, the two Choose rules and Replicate.

A choice occurrence is addressed by its channel (``S`` for the
succedent, ``A<i>`` for antecedent formula i) and the classical indices
leading to it.  In the succedent the machine resolves occurrences owned
by T; in an antecedent, where the provider plays T against us, it
resolves those owned by B.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax.formulas import (
    CALL, CEX, JOIN, MEET, Bin, CaptureError, alpha_eq, atoms,
    bound_vars, free_vars, fresh_var,
)
from ..syntax.game import BOT, TOP, MovePath, _replace_at, resolve, surface_occurrences
from ..syntax.parser import ParseError, parse_term
from ..syntax.terms import Const, Term, Var, Zero, subterms
from .sequent import SUCCEDENT, Sequent, sequent_alpha_eq
from .stability import DEFAULT_BUDGET, INVALID, UNKNOWN, stability


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Address:
    channel: str
    indices: tuple = ()

    def render(self) -> str:
        return self.channel + "".join(f".{i}" for i in self.indices)


def parse_address(text: str) -> Address:
    parts = text.strip().split(".")
    ch = parts[0]
    if ch != SUCCEDENT and not (ch.startswith("A") and ch[1:].isdigit()):
        raise RuleError(f"bad channel {ch!r}")
    try:
        idx = tuple(int(p) for p in parts[1:])
    except ValueError:
        raise RuleError(f"bad address {text!r}") from None
    if any(i not in (0, 1) for i in idx):
        raise RuleError(f"bad address {text!r}")
    return Address(ch, idx)


def machine_owner(channel: str) -> str:
    """The owner label of occurrences the machine resolves on a channel."""
    return TOP if channel == SUCCEDENT else BOT


def occurrences(s: Sequent, owner_of_machine: bool):
    """(Address, Occurrence) for surface choices resolved by the machine (True) or its adversaries."""
    for ch in s.channels():
        mine = machine_owner(ch)
        for occ in surface_occurrences(s.channel(ch)):
            if (occ.owner == mine) == owner_of_machine:
                yield Address(ch, occ.indices), occ


def replace(s: Sequent, addr: Address, path: MovePath) -> Sequent:
    f = s.channel(addr.channel)
    return s.with_channel(addr.channel, _replace_at(f, addr.indices, lambda node: resolve(node, path)))


def parse_instance(text: str) -> Term:
    """A variable or a constant (binary #... or decimal)."""
    try:
        t = parse_term(text)
    except ParseError:
        raise RuleError(f"instance {text!r} is not a term") from None
    if not isinstance(t, (Var, Zero, Const)):
        raise RuleError(f"instance {text!r} must be a variable or a constant")
    return t


# ---------------------------------------------------------------------------
# results

@dataclass
class RuleReport:
    ok: bool
    reason: str = ""
    obligations: list = field(default_factory=list)
    # extraction data
    matches: list = field(default_factory=list)     # Wait: (premise line, Address, component|Var)
    address: Address | None = None                   # Choose
    path: MovePath | None = None                     # Choose

    @classmethod
    def fail(cls, reason: str) -> "RuleReport":
        return cls(False, reason)


# ---------------------------------------------------------------------------
# Choose

def check_choose(conclusion: Sequent, premise: Sequent, kind: str,
                 address: Address | None = None, instance: str | None = None) -> RuleReport:
    """kind is "MeetChoose" or "JoinChoose"; missing address/instance are inferred."""
    want = (MEET, CALL) if kind == "MeetChoose" else (JOIN, CEX)
    cands = [(a, o) for a, o in occurrences(conclusion, True) if o.node.op in want]
    if address is not None:
        cands = [(a, o) for a, o in cands if a == address]
        if not cands:
            return RuleReport.fail(f"{address.render()} does not address a surface "
                                   f"{'cand/call' if kind == 'MeetChoose' else 'cor/cex'} the machine resolves")
    if not cands:
        return RuleReport.fail(f"no surface occurrence for {kind}")
    errors = []
    for addr, occ in cands:
        for path in _paths(occ, premise, addr, instance, errors):
            if path is None:
                continue
            try:
                result = replace(conclusion, addr, path)
            except CaptureError as e:
                errors.append(f"instance captured: {e}")
                continue
            if sequent_alpha_eq(result, premise):
                return RuleReport(True, address=addr, path=path)
            errors.append(f"premise differs from the conclusion with {addr.render()} resolved as {path.render()}")
    return RuleReport.fail(errors[0] if errors else "no matching choice")


def _paths(occ, premise: Sequent, addr: Address, instance, errors):
    if isinstance(occ.node, Bin):
        if instance is None:
            yield from (MovePath(addr.indices, choice=0), MovePath(addr.indices, choice=1))
            return
        if instance not in ("0", "1"):
            errors.append(f"component must be 0 or 1, got {instance!r}")
            return
        yield MovePath(addr.indices, choice=int(instance))
        return
    node = occ.node
    if instance is not None:
        try:
            t = parse_instance(instance)
        except RuleError as e:
            errors.append(str(e))
            return
        if isinstance(t, Var) and _bound_in(premise, t.name):
            errors.append(f"instance {t.name} is bound in the premise")
            return
        yield MovePath(addr.indices, instance=t)
        return
    # infer: candidate terms are the free variables and constants of the premise channel
    target = premise.channel(addr.channel) if addr.channel == SUCCEDENT or \
        int(addr.channel[1:]) < len(premise.antecedent) else None
    if target is None:
        return
    for v in sorted(free_vars(target)):
        if not _bound_in(premise, v):
            yield MovePath(addr.indices, instance=Var(v))
    seen = set()

    def consts(t):
        if isinstance(t, (Zero, Const)) and t not in seen:
            seen.add(t)
            yield t
        for k in subterms(t):
            yield from consts(k)

    for a in atoms(target):
        for t in a.args:
            for c in consts(t):
                yield MovePath(addr.indices, instance=c)


def _bound_in(s: Sequent, name: str) -> bool:
    return any(name in bound_vars(f) for f in s.formulas())


# ---------------------------------------------------------------------------
# Replicate

def check_replicate(conclusion: Sequent, premise: Sequent, index: int | None = None) -> RuleReport:
    n = len(conclusion.antecedent)
    if n == 0:
        return RuleReport.fail("replicate needs a nonempty antecedent")
    if not alpha_eq(conclusion.succedent, premise.succedent):
        return RuleReport.fail("succedents differ")
    if len(premise.antecedent) != n + 1:
        return RuleReport.fail("premise must have exactly one more antecedent formula")
    idxs = [index] if index is not None else range(n)
    for i in idxs:
        if not 0 <= i < n:
            return RuleReport.fail(f"antecedent index {i} out of range")
        expect = conclusion.antecedent[: i + 1] + (conclusion.antecedent[i],) + conclusion.antecedent[i + 1:]
        if all(alpha_eq(a, b) for a, b in zip(expect, premise.antecedent)):
            return RuleReport(True, address=Address(f"A{i}"))
    return RuleReport.fail(f"premise antecedent is not the conclusion's with formula {index} duplicated"
                           if index is not None else "no duplicated antecedent formula")


# ---------------------------------------------------------------------------
# Wait

def check_wait(conclusion: Sequent, premises: list, budget: int = DEFAULT_BUDGET,
               permissive: bool = False) -> RuleReport:
    """premises: list of (line number, Sequent)."""
    st = stability(conclusion, budget)
    obligations = []
    if st.verdict == INVALID:
        return RuleReport.fail(f"conclusion is not stable: {st.reason}")
    if st.verdict == UNKNOWN:
        if not permissive:
            return RuleReport.fail(f"stability obligation unproved ({st.reason})")
        obligations.append(f"stability of {conclusion.render()}")
    needed = []
    for addr, occ in occurrences(conclusion, False):
        if isinstance(occ.node, Bin):
            needed += [(addr, occ, 0), (addr, occ, 1)]
        else:
            needed.append((addr, occ, None))
    taken = [False] * len(needed)
    matches = []
    conc_vars = conclusion.all_vars()
    for ln, prem in premises:
        hit, err = None, None
        for k, (addr, occ, comp) in enumerate(needed):
            if taken[k]:
                continue
            if comp is not None:
                if sequent_alpha_eq(replace(conclusion, addr, MovePath(addr.indices, choice=comp)), prem):
                    hit = (k, comp)
                    break
                continue
            var, err_k = _fresh_instance(conclusion, prem, addr, occ, conc_vars)
            if var is not None:
                hit = (k, var)
                break
            err = err or err_k
        if hit is None:
            return RuleReport.fail(err or f"premise line {ln} matches no adversary choice of the conclusion")
        k, what = hit
        taken[k] = True
        matches.append((ln, needed[k][0], what))
    missing = [needed[k] for k in range(len(needed)) if not taken[k]]
    if missing:
        addr, occ, comp = missing[0]
        which = f"component {comp}" if comp is not None else "a fresh-variable instance"
        return RuleReport.fail(f"missing premise for {addr.render()} ({which})")
    return RuleReport(True, obligations=obligations, matches=matches)


def _fresh_instance(conclusion, prem, addr, occ, conc_vars):
    """The fresh variable with which prem resolves the quantifier at addr, or an error."""
    if addr.channel != SUCCEDENT and int(addr.channel[1:]) >= len(prem.antecedent):
        return None, None
    target = prem.channel(addr.channel)
    names = sorted(free_vars(target) - conc_vars) + sorted(free_vars(target) & conc_vars)
    if occ.node.var not in free_vars(occ.node.body):
        names.append(fresh_var(conc_vars | prem.all_vars()))   # vacuous quantifier
    stale = None
    for v in names:
        try:
            res = replace(conclusion, addr, MovePath(addr.indices, instance=Var(v)))
        except CaptureError:
            continue
        if sequent_alpha_eq(res, prem):
            if v in conc_vars:
                stale = f"{v} is not fresh: it occurs in the conclusion"
                continue
            return Var(v), None
    return None, stale
