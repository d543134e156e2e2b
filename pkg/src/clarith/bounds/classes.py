"""Boundclasses, their linear/polynomial closures and dominance."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from ..syntax.terms import ZERO, Add, BlowUp, Fn, Mul, Succ, Term, Var, Zero
from .expr import (
    DEFAULT_GUARD, LEN_X, X, bound_vars, check_bound, eval_bound,
    is_variation, parse_bound, plus_const, power, render_bound, times,
)

NONE, LINEAR, POLY = "none", "linear", "poly"


def _quasilinear(k):
    return Mul(X, power(LEN_X, k))


def _quasipoly(k):
    return Fn("pow2", (power(LEN_X, k),))


def _exppoly(k):
    return Fn("pow2", (power(X, k),))


FAMILIES = {"quasilinear": _quasilinear, "quasipoly": _quasipoly, "exppoly": _exppoly}


@dataclass(frozen=True)
class Boundclass:
    generators: tuple
    mode: str = LINEAR
    name: str | None = None
    family: str | None = None
    index: int = 3

    def extended(self, k: int) -> "Boundclass":
        """Same class with an infinite generator family cut at k instead."""
        if self.family is None:
            return self
        gens = tuple(FAMILIES[self.family](i) for i in range(1, k + 1))
        return Boundclass(gens, self.mode, self.name, self.family, k)

    def render(self) -> str:
        body = ", ".join(render_bound(g) for g in self.generators)
        tail = ", ..." if self.family else ""
        return f"{self.mode}{{{body}{tail}}}"

    def label(self) -> str:
        return self.name or self.render()


@dataclass(frozen=True)
class Derivation:
    rule: str                  # "zero", "gen", "succ", "add", "mul"
    term: Term
    children: tuple = ()
    generator: Term | None = None


@dataclass(frozen=True)
class ClosureResult:
    found: bool
    derivation: Derivation | None
    exhausted: bool
    nodes: int

    def __bool__(self) -> bool:
        return self.found


class _Budget(Exception):
    pass


def closure_contains(c: Boundclass, b: Term, budget: int = 500) -> ClosureResult:
    """Membership of b in the closure of c, with a construction tree.

    The closure of a generator set under 0, ', + (and * in polynomial
    mode) and syntactic variation consists exactly of the terms built by
    those constructors from variations of generators, so a top-down walk
    over b decides membership; ``budget`` caps the nodes visited.
    """
    nodes = 0

    def go(t: Term):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget()
        for g in c.generators:
            if is_variation(t, g):
                return Derivation("gen", t, (), g)
        if c.mode == NONE:
            return None
        if isinstance(t, Zero):
            return Derivation("zero", t)
        if isinstance(t, Succ):
            d = go(t.arg)
            return Derivation("succ", t, (d,)) if d else None
        if isinstance(t, Add) or (isinstance(t, Mul) and c.mode == POLY):
            l = go(t.left)
            if l is None:
                return None
            r = go(t.right)
            return Derivation("add" if isinstance(t, Add) else "mul", t, (l, r)) if r else None
        return None

    try:
        d = go(b)
    except _Budget:
        return ClosureResult(False, None, True, nodes)
    return ClosureResult(d is not None, d, False, nodes)


def replay(d: Derivation) -> Term:
    """Rebuild the bound a derivation constructs."""
    if d.rule == "zero":
        return ZERO
    if d.rule == "gen":
        return d.term
    kids = [replay(k) for k in d.children]
    if d.rule == "succ":
        return Succ(kids[0])
    if d.rule == "add":
        return Add(kids[0], kids[1])
    return Mul(kids[0], kids[1])


@dataclass(frozen=True)
class Dominance:
    holds: bool
    point: dict | None = None
    values: tuple | None = None
    checked: int = 0
    skipped: int = 0


def _value_at(b: Term, point: dict, guard: int):
    vs = bound_vars(b)
    if len(vs) == 1 and vs[0] not in point:
        # unary bound on a tuple: max convention
        point = {vs[0]: max(point.values(), default=0)}
    return eval_bound(b, point, guard)


def dominated(b: Term, c: Term, grid=(0, 1, 2, 3, 5, 8, 16, 64), guard: int = DEFAULT_GUARD) -> Dominance:
    """Sample check of b <= c pointwise; a falsification is definitive."""
    vb, vc = bound_vars(b), bound_vars(c)
    names = vb if (len(vc) == 1 and vc != vb) else sorted(set(vb) | set(vc))
    checked = skipped = 0
    for vals in itertools.product(grid, repeat=len(names)):
        point = dict(zip(names, vals))
        try:
            x, y = _value_at(b, point, guard), _value_at(c, point, guard)
        except BlowUp:
            skipped += 1
            continue
        checked += 1
        if x > y:
            return Dominance(False, point, (x, y), checked, skipped)
    return Dominance(True, None, None, checked, skipped)


# ---------------------------------------------------------------------------
# the standard classes

DESCRIPTIONS = {
    "B1^1": "logarithmic", "B1^2": "log-squared", "B1^3": "log-cubed",
    "B2": "polylogarithmic", "B3": "linear", "B4": "quasilinear",
    "B5": "polynomial", "B6": "quasipolynomial",
    "B7": "exponential-with-linear-exponent",
    "B8": "exponential-with-polynomial-exponent",
}


def standard_classes(index: int = 3) -> dict:
    """The named classes, infinite generator families cut at ``index``."""
    out = {}
    for i in range(1, index + 1):
        out[f"B1^{i}"] = Boundclass((power(LEN_X, i),), LINEAR, f"B1^{i}")
    out["B2"] = Boundclass((LEN_X,), POLY, "B2")
    out["B3"] = Boundclass((X,), LINEAR, "B3")
    out["B4"] = Boundclass((), LINEAR, "B4", "quasilinear").extended(index)
    out["B5"] = Boundclass((X,), POLY, "B5")
    out["B6"] = Boundclass((), POLY, "B6", "quasipoly").extended(index)
    out["B7"] = Boundclass((Fn("pow2", (X,)),), POLY, "B7")
    out["B8"] = Boundclass((), POLY, "B8", "exppoly").extended(index)
    return out


def describe(name: str) -> str:
    return DESCRIPTIONS.get(name, name)


_LITERAL = re.compile(r"^\s*(none|linear|poly)\s*\{(.*)\}\s*$")


def parse_boundclass(text: str, index: int = 3) -> Boundclass:
    """``B5``, ``B1^2``, ``linear{x}``, ``poly{2^|x|, 2^|x|^2}``."""
    text = text.strip()
    std = standard_classes(max(index, 3))
    if text in std:
        return std[text]
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"not a boundclass: {text!r}")
    parts = [p for p in _split_top(m.group(2)) if p.strip()]
    gens = tuple(check_bound(parse_bound(p)) for p in parts)
    return Boundclass(gens, m.group(1), None)


def _split_top(s: str):
    depth, cur = 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            yield cur
            cur = ""
        else:
            cur += ch
    yield cur


def candidate_members(c: Boundclass, budget: int = 500, extend: int = 8) -> list:
    """Unary members of c of a few shapes, each verified by closure_contains.

    Shapes: k*g + m for generators g, powers and pairwise products of
    generators in polynomial mode.  Used as witnesses for dominance
    searches; the list only grows with the budget.
    """
    ext = c.extended(max(extend, c.index))
    gens = list(ext.generators)
    bases = list(gens)
    if c.mode == POLY:
        bases += [power(g, j) for g in gens for j in (2, 3, 4)]
        bases += [Mul(g, h) for g, h in itertools.combinations(gens, 2)]
    out = [ZERO]
    for base in bases:
        for k in (1, 2, 4, 8):
            for m in (0, 1, 4, 8):
                out.append(plus_const(times(base, k), m))
    if c.mode == NONE:
        out = [g for g in gens]
    verified = []
    for t in out:
        if closure_contains(ext, t, budget).found:
            verified.append(t)
    return verified
