"""Axiom recognition: Peano 1-7, Successor, Log, Bit and supplementary sentences."""
from __future__ import annotations

from dataclasses import dataclass

from ..syntax.formulas import (
    ALL, AND, IMP, Bin, Formula, Quant, alpha_eq, expand, free_vars,
    has_abbreviations, is_elementary, substitute,
)
from ..syntax.parser import parse_formula
from ..syntax.terms import ZERO, Succ, Var

PEANO_TEXT = {
    1: "all x . ~0 = x'",
    2: "all x . all y . (x' = y' -> x = y)",
    3: "all x . x+0 = x",
    4: "all x . all y . x+y' = (x+y)'",
    5: "all x . x*0 = 0",
    6: "all x . all y . x*y' = x*y + x",
}
CHOICE_AXIOM_TEXT = {
    "Successor": "call x . cex y . y = x'",
    "Log": "call x . cex y . y = |x|",
    "Bit": "call x . call y . Bit(y, x) cor ~Bit(y, x)",
}
PEANO = {i: parse_formula(t) for i, t in PEANO_TEXT.items()}
CHOICE_AXIOMS = {k: parse_formula(t) for k, t in CHOICE_AXIOM_TEXT.items()}
NOT_AN_AXIOM = "not an axiom"


@dataclass(frozen=True)
class AxiomKind:
    kind: str                           # Peano, Successor, Log, Bit, Supplementary, or NOT_AN_AXIOM
    index: int | None = None            # Peano axiom number
    name: str | None = None             # supplementary axiom name
    induction_formula: Formula | None = None
    induction_var: str | None = None

    @property
    def is_axiom(self) -> bool:
        return self.kind != NOT_AN_AXIOM

    def label(self) -> str:
        if self.kind == "Peano":
            return f"Peano {self.index}"
        if self.kind == "Supplementary":
            return f"Supplementary({self.name})"
        return self.kind


def _same(f: Formula, g: Formula) -> bool:
    if alpha_eq(f, g):
        return True
    # |x| and Bit written out through their fixed defining formulas
    if has_abbreviations(f) or has_abbreviations(g):
        try:
            return alpha_eq(expand(f), expand(g))
        except ValueError:      # a pterm without a defining formula
            return False
    return False


def induction_instance(f: Formula):
    """(p, x) when f is the closure of p(0) & all x (p(x) -> p(x')) -> all x p(x)."""
    body = f
    while isinstance(body, Quant) and body.op == ALL and not _is_induction_body(body):
        body = body.body
    if not _is_induction_body(body) or free_vars(f):
        return None
    hyp, concl = body.left, body.right
    x = concl.var
    p = concl.body
    if not is_elementary(p):
        return None
    step = hyp.right
    expect_step = Quant(ALL, x, Bin(IMP, p, substitute(p, x, Succ(Var(x)))))
    if not alpha_eq(step, expect_step):
        return None
    if not alpha_eq(hyp.left, substitute(p, x, ZERO)):
        return None
    return p, x


def _is_induction_body(g: Formula) -> bool:
    return (isinstance(g, Bin) and g.op == IMP
            and isinstance(g.left, Bin) and g.left.op == AND
            and isinstance(g.left.right, Quant) and g.left.right.op == ALL
            and isinstance(g.right, Quant) and g.right.op == ALL)


def recognize_axiom(f: Formula, supplementary: dict | None = None) -> AxiomKind:
    """Classify a sentence; renaming of bound variables does not matter."""
    for i, ax in PEANO.items():
        if _same(f, ax):
            return AxiomKind("Peano", i)
    inst = induction_instance(f)
    if inst is not None:
        return AxiomKind("Peano", 7, induction_formula=inst[0], induction_var=inst[1])
    for name, ax in CHOICE_AXIOMS.items():
        if _same(f, ax):
            return AxiomKind(name)
    for name, ax in (supplementary or {}).items():
        if _same(f, ax):
            return AxiomKind("Supplementary", name=name)
    return AxiomKind(NOT_AN_AXIOM)
