"""Sequents E1, ..., En |o- F and the channels that address their formulas."""
from __future__ import annotations

from dataclasses import dataclass

from ..syntax.formulas import Formula, all_vars, alpha_eq, free_vars
from ..syntax.parser import ParseError, parse_formula, render, tokenize

SUCCEDENT = "S"


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple
    succedent: Formula

    def render(self) -> str:
        left = ", ".join(render(a) for a in self.antecedent)
        return f"{left} |o- {render(self.succedent)}" if left else f"|o- {render(self.succedent)}"

    def __str__(self) -> str:
        return self.render()

    def formulas(self) -> list:
        return list(self.antecedent) + [self.succedent]

    def all_vars(self) -> set:
        out: set = set()
        for f in self.formulas():
            out |= all_vars(f)
        return out

    def free_vars(self) -> set:
        out: set = set()
        for f in self.formulas():
            out |= free_vars(f)
        return out

    def channel(self, name: str) -> Formula:
        if name == SUCCEDENT:
            return self.succedent
        return self.antecedent[antecedent_index(name)]

    def with_channel(self, name: str, f: Formula) -> "Sequent":
        if name == SUCCEDENT:
            return Sequent(self.antecedent, f)
        i = antecedent_index(name)
        ante = list(self.antecedent)
        ante[i] = f
        return Sequent(tuple(ante), self.succedent)

    def channels(self) -> list:
        return [f"A{i}" for i in range(len(self.antecedent))] + [SUCCEDENT]


def antecedent_index(name: str) -> int:
    if not (name.startswith("A") and name[1:].isdigit()):
        raise ValueError(f"bad channel {name!r}")
    return int(name[1:])


def sequent_alpha_eq(a: Sequent, b: Sequent) -> bool:
    return (len(a.antecedent) == len(b.antecedent)
            and all(alpha_eq(x, y) for x, y in zip(a.antecedent, b.antecedent))
            and alpha_eq(a.succedent, b.succedent))


def _split_points(text: str):
    """Positions of the turnstile and of top-level commas before it."""
    depth = 0
    commas, turn = [], None
    for tok in tokenize(text):
        if tok.kind == "op" and tok.value == "(":
            depth += 1
        elif tok.kind == "op" and tok.value == ")":
            depth -= 1
        elif tok.kind == "op" and tok.value == "," and depth == 0 and turn is None:
            commas.append(tok.pos)
        elif tok.kind == "op" and tok.value == "|o-":
            if turn is not None:
                raise ParseError("second turnstile", text, tok.pos)
            turn = tok
    return commas, turn


def parse_sequent(text: str) -> Sequent:
    commas, turn = _split_points(text)
    if turn is None:
        raise ParseError("expected the turnstile |o-", text, len(text))
    end = turn.pos
    # width of the turnstile spelling as written
    rest = text[end:]
    width = next(len(s) for s in ("|o-", "⊸–", "⊸-", "⊸", "⊢") if rest.startswith(s))
    left, right = text[:end], text[end + width:]
    pieces, start = [], 0
    for c in commas:
        pieces.append(left[start:c])
        start = c + 1
    pieces.append(left[start:])
    if len(pieces) == 1 and not pieces[0].strip():
        pieces = []
    ante = []
    for p in pieces:
        if not p.strip():
            raise ParseError("empty antecedent formula", text, start)
        ante.append(parse_formula(p))
    return Sequent(tuple(ante), parse_formula(right))
