"""Formulas as games: moves, positions, prefixation and developments.

A move addresses a surface choice occurrence by the indices of the
binary classical connectives on the way down (``0.``/``1.``, with the
antecedent of an implication being component 0) and ends with the
choice itself: ``0``/``1`` for a binary choice, ``#<binary>`` for a
choice quantifier.  Blind quantifiers take no index.

Inside the antecedent of an implication the roles flip, exactly as in
reading F -> G as ~F | G: there a ``cor`` is resolved by the
environment and a ``cand`` by the machine.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .formulas import (
    ALL, AND, CALL, CEX, EX, FALSE_ATOM, IMP, JOIN, MEET, OR, TRUE_ATOM,
    Atom, Bin, Formula, Not, Quant, all_vars, fresh_var, is_elementary,
    substitute,
)
from .terms import Const, Term, Var, Zero, const

TOP, BOT = "T", "B"


def other(player: str) -> str:
    return BOT if player == TOP else TOP


class IllegalMove(ValueError):
    def __init__(self, reason: str, index: int | None = None, player: str | None = None):
        self.reason = reason
        self.index = index
        self.player = player
        where = f"move {index} by {player}: " if index is not None else ""
        super().__init__(where + reason)


@dataclass(frozen=True)
class MovePath:
    indices: tuple
    choice: int | None = None
    instance: Term | None = None

    def render(self) -> str:
        head = "".join(f"{i}." for i in self.indices)
        if self.choice is not None:
            return head + str(self.choice)
        inst = self.instance
        if isinstance(inst, Var):
            return head + "#" + inst.name
        value = 0 if isinstance(inst, Zero) else inst.value
        return head + "#" + format(value, "b")

    def __str__(self) -> str:
        return self.render()


_MOVE_RE = re.compile(r"^((?:[01]\.)*)(?:([01])|#(0|1[01]*))$")


def parse_move(move: str) -> MovePath:
    m = _MOVE_RE.match(move)
    if not m:
        raise IllegalMove(f"malformed move {move!r}")
    indices = tuple(int(c) for c in m.group(1).split(".") if c != "")
    if m.group(2) is not None:
        return MovePath(indices, choice=int(m.group(2)))
    return MovePath(indices, instance=const(int(m.group(3), 2)))


def header(move: str) -> str:
    i = move.find("#")
    return move if i < 0 else move[: i + 1]


def numer(move: str) -> int:
    i = move.find("#")
    if i < 0 or i == len(move) - 1:
        return 0
    try:
        return int(move[i + 1:], 2)
    except ValueError:
        return 0


def magnitude(move: str) -> int:
    return numer(move).bit_length()


@dataclass(frozen=True)
class Labmove:
    player: str
    move: str

    def render(self) -> str:
        return f"{self.player}: {self.move}"

    @property
    def header(self) -> str:
        return header(self.move)

    @property
    def numer(self) -> int:
        return numer(self.move)


def parse_labmove(text: str) -> Labmove:
    m = re.match(r"^\s*(T|B|⊤|⊥)\s*:\s*(\S+)\s*$", text)
    if not m:
        raise IllegalMove(f"malformed labmove {text!r}")
    player = TOP if m.group(1) in ("T", "⊤") else BOT
    return Labmove(player, m.group(2))


Position = tuple  # of Labmove


# ---------------------------------------------------------------------------
# surface structure

@dataclass(frozen=True)
class Occurrence:
    indices: tuple
    node: Formula
    positive: bool

    @property
    def owner(self) -> str:
        """The player who resolves this choice."""
        join_like = self.node.op in (JOIN, CEX)
        return TOP if join_like == self.positive else BOT


def surface_occurrences(f: Formula) -> Iterator[Occurrence]:
    """Choice subformulas not in the scope of another choice operator."""
    def go(g, path, pos):
        if isinstance(g, Bin):
            if g.op in (MEET, JOIN):
                yield Occurrence(path, g, pos)
            else:
                yield from go(g.left, path + (0,), pos if g.op != IMP else not pos)
                yield from go(g.right, path + (1,), pos)
        elif isinstance(g, Quant):
            if g.op in (CALL, CEX):
                yield Occurrence(path, g, pos)
            else:
                yield from go(g.body, path, pos)
    yield from go(f, (), True)


def _replace_at(f: Formula, indices: tuple, fn) -> Formula:
    """Apply fn to the choice node reached by following indices through blind parts."""
    if isinstance(f, Quant) and f.op in (ALL, EX):
        return Quant(f.op, f.var, _replace_at(f.body, indices, fn))
    if not indices:
        return fn(f)
    if not (isinstance(f, Bin) and f.op in (AND, OR, IMP)):
        raise IllegalMove("path leaves the classical skeleton")
    i = indices[0]
    if i == 0:
        return Bin(f.op, _replace_at(f.left, indices[1:], fn), f.right)
    return Bin(f.op, f.left, _replace_at(f.right, indices[1:], fn))


def find_occurrence(f: Formula, indices: tuple) -> Occurrence | None:
    for occ in surface_occurrences(f):
        if occ.indices == indices:
            return occ
    return None


def resolve(node: Formula, path: MovePath) -> Formula:
    """The formula a choice node becomes under the terminal action of path."""
    if path.choice is not None:
        if not (isinstance(node, Bin) and node.op in (MEET, JOIN)):
            raise IllegalMove("component choice addresses a non-binary choice")
        return node.left if path.choice == 0 else node.right
    if not (isinstance(node, Quant) and node.op in (CALL, CEX)):
        raise IllegalMove("constant choice addresses a non-quantifier")
    return substitute(node.body, node.var, path.instance)


def apply_move(f: Formula, player: str, move: str | MovePath) -> Formula:
    path = parse_move(move) if isinstance(move, str) else move
    occ = find_occurrence(f, path.indices)
    if occ is None:
        raise IllegalMove(f"{path} does not address a surface choice")
    if occ.owner != player:
        raise IllegalMove(f"{path} addresses a choice owned by {occ.owner}")
    return _replace_at(f, path.indices, lambda node: resolve(node, path))


def is_legal(f: Formula, player: str, move: str) -> bool:
    try:
        apply_move(f, player, move)
        return True
    except IllegalMove:
        return False


def prefixation(position, f: Formula) -> Formula:
    """The parasentence f is brought down to by a legal position."""
    for k, lm in enumerate(position):
        try:
            f = apply_move(f, lm.player, lm.move)
        except IllegalMove as e:
            raise IllegalMove(e.reason, k, lm.player) from None
    return f


def first_illegal(position, f: Formula):
    """(index, player) of the first illegal labmove, or None."""
    try:
        prefixation(position, f)
    except IllegalMove as e:
        return e.index, e.player
    return None


def legal_moves(f: Formula, player: str, constants=(0,)) -> list[str]:
    """Concrete moves available to a player, quantifier moves drawn from constants."""
    out = []
    for occ in surface_occurrences(f):
        if occ.owner != player:
            continue
        head = "".join(f"{i}." for i in occ.indices)
        if isinstance(occ.node, Bin):
            out += [head + "0", head + "1"]
        else:
            out += [head + "#" + format(c, "b") for c in constants]
    return out


def developments(f: Formula, player: str, fresh: Term | str | None = None) -> list:
    """Every single-move successor of f for player, as (MovePath, Formula).

    Quantifier choices are instantiated at ``fresh``: a term, a variable
    name, or by default the lowest-indexed y1, y2, ... absent from f.
    """
    if fresh is None:
        fresh = Var(fresh_var(all_vars(f)))
    elif isinstance(fresh, str):
        fresh = Var(fresh)
    out = []
    for occ in surface_occurrences(f):
        if occ.owner != player:
            continue
        if isinstance(occ.node, Bin):
            paths = [MovePath(occ.indices, choice=0), MovePath(occ.indices, choice=1)]
        else:
            paths = [MovePath(occ.indices, instance=fresh)]
        for p in paths:
            out.append((p, _replace_at(f, occ.indices, lambda node, p=p: resolve(node, p))))
    return out


def elementarize(f: Formula) -> Formula:
    """Surface cor/cex become 0=0', surface cand/call become 0=0."""
    if isinstance(f, Bin):
        if f.op == JOIN:
            return FALSE_ATOM
        if f.op == MEET:
            return TRUE_ATOM
        return Bin(f.op, elementarize(f.left), elementarize(f.right))
    if isinstance(f, Quant):
        if f.op == CEX:
            return FALSE_ATOM
        if f.op == CALL:
            return TRUE_ATOM
        return Quant(f.op, f.var, elementarize(f.body))
    return f


def is_critical(f: Formula, positive: bool = True) -> bool:
    """Whether the machine must still move for the game to be winnable.

    ``positive=False`` asks the question of the negation of f, which is how
    antecedents of implications are treated.
    """
    if isinstance(f, (Atom, Not)):
        return False
    if isinstance(f, Quant):
        if f.op in (CALL, CEX):
            return (f.op == CEX) == positive
        return is_critical(f.body, positive)
    if f.op in (MEET, JOIN):
        return (f.op == JOIN) == positive
    if f.op == IMP:
        if positive:
            return is_critical(f.left, False) and is_critical(f.right, True)
        return is_critical(f.left, True) or is_critical(f.right, False)
    conj = (f.op == AND) == positive
    a, b = is_critical(f.left, positive), is_critical(f.right, positive)
    return (a or b) if conj else (a and b)


def headers_of(x: Formula) -> set[str]:
    """Headers of all paralegal moves of x together with their prefixes."""
    out = {""}
    seen = set()

    def explore(g: Formula):
        if g in seen:
            return
        seen.add(g)
        for player in (TOP, BOT):
            for mv in legal_moves(g, player):
                h = header(mv)
                out.update(h[:k] for k in range(len(h) + 1))
                explore(apply_move(g, player, mv))

    explore(x)
    return out
