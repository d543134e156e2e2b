"""Bit-serial arithmetic agents.

Each agent waits for the environment's constants, then runs the
pencil-and-paper algorithm one bit position per loop iteration.  The
meter is charged one step per iteration and holds one cell per live
bit of carry, borrow, accumulator or index registers.  The digits of
the answer go straight to the move buffer and are not charged as space.
"""
from __future__ import annotations

from ..arena.match import Agent
from ..syntax.formulas import Bin
from ..syntax.game import BOT, TOP, IllegalMove, prefixation, surface_occurrences
from ..syntax.parser import parse_formula
from ..syntax.terms import bit

ADD_GAME = "call u . call v . cex z . z = u+v"
SUB_GAME = "call u . call v . cex z . z = monus(u, v)"
MULT_GAME = "call u . call v . cex z . z = u*v"
TRI_GAME = "call u . call v . u < v cor u = v cor u > v"
DIV2_GAME = "call u . cex z . z = half(u)"
BR_GAME = "call x . call s . x < |s| -> cex z . z = br{i}(x, s)"
BITSUM_GAME = "call x . call y . call u . call v . cex z . z = bitsum(x, y, u, v)"


def my_occurrence(cur):
    """The first surface choice the machine resolves, or None."""
    for occ in surface_occurrences(cur):
        if occ.owner == TOP:
            return occ
    return None


def constant_move(occ, value: int) -> str:
    return "".join(f"{i}." for i in occ.indices) + "#" + format(value, "b")


def component_move(occ, k: int) -> str:
    return "".join(f"{i}." for i in occ.indices) + str(k)


class InputAgent(Agent):
    """Waits for ``arity`` environment constants, then answers through ``answer``."""
    game_text = ""
    arity = 2

    def __init__(self):
        super().__init__()
        self.game = parse_formula(self.game_text)
        self.trace: list = []
        self.result = None

    def act(self, role, position, offer):
        try:
            cur = prefixation(position, self.game)
        except IllegalMove:
            return None  # the environment lost by moving illegally
        occ = my_occurrence(cur)
        if occ is None:
            return None
        inputs = [lm.numer for lm in position if lm.player == BOT and "#" in lm.move]
        if len(inputs) < self.arity:
            return None
        return self.answer(occ, inputs[: self.arity])

    def answer(self, occ, inputs):
        raise NotImplementedError

    # register bookkeeping
    def registers(self, *values) -> None:
        self.meter.hold(sum(max(1, int(v).bit_length()) for v in values))


class AddAgent(InputAgent):
    name = "add"
    game_text = ADD_GAME

    def answer(self, occ, inputs):
        u, v = inputs
        z, carry = 0, 0
        for y in range(max(u.bit_length(), v.bit_length())):
            self.meter.step()
            t = bit(u, y) + bit(v, y) + carry
            z |= (t & 1) << y
            carry = 1 if t > 1 else 0
            self.trace.append(carry)
            self.registers(carry, y)
        if carry:
            z |= 1 << max(u.bit_length(), v.bit_length())
        self.meter.hold(0)
        self.result = z
        return constant_move(occ, z)


class TriAgent(InputAgent):
    """Trichotomy: "1" for u > v, "0" then "0" for u < v, "0" then "1" for u = v."""
    name = "tri"
    game_text = TRI_GAME

    def __init__(self):
        super().__init__()
        self.decision = None

    def compare(self, u: int, v: int) -> str:
        top = max(u.bit_length(), v.bit_length())
        for y in range(top - 1, -1, -1):
            self.meter.step()
            self.registers(y)
            a, b = bit(u, y), bit(v, y)
            if a != b:
                return ">" if a > b else "<"
        return "="

    def answer(self, occ, inputs):
        if self.decision is None:
            self.decision = self.compare(*inputs)
            self.meter.hold(0)
        # the game is (u<v cor u=v) cor u>v: the outer choice first, then the inner one
        if isinstance(occ.node.left, Bin):
            return component_move(occ, 1 if self.decision == ">" else 0)
        return component_move(occ, 0 if self.decision == "<" else 1)


class SubAgent(InputAgent):
    """Limited subtraction u - v (0 when u < v) with right-to-left borrows."""
    name = "sub"
    game_text = SUB_GAME

    def answer(self, occ, inputs):
        u, v = inputs
        tri = TriAgent()
        tri.bind(self.meter)
        if tri.compare(u, v) == "<":
            self.meter.hold(0)
            self.result = 0
            return constant_move(occ, 0)
        z, borrow = 0, 0
        for y in range(u.bit_length()):
            self.meter.step()
            t = bit(u, y) - bit(v, y) - borrow
            z |= (t & 1) << y
            borrow = 1 if t < 0 else 0
            self.trace.append(borrow)
            self.registers(borrow, y)
        self.meter.hold(0)
        self.result = z
        return constant_move(occ, z)


class MultAgent(InputAgent):
    """Column multiplication: bit y of u*v from Bitsum(y,y,u,v) and the carry."""
    name = "mult"
    game_text = MULT_GAME

    def answer(self, occ, inputs):
        u, v = inputs
        z, carry = 0, 0
        width = u.bit_length() + v.bit_length()
        for y in range(width):
            acc, j = 0, -1
            for j in range(min(y, u.bit_length() - 1) + 1 if u else 0):
                acc += bit(u, j) * bit(v, y - j)
            if j >= 0:
                # acc and j only grow within a column, so the peak is at its end
                self.meter.step(j + 1)
                self.registers(carry, acc, y, j)
            self.meter.step()
            t = acc + carry
            z |= (t & 1) << y
            carry = t >> 1
            self.trace.append(carry)
            self.registers(carry, y)
        self.meter.hold(0)
        self.result = z
        return constant_move(occ, z)


class Div2Agent(InputAgent):
    name = "div2"
    game_text = DIV2_GAME
    arity = 1

    def answer(self, occ, inputs):
        (u,) = inputs
        z = 0
        for y in range(1, u.bit_length()):
            self.meter.step()
            z |= bit(u, y) << (y - 1)
            self.registers(y)
        self.meter.hold(0)
        self.result = z
        return constant_move(occ, z)


class BrAgent(InputAgent):
    """Bit replacement: s with bit x set to i, for x < |s|."""
    arity = 2

    def __init__(self, i: int):
        self.i = i
        self.name = f"br{i}"
        self.game_text = BR_GAME.format(i=i)
        super().__init__()

    def answer(self, occ, inputs):
        x, s = inputs
        if x >= s.bit_length():
            return None  # antecedent false: nothing to do
        z = 0
        for y in range(s.bit_length()):
            self.meter.step()
            b = self.i if y == x else bit(s, y)
            z |= b << y
            self.registers(x, y)
        self.meter.hold(0)
        self.result = z
        return constant_move(occ, z)


class BitsumAgent(InputAgent):
    name = "bitsum"
    game_text = BITSUM_GAME
    arity = 4

    def answer(self, occ, inputs):
        x, y, u, v = inputs
        acc = 0
        for j in range(min(x, y, max(u.bit_length() - 1, 0)) + 1 if u else 0):
            self.meter.step()
            acc += bit(u, j) * bit(v, y - j)
            self.registers(acc, j)
        self.meter.hold(0)
        self.result = acc
        return constant_move(occ, acc)


def add_agent() -> AddAgent:
    return AddAgent()


def sub_agent() -> SubAgent:
    return SubAgent()


def mult_agent() -> MultAgent:
    return MultAgent()


def tri_agent() -> TriAgent:
    return TriAgent()


def div2_agent() -> Div2Agent:
    return Div2Agent()


def br_agent(i: int) -> BrAgent:
    if i not in (0, 1):
        raise ValueError("br_agent takes 0 or 1")
    return BrAgent(i)


def bitsum_agent() -> BitsumAgent:
    return BitsumAgent()
