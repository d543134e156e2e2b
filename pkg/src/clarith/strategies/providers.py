"""Axiom providers, the classical oracle, bound evaluators and numeral agents."""
from __future__ import annotations

from ..arena.evaluate import TRUE, eval_elementary
from ..arena.match import Agent
from ..bounds.expr import DEFAULT_GUARD, apply_lengths, bound_vars, render_bound
from ..syntax.formulas import (
    ALL, AND, CALL, CEX, EX, JOIN, MEET, OR, Atom, Bin, Formula, Not, Quant,
    fresh_var,
)
from ..syntax.game import (
    BOT, TOP, IllegalMove, Labmove, apply_move, elementarize, prefixation,
    surface_occurrences,
)
from ..syntax.parser import parse_formula
from ..syntax.terms import Add, BlowUp, Fn, Succ, Var, Zero, bit, pow2, subterms
from .arithmetic import InputAgent, component_move, constant_move
from .channels import Channel, ProviderFault

SUCCESSOR_GAME = "call x . cex y . y = x'"
LOG_GAME = "call x . cex y . y = |x|"
BIT_GAME = "call x . call y . Bit(y, x) cor ~Bit(y, x)"
AXIOMS = {"Successor": SUCCESSOR_GAME, "Log": LOG_GAME, "Bit": BIT_GAME}


class SuccessorAgent(InputAgent):
    name = "successor"
    game_text = SUCCESSOR_GAME
    arity = 1

    def answer(self, occ, inputs):
        (x,) = inputs
        # increment: flip trailing ones, then the first zero
        y = 0
        while bit(x, y):
            self.meter.step()
            self.registers(y)
            y += 1
        self.meter.hold(0)
        self.result = x + 1
        return constant_move(occ, self.result)


class LogAgent(InputAgent):
    name = "log"
    game_text = LOG_GAME
    arity = 1

    def answer(self, occ, inputs):
        (x,) = inputs
        t = 0
        while x >> t:
            self.meter.step()
            self.registers(t)
            t += 1
        self.meter.hold(0)
        self.result = t
        return constant_move(occ, t)


class BitAgent(InputAgent):
    """Chooses ``Bit(y,x)`` (component 0) when bit y of x is 1, else the negation."""
    name = "bit"
    game_text = BIT_GAME

    def answer(self, occ, inputs):
        x, y = inputs
        self.meter.step()
        self.registers(y)
        self.meter.hold(0)
        self.result = bit(x, y)
        return component_move(occ, 0 if self.result else 1)


def axiom_agent(which: str) -> InputAgent:
    table = {"Successor": SuccessorAgent, "Log": LogAgent, "Bit": BitAgent}
    try:
        return table[which]()
    except KeyError:
        raise ValueError(f"unknown axiom {which!r}; expected one of {sorted(table)}") from None


# ---------------------------------------------------------------------------
# classical oracle

_CLASSICAL = {CALL: ALL, CEX: EX, MEET: AND, JOIN: OR}


def classical_reading(f: Formula) -> Formula:
    """f with every choice operator replaced by its blind counterpart."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(classical_reading(f.body))
    if isinstance(f, Bin):
        return Bin(_CLASSICAL.get(f.op, f.op), classical_reading(f.left), classical_reading(f.right))
    return Quant(_CLASSICAL.get(f.op, f.op), f.var, classical_reading(f.body))


class OracleAgent(Agent):
    """Plays T on any game by the classical truth of the candidate developments.

    Disjuncts are tried in order and witnesses searched below ``search``;
    it passes when the elementarization is already true or nothing helps.
    Not a polynomial-time strategy: it is meant for tests and small games.
    """
    name = "oracle"

    def __init__(self, game: Formula, search: int = 64, blind_bound: int = 256):
        super().__init__()
        self.game = game
        self.search = search
        self.blind_bound = blind_bound

    def _true(self, f: Formula) -> bool:
        return eval_elementary(classical_reading(f), self.blind_bound) == TRUE

    def act(self, role, position, offer):
        try:
            cur = prefixation(position, self.game)
        except IllegalMove:
            return None
        if eval_elementary(elementarize(cur), self.blind_bound) == TRUE:
            return None
        for occ in surface_occurrences(cur):
            if occ.owner != TOP:
                continue
            head = "".join(f"{i}." for i in occ.indices)
            options = [head + "0", head + "1"] if isinstance(occ.node, Bin) else \
                [head + f"#{c:b}" for c in range(self.search)]
            for mv in options:
                self.meter.step()
                if self._true(apply_move(cur, TOP, mv)):
                    return mv
        return None


# ---------------------------------------------------------------------------
# bound evaluation

def bound_eval_game(b) -> Formula:
    """⊓ over the bound's variables of ⊔z(z = b applied to their lengths)."""
    vs = bound_vars(b)
    z = fresh_var(set(vs), "z")
    body: Formula = Quant(CEX, z, Atom("=", (Var(z), apply_lengths(b))))
    for v in reversed(vs):
        body = Quant(CALL, v, body)
    return body


class BoundEvalAgent(Agent):
    """Computes the input lengths, then evaluates the bound on them.

    Registers: the input lengths and every live intermediate value; the
    output is written, not stored.  Time: one step per bit of every
    intermediate result.
    """

    def __init__(self, b, guard: int = DEFAULT_GUARD):
        super().__init__()
        self.bound = b
        self.guard = guard
        self.vars = bound_vars(b)
        self.game = bound_eval_game(b)
        self.name = f"bound:{render_bound(b)}"
        self.result = None

    def act(self, role, position, offer):
        try:
            cur = prefixation(position, self.game)
        except IllegalMove:
            return None
        occ = next((o for o in surface_occurrences(cur) if o.owner == TOP), None)
        if occ is None:
            return None
        inputs = [lm.numer for lm in position if lm.player == BOT and "#" in lm.move]
        lengths = {}
        for v, x in zip(self.vars, inputs):
            self.meter.step(max(1, x.bit_length()))
            lengths[v] = x.bit_length()
        base = sum(max(1, n.bit_length()) for n in lengths.values())
        self.meter.hold(base)
        self.result = self._eval(self.bound, lengths, base)
        self.meter.hold(0)
        return constant_move(occ, self.result)

    def _eval(self, b, env, live, root=True) -> int:
        if isinstance(b, Var):
            return env[b.name]
        kids = [self._eval(k, env, live, False) for k in subterms(b)]
        if isinstance(b, Fn) and b.name == "pow2":
            if kids[0] > self.guard:
                raise BlowUp(f"2^{kids[0]} exceeds the blow-up guard 2^{self.guard}")
            value = pow2(kids[0], self.guard)
        elif isinstance(b, Fn):          # len
            value = kids[0].bit_length()
        elif isinstance(b, Zero):
            value = 0
        elif isinstance(b, Succ):
            value = kids[0] + 1
        elif isinstance(b, Add):
            value = kids[0] + kids[1]
        else:
            value = kids[0] * kids[1]
        cells = max(1, value.bit_length())
        self.meter.step(cells)
        # the root value is the output and goes straight to the move
        self.meter.hold(live + sum(max(1, k.bit_length()) for k in kids) + (0 if root else cells))
        return value


def bound_eval_agent(b, guard: int = DEFAULT_GUARD) -> BoundEvalAgent:
    return BoundEvalAgent(b, guard)


# ---------------------------------------------------------------------------
# numerals

def numeral_game(n: int) -> Formula:
    return parse_formula("cex z . z = 0" + "'" * n)


class NumeralAgent(Agent):
    """Wins ⊔z(z = 0'...') by asking a Successor provider n times.

    Each round replicates a fresh copy of the provider, asks it about the
    current value and checks the answer before using it.
    """

    def __init__(self, n: int, provider: Agent | None = None, polls: int = 1000):
        super().__init__()
        if n < 0:
            raise ValueError("numerals are nonnegative")
        self.n = n
        self.provider = provider if provider is not None else SuccessorAgent()
        self.polls = polls
        self.name = f"numeral:{n}"
        self.game = numeral_game(n)
        self.calls = 0
        self.done = False

    def act(self, role, position, offer):
        if self.done:
            return None
        value = 0
        self.meter.hold(1)
        for _ in range(self.n):
            channel = Channel(parse_formula(SUCCESSOR_GAME), self.provider.clone())
            channel.move(f"#{value:b}")
            self.calls += 1
            answer = channel.wait_for_move(self.polls)
            self.meter.step()
            if answer is None:
                raise ProviderFault(f"Successor provider silent after {self.polls} polls")
            got = Labmove(TOP, answer).numer
            if got != value + 1:
                raise ProviderFault(f"Successor provider answered {got} for {value}")
            value = got
            self.meter.hold(max(1, value.bit_length()))
        self.done = True
        self.meter.hold(0)
        return f"#{value:b}"


def numeral_agent(n: int, provider: Agent | None = None) -> NumeralAgent:
    return NumeralAgent(n, provider)


class SlowStart(Agent):
    """Wraps a provider: passes the first ``delay`` times it is asked, then delegates."""

    def __init__(self, inner: Agent, delay: int = 3):
        super().__init__()
        self.inner = inner
        self.delay = delay
        self.name = f"slow:{inner.name}"

    def bind(self, meter):
        super().bind(meter)
        self.inner.bind(meter)

    def act(self, role, position, offer):
        if self.delay > 0:
            self.delay -= 1
            return None
        return self.inner(role, position, offer)


class LiarSuccessor(SuccessorAgent):
    """Answers x+2: a misbehaving provider for fault tests."""
    name = "liar"

    def answer(self, occ, inputs):
        return constant_move(occ, inputs[0] + 2)
