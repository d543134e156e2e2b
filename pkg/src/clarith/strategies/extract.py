"""Strategy extraction from checked CL12 proofs.

The extracted agent plays the succedent of the final sequent, with one
provider channel per antecedent formula.  It starts at the last line and
climbs toward the leaves:

* Choose on the succedent: make the move, one per activation.
* Choose on an antecedent: make the move on that provider's channel.
* Replicate: clone the provider channel.
* Wait: consume the oldest unprocessed adversary move (environment moves
  first, then provider moves), pick the premise the rule check matched to
  it and bind the fresh variable to the move's constant.  With nothing to
  consume, poll the providers once and pass if all stay silent.

Proof variables are tracked in an assignment to constants; a variable
used as a Choose instance before being bound is set to 0.
"""
from __future__ import annotations

from collections import deque

from ..arena.match import Agent
from ..cl12.proof import Cl12Proof, ProofReport, check_proof
from ..cl12.rules import Address
from ..cl12.sequent import SUCCEDENT
from ..cl12.stability import DEFAULT_BUDGET
from ..syntax.game import BOT, IllegalMove, parse_move
from ..syntax.terms import Const, Var, Zero
from .channels import ProviderBundle


class ExtractionError(ValueError):
    pass


class ExtractedAgent(Agent):
    name = "extract"

    def __init__(self, proof: Cl12Proof, providers=(), budget: int = DEFAULT_BUDGET,
                 permissive: bool = False, report: ProofReport | None = None):
        super().__init__()
        report = report or check_proof(proof, budget, permissive)
        if not report.accepted:
            raise ExtractionError(f"proof rejected at line {report.line}: {report.reason}")
        final = proof.final
        if final.free_vars():
            raise ExtractionError("the final sequent must be closed")
        self.proof = proof
        self.table = proof.by_number()
        self.reports = {r.number: r.rule for r in report.lines}
        if not isinstance(providers, ProviderBundle):
            providers = ProviderBundle.for_games(final.antecedent, providers)
        if len(providers) != len(final.antecedent):
            raise ExtractionError(f"{len(final.antecedent)} antecedent formulas but "
                                  f"{len(providers)} providers")
        self.bundle = providers
        self.game = final.succedent
        self.node = proof.lines[-1].number
        self.sigma: dict = {}
        self.outer: deque = deque()
        self.seen = 0           # environment moves already queued
        self.halted: str | None = None
        self.visited: list = [self.node]

    # the position seen so far: queue new environment moves
    def _absorb(self, position) -> None:
        env_moves = [lm.move for lm in position if lm.player == BOT]
        for mv in env_moves[self.seen:]:
            self.outer.append(mv)
        self.seen = len(env_moves)

    def _value(self, term) -> int:
        if isinstance(term, Var):
            return self.sigma.setdefault(term.name, 0)
        if isinstance(term, Zero):
            return 0
        if isinstance(term, Const):
            return term.value
        raise ExtractionError(f"instance {term!r} is not a variable or constant")

    def _render(self, address: Address, path) -> str:
        head = "".join(f"{i}." for i in address.indices)
        if path.choice is not None:
            return head + str(path.choice)
        return head + "#" + format(self._value(path.instance), "b")

    def act(self, role, position, offer):
        self._absorb(position)
        if self.halted:
            return None
        while True:
            self.meter.step()
            line = self.table[self.node]
            rule = line.justification.rule
            rep = self.reports[self.node]
            if rule == "Replicate":
                self.bundle.replicate(line.justification.index)
                self._descend(line.justification.premises[0])
                continue
            if rule in ("JoinChoose", "MeetChoose"):
                mv = self._render(rep.address, rep.path)
                self._descend(line.justification.premises[0])
                if rep.address.channel == SUCCEDENT:
                    return mv
                self.bundle[int(rep.address.channel[1:])].move(mv)
                continue
            # Wait
            if not line.justification.premises:
                return None
            event = self._next_event()
            if event is None:
                if not self._poll():
                    return None
                continue
            channel, mv = event
            target = self._match(rep.matches, channel, mv)
            if target is None:
                who = "environment" if channel == SUCCEDENT else f"provider {channel}"
                self.halted = f"{who} move {mv!r} matches no premise of line {self.node}"
                return None
            self._descend(target)

    def _descend(self, number: int) -> None:
        self.meter.hold(sum(max(1, v.bit_length()) for v in self.sigma.values()))
        self.node = number
        self.visited.append(number)

    def _next_event(self):
        if self.outer:
            return SUCCEDENT, self.outer.popleft()
        for i, ch in enumerate(self.bundle.channels):
            if ch.pending:
                return f"A{i}", ch.pending.popleft()
        return None

    def _poll(self) -> bool:
        moved = False
        for ch in self.bundle.channels:
            if ch.poll() is not None:
                moved = True
        return moved

    def _match(self, matches, channel: str, mv: str):
        try:
            path = parse_move(mv)
        except IllegalMove:
            return None
        addr = Address(channel, path.indices)
        for ln, where, what in matches:
            if where != addr:
                continue
            if isinstance(what, Var):
                if path.instance is None:
                    continue
                self.sigma[what.name] = self._value(path.instance)
                return ln
            if path.choice == what:
                return ln
        return None


def extract_agent(proof: Cl12Proof, providers=(), budget: int = DEFAULT_BUDGET,
                  permissive: bool = False, report: ProofReport | None = None) -> ExtractedAgent:
    """An agent for the succedent of the proof's final sequent.

    Pass the ``report`` of an earlier check_proof to skip re-checking.
    """
    return ExtractedAgent(proof, providers, budget, permissive, report)
