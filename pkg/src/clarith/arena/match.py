"""Matches between two agents, their adjudication and resource metering."""
from __future__ import annotations

import copy
from dataclasses import dataclass, field

from ..syntax.formulas import Formula, free_vars
from ..syntax.game import (
    BOT, TOP, IllegalMove, Labmove, apply_move, elementarize, magnitude,
    prefixation,
)
from .evaluate import FALSE, TRUE, eval_elementary


@dataclass
class Meter:
    """Resource counters of the machine side of a match.

    Space is cooperative: agents register and release cells themselves.
    """
    time: int = 0
    space: int = 0
    amplitude: int = 0
    background: int = 0
    live: int = 0

    def step(self, n: int = 1) -> None:
        self.time += n

    def alloc(self, cells: int) -> None:
        self.live += cells
        self.space = max(self.space, self.live)

    def free(self, cells: int) -> None:
        self.live = max(0, self.live - cells)

    def hold(self, cells: int) -> None:
        """Declare the current live total (for agents tracking registers by size)."""
        self.live = cells
        self.space = max(self.space, cells)

    def record(self, player: str, move: str) -> None:
        m = magnitude(move)
        if player == TOP:
            self.amplitude = max(self.amplitude, m)
        else:
            self.background = max(self.background, m)

    def snapshot(self) -> dict:
        return {"time": self.time, "space": self.space,
                "amplitude": self.amplitude, "background": self.background}


class Agent:
    """Interactive strategy.  Subclasses implement ``act``.

    ``act(role, position, offer)`` returns a move string or None (pass).
    Agents charge their work to ``self.meter``.
    """
    name = "agent"

    def __init__(self):
        self.meter = Meter()

    def bind(self, meter: Meter) -> None:
        self.meter = meter

    def __call__(self, role: str, position: tuple, offer: int):
        self.meter.step()
        return self.act(role, position, offer)

    def act(self, role: str, position: tuple, offer: int):
        return None

    def clone(self) -> "Agent":
        return copy.deepcopy(self)


class Silent(Agent):
    name = "silent"


@dataclass(frozen=True)
class Verdict:
    kind: str                 # "T-won", "B-won", "undetermined", "illegal"
    player: str | None = None
    index: int | None = None
    detail: str = ""

    @property
    def winner(self) -> str | None:
        if self.kind == "T-won":
            return TOP
        if self.kind == "B-won":
            return BOT
        if self.kind == "illegal":
            return BOT if self.player == TOP else TOP
        return None

    def render(self) -> str:
        if self.kind == "illegal":
            return f"illegal({self.player},{self.index})"
        return self.kind


def adjudicate(position, x: Formula, blind_bound: int = 4096) -> Verdict:
    """Outcome of a finished run on x."""
    moves = [lm for lm in position if isinstance(lm, Labmove)]
    try:
        h = prefixation(moves, x)
    except IllegalMove as e:
        return Verdict("illegal", e.player, e.index, e.reason)
    v = eval_elementary(elementarize(h), blind_bound)
    if v == TRUE:
        return Verdict("T-won")
    if v == FALSE:
        return Verdict("B-won")
    return Verdict("undetermined", detail=f"blind bound {blind_bound}")


@dataclass(frozen=True)
class Pass:
    player: str

    def render(self) -> str:
        return f"{self.player}: pass"


@dataclass
class MatchConfig:
    blind_bound: int = 4096
    max_moves: int = 256
    seed: int = 0


@dataclass
class MatchResult:
    events: list
    verdict: Verdict | None
    meter: Meter
    aborted: str | None = None
    meter_trace: list = field(default_factory=list)

    @property
    def position(self) -> tuple:
        return tuple(e for e in self.events if isinstance(e, Labmove))

    def transcript(self) -> str:
        lines = [lm.render() for lm in self.position]
        lines.append("---")
        if self.aborted:
            lines.append(f"verdict: aborted")
            lines.append(f"reason: {self.aborted}")
        else:
            lines.append(f"verdict: {self.verdict.render()}")
        for k, v in self.meter.snapshot().items():
            lines.append(f"{k}: {v}")
        return "\n".join(lines) + "\n"


def run_match(agent: Agent, env: Agent, x: Formula, config: MatchConfig | None = None) -> MatchResult:
    """Play agent (as T) against env (as B) on the sentence x."""
    config = config or MatchConfig()
    if free_vars(x):
        raise ValueError("matches are played on sentences")
    meter = Meter()
    agent.bind(meter)
    env.bind(Meter())
    events: list = []
    position: list = []
    current = x
    trace = [meter.snapshot()]
    passes = 0
    offer = 0
    turn = BOT
    while len(position) < config.max_moves and offer < 4 * config.max_moves + 4:
        player = env if turn == BOT else agent
        try:
            mv = player(turn, tuple(position), offer)
        except Exception as e:  # agent fault: no verdict
            return MatchResult(events, None, meter, f"{turn} agent fault: {e!r}", trace)
        offer += 1
        if mv is None:
            events.append(Pass(turn))
            passes += 1
            trace.append(meter.snapshot())
            if passes >= 2:
                break
        else:
            passes = 0
            lm = Labmove(turn, mv)
            events.append(lm)
            position.append(lm)
            meter.record(turn, mv)
            trace.append(meter.snapshot())
            try:
                current = apply_move(current, turn, mv)
            except IllegalMove as e:
                v = Verdict("illegal", turn, len(position) - 1, e.reason)
                return MatchResult(events, v, meter, None, trace)
        turn = TOP if turn == BOT else BOT
    return MatchResult(events, adjudicate(position, x, config.blind_bound), meter, None, trace)
