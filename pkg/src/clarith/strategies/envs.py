"""Environments: the B side of a match."""
from __future__ import annotations

import random
import sys

from ..arena.match import Agent, MatchConfig, run_match
from ..syntax.formulas import Formula
from ..syntax.game import BOT, IllegalMove, apply_move, legal_moves, prefixation


class RandomEnv(Agent):
    """Passes or makes a random legal move; constants drawn below ``limit``."""
    name = "random"

    def __init__(self, game: Formula, seed: int = 0, limit: int = 1 << 64, pass_rate: float = 0.25,
                 small: float = 0.2):
        super().__init__()
        self.game = game
        self.rng = random.Random(seed)
        self.limit = limit
        self.pass_rate = pass_rate
        self.small = small

    def _constant(self) -> int:
        if self.rng.random() < self.small:
            return self.rng.randrange(4)
        bits = self.rng.randrange(1, max(2, self.limit.bit_length()))
        return self.rng.randrange(1 << (bits - 1), 1 << bits) if bits > 1 else self.rng.randrange(2)

    def act(self, role, position, offer):
        try:
            cur = prefixation(position, self.game)
        except IllegalMove:
            return None
        moves = legal_moves(cur, BOT, constants=(self._constant(),))
        if not moves or self.rng.random() < self.pass_rate:
            return None
        return self.rng.choice(moves)


class ScriptEnv(Agent):
    """Makes the scripted moves in order; ``None`` entries are passes."""
    name = "script"

    def __init__(self, moves):
        super().__init__()
        self.moves = list(moves)
        self.i = 0

    def act(self, role, position, offer):
        if self.i >= len(self.moves):
            return None
        mv = self.moves[self.i]
        self.i += 1
        return mv


def parse_script(text: str) -> list:
    """One move per line: ``#101``, ``1.0``, ``B: #11`` or ``pass``; ``%`` starts a comment."""
    out = []
    for raw in text.splitlines():
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith(("B:", "⊥:")):
            line = line.split(":", 1)[1].strip()
        out.append(None if line == "pass" else line)
    return out


class IndexEnv(Agent):
    """At call i picks option choices[i] of [pass] + legal moves (pass beyond the list)."""
    name = "index"

    def __init__(self, game: Formula, choices, constants=(0, 1, 2)):
        super().__init__()
        self.game = game
        self.choices = tuple(choices)
        self.constants = constants
        self.counts: list = []

    def act(self, role, position, offer):
        try:
            cur = prefixation(position, self.game)
        except IllegalMove:
            return None
        options = [None] + legal_moves(cur, BOT, self.constants)
        i = len(self.counts)
        self.counts.append(len(options))
        k = self.choices[i] if i < len(self.choices) else 0
        return options[k]


def exhaustive_matches(agent_factory, game: Formula, depth: int = 3, constants=(0, 1, 2),
                       config: MatchConfig | None = None):
    """Every environment behaviour with at most ``depth`` decisions; yields (choices, MatchResult)."""
    stack = [()]
    while stack:
        prefix = stack.pop()
        env = IndexEnv(game, prefix, constants)
        res = run_match(agent_factory(), env, game, config)
        yield prefix, res
        for j in range(len(prefix), min(depth, len(env.counts))):
            pad = (0,) * (j - len(prefix))
            for k in range(1, env.counts[j]):
                stack.append(prefix + pad + (k,))


class ReplEnv(Agent):
    """Reads B moves from a stream, rejecting illegal ones with the match diagnostics."""
    name = "repl"

    def __init__(self, game: Formula, stream=None, out=None):
        super().__init__()
        self.game = game
        self.stream = stream or sys.stdin
        self.out = out or sys.stdout

    def act(self, role, position, offer):
        cur = prefixation(position, self.game)
        while True:
            self.out.write("B> ")
            self.out.flush()
            line = self.stream.readline()
            if not line:
                return None
            line = line.strip()
            if line.startswith(("B:", "⊥:")):
                line = line.split(":", 1)[1].strip()
            if line in ("", "pass"):
                return None
            try:
                apply_move(cur, BOT, line)
            except IllegalMove as e:
                self.out.write(f"illegal: {e.reason}\n")
                continue
            return line
