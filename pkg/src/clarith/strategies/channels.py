"""Provider channels: sub-games played against antecedent resources."""
from __future__ import annotations

import copy
from collections import deque

from ..arena.match import Agent
from ..syntax.formulas import Formula
from ..syntax.game import BOT, TOP, IllegalMove, Labmove, apply_move, prefixation


class ProviderFault(RuntimeError):
    """A provider moved illegally or gave a wrong answer."""


class Channel:
    """One copy of an antecedent game; the provider plays T, we play B."""

    def __init__(self, game: Formula, provider: Agent):
        self.game = game
        self.provider = provider
        self.position: list = []
        self.pending: deque = deque()
        self.offer = 0
        self.current = game

    def move(self, mv: str) -> None:
        self.current = apply_move(self.current, BOT, mv)
        self.position.append(Labmove(BOT, mv))

    def poll(self) -> str | None:
        mv = self.provider(TOP, tuple(self.position), self.offer)
        self.offer += 1
        if mv is None:
            return None
        try:
            self.current = apply_move(self.current, TOP, mv)
        except IllegalMove as e:
            raise ProviderFault(f"provider move {mv!r} is illegal: {e.reason}") from None
        self.position.append(Labmove(TOP, mv))
        self.pending.append(mv)
        return mv

    def wait_for_move(self, polls: int = 1000) -> str | None:
        for _ in range(polls):
            mv = self.poll()
            if mv is not None:
                return mv
        return None

    def clone(self) -> "Channel":
        c = copy.copy(self)
        c.provider = self.provider.clone()
        c.position = list(self.position)
        c.pending = deque(self.pending)
        return c

    def check(self) -> Formula:
        """The current position re-derived from scratch (for tests)."""
        return prefixation(self.position, self.game)


class ProviderBundle:
    """Channels indexed like the antecedent; Replicate clones a channel in place."""

    def __init__(self, channels=()):
        self.channels = list(channels)

    @classmethod
    def for_games(cls, games, providers) -> "ProviderBundle":
        return cls(Channel(g, p) for g, p in zip(games, providers))

    def __len__(self) -> int:
        return len(self.channels)

    def __getitem__(self, i: int) -> Channel:
        return self.channels[i]

    def replicate(self, i: int) -> Channel:
        c = self.channels[i].clone()
        self.channels.insert(i + 1, c)
        return c

    def clone(self) -> "ProviderBundle":
        return ProviderBundle(c.clone() for c in self.channels)
