"""Agents and environments by name, for the command line and test suites.

Agent specs: ``add``, ``sub``, ``mult``, ``tri``, ``div2``, ``br0``, ``br1``,
``bitsum``, ``successor``, ``log``, ``bit``, ``oracle``, ``silent``,
``numeral:N``, ``bound:<bound>``, ``extract:<proof file>``.

Environment specs: ``random:SEED``, ``script:<file>``, ``exhaustive:K``,
``repl``, ``silent``.
"""
from __future__ import annotations

from ..arena.match import Agent, Silent
from ..bounds.expr import parse_bound
from ..cl12.proof import load_proof
from ..syntax.formulas import Formula, alpha_eq
from ..syntax.parser import parse_formula
from . import arithmetic
from .envs import RandomEnv, ReplEnv, ScriptEnv, parse_script
from .extract import extract_agent
from .providers import AXIOMS, OracleAgent, axiom_agent, bound_eval_agent, numeral_agent


class SpecError(ValueError):
    pass


_SIMPLE = {
    "add": arithmetic.add_agent,
    "sub": arithmetic.sub_agent,
    "mult": arithmetic.mult_agent,
    "tri": arithmetic.tri_agent,
    "div2": arithmetic.div2_agent,
    "br0": lambda: arithmetic.br_agent(0),
    "br1": lambda: arithmetic.br_agent(1),
    "bitsum": arithmetic.bitsum_agent,
    "successor": lambda: axiom_agent("Successor"),
    "log": lambda: axiom_agent("Log"),
    "bit": lambda: axiom_agent("Bit"),
}

AGENT_NAMES = sorted(_SIMPLE) + ["oracle", "silent", "numeral:N", "bound:B", "extract:PATH"]


def canonical_provider(game: Formula) -> Agent:
    """The axiom agent for an axiom game, otherwise the classical oracle."""
    for which, text in AXIOMS.items():
        if alpha_eq(game, parse_formula(text)):
            return axiom_agent(which)
    return OracleAgent(game)


def canonical_providers(sequent) -> list:
    return [canonical_provider(a) for a in sequent.antecedent]


def make_agent(spec: str, game: Formula | None = None) -> Agent:
    kind, _, arg = spec.partition(":")
    if kind in _SIMPLE and not arg:
        return _SIMPLE[kind]()
    if kind == "silent":
        return Silent()
    if kind == "oracle":
        if game is None:
            raise SpecError("the oracle agent needs a game")
        return OracleAgent(game)
    if kind == "numeral":
        if not arg.isdigit():
            raise SpecError("numeral:N needs a decimal N")
        return numeral_agent(int(arg))
    if kind == "bound":
        try:
            return bound_eval_agent(parse_bound(arg))
        except ValueError as e:
            raise SpecError(f"bad bound {arg!r}: {e}") from None
    if kind == "extract":
        proof = load_proof(arg)
        return extract_agent(proof, canonical_providers(proof.final))
    raise SpecError(f"unknown agent {spec!r}; known: {', '.join(AGENT_NAMES)}")


def agent_game(agent: Agent) -> Formula | None:
    """The game an agent declares, if any."""
    return getattr(agent, "game", None)


def make_env(spec: str, game: Formula, stream=None, out=None) -> Agent:
    kind, _, arg = spec.partition(":")
    if kind == "random":
        try:
            return RandomEnv(game, int(arg or 0))
        except ValueError:
            raise SpecError("random:SEED needs an integer seed") from None
    if kind == "script":
        with open(arg, encoding="utf-8") as fh:
            return ScriptEnv(parse_script(fh.read()))
    if kind == "repl":
        return ReplEnv(game, stream, out)
    if kind == "silent":
        return Silent()
    raise SpecError(f"unknown environment {spec!r}")
