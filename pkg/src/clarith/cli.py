"""Command line: check proofs, play matches, audit regularity, evaluate sentences.

Exit codes: 0 success, 1 negative result (rejected, lost, falsified,
false), 2 usage, 3 unreadable file, 4 budget exhausted or inconclusive,
5 syntax error, 6 aborted match.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .arena.evaluate import FALSE, TRUE, eval_elementary
from .arena.match import MatchConfig, run_match
from .bounds.regularity import (
    DEFAULT_GRID, FALSIFIED, INCONCLUSIVE, check_regularity, dds_table, resolve_triple,
)
from .cl12.proof import ProofSyntaxError, check_proof, load_proof
from .cla11.config import ConfigError, default_theory, load_theory
from .cla11.proof import check_theory_proof, load_cla11_proof
from .strategies.envs import exhaustive_matches
from .strategies.extract import ExtractionError
from .strategies.registry import SpecError, agent_game, make_agent, make_env
from .syntax.formulas import free_vars, is_elementary
from .syntax.game import elementarize
from .syntax.parser import ParseError, parse_formula, render

OK, NEGATIVE, USAGE, IO_ERROR, INCONCLUSIVE_EXIT, SYNTAX, ABORTED = range(7)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(args, plain: str, data: dict, out) -> None:
    if args.format == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write(plain)


def _grid(text: str | None) -> tuple:
    if not text:
        return DEFAULT_GRID
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise CliError(USAGE, f"--grid takes comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# check

def _check_one(path: str, theory_path: str | None, budget: int, permissive: bool):
    """(exit code, plain report, dict); runs in worker processes too."""
    try:
        if path.endswith(".cla11"):
            theory = load_theory(theory_path) if theory_path else default_theory()
            report = check_theory_proof(load_cla11_proof(path), theory, permissive)
        else:
            report = check_proof(load_proof(path), budget, permissive)
    except OSError as e:
        return IO_ERROR, f"{path}: cannot read: {e.strerror}\n", {"path": path, "error": "io", "detail": str(e)}
    except ConfigError as e:
        return SYNTAX, f"{theory_path}: {e}\n", {"path": theory_path, "error": "config", "detail": str(e)}
    except (ProofSyntaxError, ParseError) as e:
        return SYNTAX, f"{path}: syntax error: {e}\n", {"path": path, "error": "syntax", "detail": str(e)}
    data = dict(report.as_dict(), path=path)
    return (OK if report.accepted else NEGATIVE), f"{path}: {report.render()}", data


def cmd_check(args, out) -> int:
    jobs = [(p, args.theory, args.budget, args.permissive) for p in args.paths]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_check_star, jobs))
    else:
        results = [_check_one(*j) for j in jobs]
    for code, plain, data in results:
        _emit(args, plain, data, out)
    return max(code for code, _, _ in results)


def _check_star(job):
    return _check_one(*job)


# ---------------------------------------------------------------------------
# play

def _read_game(text: str | None):
    if text is None:
        return None
    if os.path.exists(text):
        try:
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise CliError(IO_ERROR, f"cannot read {text}: {e.strerror}") from None
    try:
        return parse_formula(" ".join(l for l in text.splitlines() if not l.lstrip().startswith("%")))
    except ParseError as e:
        raise CliError(SYNTAX, f"game: {e}") from None


def _match_code(res) -> int:
    if res.aborted:
        return ABORTED
    return OK if res.verdict.kind == "T-won" else NEGATIVE


def _match_dict(res) -> dict:
    return {"moves": [lm.render() for lm in res.position],
            "verdict": None if res.aborted else res.verdict.render(),
            "aborted": res.aborted, "meter": res.meter.snapshot()}


def cmd_play(args, out) -> int:
    game = _read_game(args.game)
    try:
        probe = make_agent(args.agent, game)
    except SpecError as e:
        raise CliError(USAGE, str(e)) from None
    except OSError as e:
        raise CliError(IO_ERROR, f"cannot read {e.filename}: {e.strerror}") from None
    except (ProofSyntaxError, ParseError) as e:
        raise CliError(SYNTAX, str(e)) from None
    except ExtractionError as e:
        raise CliError(NEGATIVE, str(e)) from None
    game = game if game is not None else agent_game(probe)
    if game is None:
        raise CliError(USAGE, "no game given and the agent declares none")
    if free_vars(game):
        raise CliError(USAGE, f"the game must be a sentence; free: {', '.join(sorted(free_vars(game)))}")
    config = MatchConfig(blind_bound=args.blind_bound, max_moves=args.max_moves, seed=args.seed)
    env_spec = args.env
    if env_spec.startswith("exhaustive"):
        _, _, depth = env_spec.partition(":")
        if depth and not depth.isdigit():
            raise CliError(USAGE, "exhaustive:K needs a decimal depth")
        k = int(depth or 3)
        total, wins, worst, runs = 0, 0, OK, []
        for prefix, res in exhaustive_matches(lambda: make_agent(args.agent, game), game, k, config=config):
            total += 1
            code = _match_code(res)
            wins += code == OK
            worst = max(worst, code)
            runs.append(dict(_match_dict(res), choices=list(prefix)))
            if code != OK and args.format == "plain":
                out.write(f"choices {list(prefix)}:\n{res.transcript()}")
        _emit(args, f"exhaustive depth {k}: {wins}/{total} T-won\n",
              {"depth": k, "matches": total, "won": wins, "runs": runs}, out)
        return worst
    if env_spec == "random":
        env_spec = f"random:{args.seed}"
    try:
        env = make_env(env_spec, game)
    except SpecError as e:
        raise CliError(USAGE, str(e)) from None
    except OSError as e:
        raise CliError(IO_ERROR, f"cannot read {e.filename}: {e.strerror}") from None
    res = run_match(probe, env, game, config)
    _emit(args, res.transcript(), _match_dict(res), out)
    return _match_code(res)


# ---------------------------------------------------------------------------
# regularity and the table

def _triple(names, index):
    if len(names) == 1:
        names = [n.strip() for n in names[0].strip("()").split(",")]
    if len(names) != 3:
        raise CliError(USAGE, "a triple is three boundclasses: amplitude space time")
    try:
        return resolve_triple(names, index)
    except ValueError as e:
        raise CliError(USAGE, str(e)) from None


def cmd_regularity(args, out) -> int:
    triple = _triple(args.triple, args.index)
    rep = check_regularity(triple, budget=args.budget, grid=_grid(args.grid),
                           blind_bound=args.blind_bound)
    _emit(args, rep.render() + "\n", rep.as_dict(), out)
    statuses = [c.status for c in rep.conditions.values()]
    if FALSIFIED in statuses:
        return NEGATIVE
    return INCONCLUSIVE_EXIT if INCONCLUSIVE in statuses else OK


def cmd_table(args, out) -> int:
    table = dds_table(args.index, budget=args.budget, grid=_grid(args.grid), jobs=args.jobs)
    _emit(args, table.render(), table.as_dict(), out)
    return NEGATIVE if any(r.falsified() for r in table.reports) else OK


# ---------------------------------------------------------------------------
# eval

def cmd_eval(args, out) -> int:
    try:
        f = parse_formula(args.formula)
    except ParseError as e:
        raise CliError(SYNTAX, str(e)) from None
    if free_vars(f):
        raise CliError(USAGE, f"not a sentence; free: {', '.join(sorted(free_vars(f)))}")
    target = f if is_elementary(f) else elementarize(f)
    value = eval_elementary(target, args.blind_bound)
    plain = f"{value}\n" if target is f else f"elementarization {render(target)}: {value}\n"
    _emit(args, plain, {"formula": render(f), "evaluated": render(target), "value": value}, out)
    return {TRUE: OK, FALSE: NEGATIVE}.get(value, INCONCLUSIVE_EXIT)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json"), default="plain")
    common.add_argument("--budget", type=int, default=None,
                        help="search budget: stability nodes (check) or closure nodes (audits)")
    common.add_argument("--blind-bound", type=int, default=4096,
                        help="range searched for blind quantifiers when evaluating")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="clarith", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check .cl12 or .cla11 proofs")
    c.add_argument("paths", nargs="+")
    c.add_argument("--theory", help="theory .cfg for .cla11 proofs")
    c.add_argument("--permissive", action="store_true",
                   help="accept unproved stability as an obligation")
    c.set_defaults(func=cmd_check, default_budget=2000)

    pl = sub.add_parser("play", parents=[common], help="play an agent against an environment")
    pl.add_argument("game", nargs="?", help="a sentence, or a file containing one")
    pl.add_argument("--agent", required=True)
    pl.add_argument("--env", default="silent")
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--max-moves", type=int, default=256)
    pl.set_defaults(func=cmd_play, default_budget=2000)

    r = sub.add_parser("regularity", parents=[common], help="audit a boundclass triple")
    r.add_argument("triple", nargs="+", help="amplitude space time, e.g. B3 B1^1 B5")
    r.add_argument("--grid")
    r.add_argument("--index", type=int, default=3)
    r.set_defaults(func=cmd_regularity, default_budget=500)

    t = sub.add_parser("table-dds", parents=[common], help="audit every listed triple")
    t.add_argument("--grid")
    t.add_argument("--index", type=int, default=3)
    t.set_defaults(func=cmd_table, default_budget=500)

    e = sub.add_parser("eval", parents=[common], help="evaluate an elementary sentence")
    e.add_argument("formula")
    e.set_defaults(func=cmd_eval, default_budget=0)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = args.default_budget
    try:
        return args.func(args, out)
    except CliError as e:
        if args.format == "json":
            out.write(json.dumps({"error": str(e), "exit": e.code}) + "\n")
        else:
            sys.stderr.write(f"clarith: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
