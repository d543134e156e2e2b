"""CLA11 proof files and their checking against a theory.

One sentence per line, free variables read as ⊓-closed::

    line 1: call x . cex y . y = x' ;; AX(Successor)
    line 2: cex z . z = 0'' ;; LC(1; proof=numerals2.cl12)

Justifications:

* ``AX()`` or ``AX(name)``: name is Peano, Peano1 .. Peano7, Successor,
  Log, Bit, or a supplementary axiom name from the theory.
* ``LC(n, m, ...; proof=<file.cl12>)``: the attached CL12 proof, relative
  to the proof file.  The line list may be empty.
* ``IND(basis=n; step=m; var=x; bound=b; params=s1,s2[; reasonable])``
* ``COMP(premise=n; var=x; bitvar=y; bound=b; params=s1,s2[; reasonable])``
* ``TRUE`` or ``TRUE(trusted)``: a true elementary sentence, checked by
  evaluation unless marked trusted; needs ``trusted_true`` in the theory.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from ..arena.evaluate import FALSE, TRUE, eval_elementary
from ..bounds.expr import parse_bound
from ..cl12.proof import ProofSyntaxError, load_proof
from ..syntax.formulas import CALL, Formula, close, is_elementary
from ..syntax.parser import ParseError, parse_formula, render
from .axioms import recognize_axiom
from .config import TheoryParams, default_theory
from .rules import (
    ComprehensionParams, InductionParams, RuleCheck, check_comprehension,
    check_induction, check_lc,
)

RULES = ("AX", "LC", "IND", "COMP", "TRUE")
ACCEPTED, REJECTED, OBLIGATIONS = "accepted", "rejected", "accepted-with-obligations"


@dataclass(frozen=True)
class Cla11Justification:
    rule: str
    cites: tuple = ()
    options: tuple = ()          # (key, value) pairs in the written order
    flags: tuple = ()            # bare words such as "reasonable" or "trusted"
    name: str | None = None      # AX argument

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)

    def render(self) -> str:
        if self.rule == "AX":
            return f"AX({self.name or ''})"
        if self.rule == "TRUE":
            return "TRUE(trusted)" if "trusted" in self.flags else "TRUE"
        parts = []
        if self.rule == "LC":
            parts.append(", ".join(map(str, self.cites)))
        parts += [f"{k}={v}" for k, v in self.options]
        parts += list(self.flags)
        return f"{self.rule}({'; '.join(parts)})"


@dataclass(frozen=True)
class Cla11Line:
    number: int
    formula: Formula
    justification: Cla11Justification

    @property
    def sentence(self) -> Formula:
        return close(self.formula, CALL)

    def render(self) -> str:
        return f"line {self.number}: {render(self.formula)} ;; {self.justification.render()}"


@dataclass
class Cla11Proof:
    lines: list
    base_dir: str = "."

    def render(self) -> str:
        return "".join(l.render() + "\n" for l in self.lines)


_LINE_RE = re.compile(r"^\s*line\s+(\d+)\s*:\s*(.*?)\s*;;\s*(\w+)\s*(?:\((.*)\))?\s*$")


def parse_cla11_justification(rule: str, args: str | None) -> Cla11Justification:
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    args = (args or "").strip()
    if rule == "AX":
        return Cla11Justification("AX", name=args or None)
    if rule == "TRUE":
        if args not in ("", "trusted"):
            raise ValueError("TRUE takes no argument or 'trusted'")
        return Cla11Justification("TRUE", flags=("trusted",) if args else ())
    parts = [p.strip() for p in args.split(";")]
    cites: tuple = ()
    if rule == "LC":
        head = parts.pop(0) if parts else ""
        nums = [n.strip() for n in head.split(",") if n.strip()]
        if not all(n.isdigit() for n in nums):
            raise ValueError("LC cites line numbers before the first ';'")
        cites = tuple(int(n) for n in nums)
    options, flags = [], []
    for p in parts:
        if not p:
            continue
        if "=" in p:
            k, v = p.split("=", 1)
            options.append((k.strip(), v.strip()))
        else:
            flags.append(p)
    allowed = {"LC": {"proof"}, "IND": {"basis", "step", "var", "bound", "params"},
               "COMP": {"premise", "var", "bitvar", "bound", "params"}}[rule]
    unknown = {k for k, _ in options} - allowed
    if unknown:
        raise ValueError(f"{rule} does not take {', '.join(sorted(unknown))}")
    bad_flags = set(flags) - ({"reasonable"} if rule in ("IND", "COMP") else set())
    if bad_flags:
        raise ValueError(f"{rule} does not take {', '.join(sorted(bad_flags))}")
    if rule != "LC":
        missing = allowed - {k for k, _ in options} - {"params"}
        if missing:
            raise ValueError(f"{rule} needs {', '.join(sorted(missing))}")
    return Cla11Justification(rule, cites, tuple(options), tuple(flags))


def parse_cla11_proof(text: str, base_dir: str = ".") -> Cla11Proof:
    lines = []
    for k, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("%"):
            continue
        m = _LINE_RE.match(raw)
        if not m:
            raise ProofSyntaxError("expected 'line <n>: <sentence> ;; <rule>(<args>)'", k)
        try:
            f = parse_formula(m.group(2))
            j = parse_cla11_justification(m.group(3), m.group(4))
        except (ParseError, ValueError) as e:
            raise ProofSyntaxError(str(e), k) from None
        lines.append(Cla11Line(int(m.group(1)), f, j))
    return Cla11Proof(lines, base_dir)


def load_cla11_proof(path) -> Cla11Proof:
    with open(path, encoding="utf-8") as fh:
        return parse_cla11_proof(fh.read(), os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# checking

@dataclass
class Cla11LineResult:
    number: int
    ok: bool
    rule: str
    reason: str = ""
    obligations: list = field(default_factory=list)
    trusted: bool = False


@dataclass
class Cla11Report:
    status: str
    line: int | None = None
    reason: str = ""
    lines: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.status in (ACCEPTED, OBLIGATIONS)

    @property
    def obligations(self) -> list:
        return [o for r in self.lines for o in r.obligations]

    def render(self) -> str:
        out = []
        for r in self.lines:
            tag = "ok" if r.ok else "FAIL"
            extra = f": {r.reason}" if r.reason else ""
            out.append(f"{tag} line {r.number} {r.rule}{' (trusted)' if r.trusted else ''}{extra}")
        out.append(self.status if self.status != REJECTED else f"rejected at line {self.line}: {self.reason}")
        out += [f"obligation: {o}" for o in self.obligations]
        return "\n".join(out) + "\n"

    def as_dict(self) -> dict:
        return {"status": self.status, "line": self.line, "reason": self.reason,
                "obligations": self.obligations,
                "lines": [{"line": r.number, "ok": r.ok, "rule": r.rule, "reason": r.reason,
                           "trusted": r.trusted} for r in self.lines]}


def _params(text: str | None) -> tuple:
    return tuple(p for p in re.split(r"[\s,]+", text or "") if p)


def _cited(table: dict, n, here: int):
    try:
        n = int(n)
    except (TypeError, ValueError):
        raise ValueError(f"bad line reference {n!r}") from None
    if n not in table:
        raise ValueError(f"line {n} does not precede line {here}")
    return table[n].sentence


def check_cla11_line(line: Cla11Line, table: dict, theory: TheoryParams, base_dir: str = ".",
                     permissive: bool = False) -> Cla11LineResult:
    j = line.justification
    res = Cla11LineResult(line.number, False, j.rule)
    try:
        check = _check(line, table, theory, base_dir, permissive, res)
    except ValueError as e:
        res.reason = str(e)
        return res
    res.ok = check.ok
    res.reason = res.reason or check.reason
    res.obligations = list(check.obligations)
    return res


def _check(line, table, theory, base_dir, permissive, res) -> RuleCheck:
    j = line.justification
    f = line.sentence
    if j.rule == "AX":
        kind = recognize_axiom(f, theory.supplementary)
        if not kind.is_axiom:
            return RuleCheck.from_errors([f"{render(f)} is not an axiom"])
        want = (j.name or "").replace(" ", "")
        if want and want not in (kind.kind, kind.label().replace(" ", ""), kind.name,
                                 f"Supplementary:{kind.name}"):
            return RuleCheck.from_errors([f"cited as {j.name} but recognized as {kind.label()}"])
        res.reason = kind.label()
        return RuleCheck(True)
    if j.rule == "TRUE":
        if not theory.trusted_true:
            return RuleCheck.from_errors(["the theory does not admit trusted-true lines"])
        if not is_elementary(f):
            return RuleCheck.from_errors(["trusted-true lines must be elementary sentences"])
        if "trusted" in j.flags:
            res.trusted = True
            return RuleCheck(True)
        v = eval_elementary(f, theory.blind_bound)
        if v == TRUE:
            return RuleCheck(True)
        why = "false" if v == FALSE else "undecided by the evaluator"
        return RuleCheck.from_errors([f"sentence is {why}; mark it TRUE(trusted) to accept on trust"])
    if j.rule == "LC":
        premises = [_cited(table, n, line.number) for n in j.cites]
        attached = None
        path = j.option("proof")
        if path:
            try:
                attached = load_proof(os.path.join(base_dir, path))
            except OSError as e:
                return RuleCheck.from_errors([f"cannot read attached proof {path}: {e.strerror}"])
            except ProofSyntaxError as e:
                return RuleCheck.from_errors([f"attached proof {path}: {e}"])
        return check_lc(f, premises, attached, permissive=permissive, extended=theory.extended)
    bound = parse_bound(j.option("bound"))
    reasonable = "reasonable" in j.flags
    if j.rule == "IND":
        ip = InductionParams(j.option("var"), bound, _params(j.option("params")))
        basis = _cited(table, j.option("basis"), line.number)
        step = _cited(table, j.option("step"), line.number)
        return check_induction(f, basis, step, ip,
                               theory.space, theory.time, reasonable, theory.budget)
    cp = ComprehensionParams(j.option("var"), j.option("bitvar"), bound, _params(j.option("params")))
    premise = _cited(table, j.option("premise"), line.number)
    return check_comprehension(f, premise, cp, theory.amplitude, reasonable, theory.budget)


def check_theory_proof(proof: Cla11Proof, theory: TheoryParams | None = None,
                       permissive: bool = False) -> Cla11Report:
    theory = theory or default_theory()
    if not proof.lines:
        return Cla11Report(REJECTED, None, "empty proof")
    table: dict = {}
    results = []
    for line in proof.lines:
        if line.number in table:
            return Cla11Report(REJECTED, line.number, "duplicate line number", results)
        r = check_cla11_line(line, table, theory, proof.base_dir, permissive)
        results.append(r)
        if not r.ok:
            return Cla11Report(REJECTED, line.number, r.reason, results)
        table[line.number] = line
    status = OBLIGATIONS if any(r.obligations for r in results) else ACCEPTED
    return Cla11Report(status, None, "", results)
