"""CL12 proof files and proof checking.

One line per sequent::

    line 3: y1=0', cex y . y=y1' |o- cex z . z=0'' ;; Wait(2)

Rules: ``Wait(n, ...)``, ``JoinChoose(n; addr; inst)``,
``MeetChoose(n; addr; inst)``, ``Replicate(n; i)``; the address and
instance of a Choose are optional.  Blank lines and lines starting with
``%`` are ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..syntax.parser import ParseError
from .rules import (
    RuleError, RuleReport, check_choose, check_replicate, check_wait, parse_address,
)
from .sequent import Sequent, parse_sequent
from .stability import DEFAULT_BUDGET

RULES = ("Wait", "JoinChoose", "MeetChoose", "Replicate")
ACCEPTED, REJECTED, OBLIGATIONS = "accepted", "rejected", "accepted-with-obligations"


class ProofSyntaxError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


@dataclass(frozen=True)
class Justification:
    rule: str
    premises: tuple = ()
    address: str | None = None
    instance: str | None = None
    index: int | None = None

    def render(self) -> str:
        if self.rule == "Wait":
            return f"Wait({', '.join(map(str, self.premises))})"
        if self.rule == "Replicate":
            return f"Replicate({self.premises[0]}; {self.index})"
        args = [str(self.premises[0])]
        if self.address is not None:
            args.append(self.address)
            if self.instance is not None:
                args.append(self.instance)
        return f"{self.rule}({'; '.join(args)})"


@dataclass(frozen=True)
class ProofLine:
    number: int
    sequent: Sequent
    justification: Justification

    def render(self) -> str:
        return f"line {self.number}: {self.sequent.render()} ;; {self.justification.render()}"


@dataclass
class Cl12Proof:
    lines: list

    def render(self) -> str:
        return "".join(l.render() + "\n" for l in self.lines)

    @property
    def final(self) -> Sequent | None:
        return self.lines[-1].sequent if self.lines else None

    def by_number(self) -> dict:
        return {l.number: l for l in self.lines}


_LINE_RE = re.compile(r"^\s*line\s+(\d+)\s*:\s*(.*?)\s*;;\s*(\w+)\s*\((.*)\)\s*$")


def parse_justification(rule: str, args: str) -> Justification:
    if rule not in RULES:
        raise RuleError(f"unknown rule {rule!r}")
    args = args.strip()
    if rule == "Wait":
        nums = [a.strip() for a in args.split(",") if a.strip()]
        if not all(n.isdigit() for n in nums):
            raise RuleError("Wait takes premise line numbers")
        return Justification("Wait", tuple(int(n) for n in nums))
    parts = [a.strip() for a in args.split(";")]
    if not parts[0].isdigit():
        raise RuleError(f"{rule} needs a premise line number")
    prem = (int(parts[0]),)
    if rule == "Replicate":
        if len(parts) != 2 or not parts[1].isdigit():
            raise RuleError("Replicate takes (premise; antecedent index)")
        return Justification(rule, prem, index=int(parts[1]))
    if len(parts) > 3:
        raise RuleError(f"{rule} takes at most (premise; address; instance)")
    addr = parts[1] if len(parts) > 1 and parts[1] else None
    inst = parts[2] if len(parts) > 2 and parts[2] else None
    if addr is not None:
        parse_address(addr)
    return Justification(rule, prem, addr, inst)


def parse_proof(text: str) -> Cl12Proof:
    lines = []
    for k, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("%"):
            continue
        m = _LINE_RE.match(raw)
        if not m:
            raise ProofSyntaxError("expected 'line <n>: <sequent> ;; <rule>(<args>)'", k)
        try:
            seq = parse_sequent(m.group(2))
            just = parse_justification(m.group(3), m.group(4))
        except (ParseError, RuleError) as e:
            raise ProofSyntaxError(str(e), k) from None
        lines.append(ProofLine(int(m.group(1)), seq, just))
    return Cl12Proof(lines)


def load_proof(path) -> Cl12Proof:
    with open(path, encoding="utf-8") as fh:
        return parse_proof(fh.read())


@dataclass
class LineResult:
    number: int
    ok: bool
    reason: str = ""
    rule: RuleReport | None = None


@dataclass
class ProofReport:
    status: str
    line: int | None = None
    reason: str = ""
    obligations: list = field(default_factory=list)
    final: Sequent | None = None
    lines: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.status in (ACCEPTED, OBLIGATIONS)

    def render(self) -> str:
        out = [f"{'ok' if r.ok else 'FAIL'} line {r.number}" + (f": {r.reason}" if r.reason else "")
               for r in self.lines]
        head = self.status if self.status != REJECTED else f"rejected at line {self.line}: {self.reason}"
        out.append(head)
        out += [f"obligation: {o}" for o in self.obligations]
        if self.final is not None and self.accepted:
            out.append(f"proves: {self.final.render()}")
        return "\n".join(out) + "\n"

    def as_dict(self) -> dict:
        return {"status": self.status, "line": self.line, "reason": self.reason,
                "obligations": list(self.obligations),
                "final": self.final.render() if self.final else None,
                "lines": [{"line": r.number, "ok": r.ok, "reason": r.reason} for r in self.lines]}


def check_line(line: ProofLine, table: dict, budget: int, permissive: bool) -> RuleReport:
    j = line.justification
    for p in j.premises:
        if p not in table:
            return RuleReport.fail(f"premise {p} does not precede line {line.number}")
    if j.rule == "Wait":
        return check_wait(line.sequent, [(p, table[p].sequent) for p in j.premises], budget, permissive)
    prem = table[j.premises[0]].sequent
    if j.rule == "Replicate":
        return check_replicate(line.sequent, prem, j.index)
    addr = parse_address(j.address) if j.address else None
    return check_choose(line.sequent, prem, j.rule, addr, j.instance)


def check_proof(proof: Cl12Proof, budget: int = DEFAULT_BUDGET, permissive: bool = False) -> ProofReport:
    if not proof.lines:
        return ProofReport(REJECTED, None, "empty proof")
    table: dict = {}
    results, obligations = [], []
    for line in proof.lines:
        if line.number in table:
            return ProofReport(REJECTED, line.number, "duplicate line number", lines=results)
        rep = check_line(line, table, budget, permissive)
        results.append(LineResult(line.number, rep.ok, rep.reason, rep))
        if not rep.ok:
            return ProofReport(REJECTED, line.number, rep.reason, lines=results)
        obligations += rep.obligations
        table[line.number] = line
    status = OBLIGATIONS if obligations else ACCEPTED
    return ProofReport(status, None, "", obligations, proof.final, results)
