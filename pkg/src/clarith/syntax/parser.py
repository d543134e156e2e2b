"""Text syntax: tokenizer, recursive-descent parser and canonical printer.

ASCII and UTF-8 spellings are both accepted; printing always produces
the ASCII canonical form, which parses back to the identical AST.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .formulas import (
    ALL, AND, CALL, CEX, EX, IMP, JOIN, MEET, OR, Atom, Bin, Formula, Not,
    Quant, check_negations, iff, normalize,
)
from .terms import ZERO, Add, Const, Fn, Mul, PTERMS, Succ, Term, Var, Zero, const


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}" + (f": {text[pos:pos + 20]!r}" if text else ""))


_UNICODE = {
    "∧": "&", "∨": "|", "→": "->", "¬": "~", "∀": "all", "∃": "ex",
    "⊓": "MEET", "⊔": "JOIN", "′": "'", "≤": "<=", "≥": ">=", "≠": "!=",
    "↔": "<->", "×": "*", "⊢": "|o-", "⊸": "|o-",
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<turn>\|o-|⊸–|⊸-|⊸|⊢)
  | (?P<op><->|->|<=|>=|!=|[~&|().,'+*^=<>;:])
  | (?P<const>\#[01]*)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<uni>[∧∨→¬∀∃⊓⊔′≤≥≠↔×])
""", re.VERBOSE)

KEYWORDS = {"all", "ex", "call", "cex", "cand", "cor", "Bit"}


@dataclass
class Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    toks: list[Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        val = m.group()
        if kind == "turn":
            toks.append(Tok("op", "|o-", pos))
        elif kind == "uni":
            u = _UNICODE[val]
            if u in ("MEET", "JOIN"):
                toks.append(Tok("choice", u, pos))
            elif u in ("all", "ex"):
                toks.append(Tok("ident", u, pos))
            else:
                toks.append(Tok("op", u, pos))
        elif kind != "ws":
            toks.append(Tok(kind, val, pos))
        pos = m.end()
    toks.append(Tok("eof", "", len(text)))
    return toks


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def at_op(self, *values: str) -> bool:
        return self.tok.kind == "op" and self.tok.value in values

    def expect_op(self, value: str) -> Tok:
        if not self.at_op(value):
            self.fail(f"expected {value!r}")
        t = self.tok
        self.i += 1
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.tok.pos)

    def done(self):
        if not self.at("eof"):
            self.fail("unexpected trailing input")

    # -- terms
    def term(self) -> Term:
        t = self.product()
        while self.at_op("+"):
            self.i += 1
            t = Add(t, self.product())
        return t

    def product(self) -> Term:
        t = self.power()
        while self.at_op("*"):
            self.i += 1
            t = Mul(t, self.power())
        return t

    def power(self) -> Term:
        t, lit = self._power()
        return t

    def _power(self):
        base, lit = self.postfix()
        if not self.at_op("^"):
            return base, lit
        self.i += 1
        expo, elit = self._power()
        if lit == 2:
            return Fn("pow2", (expo,)), None
        if elit is None or elit < 1:
            self.fail("exponent must be a positive literal unless the base is 2")
        out = base
        for _ in range(elit - 1):
            out = Mul(out, base)
        return out, None

    def postfix(self):
        t, lit = self.primary()
        while self.at_op("'"):
            self.i += 1
            t, lit = Succ(t), None
        return t, lit

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            n = int(tok.value)
            return const(n), n
        if tok.kind == "const":
            digits = tok.value[1:]
            if not digits or (len(digits) > 1 and digits[0] == "0"):
                self.fail("binary constant must be nonempty without leading zeros")
            self.i += 1
            return const(int(digits, 2)), None
        if tok.kind == "op" and tok.value == "(":
            self.i += 1
            t = self.term()
            self.expect_op(")")
            return t, None
        if tok.kind == "op" and tok.value == "|":
            self.i += 1
            t = self.term()
            self.expect_op("|")
            return Fn("len", (t,)), None
        if tok.kind == "ident" and tok.value not in KEYWORDS:
            self.i += 1
            if tok.value in PTERMS and self.at_op("("):
                self.i += 1
                args = [self.term()]
                while self.at_op(","):
                    self.i += 1
                    args.append(self.term())
                self.expect_op(")")
                arity = PTERMS[tok.value][0]
                if len(args) != arity:
                    self.fail(f"{tok.value} takes {arity} arguments")
                return Fn(tok.value, tuple(args)), None
            return Var(tok.value), None
        self.fail("expected a term")

    # -- formulas
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at_op("->"):
            self.i += 1
            return Bin(IMP, left, self.formula())
        if self.at_op("<->"):
            self.i += 1
            return iff(left, self.formula())
        return left

    def _infix(self, names: tuple, choice: str):
        t = self.tok
        if t.kind == "op" and t.value in names:
            return {"&": AND, "|": OR}[t.value]
        if t.kind == "ident" and t.value in names:
            return {"cand": MEET, "cor": JOIN}[t.value]
        if t.kind == "choice" and t.value == choice:
            return MEET if choice == "MEET" else JOIN
        return None

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while (op := self._infix(("|", "cor"), "JOIN")) is not None:
            self.i += 1
            left = Bin(op, left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while (op := self._infix(("&", "cand"), "MEET")) is not None:
            self.i += 1
            left = Bin(op, left, self.unary())
        return left

    def unary(self) -> Formula:
        t = self.tok
        if self.at_op("~"):
            self.i += 1
            return Not(self.unary())
        if t.kind == "ident" and t.value in ("all", "ex", "call", "cex"):
            self.i += 1
            return self.quantifier(t.value)
        if t.kind == "choice":
            self.i += 1
            return self.quantifier(CALL if t.value == "MEET" else CEX)
        if self.at_op("("):
            save = self.i
            try:
                return self.atom()
            except ParseError as e:
                first = e
            self.i = save + 1
            try:
                f = self.formula()
                self.expect_op(")")
                return f
            except ParseError as e:
                raise e if e.pos >= first.pos else first
        return self.atom()

    def quantifier(self, op: str) -> Formula:
        bounded_len = False
        if self.at_op("|"):
            self.i += 1
            bounded_len = True
        var = self.variable()
        if bounded_len:
            self.expect_op("|")
        guard = None
        if self.at_op("<=", "<"):
            rel = self.tok.value
            self.i += 1
            lhs = Fn("len", (Var(var),)) if bounded_len else Var(var)
            guard = Atom(rel, (lhs, self.term()))
        elif bounded_len:
            self.fail("expected <= or < after |variable|")
        if self.at_op("."):
            self.i += 1
            body = self.formula()
        else:
            body = self.unary()
        if guard is not None:
            body = Bin(IMP if op in (ALL, CALL) else AND, guard, body)
        return Quant(op, var, body)

    def variable(self) -> str:
        t = self.tok
        if t.kind != "ident" or t.value in KEYWORDS:
            self.fail("expected a variable")
        self.i += 1
        return t.value

    def atom(self) -> Formula:
        if self.at("ident", "Bit"):
            self.i += 1
            self.expect_op("(")
            y = self.term()
            self.expect_op(",")
            x = self.term()
            self.expect_op(")")
            return Atom("Bit", (y, x))
        left = self.term()
        if not self.at_op("=", "!=", "<=", "<", ">=", ">"):
            self.fail("expected a relation symbol")
        rel = self.tok.value
        self.i += 1
        right = self.term()
        if rel == "=":
            return Atom("=", (left, right))
        if rel == "!=":
            return Not(Atom("=", (left, right)))
        if rel in ("<=", "<"):
            return Atom(rel, (left, right))
        return Atom("<=" if rel == ">=" else "<", (right, left))


def parse_term(text: str) -> Term:
    p = Parser(text)
    t = p.term()
    p.done()
    return t


def parse_formula(text: str, normalize_negations: bool = False) -> Formula:
    """Parse a formula; ~ over a choice operator is an error unless normalizing."""
    p = Parser(text)
    f = p.formula()
    p.done()
    bad = check_negations(f)
    if bad is not None:
        if normalize_negations:
            return normalize(f)
        raise ParseError(
            f"negation of a non-elementary subformula ({render(bad)}); "
            "pass normalize_negations=True to push it inward", text, 0)
    return f


# ---------------------------------------------------------------------------
# printing

def render_term(t: Term, level: int = 0) -> str:
    """level: 0 sum, 1 product, 2 power operand, 3 postfix operand."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Const):
        return "#" + format(t.value, "b")
    if isinstance(t, Succ):
        return render_term(t.arg, 3) + "'"
    if isinstance(t, Add):
        s = render_term(t.left, 0) + "+" + render_term(t.right, 1)
        return f"({s})" if level > 0 else s
    if isinstance(t, Mul):
        s = render_term(t.left, 1) + "*" + render_term(t.right, 2)
        return f"({s})" if level > 1 else s
    if t.name == "len":
        return "|" + render_term(t.args[0]) + "|"
    if t.name == "pow2":
        s = "2^" + render_term(t.args[0], 2)
        return f"({s})" if level > 2 else s
    return t.name + "(" + ", ".join(render_term(a) for a in t.args) + ")"


_PREC = {IMP: 1, OR: 2, JOIN: 2, AND: 3, MEET: 3}


def render(f: Formula) -> str:
    return _render(f)


def _render(f: Formula) -> str:
    if isinstance(f, Atom):
        if f.rel == "Bit":
            return f"Bit({render_term(f.args[0])}, {render_term(f.args[1])})"
        return f"{render_term(f.args[0])} {f.rel} {render_term(f.args[1])}"
    if isinstance(f, Not):
        return "~" + _operand(f.body, 4)
    if isinstance(f, Quant):
        return f"{f.op} {f.var} . {_render(f.body)}"
    p = _PREC[f.op]
    if f.op == IMP:
        left, right = _operand(f.left, p + 1), _operand(f.right, p)
    else:
        left, right = _operand(f.left, p), _operand(f.right, p + 1)
    return f"{left} {f.op} {right}"


def _operand(f: Formula, need: int) -> str:
    if isinstance(f, Atom):
        return _render(f)
    if isinstance(f, Not):
        return _render(f)
    if isinstance(f, Quant):
        return f"({_render(f)})"
    if _PREC[f.op] < need:
        return f"({_render(f)})"
    return _render(f)
