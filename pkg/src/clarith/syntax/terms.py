"""Terms of the arithmetic language.

The core language has the constant 0, variables, successor, sum and
product.  Binary constants (``#101``) turn formulas into paraformulas.
``Fn`` nodes are named abbreviations (``|t|``, ``2^t`` and a handful of
bit-level helper functions); they never occur in a pure formula but are
convenient in bounds and in the games the arithmetic strategies play.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("Const holds positive values; use ZERO for 0")


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple


Term = Union[Var, Zero, Const, Succ, Add, Mul, Fn]

ZERO = Zero()


def const(n: int) -> Term:
    """The constant denoting ``n``; 0 is always the plain zero constant."""
    if n < 0:
        raise ValueError("constants are natural numbers")
    return ZERO if n == 0 else Const(n)


def numeral(n: int) -> Term:
    """Unary numeral 0'...' with n primes."""
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def length(n: int) -> int:
    # ceil(log2(n+1)), i.e. the number of binary digits (0 has none)
    return n.bit_length()


def bit(x: int, y: int) -> int:
    return (x >> y) & 1


def _br(i):
    def f(x, s):
        return (s | (1 << x)) if i else (s & ~(1 << x))
    return f


def bitsum(x: int, y: int, u: int, v: int) -> int:
    # bits of u at or above |u| are zero, so the sum stops there
    return sum(bit(u, j) * bit(v, y - j) for j in range(min(x, y, u.bit_length() - 1) + 1))


def carry1(y: int, u: int, v: int) -> int:
    m = (1 << (y + 1)) - 1
    return 1 if (u & m) + (v & m) > m else 0


def borrow1(y: int, u: int, v: int) -> int:
    # only meaningful when u >= v; false otherwise
    if u < v:
        return 0
    m = (1 << (y + 1)) - 1
    return 1 if (u & m) < (v & m) else 0


def mult_carry(y: int, u: int, v: int) -> int:
    c = 0
    for k in range(y + 1):
        c = (bitsum(k, k, u, v) + c) // 2
    return c


POW2_LIMIT = 1 << 20


class BlowUp(ArithmeticError):
    """Raised when 2^t would exceed the configured size guard."""


def pow2(e: int, limit: int = POW2_LIMIT) -> int:
    if e > limit:
        raise BlowUp(f"2^{e} exceeds the blow-up guard of 2^{limit}")
    return 1 << e


# name -> (arity, function on naturals)
PTERMS: dict[str, tuple[int, Callable[..., int]]] = {
    "len": (1, length),
    "pow2": (1, pow2),
    "monus": (2, lambda u, v: max(0, u - v)),
    "half": (1, lambda u: u // 2),
    "br0": (2, _br(0)),
    "br1": (2, _br(1)),
    "bitsum": (4, bitsum),
    "carry1": (3, carry1),
    "borrow1": (3, borrow1),
    "carry": (3, mult_carry),
}


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for c in subterms(t):
        out |= term_vars(c)
    return out


def subterms(t: Term) -> tuple:
    """Immediate children."""
    if isinstance(t, Succ):
        return (t.arg,)
    if isinstance(t, (Add, Mul)):
        return (t.left, t.right)
    if isinstance(t, Fn):
        return t.args
    return ()


def rebuild(t: Term, kids) -> Term:
    if isinstance(t, Succ):
        return Succ(kids[0])
    if isinstance(t, Add):
        return Add(kids[0], kids[1])
    if isinstance(t, Mul):
        return Mul(kids[0], kids[1])
    if isinstance(t, Fn):
        return Fn(t.name, tuple(kids))
    return t


def subst_term(t: Term, mapping: dict) -> Term:
    """Replace variables by terms according to ``mapping`` (name -> Term)."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    kids = subterms(t)
    if not kids:
        return t
    return rebuild(t, [subst_term(k, mapping) for k in kids])


def has_constants(t: Term) -> bool:
    if isinstance(t, Const):
        return True
    return any(has_constants(k) for k in subterms(t))


def has_pterms(t: Term) -> bool:
    if isinstance(t, Fn):
        return True
    return any(has_pterms(k) for k in subterms(t))


def term_size(t: Term) -> int:
    return 1 + sum(term_size(k) for k in subterms(t))
