"""Language of arithmetic with choice operators, and its game reading."""
from .terms import (
    ZERO, Add, BlowUp, Const, Fn, Mul, PTERMS, Succ, Term, Var, Zero, const,
    numeral, subst_term, term_vars,
)
from .formulas import (
    ALL, AND, CALL, CEX, EX, FALSE_ATOM, IMP, JOIN, MEET, OR, TRUE_ATOM,
    Atom, Bin, CaptureError, Formula, Not, Quant, all_vars, alpha_eq,
    bound_vars, close, eq, expand, free_vars, fresh_var, has_abbreviations,
    iff, is_elementary, is_paraformula, is_pure, is_sentence, le, lt, negate,
    normalize, substitute, substitute_many,
)
from .parser import ParseError, parse_formula, parse_term, render, render_term
from .game import (
    BOT, TOP, IllegalMove, Labmove, MovePath, Occurrence, apply_move,
    developments, elementarize, first_illegal, header, headers_of,
    is_critical, is_legal, legal_moves, magnitude, numer, other, parse_labmove,
    parse_move, prefixation, surface_occurrences,
)
