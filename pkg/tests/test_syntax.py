import itertools
import re

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from clarith.syntax import (
    ALL, BOT, CALL, CEX, EX, FALSE_ATOM, TOP, TRUE_ATOM, Atom, Bin, CaptureError,
    IllegalMove, Labmove, MovePath, Not, ParseError, Quant, Succ, Var, ZERO,
    apply_move, close, const, developments, elementarize, first_illegal,
    free_vars, header, headers_of, is_critical, is_elementary, is_paraformula,
    is_pure, legal_moves, magnitude, normalize, numer, parse_formula,
    parse_labmove, parse_move, parse_term, prefixation, render, render_term,
    substitute, surface_occurrences,
)
from clarith.syntax.formulas import bound_vars, walk
from clarith.syntax.terms import Const, term_vars

from generators import formulas, terms

P = parse_formula


# ---------------------------------------------------------------------------
# parsing and rendering

def test_parse_choice_existential():
    f = P("cex z . z = 0''")
    assert f == Quant(CEX, "z", Atom("=", (Var("z"), Succ(Succ(ZERO)))))


def test_smallest_sentence_is_elementary_atom():
    f = P("0 = 0")
    assert f == Atom("=", (ZERO, ZERO))
    assert is_elementary(f) and is_pure(f)


def test_binary_constants_make_paraformulas():
    assert is_paraformula(P("x = #101"))
    assert not is_paraformula(P("x = 0'"))


def test_utf8_synonyms():
    assert P("⊓x ⊔y (y = x')") == P("call x . cex y . y = x'")
    assert P("∀x (x = x ∧ ¬ x = 0')") == P("all x . x = x & ~x = 0'")


def test_quantifier_scope_is_maximal():
    f = P("all x . x = x -> x = 0")
    assert isinstance(f, Quant) and isinstance(f.body, Bin)


def test_negated_choice_is_rejected_with_hint():
    with pytest.raises(ParseError, match="normal"):
        P("~(cex x . x = 0)")
    assert P("~(cex x . x = 0)", normalize_negations=True) == P("call x . ~x = 0")


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as e:
        P("x = = 0")
    assert "position" in str(e.value)


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_render_parse_round_trip(f):
    text = render(f)
    assert P(text) == f
    assert render(P(text)) == text


@settings(max_examples=200, deadline=None)
@given(terms())
def test_term_round_trip(t):
    assert parse_term(render_term(t)) == t


# ---------------------------------------------------------------------------
# substitution and closure

def test_substitute_constant():
    assert render(substitute(P("cex y . y = x'"), "x", const(5))) == "cex y . y = #101'"


def test_substitute_ignores_bound_occurrences():
    f = P("all x . x = x")
    assert substitute(f, "x", ZERO) == f


def test_substitute_names_capturing_binder():
    with pytest.raises(CaptureError, match="y"):
        substitute(P("cex y . y = x"), "x", Var("y"))


def _naive(f, x, t):
    """Textual replacement of x everywhere; right whenever nothing binds x or captures t."""
    pattern = re.compile(rf"\b{x}\b")
    return P(pattern.sub(f"({render_term(t)})", render(f)))


@settings(max_examples=200, deadline=None)
@given(formulas(("u", "v", "w")), terms(("u", "v")))
def test_substitute_matches_naive_oracle_without_capture(f, t):
    # x never occurs bound and t's variables are never bound, so no capture
    assume(not (bound_vars(f) & ({"x"} | term_vars(t))))
    g = Bin("&", f, Atom("=", (Var("x"), Var("x"))))
    assert substitute(g, "x", t) == _naive(g, "x", t)


def test_close_prefixes_in_lexicographic_order():
    f = P("x <= y -> x = x")
    assert close(f, CALL) == Quant(CALL, "x", Quant(CALL, "y", f))


def test_close_is_identity_on_sentences():
    s = P("call x . x = x")
    assert close(s, CALL) == s


@settings(max_examples=100, deadline=None)
@given(formulas(), st.sampled_from((ALL, EX, CALL, CEX)))
def test_close_order_matches_sorted_names(f, kind):
    g = close(f, kind)
    names = []
    while len(names) < len(free_vars(f)):
        assert isinstance(g, Quant) and g.op == kind
        names.append(g.var)
        g = g.body
    assert names == sorted(free_vars(f))
    assert not free_vars(close(f, kind))


# ---------------------------------------------------------------------------
# elementarization and critical formulas

def test_elementarize_choice_existential_is_false_atom():
    assert elementarize(P("cex z . z = 0''")) == FALSE_ATOM
    assert render(FALSE_ATOM) == "0 = 0'"


def test_elementarize_fixes_elementary():
    p = P("all x . x = x")
    assert elementarize(p) is p or elementarize(p) == p


def test_elementarize_under_conjunction():
    assert elementarize(P("0 = 0' & call x . x = 0")) == Bin("&", FALSE_ATOM, TRUE_ATOM)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_elementarize_idempotent_and_elementary(f):
    e = elementarize(f)
    assert is_elementary(e)
    assert elementarize(e) == e


@pytest.mark.parametrize("text, expected", [
    ("cex y . y = 0", True),
    ("0 = 0 & x = y", False),
    ("(cex x . x = 0) | y = y", False),
    ("(cex x . x = 0) | (y = 0 cor y = 0')", True),
    ("all x . cex y . y = x", True),
    ("x = x & (cex y . y = x)", True),
    ("call y . y = 0", False),
])
def test_is_critical(text, expected):
    assert is_critical(P(text)) is expected


# ---------------------------------------------------------------------------
# moves and positions

@pytest.mark.parametrize("move", ["0", "1", "1.0", "0.1.#101", "#0", "#1", "1.1.0.1"])
def test_move_path_round_trip(move):
    assert parse_move(move).render() == move


@pytest.mark.parametrize("bad", ["", "2", "#", "#01", "1.", "0..1", "x"])
def test_malformed_moves(bad):
    with pytest.raises(IllegalMove):
        parse_move(bad)


def test_header_and_numer():
    assert header("1.#101") == "1.#" and numer("1.#101") == 5 and magnitude("1.#101") == 3
    assert header("1.0") == "1.0" and numer("1.0") == 0 and magnitude("1.0") == 0


def test_labmove_parsing():
    assert parse_labmove("T: 1.#101") == Labmove(TOP, "1.#101")
    assert parse_labmove("⊥: 0") == Labmove(BOT, "0")


def test_developments_of_implication_consequent():
    devs = developments(P("y = y -> (z = z cor x = x)"), TOP)
    got = {(p.render(), render(h)) for p, h in devs}
    assert got == {("1.0", "y = y -> z = z"), ("1.1", "y = y -> x = x")}


def test_developments_of_choice_universal_use_fresh_variable():
    devs = developments(P("call x . x = x"), BOT, "y")
    assert [(p.render(), h) for p, h in devs] == [("#y", P("y = y"))]


def test_developments_default_fresh_is_lowest_unused():
    [(path, _)] = developments(P("call y1 . y1 = y1"), BOT)
    assert path.instance == Var("y2")


def test_no_developments_of_elementary():
    assert developments(P("0 = 0"), TOP) == [] == developments(P("0 = 0"), BOT)


def test_prefixation_worked_example():
    E = "u = u"
    f = P(f"{E} & call x . (x = 0 cor x = 0')")
    pos = [Labmove(BOT, "1.#101"), Labmove(TOP, "1.0")]
    assert prefixation(pos, f) == Bin("&", P(E), Atom("=", (Const(5), ZERO)))


def test_empty_prefixation_is_identity():
    f = P("call x . cex y . y = x'")
    assert prefixation((), f) == f


def test_prefixation_pinpoints_first_illegal_move():
    f = P("call x . cex y . y = x'")
    pos = [Labmove(BOT, "#1"), Labmove(BOT, "#1")]
    with pytest.raises(IllegalMove) as e:
        prefixation(pos, f)
    assert (e.value.index, e.value.player) == (1, BOT)
    assert first_illegal(pos, f) == (1, BOT)


def test_antecedent_roles_flip():
    f = P("(x = x cor y = y) -> z = z")
    [occ] = surface_occurrences(f)
    assert occ.owner == BOT
    apply_move(f, BOT, "0.1")
    with pytest.raises(IllegalMove):
        apply_move(f, TOP, "0.1")


def test_headers_nine_strings():
    h = headers_of(P("(cex x . x = 0) & call y . (y = 0 cor y = 0')"))
    assert h >= {"0.#", "1.#", "1.0", "1.1"}
    assert len(h) == 9


def test_headers_of_elementary():
    assert headers_of(P("0 = 0")) == {""}


def _brute_headers(f, depth=3):
    """Headers seen on all runs reachable with constants 0 and 1, plus prefixes."""
    out = {""}
    frontier = [f]
    for _ in range(depth):
        nxt = []
        for g in frontier:
            for player in (TOP, BOT):
                for mv in legal_moves(g, player, constants=(0, 1)):
                    h = header(mv)
                    out.update(h[:k] for k in range(len(h) + 1))
                    nxt.append(apply_move(g, player, mv))
        frontier = nxt
    return out


@pytest.mark.parametrize("text", [
    "call x . cex y . y = x'",
    "(x = x cor y = y) cand 0 = 0",
    "(cex x . x = 0) & call y . (y = 0 cor y = 0')",
    "(call x . x = x) -> cex y . y = y",
    "call x . (x = 0 cand x = 0')",
])
def test_header_count_matches_brute_force(text):
    f = close(P(text), CALL)
    assert headers_of(f) == _brute_headers(f)


def test_normalize_pushes_negation_through_choices():
    f = Not(P("cex x . x = 0 cand 0 = 0"))
    g = normalize(f)
    assert g == P("call x . (~x = 0 cor ~0 = 0)")
    assert all(is_elementary(n.body) for n in walk(g) if isinstance(n, Not))


def test_legal_moves_respect_ownership():
    f = P("(call x . x = x) & (cex y . y = y)")
    assert legal_moves(f, BOT, constants=(3,)) == ["0.#11"]
    assert legal_moves(f, TOP, constants=(0,)) == ["1.#0"]
    assert list(itertools.chain(legal_moves(P("0 = 0"), TOP), legal_moves(P("0 = 0"), BOT))) == []


def test_move_path_with_variable_instance_renders_hash_name():
    assert MovePath((1,), instance=Var("y")).render() == "1.#y"
