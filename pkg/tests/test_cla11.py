import shutil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clarith.bounds.classes import parse_boundclass
from clarith.bounds.expr import apply_lengths, parse_bound
from clarith.cla11 import (
    ACCEPTED, CHOICE_AXIOMS, NOT_AN_AXIOM, PEANO, REJECTED, ComprehensionParams,
    ConfigError, InductionParams, check_comprehension, check_induction, check_lc,
    check_theory_proof, comprehension_conclusion, default_theory, is_bounded_formula,
    load_cla11_proof, load_theory, parse_cla11_proof, parse_theory, recognize_axiom,
    weaken_step,
)
from clarith.cl12 import load_proof, parse_proof
from clarith.syntax import (
    CALL, ZERO, Atom, Bin, Quant, Succ, Var, close, parse_formula, render, substitute,
)
from clarith.syntax.formulas import walk

from generators import terms
from mutations import CORPUS

P = parse_formula
THEORY = default_theory()


# ---------------------------------------------------------------------------
# axioms

@pytest.mark.parametrize("text, label", [
    ("call x . cex y . y = x'", "Successor"),
    ("all x . ~0 = x'", "Peano 1"),
    ("all x . all y . x*y' = x*y + x", "Peano 6"),
    ("call x . cex y . y = |x|", "Log"),
    ("call x . call y . Bit(y, x) cor ~Bit(y, x)", "Bit"),
    ("call x . cex y . y = x+x", NOT_AN_AXIOM),
])
def test_recognize_axiom(text, label):
    assert recognize_axiom(P(text)).label() == label


def test_induction_scheme_extracts_formula():
    k = recognize_axiom(P("(0 = 0 & all x . (x = x -> x' = x')) -> all x . x = x"))
    assert (k.label(), k.induction_var) == ("Peano 7", "x")
    assert k.induction_formula == P("x = x")


def test_induction_scheme_with_wrong_basis_is_not_an_axiom():
    k = recognize_axiom(P("all u . ((u = u & all x . (x = u -> x' = u)) -> all x . x = u)"))
    assert not k.is_axiom


def test_supplementary_axiom():
    double = P("call x . cex y . y = x+x")
    assert recognize_axiom(double, {"double": double}).label() == "Supplementary(double)"


def _rename_bound(f, suffix):
    """Rename every bound variable v to v+suffix."""
    if isinstance(f, Quant):
        new = f.var + suffix
        return Quant(f.op, new, _rename_bound(substitute(f.body, f.var, Var(new)), suffix))
    if isinstance(f, Bin):
        return Bin(f.op, _rename_bound(f.left, suffix), _rename_bound(f.right, suffix))
    return f


AXIOMS = list(PEANO.values()) + list(CHOICE_AXIOMS.values()) + [
    P("(0 = 0 & all x . (x = x -> x' = x')) -> all x . x = x")]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(AXIOMS), st.sampled_from(["1", "a", "q7"]))
def test_recognition_stable_under_renaming(ax, suffix):
    renamed = _rename_bound(ax, suffix)
    assert renamed != ax
    assert recognize_axiom(renamed).label() == recognize_axiom(ax).label()


# ---------------------------------------------------------------------------
# bounded formulas

def test_bounded_sum_is_linear_bounded():
    assert is_bounded_formula(P("cex z . |z| <= |u|+|v| & z = u+v"), THEORY.amplitude)


def test_unbounded_choice_is_not_bounded():
    r = is_bounded_formula(P("cex z . z = u"), THEORY.amplitude)
    assert not r and "not of the form" in r.reason


def test_blind_bound_variable_clash():
    r = is_bounded_formula(P("(call z . |z| <= |u| -> z = z) & all z . z = z"), THEORY.amplitude)
    assert not r and "bound by all/ex" in r.reason


def test_bound_outside_class():
    r = is_bounded_formula(P("cex z . |z| <= |u|+|v| & z = u+v"), THEORY.space)
    assert not r and "not in B1^1" in r.reason


# ---------------------------------------------------------------------------
# induction

SUM_BOUND = InductionParams("x", parse_bound("u+v"), ("u", "v"))


def _induction(F, ip=SUM_BOUND):
    guard = Atom("<=", (Var(ip.var), apply_lengths(ip.bound)))
    conclusion = close(Bin("->", guard, F), CALL)
    basis = close(substitute(F, ip.var, ZERO), CALL)
    step = close(Bin("->", F, substitute(F, ip.var, Succ(Var(ip.var)))), CALL)
    return conclusion, basis, step


LOG_F = P("cex z . |z| <= ||u||+||v|| & z = |x|")


def test_induction_with_sum_bound_in_polynomial_time():
    c, b, s = _induction(LOG_F)
    assert check_induction(c, b, s, SUM_BOUND, THEORY.space, THEORY.time).ok


def test_induction_bound_missing_from_time_class():
    c, b, s = _induction(LOG_F)
    r = check_induction(c, b, s, SUM_BOUND, THEORY.space, parse_boundclass("B1^1"))
    assert r.errors == ["induction bound u+v not in the time class B1^1"]


def test_induction_formula_with_unbounded_choice():
    c, b, s = _induction(P("cex z . z = x"))
    r = check_induction(c, b, s, SUM_BOUND, THEORY.space, THEORY.time)
    assert not r.ok and "not B1^1-bounded" in r.reason


def test_induction_repeated_variable():
    ip = InductionParams("x", parse_bound("u"), ("u", "u"))
    c, b, s = _induction(P("x = x"), ip)
    r = check_induction(c, b, s, ip, THEORY.space, THEORY.time)
    assert any("pairwise distinct" in e for e in r.errors)


def test_plain_step_rejected_by_reasonable_checker():
    c, b, s = _induction(LOG_F)
    r = check_induction(c, b, s, SUM_BOUND, THEORY.space, THEORY.time, reasonable=True)
    assert not r.ok and "step is not" in r.reason


@settings(max_examples=60, deadline=None)
@given(terms(("x", "u", "v"), depth=2))
def test_reasonable_checker_accepts_weakened_step(t):
    F = Quant("cex", "z", Bin("&", P("|z| <= ||u||+||v||"), Atom("=", (Var("z"), t))))
    c, b, s = _induction(F)
    plain = check_induction(c, b, s, SUM_BOUND, THEORY.space, THEORY.time)
    assert plain.ok, plain.reason
    weak = close(weaken_step(F, SUM_BOUND), CALL)
    assert check_induction(c, b, weak, SUM_BOUND, THEORY.space, THEORY.time, reasonable=True).ok


# ---------------------------------------------------------------------------
# comprehension

U_BOUND = ComprehensionParams("x", "y", parse_bound("u"), ("u",))


def test_comprehension_from_reflexive_choice():
    c = close(comprehension_conclusion(P("y = y"), U_BOUND), CALL)
    assert check_comprehension(c, close(P("y = y cor ~y = y"), CALL), U_BOUND, THEORY.amplitude).ok


def test_comprehension_reasonable_premise():
    c = close(comprehension_conclusion(P("y = y"), U_BOUND), CALL)
    prem = close(P("y < |u| -> (y = y cor ~y = y)"), CALL)
    assert check_comprehension(c, prem, U_BOUND, THEORY.amplitude, reasonable=True).ok
    assert not check_comprehension(c, prem, U_BOUND, THEORY.amplitude).ok


def test_comprehension_formula_containing_x():
    c = close(comprehension_conclusion(P("y = x"), U_BOUND), CALL)
    r = check_comprehension(c, close(P("y = x cor ~y = x"), CALL), U_BOUND, THEORY.amplitude)
    assert r.errors == ["comprehension formula contains x"]


def test_comprehension_formula_not_elementary():
    p = P("cex w . w = y")
    c = close(comprehension_conclusion(p, U_BOUND), CALL)
    r = check_comprehension(c, close(P("(cex w . w = y) cor y = y"), CALL), U_BOUND, THEORY.amplitude)
    assert "comprehension formula is not elementary" in r.errors


def test_comprehension_bound_outside_amplitude():
    cp = ComprehensionParams("x", "y", parse_bound("u*u"), ("u",))
    c = close(comprehension_conclusion(P("y = y"), cp), CALL)
    r = check_comprehension(c, close(P("y = y cor ~y = y"), CALL), cp, THEORY.amplitude)
    assert any("not in the amplitude class B3" in e for e in r.errors)


# ---------------------------------------------------------------------------
# LC

NUMERALS2 = load_proof(CORPUS / "numerals2.cl12")


def test_lc_step_from_successor_axiom():
    r = check_lc(P("cex z . z = 0''"), [CHOICE_AXIOMS["Successor"]], NUMERALS2)
    assert r.ok and r.obligations == []


def test_lc_attached_proof_of_other_sequent():
    r = check_lc(P("cex z . z = 0'"), [CHOICE_AXIOMS["Successor"]], NUMERALS2)
    assert not r.ok and "expected" in r.reason


def test_lc_without_premises_for_valid_formula():
    proof = parse_proof("line 1: |o- y2 = y2 ;; Wait()\n"
                        "line 2: |o- cex y . y = y2 ;; JoinChoose(1; S; y2)\n"
                        "line 3: |o- call x . cex y . y = x ;; Wait(2)\n")
    assert check_lc(P("cex y . y = x"), [], proof).ok


def test_lc_missing_proof_depends_on_mode():
    assert not check_lc(P("cex z . z = 0''"), [CHOICE_AXIOMS["Successor"]], None).ok
    loose = check_lc(P("cex z . z = 0''"), [CHOICE_AXIOMS["Successor"]], None, extended=False)
    assert loose.ok and loose.obligations


# ---------------------------------------------------------------------------
# theory configs and whole proofs

def test_theory_config_round_trip():
    t = load_theory(CORPUS / "lin-log-poly.cfg")
    assert [c.name for c in t.triple] == ["B3", "B1^1", "B5"]
    assert parse_theory(t.render()) == t
    t.supplementary["double"] = P("call x . cex y . y = x+x")
    assert parse_theory(t.render()).supplementary == t.supplementary


@pytest.mark.parametrize("text", [
    "[options]\nbudget = 5\n",
    "[classes]\namplitude = B3\nspace = B1^1\n",
    "[classes]\namplitude = B9\nspace = B1^1\ntime = B5\n",
    "[classes]\namplitude = B3\nspace = B1^1\ntime = B5\n[axioms]\nbad = x = x\n",
    "[classes]\namplitude = B3\nspace = B1^1\ntime = B5\n[options]\ntrusted_true = maybe\n",
])
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        parse_theory(text)


def test_two_line_proof_accepted():
    r = check_theory_proof(load_cla11_proof(CORPUS / "numerals2.cla11"), THEORY)
    assert r.status == ACCEPTED
    assert [l.reason for l in r.lines][0] == "Successor"


def test_missing_attached_proof_rejected_in_extended_mode(tmp_path):
    (tmp_path / "p.cla11").write_text("line 1: call x . cex y . y = x' ;; AX(Successor)\n"
                                      "line 2: cex z . z = 0'' ;; LC(1)\n")
    r = check_theory_proof(load_cla11_proof(tmp_path / "p.cla11"), THEORY)
    assert (r.status, r.line) == (REJECTED, 2)


def test_unreadable_attached_proof_rejected(tmp_path):
    shutil.copy(CORPUS / "numerals2.cla11", tmp_path / "p.cla11")
    r = check_theory_proof(load_cla11_proof(tmp_path / "p.cla11"), THEORY)
    assert (r.status, r.line) == (REJECTED, 2) and "cannot read" in r.reason


def _trusting():
    t = default_theory()
    t.trusted_true = True
    return t


def test_true_line_on_non_elementary_sentence_rejected():
    proof = parse_cla11_proof("line 1: cex z . z = 0'' ;; TRUE(trusted)\n")
    r = check_theory_proof(proof, _trusting())
    assert r.status == REJECTED and "elementary" in r.reason


def test_true_lines():
    ok = parse_cla11_proof("line 1: all x . x + 0 = x -> 0 = 0 ;; TRUE\n")
    assert check_theory_proof(ok, _trusting()).status == ACCEPTED
    assert check_theory_proof(ok, THEORY).status == REJECTED
    false = parse_cla11_proof("line 1: 0 = 0' ;; TRUE\n")
    assert check_theory_proof(false, _trusting()).status == REJECTED
    trusted = parse_cla11_proof("line 1: 0 = 0' ;; TRUE(trusted)\n")
    r = check_theory_proof(trusted, _trusting())
    assert r.status == ACCEPTED and r.lines[0].trusted


def test_misnamed_axiom_rejected():
    proof = parse_cla11_proof("line 1: call x . cex y . y = x' ;; AX(Log)\n")
    r = check_theory_proof(proof, THEORY)
    assert r.status == REJECTED and "recognized as Successor" in r.reason


def test_citation_must_precede():
    proof = parse_cla11_proof(f"line 1: cex z . z = 0'' ;; LC(2; proof={CORPUS / 'numerals2.cl12'})\n"
                              "line 2: call x . cex y . y = x' ;; AX(Successor)\n")
    r = check_theory_proof(proof, THEORY)
    assert (r.status, r.line) == (REJECTED, 1) and "does not precede" in r.reason


def test_acceptance_is_per_line():
    # appending a correct line to an accepted proof keeps it accepted; a bad one rejects at that line
    base = (CORPUS / "numerals2.cla11").read_text()
    good = parse_cla11_proof(base + "line 3: all x . ~0 = x' ;; AX(Peano1)\n", str(CORPUS))
    bad = parse_cla11_proof(base + "line 3: all x . 0 = x' ;; AX()\n", str(CORPUS))
    assert check_theory_proof(good, THEORY).status == ACCEPTED
    r = check_theory_proof(bad, THEORY)
    assert (r.status, r.line) == (REJECTED, 3)
    assert [l.ok for l in r.lines] == [True, True, False]


def test_proof_render_round_trip():
    proof = load_cla11_proof(CORPUS / "numerals2.cla11")
    again = parse_cla11_proof(proof.render(), proof.base_dir)
    assert again.lines == proof.lines
    assert not any(isinstance(n, Quant) and n.op == CALL for n in walk(again.lines[1].sentence))
    assert render(again.lines[1].sentence) == "cex z . z = 0''"
