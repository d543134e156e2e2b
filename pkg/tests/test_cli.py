import io
import json
import subprocess
import sys

import pytest

from clarith.cli import (
    ABORTED, INCONCLUSIVE_EXIT, IO_ERROR, NEGATIVE, OK, SYNTAX, USAGE, main,
)

from mutations import CORPUS, NUMERALS2


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


# ---------------------------------------------------------------------------
# check

def test_check_accepts_listing():
    code, text = run("check", str(CORPUS / "numerals2.cl12"))
    assert code == OK
    assert text.splitlines()[-2:] == ["accepted", "proves: call x . cex y . y = x' |o- cex z . z = 0''"]


def test_check_theory_proof():
    code, text = run("check", str(CORPUS / "numerals2.cla11"), "--theory", str(CORPUS / "lin-log-poly.cfg"))
    assert code == OK and "accepted" in text


def test_check_rejected_proof(tmp_path):
    bad = tmp_path / "bad.cl12"
    bad.write_text(NUMERALS2.replace("(1; S; y2)", "(1; S; y1)"))
    code, text = run("check", "--format", "json", str(bad))
    data = json.loads(text)
    assert code == NEGATIVE
    assert (data["status"], data["line"]) == ("rejected", 2)


def test_check_many_files_in_parallel():
    paths = [str(p) for p in sorted(CORPUS.glob("*.cl12"))]
    serial = run("check", *paths)
    parallel = run("check", "--jobs", "3", *paths)
    assert serial == parallel and serial[0] == OK


def test_check_missing_file():
    code, text = run("check", str(CORPUS / "nope.cl12"))
    assert code == IO_ERROR and "cannot read" in text


def test_check_syntax_error(tmp_path):
    bad = tmp_path / "bad.cl12"
    bad.write_text("line 1 |o- 0 = 0\n")
    code, _ = run("check", str(bad))
    assert code == SYNTAX


def test_check_bad_theory_config(tmp_path):
    cfg = tmp_path / "t.cfg"
    cfg.write_text("[classes]\namplitude = B3\n")
    code, _ = run("check", str(CORPUS / "numerals2.cla11"), "--theory", str(cfg))
    assert code == SYNTAX


def test_check_permissive_obligations(tmp_path):
    f = tmp_path / "comm.cl12"
    f.write_text("line 1: all x . all y . x + y = y + x |o- u + v = v + u ;; Wait()\n")
    assert run("check", "--budget", "1", str(f))[0] == NEGATIVE
    code, text = run("check", "--budget", "1", "--permissive", "--format", "json", str(f))
    assert code == OK and json.loads(text)["obligations"]


# ---------------------------------------------------------------------------
# play

def test_play_addition_is_byte_stable():
    argv = ("play", "call u . call v . cex z . z = u+v", "--agent", "add", "--env", "random:7")
    first = run(*argv)
    assert first == run(*argv)
    code, text = first
    assert code == OK
    lines = text.splitlines()
    assert "---" in lines and "verdict: T-won" in lines


def test_play_agent_declared_game():
    code, text = run("play", "--agent", "successor", "--env", "random:1")
    assert code == OK and "verdict: T-won" in text


def test_play_exhaustive_summary():
    code, text = run("play", "--agent", "add", "--env", "exhaustive:2")
    assert code == OK
    assert text.startswith("exhaustive depth 2: ") and text.rstrip().endswith("T-won")
    won, total = text.split(": ")[1].split()[0].split("/")
    assert won == total


def test_play_extracted_numeral():
    code, text = run("play", "--agent", f"extract:{CORPUS / 'numerals2.cl12'}", "--format", "json")
    data = json.loads(text)
    assert code == OK
    assert data["moves"] == ["T: #10"]


def test_play_script_env(tmp_path):
    script = tmp_path / "inputs.env"
    script.write_text("% the figure\n#10101\nB: #1101\n")
    code, text = run("play", "--agent", "add", "--env", f"script:{script}", "--format", "json")
    assert code == OK and json.loads(text)["moves"][-1].endswith("#100010")


def test_play_game_from_file_with_comments(tmp_path):
    game = tmp_path / "g.txt"
    game.write_text("% successor\ncall x . cex y . y = x'\n")
    assert run("play", str(game), "--agent", "successor", "--env", "random:2")[0] == OK


def test_play_lost_match_is_negative():
    # the agent computes u+v but the game asks for u*v
    code, text = run("play", "call u . call v . cex z . z = u*v", "--agent", "add",
                     "--env", "random:5")
    assert code == NEGATIVE and "verdict: B-won" in text


def test_play_numeral_agent():
    assert run("play", "cex z . z = 0'''", "--agent", "numeral:3")[0] == OK


def test_play_aborted_match(tmp_path):
    # |x| = 64, so the exponent 2^64 trips the evaluator's blow-up guard
    script = _script(tmp_path, "#" + "1" * 64)
    code, text = run("play", "--agent", "bound:2^(2^x)", "--env", f"script:{script}")
    assert code == ABORTED
    assert "verdict: aborted" in text and "blow-up guard" in text


def _script(tmp_path, *moves):
    p = tmp_path / "s.env"
    p.write_text("\n".join(moves) + "\n")
    return p


def test_play_usage_errors(capsys):
    assert run("play", "--agent", "bogus")[0] == USAGE
    assert "unknown agent" in capsys.readouterr().err
    assert run("play", "x = x", "--agent", "silent")[0] == USAGE
    assert run("play", "call x . x = x", "--agent", "silent", "--env", "exhaustive:k")[0] == USAGE


def test_play_unparsable_game():
    assert run("play", "call x . x = = x", "--agent", "silent")[0] == SYNTAX


def test_json_error_payload():
    code, text = run("play", "--agent", "bogus", "--format", "json")
    data = json.loads(text)
    assert sorted(data) == ["error", "exit"] and data["exit"] == code == USAGE
    assert data["error"].startswith("unknown agent 'bogus'")


# ---------------------------------------------------------------------------
# regularity and the table

def test_regularity_listed_triple():
    code, text = run("regularity", "B3", "B1^1", "B5", "--budget", "100")
    assert code == OK and text.startswith("triple: (B3, B1^1, B5)\n")


def test_regularity_parenthesized_triple_matches_spaced():
    assert run("regularity", "(B3, B1^1, B5)", "--budget", "50") == \
        run("regularity", "B3", "B1^1", "B5", "--budget", "50")


def test_regularity_broken_time_class():
    code, text = run("regularity", "B3", "B1^1", "linear{x}", "--format", "json", "--budget", "50")
    data = json.loads(text)
    assert code == NEGATIVE and data["conditions"]["dt3"]["status"] == "falsified"


def test_regularity_space_above_amplitude_inconclusive():
    code, _ = run("regularity", "B3", "B5", "B5", "--budget", "50")
    assert code == INCONCLUSIVE_EXIT


def test_regularity_usage(capsys):
    assert run("regularity", "B3", "B9", "B5")[0] == USAGE
    assert "not a boundclass" in capsys.readouterr().err
    assert run("regularity", "B3", "B5")[0] == USAGE
    assert run("regularity", "B3", "B1^1", "B5", "--grid", "1,a")[0] == USAGE


def test_table_dds_small_budget():
    code, text = run("table-dds", "--budget", "30", "--grid", "0,1,2,5", "--jobs", "2")
    assert code == OK
    lines = text.splitlines()
    assert len(lines) == 27 and lines[0].split()[0] == "triple"


# ---------------------------------------------------------------------------
# eval

@pytest.mark.parametrize("formula, code, text", [
    ("0 = 0", OK, "true\n"),
    ("0 = 0'", NEGATIVE, "false\n"),
    ("cex z . z = 0", NEGATIVE, "elementarization 0 = 0': false\n"),
    ("call x . x = x", OK, "elementarization 0 = 0: true\n"),
])
def test_eval(formula, code, text):
    assert run("eval", formula) == (code, text)


def test_eval_unknown_when_search_is_cut():
    assert run("eval", "ex x . Bit(x, #101) & #11 < x", "--blind-bound", "10")[0] == INCONCLUSIVE_EXIT


def test_eval_rejects_open_formula():
    assert run("eval", "x = x")[0] == USAGE


# ---------------------------------------------------------------------------
# the installed entry points

def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clarith", "eval", "0 = 0"],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (OK, "true\n")


def test_repl_diagnostics_over_stdin():
    proc = subprocess.run([sys.executable, "-m", "clarith", "play", "--agent", "successor", "--env", "repl"],
                          input="0.1\n#101\n", capture_output=True, text=True, check=False)
    assert proc.returncode == OK
    assert "B> illegal: " in proc.stdout
    assert "verdict: T-won" in proc.stdout
