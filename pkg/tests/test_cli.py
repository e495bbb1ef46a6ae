"""End-to-end command line checks: output bytes, exit codes, determinism.

Every command runs in a subprocess; determinism checks repeat the run under
different hash seeds and require byte-identical stdout.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from helpers import MODELS_DIR, REPO_ROOT

EXTENSIONAL = str(MODELS_DIR / "extensional.json")
MODAL = str(MODELS_DIR / "modal.json")
MODAL_TENSE = str(MODELS_DIR / "modal_tense.json")
THREE_FRAME = str(MODELS_DIR / "modal_tense_location.json")

READS = "(pred read (iota x (pred student x)) (iota y (pred book y)))"


def run(*argv: str, hashseed: str = "0") -> subprocess.CompletedProcess:
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    return subprocess.run(
        [sys.executable, "-m", "finsem", *argv],
        capture_output=True,
        text=True,
        env=env,
        cwd=str(REPO_ROOT),
    )


def run_deterministic(*argv: str) -> subprocess.CompletedProcess:
    first = run(*argv, hashseed="1")
    second = run(*argv, hashseed="2")
    assert first.stdout == second.stdout, f"nondeterministic stdout for {argv}"
    assert first.returncode == second.returncode
    return first


# ---------------------------------------------------------------------------
# happy paths


def test_check_rel_single_property() -> None:
    got = run_deterministic("check-rel", MODAL, "--prop", "serial")
    assert got.returncode == 0
    assert got.stdout == "frame W serial false\n"


def test_check_rel_full_report() -> None:
    got = run_deterministic("check-rel", MODAL_TENSE)
    assert got.returncode == 0
    lines = got.stdout.strip().split("\n")
    assert len(lines) == 22  # 11 properties for each of W and T
    assert lines[0] == "frame W serial false"
    assert all(line.split()[3] in ("true", "false") for line in lines)


def test_check_map_report() -> None:
    got = run_deterministic("check-map", MODAL)
    assert got.returncode == 0
    assert got.stdout == (
        "frame W designated w0 monotone true forth true back false "
        "bounded false surjective true\n"
    )


def test_eval_at_index() -> None:
    assert run_deterministic("eval", MODAL, "--term", READS, "--index", "w1").stdout == "1\n"
    assert run_deterministic("eval", MODAL, "--term", READS, "--index", "w0").stdout == "0\n"


def test_eval_with_assignment() -> None:
    got = run_deterministic(
        "eval", EXTENSIONAL, "--term", "(pred student x)", "--assign", "x=s1"
    )
    assert got.returncode == 0
    assert got.stdout == "1\n"


def test_eval_set_valued_term() -> None:
    got = run_deterministic("eval", EXTENSIONAL, "--term", "student")
    assert got.stdout == "{(s1)}\n"


def test_sentence_extensional() -> None:
    got = run_deterministic(
        "sentence", EXTENSIONAL, "--text", "the student read the book"
    )
    assert got.returncode == 0
    out = got.stdout
    assert out.startswith(
        "tree: (S (DP (D the) (NP (N student))) (VP (V read) (DP (D the) (NP (N book)))))\n"
    )
    assert f"term: {READS}\n" in out
    assert out.endswith("value: 1\n")


def test_sentence_modal_trace_shows_displacement() -> None:
    got = run_deterministic(
        "sentence", MODAL, "--text", "the student might read the book", "--index", "w0"
    )
    assert got.returncode == 0
    assert "value: 1" in got.stdout
    vprime = [l for l in got.stdout.split("\n") if l.strip().startswith("V'")]
    assert len(vprime) == 1 and vprime[0].endswith("= 0")


def test_trivialize_writes_canonical_model(tmp_path) -> None:
    out = tmp_path / "flat.json"
    got = run_deterministic("trivialize", MODAL, "--frame", "W", "--out", str(out))
    assert got.returncode == 0
    doc = json.loads(out.read_text())
    (frame,) = doc["frames"]
    assert frame["elements"] == ["k0"]
    assert frame["pairs"] == [["k0", "k0"]]
    # designated w0: the read relation is empty on that slice
    read = [c for c in doc["constants"] if c["name"] == "read"]
    assert read[0]["table"] == [{"index": ["k0"], "value": []}]


def test_trivialize_to_stdout_then_again_fails(tmp_path) -> None:
    first = run_deterministic("trivialize", MODAL, "--frame", "W")
    model = tmp_path / "flat.json"
    model.write_text(first.stdout)
    second = run("trivialize", str(model), "--frame", "W")
    assert second.returncode == 1
    assert second.stderr == "error: frame 'W' is already trivial\n"


def test_trivialize_designate_picks_the_slice(tmp_path) -> None:
    out = tmp_path / "flat.json"
    run_deterministic("trivialize", MODAL, "--frame", "W", "--designate", "w1", "--out", str(out))
    got = run_deterministic("eval", str(out), "--term", READS)
    assert got.stdout == "1\n"


@pytest.mark.parametrize(
    "path", [EXTENSIONAL, MODAL, MODAL_TENSE, THREE_FRAME]
)
def test_verify_theorem_bundled_models(path: str) -> None:
    got = run_deterministic("verify-theorem", path)
    assert got.returncode == 0
    lines = got.stdout.strip().split("\n")
    assert lines[-1].startswith("total: 0 mismatches / ")
    if "modal" in os.path.basename(path):
        assert "skipped (modal): might_read" in lines


def test_square_commutes() -> None:
    got = run_deterministic("square", MODAL_TENSE, "--frames", "W,T")
    assert got.returncode == 0
    assert got.stdout == "commutes: true\n"
    got3 = run_deterministic("square", THREE_FRAME, "--frames", "W,T,L")
    assert got3.stdout == "commutes: true\n"


def test_diagram_two_frames() -> None:
    got = run_deterministic("diagram", MODAL_TENSE)
    assert got.returncode == 0
    assert got.stdout == (
        "node W'T\n"
        "node W'T'\n"
        "node WT\n"
        "node WT'\n"
        "edge W'T W'T' T\n"
        "edge WT W'T W\n"
        "edge WT WT' T\n"
        "edge WT' W'T' W\n"
    )


# ---------------------------------------------------------------------------
# failure paths


def test_exit_1_sentence_needs_index() -> None:
    got = run("sentence", MODAL, "--text", "the student read the book")
    assert got.returncode == 1
    assert got.stdout == ""
    assert got.stderr.startswith("error: ")
    assert "index" in got.stderr


def test_exit_1_unknown_frame_and_element() -> None:
    assert run("trivialize", MODAL, "--frame", "Q").returncode == 1
    assert run("trivialize", MODAL, "--frame", "W", "--designate", "w9").returncode == 1
    assert run("square", MODAL, "--frames", "W").returncode == 1
    assert run("square", MODAL_TENSE, "--frames", "W,Q").returncode == 1


def test_exit_1_bad_index_arity() -> None:
    got = run("eval", MODAL_TENSE, "--term", READS, "--index", "w0")
    assert got.returncode == 1
    assert "2 components" in got.stderr


def test_exit_1_type_errors_and_presupposition() -> None:
    got = run("eval", EXTENSIONAL, "--term", "(pred read (iota x (pred student x)))")
    assert got.returncode == 1
    got = run("eval", EXTENSIONAL, "--term", "(iota x (pred read x x))")
    assert got.returncode == 1
    assert "witness" in got.stderr
    got = run("eval", EXTENSIONAL, "--term", "(might W (pred student x))")
    assert got.returncode == 1


def test_exit_2_missing_file() -> None:
    got = run("eval", str(MODELS_DIR / "nope.json"), "--term", "student")
    assert got.returncode == 2
    assert got.stderr.startswith("error: ")


def test_exit_2_malformed_model_lists_all_problems(tmp_path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "entities": ["a"],
                "frames": [{"label": "W", "elements": [], "pairs": []}],
                "constants": [{"name": "p", "type": "wat", "table": []}],
            }
        )
    )
    got = run("check-rel", str(bad))
    assert got.returncode == 2
    assert got.stderr.count("error: ") >= 2


def test_exit_2_unparseable_term() -> None:
    got = run("eval", EXTENSIONAL, "--term", "(pred")
    assert got.returncode == 2


def test_exit_2_usage_error() -> None:
    got = run("no-such-command", EXTENSIONAL)
    assert got.returncode == 2
