import json

import pytest

from app.main import run_cli
from app.services.automaton_service import dump_automaton, load_automaton
from app.services.encoding_service import encode
from app.services.simulation_service import bounded_equiv
from app.services.witness_service import witness_pebble_dfa


@pytest.fixture(scope="function")
def witness_file(tmp_path):
    path = tmp_path / "w.json"
    result = run_cli(["witness", "--m", "2", "-o", str(path)])
    assert result.exit_code == 0
    return path


def test_witness_then_stats(witness_file):
    """
    Test Case: witness --m 2 followed by stats
    - Reports 7 states, deterministic, valid
    """
    result = run_cli(["stats", str(witness_file)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["states"] == 7
    assert report["deterministic"] is True
    assert report["valid"] is True
    assert report["kind"] == "pebble-2dfa"


def test_witness_to_stdout():
    result = run_cli(["witness", "--m", "1"])
    assert result.exit_code == 0
    assert json.loads(result.output)["initial"] == "qI"


def test_translate_then_equiv(witness_file, tmp_path):
    """
    Test Case: translate p2c then equiv --encode-right
    - Translation report is JSON with the 3m bound satisfied
    - equiv finds no counterexample up to length 10 (exit 0)
    - The CLI verdict matches the library call
    """
    classical = tmp_path / "c.json"
    report_path = tmp_path / "report.json"
    result = run_cli(["translate", "p2c", str(witness_file), "-o", str(classical), "--report", str(report_path)])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["bound"] == 21 and report["bound_satisfied"] is True
    assert json.loads(report_path.read_text()) == report

    result = run_cli(["equiv", str(witness_file), str(classical), "--max-len", "10", "--encode-right"])
    assert result.exit_code == 0
    assert json.loads(result.output)["equivalent"] is True


def test_equiv_counterexample(witness_file, tmp_path):
    """
    Test Case: A mutant translation is caught
    - Exit code 1 and the smallest disagreeing word
    """
    mutant = tmp_path / "mutant.json"
    run_cli(["translate", "p2c", str(witness_file), "-o", str(mutant), "--omit", "pebbled-right-end"])
    result = run_cli(["equiv", str(witness_file), str(mutant), "--max-len", "4", "--encode-right"])
    assert result.exit_code == 1
    verdict = json.loads(result.output)
    assert verdict["counterexample"] == []

    library = bounded_equiv(load_automaton(witness_file), load_automaton(mutant), 4, right_transform=encode)
    assert list(library) == verdict["counterexample"]


def test_equiv_budget(witness_file):
    result = run_cli(["equiv", str(witness_file), str(witness_file), "--max-len", "20", "--budget", "10"])
    assert result.exit_code == 3


def test_round_trip_translation(witness_file, tmp_path):
    classical = tmp_path / "c.json"
    back = tmp_path / "back.json"
    assert run_cli(["translate", "p2c", str(witness_file), "-o", str(classical)]).exit_code == 0
    result = run_cli(["translate", "c2p", str(classical), "-o", str(back)])
    assert result.exit_code == 0
    assert json.loads(result.output)["bound_satisfied"] is True
    assert bounded_equiv(witness_pebble_dfa(2), load_automaton(back), 6) is None


def test_lift_modes(tmp_path, fixtures_dir):
    """
    Test Case: Lifts through the CLI with the baseline plugin
    - det-lift yields a deterministic pebble automaton
    - comp-pdfa reports the 60m target as conditional
    """
    source = fixtures_dir / "contains_a.json"
    out = tmp_path / "det.json"
    result = run_cli(["translate", "det-lift", str(source), "-o", str(out), "--plugin", "baseline"])
    assert result.exit_code == 0
    assert load_automaton(out).kind == "pebble-2dfa"

    result = run_cli(["translate", "comp-lift", str(source), "-o", str(tmp_path / "comp.json")])
    assert result.exit_code == 0

    witness = tmp_path / "w1.json"
    run_cli(["witness", "--m", "1", "-o", str(witness)])
    result = run_cli(["translate", "comp-pdfa", str(witness), "-o", str(tmp_path / "cw.json")])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["bound"] == 240
    assert report["bound_conditional"] is True

    result = run_cli(["translate", "comp-pdfa", str(source), "-o", str(tmp_path / "x.json")])
    assert result.exit_code == 2


def test_simulate(witness_file):
    """
    Test Case: simulate with a space-separated input
    - Empty input is the empty word
    - --trace prints the run as JSON
    """
    assert run_cli(["simulate", str(witness_file), "1 1 1 1 1"]).output == "accepted"
    assert run_cli(["simulate", str(witness_file), "1", "1", "1", "1", "1", "1"]).output == "rejected"
    assert run_cli(["simulate", str(witness_file)]).output == "accepted"
    result = run_cli(["simulate", str(witness_file), "1", "--trace", "--max-steps", "50"])
    trace = json.loads(result.output)
    assert trace["outcome"] == "halted"
    assert trace["accepted"] is True


def test_simulate_unknown_symbol(witness_file):
    result = run_cli(["simulate", str(witness_file), "2"])
    assert result.exit_code == 2


def test_encode():
    result = run_cli(["encode", "a b c"])
    assert result.exit_code == 0
    assert result.output == "a b c < > a* b c < > a b* c < > a b c* < > a b c"
    assert run_cli(["encode"]).output == "< >"


def test_pump(tmp_path, unary_all_accepting):
    path = tmp_path / "all.json"
    dump_automaton(unary_all_accepting, path)
    result = run_cli(["pump", "--automaton", str(path), "--length", "3"])
    assert result.exit_code == 0
    assert json.loads(result.output)["holds"] is True
    assert run_cli(["pump", "--automaton", str(path), "--length", "9"]).exit_code == 3


def test_sweep():
    result = run_cli(["sweep", "--seed", "1", "--count", "3", "--max-states", "2", "--max-len", "3"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["passed"] is True and report["seed"] == 1
    again = run_cli(["sweep", "--seed", "1", "--count", "3", "--max-states", "2", "--max-len", "3"])
    assert again.output == result.output


def test_invalid_file(fixtures_dir):
    result = run_cli(["simulate", str(fixtures_dir / "forbidden_moves.json"), "a"])
    assert result.exit_code == 2
    assert "right move on right endmarker" in result.output


def test_non_utf8_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_bytes(b'{"kind": "2nfa\xff"}')
    result = run_cli(["stats", str(path)])
    assert result.exit_code == 2
    assert "byte 14" in result.output


@pytest.mark.parametrize("mode", ["det-lift", "comp-lift", "comp-pdfa"])
def test_omit_rejected_for_lifts(mode, fixtures_dir, tmp_path):
    """
    Test Case: --omit with a lift mode
    - Usage error (exit 2) instead of silently running the full construction
    - No output file is written
    """
    out = tmp_path / "out.json"
    result = run_cli(
        ["translate", mode, str(fixtures_dir / "contains_a.json"), "-o", str(out), "--omit", "plain"]
    )
    assert result.exit_code == 2
    assert "--omit" in result.output
    assert not out.exists()
