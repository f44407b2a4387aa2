import json

import pytest

from revcat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_swap(capsys, corpus_path):
    assert run(capsys, "run", corpus_path("swap")) == (0, "inr tt\n", "")


def test_run_stuck(capsys, corpus_path):
    code, out, _ = run(capsys, "run", corpus_path("partial"))
    assert code == 2 and out.startswith("stuck")


def test_typecheck(capsys, corpus_path, tmp_path):
    code, out, _ = run(capsys, "typecheck", corpus_path("bits"))
    assert code == 0 and "cnot: ok" in out
    bad = tmp_path / "bad.rev"
    bad.write_text("iso o : unit + unit <-> unit { | inl x <-> tt | inl y <-> tt }")
    code, out, _ = run(capsys, "typecheck", str(bad))
    assert code == 1 and "OverlappingPatterns" in out and "0,1 (left)" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.rev"
    bad.write_text("main = (tt, ")
    code, _, err = run(capsys, "run", str(bad))
    assert code == 1 and "parse error" in err


def test_invert(capsys, corpus_path):
    code, out, _ = run(capsys, "invert", corpus_path("swap"), "--iso", "sw")
    assert code == 0 and out.startswith("iso sw_inv")


def test_denote(capsys, corpus_path):
    code, out, _ = run(capsys, "denote", corpus_path("swap"), "--iso", "sw")
    data = json.loads(out)
    assert code == 0 and data["model"] == "finpinj"
    assert sorted(data["graph"]) == [["inl *", "inr *"], ["inr *", "inl *"]]


def test_check_laws_pass_and_json(capsys):
    code, out, _ = run(capsys, "check-laws", "--model", "finpinj", "--cases", "100",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and all(r["pass"] for r in data)
    assert {"law", "cases", "failures"} <= set(data[0])


def test_check_laws_is_byte_identical_per_seed(capsys, monkeypatch):
    args = ("check-laws", "--model", "pids-oplus", "--cases", "50", "--format", "json")
    monkeypatch.setenv("REVCAT_SEED", "9")
    first = run(capsys, *args)
    second = run(capsys, *args, "--seed", "1")
    assert first == second


def test_law_failure_exit_code(capsys, tmp_path):
    from revcat.tables import example56
    bad = tmp_path / "bad.json"
    T = example56().perturbed("g", "h", "g")
    bad.write_text(T.dumps())
    code, _, _ = run(capsys, "check-laws", "--model", str(bad), "--cases", "50")
    assert code == 3


def test_check_consistency_verdict(capsys):
    code, out, _ = run(capsys, "check-consistency", "--model", "example56", "--flavor", "weak")
    assert code == 0
    assert out.startswith("weak: false") and "h = id" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--model", "example513", "--object", "ab",
                       "--format", "json")
    rows = {r["morphism"]["morphism"]: r for r in json.loads(out)}
    assert code == 0 and rows["id"]["lnd"] and not rows["id"]["snd"]
    code, out, _ = run(capsys, "classify", "--model", "finpinj", "--morphism",
                       '{"dom": ["a"], "cod": ["a"], "graph": [["a", "a"]]}')
    assert code == 0 and "snd=True" in out


def test_check_adequacy_report_only(capsys):
    code, out, _ = run(capsys, "check-adequacy", "--model", "pids-oplus", "--max-size", "3")
    assert code == 0 and "report only" in out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["check-laws"], ["check-laws", "--model", "x"],
                                  ["run", "/nonexistent.rev"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 64
