import json

import pytest

import kfib.cli
from kfib.cli import EXIT_FAIL, EXIT_OK, EXIT_PRECISION, EXIT_USAGE, main
from kfib.errors import PrecisionError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fib(capsys):
    code, out, _ = run(capsys, "fib", "3", "12")
    assert code == EXIT_OK and out.strip() == "504"


def test_lpf(capsys):
    code, out, _ = run(capsys, "lpf", "3136")
    assert code == EXIT_OK and out.strip() == "7"


def test_root(capsys):
    code, out, _ = run(capsys, "root", "5", "--bits", "80")
    assert code == EXIT_OK
    assert "lo" in out and "width" in out


def test_bounds_commands(capsys):
    code, out, _ = run(capsys, "bounds", "lemma3", "2")
    assert code == EXIT_OK and out.strip().startswith("3.295")
    code, out, _ = run(capsys, "bounds", "lemma2", "2", "2")
    assert code == EXIT_OK
    code, out, _ = run(capsys, "bounds", "matveev", "--degree", "1", "--coeff-bound", "2.718281828459045", "--heights", "1.0")
    assert code == EXIT_OK and out.strip().startswith("-2268000")


def test_reduce_small_k(capsys):
    code, out, _ = run(capsys, "reduce", "small-k", "4")
    assert code == EXIT_OK
    assert int(out.strip()) >= 6


def test_solve_jsonl_schema_and_order(capsys):
    code, out, _ = run(capsys, "solve", "--kmin", "2", "--kmax", "4", "--format", "jsonl")
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert [list(r) for r in rows] == [["k", "n", "a", "b", "c", "d", "value"]] * len(rows)
    keys = [(r["k"], r["n"]) for r in rows]
    assert keys == sorted(keys)
    assert {"k": 3, "n": 15, "a": 6, "b": 0, "c": 0, "d": 2, "value": "3136"} in rows


def test_solve_tsv(capsys):
    code, out, _ = run(capsys, "solve", "--kmin", "2", "--kmax", "2", "--pmax", "2", "--format", "tsv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "k\tn\ta\tb\tc\td\tvalue"
    assert lines[1:] == ["2\t6\t3\t0\t0\t0\t8"]


def test_verify_theorem2_pass(capsys):
    code, out, _ = run(capsys, "verify", "theorem2", "--kmin", "2", "--kmax", "8")
    assert code == EXIT_OK
    assert "PASS" in out and "20 matched" in out


def test_verify_theorem2_fault_injection_fails(capsys):
    code, out, _ = run(capsys, "verify", "theorem2", "--kmin", "2", "--kmax", "3", "--truncate", "3:10")
    assert code == EXIT_FAIL
    assert "MISSING" in out and "FAIL" in out


def test_verify_inequalities_small(capsys):
    code, out, _ = run(capsys, "verify", "inequalities", "--kmax", "12", "--nmax", "60")
    assert code == EXIT_OK
    assert out.count("PASS") == 4


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as info:
        main(["fib", "3"])  # missing argument
    assert info.value.code == EXIT_USAGE
    code, _, err = run(capsys, "fib", "1", "5")  # domain error: k < 2
    assert code == EXIT_USAGE and "error" in err


def test_reduce_large_k_runs(capsys):
    code, out, _ = run(capsys, "reduce", "large-k")
    assert code == EXIT_OK
    assert "final: k<=" in out


def test_precision_failure_exits_2(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise PrecisionError("synthetic")

    monkeypatch.setattr(kfib.cli, "reduce_small_k", boom)
    code, _, err = run(capsys, "reduce", "small-k", "5")
    assert code == EXIT_PRECISION and "precision" in err


def test_config_file(tmp_path, capsys):
    config = tmp_path / "kfib.conf"
    config.write_text("# settings\nworkers = 1\nhard_cap = 9\nlll_delta = 3/4\n")
    code, out, _ = run(capsys, "--config", str(config), "solve", "--kmin", "2", "--kmax", "2")
    assert code == EXIT_OK
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert all(r["n"] < 9 for r in rows)


def test_bad_config_key(tmp_path, capsys):
    config = tmp_path / "kfib.conf"
    config.write_text("nonsense = 1\n")
    code, _, err = run(capsys, "--config", str(config), "fib", "2", "5")
    assert code == EXIT_USAGE and "nonsense" in err
