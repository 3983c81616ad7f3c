import csv
import io
import json

import pytest

from oddseq import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.rstrip("\n"), captured.err


def test_pi_text(capsys):
    code, out, _ = run(capsys, "pi", "100", "--strategy", "oracle")
    assert code == 0
    assert "pi = 25" in out
    assert "M_n = 49" in out and "W_n = 25" in out and "m = 1" in out


def test_pi_json_round_trips(capsys):
    code, out, _ = run(capsys, "pi", "1000", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data == {
        "x": 1000,
        "strategy": "oracle",
        "n": 498,
        "m_n": 499,
        "w_n": 332,
        "m": 1,
        "pi": 168,
        "class_counts": {},
    }


def test_pi_two(capsys):
    code, out, _ = run(capsys, "pi", "2")
    assert code == 0
    assert "pi = 1" in out


def test_pi_formula_strategy(capsys):
    code, out, _ = run(capsys, "pi", "100", "--strategy", "formula")
    assert code == 0
    assert "pi = 25" in out and "class counts:" in out


def test_pi_csv(capsys):
    code, out, _ = run(capsys, "pi", "100", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "strategy", "n", "m_n", "w_n", "m", "pi"]
    assert rows[1] == ["100", "oracle", "48", "49", "25", "1", "25"]


def test_pi_domain_error(capsys):
    code, _, err = run(capsys, "pi", "1")
    assert code == 2
    assert "error:" in err


def test_count_exact_at_x(capsys):
    code, out, _ = run(capsys, "count", "p:5", "--at-x", "55")
    assert code == 0
    assert out == "3"


def test_count_three_at_n(capsys):
    code, out, _ = run(capsys, "count", "3", "--at-n", "9")
    assert code == 0
    assert out == "3"


def test_count_kpow_at_x(capsys):
    code, out, _ = run(capsys, "count", "kpow:2", "--at-x", "25")
    assert code == 0
    assert out == "2"


def test_count_both_variants(capsys):
    code, out, _ = run(
        capsys, "count", "p:5", "--at-x", "55", "--variant", "both",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data == {"class": "p:5", "n": 26, "exact": 3, "classic": 1, "delta": -2}


def test_count_classic_needs_known_class(capsys):
    code, _, err = run(capsys, "count", "kl", "--at-n", "10", "--variant", "classic")
    assert code == 2
    assert "classic" in err


def test_count_unknown_class(capsys):
    code, _, err = run(capsys, "count", "blob", "--at-n", "10")
    assert code == 2


def test_count_requires_position(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "p:5"])
    assert exc.value.code == 2


def test_gen_default_includes_two(capsys):
    code, out, _ = run(capsys, "gen", "5")
    assert code == 0
    assert out == "2 3 5 7 11"


def test_gen_without_two(capsys):
    code, out, _ = run(capsys, "gen", "1", "--no-include-two")
    assert code == 0
    assert out == "3"


def test_gen_csv_1000(capsys):
    code, out, _ = run(capsys, "gen", "1000", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["index", "prime"]
    assert len(rows) == 1001
    assert rows[-1] == ["1000", "7919"]


def test_gen_inclusive_guard_matches(capsys):
    code, strict, _ = run(capsys, "gen", "100")
    code2, inclusive, _ = run(capsys, "gen", "100", "--guard", "inclusive")
    assert code == code2 == 0
    assert strict == inclusive


def test_tseries_examples(capsys):
    code, out, _ = run(capsys, "tseries", "3,5", "--limit", "31")
    assert code == 0
    assert out == "7 11 13 17 19 23 29 31"
    code, out, _ = run(capsys, "tseries", "3", "--limit", "13")
    assert out == "5 7 11 13"
    code, out, _ = run(capsys, "tseries", "5", "--limit", "7")
    assert out == "7"


def test_tseries_json(capsys):
    code, out, _ = run(capsys, "tseries", "3", "--limit", "13", "--format", "json")
    data = json.loads(out)
    assert data["period"] == 6
    assert data["seeds"] == [5, 7]
    assert data["elements"] == [5, 7, 11, 13]


def test_tseries_rejects_bad_divisors(capsys):
    code, _, err = run(capsys, "tseries", "4", "--limit", "10")
    assert code == 2


def test_verify_exact_classes_pass(capsys):
    code, out, _ = run(
        capsys, "verify", "--max-n", "500", "--classes", "p:7,p:11",
    )
    assert code == 0
    assert "mismatches 0" in out
    assert "result: OK" in out


def test_verify_classic_five_is_informational(capsys):
    code, out, _ = run(
        capsys, "verify", "--classes", "p:5", "--variant", "classic",
        "--max-n", "100",
    )
    assert code == 0
    assert "WARN" in out
    assert "first at n = 11" in out


def test_verify_json_reports_first_mismatch(capsys):
    code, out, _ = run(
        capsys, "verify", "--classes", "p:5,w", "--variant", "both",
        "--max-n", "80", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    by_class = {s["class"]: s for s in data["summaries"]}
    assert by_class["p:5[classic]"]["first_mismatch"] == 11
    assert by_class["p:5[classic]"]["informational"] is True
    assert by_class["p:5[exact]"]["mismatches"] == 0
    assert by_class["w[formula]"]["first_mismatch"] == 51
    row = data["rows"][0]
    assert set(row) == {"quantity", "formula", "oracle", "delta", "n"}


def test_verify_empty_report(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "0", "--classes", "3,kl")
    assert code == 0
    assert "result: OK" in out


def test_verify_exit_one_on_exact_mismatch(capsys, monkeypatch):
    real = cli._eval_class

    def broken(token, variant, n):
        value = real(token, variant, n)
        return value + 1 if token == "kl" else value

    monkeypatch.setattr(cli, "_eval_class", broken)
    code, out, _ = run(capsys, "verify", "--classes", "kl", "--max-n", "50")
    assert code == 1
    assert "FAIL" in out and "result: MISMATCH" in out


def test_verify_csv_rows(capsys):
    code, out, _ = run(
        capsys, "verify", "--classes", "p:5", "--variant", "classic",
        "--max-n", "20", "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["quantity", "formula", "oracle", "delta", "n"]
    assert rows[1] == ["p:5[classic]", "0", "1", "-1", "11"]


def test_bench_single_repeat(capsys):
    code, out, _ = run(
        capsys, "bench", "--x-max", "100", "--repeats", "1",
        "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    names = [r["name"] for r in data["rows"]]
    assert names[0] == "pi(oracle)" and names[1] == "pi(formula)"
    assert names[2].startswith("gen(")
    assert all(r["median_ns"] > 0 for r in data["rows"])


def test_sieve_cache_env(capsys, monkeypatch, tmp_path):
    path = tmp_path / "sieve.odsq"
    monkeypatch.setenv("ODSQ_SIEVE_CACHE", str(path))
    code, out, _ = run(capsys, "pi", "1000")
    assert code == 0 and "pi = 168" in out
    assert path.exists()
    blob = path.read_bytes()
    assert blob[:4] == b"ODSQ"
    # second run reuses the dump without rebuilding a larger one
    before = path.stat().st_mtime_ns
    code, out, _ = run(capsys, "pi", "500")
    assert code == 0 and "pi = 95" in out
    assert path.stat().st_mtime_ns == before


def test_unknown_command_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
