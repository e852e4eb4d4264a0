import json
import math

import pytest

from landaukol.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


GOLDEN_LINE = (
    '{"schema_version": "1", "command": "bound", "result": {"value": 1.414213562373095, '
    '"status": "Exact", "provenance": "kolmogorov-whole-line"}, '
    '"provenance": ["kolmogorov-whole-line"]}'
)

GOLDEN_SEGMENT = (
    '{"schema_version": "1", "command": "bound", "result": {"value": 2.5, '
    '"status": "Exact", "provenance": "segment-short-closed-form"}, '
    '"provenance": ["segment-short-closed-form"]}'
)

GOLDEN_EULER_CSV = "n,E_n\n0,1\n1,0\n2,-1\n3,0\n4,5\n5,0\n6,-61\n7,0\n8,1385\n"


def test_golden_bound_line(capsys):
    code, out, _ = run_cli(capsys, "bound", "--n", "2", "--k", "1", "--a", "1", "--b", "1",
                           "--domain", "line")
    assert code == 0
    assert out.strip() == GOLDEN_LINE


def test_golden_bound_segment(capsys):
    code, out, _ = run_cli(capsys, "bound", "--n", "2", "--domain", "segment", "--T", "1")
    assert code == 0
    assert out.strip() == GOLDEN_SEGMENT


def test_golden_table_euler_numbers(capsys):
    code, out, _ = run_cli(capsys, "table", "--what", "euler-numbers", "--max-n", "8")
    assert code == 0
    assert out == GOLDEN_EULER_CSV


def test_bound_halfline_bracket(capsys):
    code, payload, _ = run_json(capsys, "bound", "--n", "5", "--k", "2", "--domain", "halfline")
    assert code == 0
    result = payload["result"]
    assert result["status"] == "UpperBound"
    assert result["value"] > 0
    assert "half-line-bracket" in result["provenance"]
    bracket = result["bracket"]
    assert bracket["upper"] == pytest.approx(min(bracket["matorin"], bracket["malliavin"]))
    assert bracket["lower_kappa_free"] is True


def test_bound_pointwise_route(capsys):
    code, payload, _ = run_json(capsys, "bound", "--n", "2", "--domain", "segment",
                                "--T", "10", "--t0", "1")
    assert code == 0
    assert payload["result"]["value"] == pytest.approx(math.sqrt(6) - 1, abs=1e-12)


def test_bound_sato_route(capsys):
    code, payload, _ = run_json(capsys, "bound", "--n", "3", "--k", "2", "--domain", "segment",
                                "--T", "100")
    assert code == 0
    assert payload["result"]["value"] == pytest.approx(2 * 3 ** (1 / 3), abs=1e-12)
    assert "sato" in payload["result"]["provenance"]


def test_bound_sigma1_route(capsys):
    code, payload, _ = run_json(capsys, "bound", "--n", "2", "--domain", "segment",
                                "--T", "100", "--functional", "var")
    assert code == 0
    res = payload["result"]
    assert res["status"] == "Interval"
    assert 70.71 - 1e-9 <= res["lower"] <= res["upper"] <= 75.71


def test_bound_invalid_combination_exits_2(capsys):
    code, _, err = run_cli(capsys, "bound", "--n", "2", "--domain", "line", "--t0", "1")
    assert code == 2 and "t0" in err
    code, _, err = run_cli(capsys, "bound", "--n", "2", "--domain", "segment")
    assert code == 2 and "--T" in err


def test_extremal_verify_round_trip(tmp_path, capsys):
    for argv in (
        ["extremal", "--n", "2", "--domain", "segment", "--T", "2", "--t0", "0"],
        ["extremal", "--n", "2", "--domain", "segment", "--T", "7"],
        ["extremal", "--n", "2", "--domain", "line"],
        ["extremal", "--n", "3", "--domain", "line"],
        ["extremal", "--n", "2", "--domain", "segment", "--T", "3", "--functional", "var"],
        ["extremal", "--n", "2", "--domain", "halfline"],
    ):
        path = tmp_path / "w.json"
        n = argv[argv.index("--n") + 1]
        code, out, err = run_cli(capsys, *argv, "--out", str(path))
        assert code == 0, err
        code2, payload, _ = run_json(capsys, "verify", "--file", str(path), "--n", n)
        assert code2 == 0
        assert payload["result"]["membership"] is True


def test_extremal_without_witness_exits_2(capsys):
    code, _, err = run_cli(capsys, "extremal", "--n", "2", "--domain", "segment",
                           "--T", "30", "--functional", "var")
    assert code == 2 and "witness" in err


def test_verify_rejects_non_member(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"knots": [0.0, 1.0], "pieces": [[0.0, 0.0, 1.0]], "n": 2}')
    code, payload, _ = run_json(capsys, "verify", "--file", str(path))
    assert code == 1
    assert payload["result"]["membership"] is False


def test_verify_extreme_flag(tmp_path, capsys):
    path = tmp_path / "w.json"
    run_cli(capsys, "extremal", "--n", "2", "--domain", "segment", "--T", "2", "--t0", "1",
            "--out", str(path))
    code, payload, _ = run_json(capsys, "verify", "--file", str(path), "--extreme")
    assert code == 0
    assert payload["result"]["is_extreme"] is True

    flat = tmp_path / "flat.json"
    flat.write_text('{"knots": ["0/1", "1/1"], "pieces": [["0/1"]], "n": 2}')
    code, payload, _ = run_json(capsys, "verify", "--file", str(flat), "--extreme")
    assert code == 1
    assert payload["result"]["membership"] is True
    assert payload["result"]["is_extreme"] is False


def test_verify_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    code, _, err = run_cli(capsys, "verify", "--file", str(path))
    assert code == 2 and "cannot read" in err
    code, _, err = run_cli(capsys, "verify", "--file", str(tmp_path / "missing.json"))
    assert code == 2


def test_oracle_pointwise_json(capsys):
    code, payload, _ = run_json(capsys, "oracle", "--problem", "pointwise",
                                "--T", "1", "--t0", "0", "--M", "100")
    assert code == 0
    res = payload["result"]
    assert res["value"] == pytest.approx(2.5, rel=0.02)
    assert abs(res["discrepancy_vs_closed_form"]) <= 0.02
    assert res["config"]["M"] == 100


def test_oracle_sigma1_json_and_seed_env(capsys, monkeypatch):
    code, payload, _ = run_json(capsys, "oracle", "--problem", "sigma1", "--T", "2",
                                "--restarts", "20", "--seed", "3")
    assert code == 0
    assert payload["result"]["value"] == pytest.approx(2.0, abs=1e-3)
    assert payload["result"]["config"]["seed"] == 3
    monkeypatch.setenv("LANDAU_SEED", "99")
    code, payload, _ = run_json(capsys, "oracle", "--problem", "sigma1", "--T", "2",
                                "--restarts", "20", "--seed", "3")
    assert code == 0
    assert payload["result"]["config"]["seed"] == 99


def test_kernel_csv(capsys):
    code, out, _ = run_cli(capsys, "kernel", "--n", "2", "--T", "1", "--x", "0.5",
                           "--samples", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,K"
    assert len(lines) == 6
    t, K = lines[1].split(",")
    assert float(t) == 0.0 and float(K) == 0.0
    code, out, _ = run_cli(capsys, "kernel", "--n", "3", "--k", "1", "--T", "1",
                           "--x", "0.5", "--samples", "9")
    assert code == 0
    assert len(out.strip().splitlines()) == 10
    code, _, err = run_cli(capsys, "kernel", "--n", "3", "--T", "2", "--x", "0.5")
    assert code == 2


def test_spline_csv(capsys):
    code, out, _ = run_cli(capsys, "spline", "--what", "euler-spline", "--n", "4",
                           "--samples", "3", "--x0", "0", "--x1", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,value"
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(1.0, abs=1e-12)


def test_table_variants(capsys):
    for what in ("favard", "rn", "Ank", "Bnk"):
        code, out, _ = run_cli(capsys, "table", "--what", what, "--max-n", "5")
        assert code == 0
        assert len(out.strip().splitlines()) >= 2
    code, out, _ = run_cli(capsys, "table", "--what", "cnk", "--max-n", "4")
    assert code == 0
    header = out.splitlines()[0]
    assert "lower_shape_kappa_free" in header
