import csv
import io
import json
import os

import pytest

from specscale import fixtures
from specscale.algebra import save_tuple
from specscale.cli import main


@pytest.fixture()
def inputs(tmp_path):
    paths = {}
    for name, optuple in (
        ("reciprocal", fixtures.reciprocal_diagonal(8)),
        ("pauli", fixtures.pauli_pair()),
        ("commuting", fixtures.commuting_diagonals()),
        ("zeros", fixtures.zero_tuple(n=1, dim=2)),
        ("blockpair", fixtures.block_with_scalars()),
    ):
        p = tmp_path / f"{name}.json"
        save_tuple(optuple, p)
        paths[name] = str(p)
    return paths


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_unknown_command_exits_one(inputs, capsys):
    code, _, err = run(["frobnicate", "--input", inputs["pauli"]], capsys)
    assert code == 1
    assert "usage" in err


def test_missing_command_exits_one(capsys):
    code, _, _ = run([], capsys)
    assert code == 1


def test_malformed_json_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{this is not json")
    code, _, err = run(["support", "--input", str(bad)], capsys)
    assert code == 2
    assert "input error" in err


def test_schema_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"blocks": [{"dim": 1, "operators": [[[[0, 0]]]]}]}))
    code, _, err = run(["support", "--input", str(bad)], capsys)
    assert code == 2
    assert "weight" in err


def test_non_hermitian_exits_three(tmp_path, capsys):
    bad = tmp_path / "nh.json"
    bad.write_text(
        json.dumps(
            {
                "blocks": [
                    {
                        "weight": 0.5,
                        "dim": 2,
                        "operators": [
                            [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]
                        ],
                    }
                ]
            }
        )
    )
    code, _, err = run(["support", "--input", str(bad)], capsys)
    assert code == 3
    assert "self-adjoint" in err


def _support_rows(out):
    reader = csv.DictReader(io.StringIO(out))
    return list(reader)


def test_support_reciprocal_positive_sweep(inputs, capsys):
    code, out, _ = run(
        ["support", "--input", inputs["reciprocal"], "--samples", "4"], capsys
    )
    assert code == 0
    rows = _support_rows(out)
    plus = [r for r in rows if float(r["t1"]) > 0]
    distinct_upper = {r["trace_p_plus"] for r in plus}
    # eight eigenvalue tails plus the empty projection
    assert len(distinct_upper) == 9


def test_support_zero_operator_alphas(inputs, capsys):
    code, out, _ = run(
        ["support", "--input", inputs["zeros"], "--samples", "4"], capsys
    )
    assert code == 0
    for row in _support_rows(out):
        s, alpha = float(row["s"]), float(row["alpha"])
        assert min(abs(alpha), abs(alpha + s)) <= 1e-12


def test_support_pauli_axis_row(inputs, capsys):
    code, out, _ = run(
        ["support", "--input", inputs["pauli"], "--samples", "8"], capsys
    )
    assert code == 0
    rows = [
        r
        for r in _support_rows(out)
        if abs(float(r["t1"]) - 1.0) < 1e-12
        and abs(float(r["t2"])) < 1e-12
        and abs(float(r["s"])) < 1e-12
    ]
    assert rows, "axis sweep must include the (s=0, t=(1,0)) row"
    assert float(rows[0]["alpha"]) == pytest.approx(-0.5, abs=1e-12)


def test_abelian_reports(inputs, capsys):
    code, out, _ = run(
        ["abelian", "--input", inputs["commuting"], "--samples", "48"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["abelian"] == {"geometric": True, "algebraic": True}

    code, out, _ = run(
        ["abelian", "--input", inputs["pauli"], "--samples", "48"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["abelian"] == {"geometric": False, "algebraic": False}
    assert payload["cloud_counts"][1] > payload["cloud_counts"][0]


def test_slice_level_zero_single_point(inputs, capsys):
    code, out, _ = run(
        ["slice", "--input", inputs["pauli"], "--level", "0", "--samples", "16"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["x1,x2", "0,0"]


def test_corners_report_two_point_gap(inputs, capsys):
    code, out, _ = run(
        ["corners", "--input", inputs["reciprocal"], "--samples", "4"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert any(
        abs(g["s1"] - 1.0 / 3.0) < 1e-12 and abs(g["s2"] - 0.5) < 1e-12
        for g in payload["gaps"]
    )
    assert payload["sharp_faces"]


def test_center_report_blockpair(inputs, capsys):
    code, out, _ = run(
        ["center", "--input", inputs["blockpair"], "--samples", "32"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    central = [c for c in payload["central_projections"] if c["central"]]
    nontrivial = [
        c
        for c in central
        if 1e-9 < c["tau_upper"] < 1.0 - 1e-9 and c["tau_lower"] == c["tau_upper"]
    ]
    assert nontrivial, "the scalar block projection must be detected"


def test_extremes_csv_and_stats(inputs, capsys):
    code, out, err = run(
        ["extremes", "--input", inputs["reciprocal"], "--samples", "16"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("x0,x1,proj_id")
    assert len(lines) == 17
    stats = json.loads(err.strip().splitlines()[-1])
    assert stats["points"] == 16


def test_obj_export(inputs, capsys):
    code, out, _ = run(
        [
            "extremes",
            "--input",
            inputs["pauli"],
            "--format",
            "obj",
            "--samples",
            "64",
        ],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    kinds = {line.split()[0] for line in lines}
    assert kinds == {"v", "f"}


def test_output_directory_atomic_write(inputs, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code, out, err = run(
        [
            "abelian",
            "--input",
            inputs["commuting"],
            "--samples",
            "32",
            "--out",
            str(out_dir),
        ],
        capsys,
    )
    assert code == 0
    assert out == ""
    target = out_dir / "abelian.json"
    assert target.exists()
    payload = json.loads(target.read_text())
    assert payload["abelian"]["algebraic"] is True
    assert not [p for p in os.listdir(out_dir) if p.startswith(".")]


def test_center_reports_isolated_extremes(inputs, capsys):
    code, out, _ = run(
        [
            "center",
            "--input",
            inputs["reciprocal"],
            "--samples",
            "16",
            "--iso-radius",
            "0.001",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    isolated = payload["isolated_extreme_points"]
    assert len(isolated) == 16
    assert all(entry["central"] for entry in isolated)


def test_invariant_violation_exits_four(inputs, capsys, monkeypatch):
    from specscale import cli
    from specscale.errors import InvariantViolation

    def explode(optuple, args):
        raise InvariantViolation("synthetic trip for the exit-code contract")

    monkeypatch.setitem(cli.HANDLERS, "abelian", explode)
    code, _, err = run(["abelian", "--input", inputs["pauli"]], capsys)
    assert code == 4
    assert "invariant violation" in err


def test_runs_are_deterministic(inputs, capsys):
    argv = ["support", "--input", inputs["blockpair"], "--samples", "12"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    argv = ["faces", "--input", inputs["commuting"], "--samples", "8"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
