"""CLI subcommands: CSV output, determinism, exit codes."""

import numpy as np
import pytest

from bellport import cli
from bellport.protocol import Fig2Row


def run_cli(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = cli.main(args + ["--out", str(out), "--deterministic"])
    return code, out.read_text() if out.exists() else ""


def parse_csv(text):
    meta, header, rows = {}, None, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        elif header is None:
            header = line.split(",")
        else:
            rows.append(dict(zip(header, line.split(","))))
    return meta, header, rows


def test_teleport_subcommand(tmp_path):
    code, text = run_cli(
        ["teleport", "--channel", "bell:+-,-+", "--assumed-class", "mm",
         "--trials", "10", "--seed", "3"],
        tmp_path,
    )
    assert code == 0
    meta, header, rows = parse_csv(text)
    assert meta["version"]
    assert meta["channel"] == "bell:+-,-+"
    assert header == ["run", "outcomes", "measured_class", "joint_probability", "fidelity"]
    assert len(rows) == 10
    for row in rows:
        assert abs(float(row["fidelity"]) - 1.0) < 1e-10


def test_teleport_enumerate_branches(tmp_path):
    code, text = run_cli(
        ["teleport", "--channel", "mg-dimers:4", "--assumed-class", "++",
         "--enumerate-branches"],
        tmp_path,
    )
    assert code == 0
    _, _, rows = parse_csv(text)
    assert len(rows) == 16  # every forced branch of two measurements
    total = sum(float(r["joint_probability"]) for r in rows)
    assert abs(total - 1.0) < 1e-10


def test_fig2_subcommand_and_plotdata(tmp_path):
    plot = tmp_path / "plot.dat"
    out = tmp_path / "fig2.csv"
    code = cli.main(
        ["fig2", "--trials", "40", "--seed", "11", "--out", str(out),
         "--deterministic", "--plot-out", str(plot)]
    )
    assert code == 0
    meta, header, rows = parse_csv(out.read_text())
    assert meta["violations"] == "0"
    assert len(rows) == 160
    blocks = plot.read_text().split("\n\n\n")
    assert len(blocks) == 2
    scatter = [l for l in blocks[0].splitlines() if l and not l.startswith("#")]
    bound = [l for l in blocks[1].splitlines() if l and not l.startswith("#")]
    assert len(scatter) == 160
    assert len(bound) == 100
    x, y = map(float, bound[0].split())
    assert abs(y - (x - 1.0) / 2.0) < 1e-12


def test_fig2_deterministic_bytes(tmp_path):
    _, text1 = run_cli(["fig2", "--trials", "15", "--seed", "4"], tmp_path, "a.csv")
    _, text2 = run_cli(["fig2", "--trials", "15", "--seed", "4"], tmp_path, "b.csv")
    assert text1 == text2


def test_appendix_a_subcommand(tmp_path):
    code, text = run_cli(["appendix-a", "--phi", "0.3"], tmp_path)
    assert code == 0
    meta, _, rows = parse_csv(text)
    assert len(rows) == 16
    s = np.sin(0.6)
    for row in rows:
        expected = (1.0 - int(row["p2"]) * int(row["q2"]) * s) / 16.0
        assert abs(float(row["probability"]) - expected) < 1e-12
    assert meta["violations"] == "0"


def test_order_param_subcommand(tmp_path):
    code, text = run_cli(["order-param", "--channel", "ghz:4"], tmp_path)
    assert code == 0
    _, header, rows = parse_csv(text)
    row = rows[0]
    assert abs(float(row["efficiency"]) - 1.0) < 1e-10
    assert abs(float(row["omega_++"]) - 3.0) < 1e-10


def test_cluster_check_subcommand(tmp_path):
    code, text = run_cli(["cluster-check", "-L", "6"], tmp_path)
    assert code == 0
    _, _, rows = parse_csv(text)
    assert all(row["ok"] == "1" for row in rows)


def test_aklt_check_subcommand(tmp_path):
    code, text = run_cli(["aklt-check", "-L", "6"], tmp_path)
    assert code == 0
    _, _, rows = parse_csv(text)
    by_name = {row["check"]: row for row in rows}
    assert abs(float(by_name["string_order"]["value"]) + 1.0) < 1e-10


def test_bound_scan_subcommand(tmp_path):
    code, text = run_cli(["bound-scan", "--theta", "1.0471975512"], tmp_path)
    assert code == 0
    _, _, rows = parse_csv(text)
    assert abs(float(rows[0]["minimum"]) - 0.5) < 1e-3


def test_three_qubit_subcommand(tmp_path):
    code, text = run_cli(["three-qubit", "--seed", "2"], tmp_path)
    assert code == 0
    meta, _, rows = parse_csv(text)
    assert len(rows) == 64  # 8 channels x (4 full + 4 reduced) branches
    assert meta["theta_rank_kappa_plus"] == "2"
    assert meta["theta_rank_kappa_minus"] == "2"
    assert all(abs(float(r["fidelity"]) - 1.0) < 1e-10 for r in rows)


def test_qudit_demo_subcommand(tmp_path):
    code, text = run_cli(["qudit-demo", "-d", "3"], tmp_path)
    assert code == 0
    _, _, rows = parse_csv(text)
    assert all(abs(float(r["fidelity"]) - 1.0) < 1e-10 for r in rows)


def test_heisenberg_check_subcommand(tmp_path):
    code, text = run_cli(["heisenberg-check", "-L", "4", "--trials", "10"], tmp_path)
    assert code == 0
    _, _, rows = parse_csv(text)
    assert abs(float(rows[0]["efficiency"]) - 1.0) < 1e-8
    assert float(rows[0]["min_fidelity"]) > 1.0 - 1e-8


def test_unknown_subcommand_exits_64():
    with pytest.raises(SystemExit) as err:
        cli.main(["no-such-thing"])
    assert err.value.code == 64


def test_invalid_size_exits_64(tmp_path):
    with pytest.raises(SystemExit) as err:
        cli.main(["cluster-check", "-L", "5", "--out", str(tmp_path / "x.csv")])
    assert err.value.code == 64


def test_bad_channel_spec_exits_64(tmp_path):
    with pytest.raises(SystemExit) as err:
        cli.main(["teleport", "--channel", "bogus:4", "--out", str(tmp_path / "x.csv")])
    assert err.value.code == 64


def test_violation_exit_code(monkeypatch, tmp_path):
    # a row below the bound must flip the exit status to 2
    bad = Fig2Row(
        trial=0,
        assumed_class=(1, 1),
        omega=3.0,
        measured_class=(1, 1),
        fidelity=0.5,
        channel_kind="synthetic",
    )
    monkeypatch.setattr(
        cli, "fig2_run", lambda trials, seed, enumerate_branches=False: [bad]
    )
    code = cli.main(
        ["fig2", "--trials", "1", "--seed", "0", "--out", str(tmp_path / "v.csv"),
         "--deterministic"]
    )
    assert code == 2


def test_emit_plotdata_empty_errors(tmp_path):
    with pytest.raises(cli.EmptyDataError):
        cli.emit_plotdata([], str(tmp_path / "nothing.dat"))
    assert not (tmp_path / "nothing.dat").exists()


def test_timestamp_suppressed_only_when_deterministic(tmp_path):
    out = tmp_path / "t.csv"
    cli.main(["order-param", "--channel", "ghz:4", "--out", str(out)])
    assert "# generated=" in out.read_text()
    cli.main(["order-param", "--channel", "ghz:4", "--out", str(out), "--deterministic"])
    assert "# generated=" not in out.read_text()
