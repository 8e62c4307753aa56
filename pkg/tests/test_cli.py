import json
import math

import pytest

from lopcsim import builtin_basic, builtin_variant, render
from lopcsim.cli import main


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    data = [line for line in lines if not line.startswith("#")]
    header = data[0].split(",")
    return [dict(zip(header, row.split(","))) for row in data[1:]]


@pytest.mark.parametrize("variant,expected_p", [("basic", 1 / 48), ("full", 1 / 12)])
def test_verify_variants_pass(tmp_path, variant, expected_p, capsys):
    out = tmp_path / "verify.csv"
    code = main(["verify", "--variant", variant, "--steps", "5", "--out", str(out)])
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 5
    for row in rows:
        assert row["ok"] == "true"
        assert abs(float(row["p_success"]) - expected_p) < 1e-12
        assert abs(float(row["fidelity"]) - 1.0) < 1e-12
        assert float(row["max_amp_err"]) < 1e-12
    assert "PASS" in capsys.readouterr().err


def test_verify_single_phi_in_degrees(tmp_path):
    out = tmp_path / "verify.csv"
    assert main(["verify", "--phi", "90", "--degrees", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 1
    assert abs(float(rows[0]["phi_rad"]) - math.pi / 2) < 1e-12


def test_verify_broken_netlist_exits_2(tmp_path, capsys):
    broken = tmp_path / "broken.lopc"
    broken.write_text("pbs oops\n", encoding="utf-8")
    assert main(["verify", "--netlist", str(broken)]) == 2
    err = capsys.readouterr().err
    assert "error:" in err and "line 1" in err


def test_verify_missing_file_exits_2(tmp_path):
    assert main(["verify", "--netlist", str(tmp_path / "nope.lopc")]) == 2


def test_verify_semantically_invalid_netlist_exits_2(tmp_path, capsys):
    # parses fine but fails validation: splitter transmissivity out of range
    text = render(builtin_basic()).replace("tv=0.5773502691896258", "tv=1.5")
    bad = tmp_path / "range.lopc"
    bad.write_text(text, encoding="utf-8")
    assert main(["verify", "--netlist", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_detuned_netlist_fails(tmp_path, capsys):
    # a parseable netlist that is not the gate: HWP2 detuned by 10 degrees
    text = render(builtin_basic()).replace("hwp HWP2 path=t_low angle=22.5", "hwp HWP2 path=t_low angle=32.5")
    bad = tmp_path / "detuned.lopc"
    bad.write_text(text, encoding="utf-8")
    out = tmp_path / "out.csv"
    code = main(["verify", "--netlist", str(bad), "--steps", "3", "--out", str(out)])
    assert code == 1
    assert any(row["ok"] == "false" for row in read_csv(out))
    assert "FAIL" in capsys.readouterr().err


def test_verify_netlist_file_equivalent_to_builtin(tmp_path):
    good = tmp_path / "full.lopc"
    good.write_text(render(builtin_variant("full")), encoding="utf-8")
    out = tmp_path / "out.csv"
    assert main(["verify", "--netlist", str(good), "--variant", "full", "--steps", "3", "--out", str(out)]) == 0


def test_sweep_layout_and_determinism(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    argv = ["sweep", "--variant", "full", "--steps", "4", "--out"]
    assert main(argv + [str(out1)]) == 0
    assert main(argv + [str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = read_csv(out1)
    assert len(rows) == 16  # 4 phases x 4 branches
    labels = [row["branch"] for row in rows[:4]]
    assert labels == sorted(labels)
    phis = [float(row["phi_rad"]) for row in rows]
    assert phis == sorted(phis)


def test_sweep_csv_json_equivalence(tmp_path):
    csv_out = tmp_path / "rows.csv"
    json_out = tmp_path / "rows.json"
    base = ["sweep", "--variant", "ff", "--steps", "3"]
    assert main(base + ["--out", str(csv_out)]) == 0
    assert main(base + ["--format", "json", "--out", str(json_out)]) == 0
    csv_rows = read_csv(csv_out)
    json_rows = json.loads(json_out.read_text(encoding="utf-8"))
    assert len(csv_rows) == len(json_rows)
    for c_row, j_row in zip(csv_rows, json_rows):
        assert float(c_row["p_success"]) == j_row["p_success"]
        assert float(c_row["branch_prob"]) == j_row["branch_prob"]
        assert c_row["branch"] == j_row["branch"]


def test_verify_default_grid_has_21_rows(tmp_path):
    out = tmp_path / "verify.csv"
    assert main(["verify", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 21
    assert float(rows[0]["phi_rad"]) == 0.0
    assert abs(float(rows[-1]["phi_rad"]) - math.pi) < 1e-15


def test_sweep_descending_grid_is_emitted_ascending(tmp_path):
    out = tmp_path / "desc.csv"
    assert main(["sweep", "--from", "1.0", "--to", "0.0", "--steps", "3", "--out", str(out)]) == 0
    phis = [float(r["phi_rad"]) for r in read_csv(out)]
    assert phis == sorted(phis)


def test_sweep_meta_lines(tmp_path):
    out = tmp_path / "meta.csv"
    assert main(["sweep", "--steps", "2", "--meta", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# tool=lopcsim")
    assert any(line.startswith("# variant=basic") for line in lines if line.startswith("#"))
    # meta must not break determinism
    out2 = tmp_path / "meta2.csv"
    assert main(["sweep", "--steps", "2", "--meta", "--out", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_hom_defaults_and_endpoints(tmp_path):
    out = tmp_path / "hom.csv"
    assert main(["hom", "--steps", "3", "--out", str(out)]) == 0
    rows = read_csv(out)
    values = {float(r["v"]): float(r["coincidence"]) for r in rows}
    assert abs(values[0.0] - 5 / 9) < 1e-12
    assert abs(values[0.5] - 1 / 3) < 1e-12
    assert abs(values[1.0] - 1 / 9) < 1e-12


def test_hom_balanced_splitter(tmp_path):
    out = tmp_path / "hom.csv"
    assert main(["hom", "--tv", "0.7071067811865476", "--from", "1", "--to", "1", "--steps", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert float(rows[0]["coincidence"]) < 1e-12


def test_usage_errors_exit_2(capsys):
    assert main(["verify", "--steps", "0"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["hom", "--tv", "1.5"]) == 2
    capsys.readouterr()


def test_json_verify_shape(tmp_path):
    out = tmp_path / "verify.json"
    assert main(["verify", "--steps", "2", "--format", "json", "--meta", "--out", str(out)]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["meta"]["command"] == "verify"
    assert len(payload["rows"]) == 2
    assert payload["rows"][0]["ok"] is True
