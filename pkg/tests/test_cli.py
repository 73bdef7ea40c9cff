import csv
import io
import json

import pytest

from gref.cli import main


@pytest.fixture()
def e1_config(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(
        {"a2": 0, "c0": 0.25, "c1": 1, "lambda0": 0, "mu0": 8}), encoding="utf-8")
    return str(path)


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_catalog_e1_row_count(e1_config, tmp_path):
    out = tmp_path / "catalog.csv"
    rc = main(["--config", e1_config, "--out", str(out), "catalog", "--m-max", "3"])
    assert rc == 0
    rows = _read_csv(out)
    assert len(rows) == 16  # four types at each of four orders
    assert {r["type"] for r in rows} == {"a", "b", "c", "d"}
    d0 = [r for r in rows if r["m"] == "0" and r["type"] == "d"][0]
    assert float(d0["eps"]) == pytest.approx(-36.0)


def test_catalog_deterministic_bytes(e1_config, tmp_path):
    out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    main(["--config", e1_config, "--out", str(out1), "catalog", "--m-max", "2"])
    main(["--config", e1_config, "--out", str(out2), "catalog", "--m-max", "2"])
    assert out1.read_bytes() == out2.read_bytes()


def test_catalog_wavefunction_columns(e1_config, tmp_path):
    out = tmp_path / "wf.csv"
    main(["--config", e1_config, "--out", str(out), "catalog", "--m-max", "0",
          "--emit-wavefunctions"])
    rows = _read_csv(out)
    assert "phi_z0.5" in rows[0]
    assert all(float(r["phi_z0.5"]) != 0.0 for r in rows)


def test_potential_csv(e1_config, tmp_path):
    out = tmp_path / "pot.csv"
    rc = main(["--config", e1_config, "--out", str(out), "potential",
               "--xmin", "-3", "--xmax", "5", "--n", "16"])
    assert rc == 0
    rows = _read_csv(out)
    assert len(rows) == 17
    assert [k for k in rows[0]] == ["x", "z", "V"]
    zs = [float(r["z"]) for r in rows]
    assert all(b > a for a, b in zip(zs, zs[1:]))


def test_phase_diagram_threads_agree(e1_config, tmp_path):
    out1, out2 = tmp_path / "p1.csv", tmp_path / "p2.csv"
    args = ["phase-diagram", "--m", "1", "--lambda0", "0:2:3", "--mu0", "1:8:4"]
    main(["--config", e1_config, "--out", str(out1), "--threads", "1"] + args)
    main(["--config", e1_config, "--out", str(out2), "--threads", "4"] + args)
    assert out1.read_bytes() == out2.read_bytes()
    rows = _read_csv(out1)
    assert len(rows) == 12
    areas = {(r["lambda0"], r["mu0"]): r["area"] for r in rows}
    assert areas[("0", "8")] == "A"
    # mu0 + lambda0 = 3 = 2m+1 exactly: boundary band resolves to D
    assert areas[("2", "1")] == "D"
    flags = {(r["lambda0"], r["mu0"]): r["boundary"] for r in rows}
    assert flags[("2", "1")] == "true"
    assert areas[("1", "1")] == "B"


def test_partner_command_report(e1_config, tmp_path, capsys):
    out = tmp_path / "partner.csv"
    rc = main(["--config", e1_config, "--out", str(out), "partner",
               "--ff", "b:1", "--kappa-min", "0.6"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] and payload["kind"] == "isospectral"
    rows = _read_csv(out)
    assert set(rows[0]) == {"x", "v", "v_partner"}


def test_verify_family_exit(capsys):
    rc = main(["verify", "--family", "rm"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"]
    assert payload["reports"][0]["family"] == "rm"


def test_bad_config_exit_code(tmp_path):
    missing = str(tmp_path / "nope.json")
    assert main(["--config", missing, "catalog", "--m-max", "1"]) == 2


def test_empty_range_exit_code(e1_config):
    rc = main(["--config", e1_config, "phase-diagram", "--m", "1",
               "--lambda0", "2:1:3", "--mu0", "1:4:3"])
    assert rc == 2
