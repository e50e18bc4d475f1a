import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from diracspec import __version__
from diracspec.cli import REPORT_SCHEMA, ROOT_SCHEMA, main, parse_complex, run


def invoke(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def report(capsys, *argv):
    status, out, err = invoke(capsys, *argv)
    assert status == 0, err
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    return data


@pytest.fixture
def sinh_file(tmp_path):
    path = tmp_path / "sinh.json"
    path.write_text(json.dumps({"type": "sinh", "mu_re": 1.0}))
    return str(path)


@pytest.fixture
def gauss_file(tmp_path):
    path = tmp_path / "gauss.json"
    path.write_text(json.dumps({"type": "gaussian_scalar", "a": 0.3, "b": 1.0}))
    return str(path)


class TestParseComplex:
    @pytest.mark.parametrize("text, z", [("0+2i", 2j), ("0.5-1i", 0.5 - 1j), ("3", 3), ("-2i", -2j), ("1+1j", 1 + 1j)])
    def test_forms(self, text, z):
        assert parse_complex(text) == z

    def test_bad(self, capsys):
        status, _, err = invoke(capsys, "check", "--z", "oops", "--mass", "0", "--criterion", "l1", "--v1", "0.5")
        assert status == 2 and "oops" in err


class TestEnclose:
    def test_disks(self, capsys):
        data = report(capsys, "enclose", "--v1", "0.8", "--mass", "1")
        (d1, d2) = data["disks"]
        assert d1["center"] == [pytest.approx(17 / 15, abs=1e-12), 0.0]
        assert d2["center"] == [pytest.approx(-17 / 15, abs=1e-12), 0.0]
        assert d1["radius"] == pytest.approx(8 / 15, abs=1e-12) == d2["radius"]
        assert data["version"] == __version__
        assert data["config"]["v1"] == 0.8
        assert "x0" in data["provenance"]

    def test_flags_before_subcommand(self, capsys):
        data = report(capsys, "--v1", "0.8", "--mass", "1", "enclose")
        assert data["disks"][0]["radius"] == pytest.approx(8 / 15, abs=1e-12)

    def test_nonrelativistic_csv(self, capsys):
        status, out, _ = invoke(capsys, "enclose", "--v1", "0.5", "--mass", "1", "--c", "1000", "--format", "csv")
        assert status == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["center_re", "center_im", "radius"]
        assert abs(float(rows[1][0])) < 1e-4 and abs(float(rows[1][2]) - 0.125) < 1e-4

    def test_condition_violated(self, capsys):
        status, out, err = invoke(capsys, "enclose", "--v1", "1.2", "--mass", "1")
        assert status == 2 and out == "" and "not below 1" in err

    def test_missing_flag(self, capsys):
        status, _, err = invoke(capsys, "enclose", "--mass", "1")
        assert status == 2 and "--v1" in err


class TestCheck:
    def test_massless_l1(self, capsys):
        data = report(capsys, "check", "--z", "0+2i", "--mass", "0", "--criterion", "l1", "--v1", "0.5")
        assert data["excluded"] is True and data["margin"] > 0
        assert data["z"] == [0.0, 2.0]

    def test_imaginary_lower_half_plane(self, capsys, tmp_path):
        path = tmp_path / "ig.json"
        path.write_text(json.dumps({"type": "imaginary_gaussian", "a": 0.5, "b": 1.0}))
        data = report(capsys, "check", "--z", "0-1i", "--mass", "1", "--criterion", "imag", "--potential", str(path))
        assert data["excluded"] is True and data["margin"] is None

    def test_fv(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        path.write_text(json.dumps({"type": "exponential_scalar", "a": 0.4}))
        data = report(capsys, "check", "--z", "0", "--mass", "1", "--criterion", "fv", "--potential", str(path))
        assert data["excluded"] and data["margin"] == pytest.approx(0.6, abs=1e-9)

    def test_lp_needs_p(self, capsys, gauss_file):
        status, _, err = invoke(capsys, "check", "--z", "1i", "--mass", "0", "--criterion", "lp",
                                "--potential", gauss_file)
        assert status == 2 and "--p" in err

    def test_ceps(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        path.write_text(json.dumps({"type": "exponential_scalar", "a": 1.0}))
        data = report(capsys, "check", "--z", "0", "--mass", "1", "--criterion", "ceps", "--epsilon", "0.5",
                      "--potential", str(path))
        assert data["excluded"] and data["l1_unbounded_part"] == pytest.approx(1 - math.log(2), abs=1e-10)

    def test_branch_cut_is_usage_error(self, capsys):
        status, _, _ = invoke(capsys, "check", "--z", "2", "--mass", "1", "--criterion", "l1", "--v1", "0.5")
        assert status == 2


class TestDelta:
    def test_example(self, capsys):
        data = report(capsys, "delta", "--kappa", "0.8", "--tau", "1.5707963268", "--mass", "1")
        eigs = [complex(*z) for z in data["eigenvalues"]]
        assert eigs[0] == pytest.approx(0.6, abs=1e-9) and eigs[1] == pytest.approx(-0.6, abs=1e-9)
        assert max(data["residuals"]) <= 1e-12
        assert data["regime"] == "SUBCRITICAL"

    def test_dense(self, capsys):
        data = report(capsys, "delta", "--kappa", "2", "--tau", str(math.pi / 3), "--mass", "0")
        assert data["dense_halfplane"] == "UPPER" and data["eigenvalues"] == []


class TestSearch:
    def test_spectrum(self, capsys, sinh_file):
        data = report(capsys, "spectrum", "--potential", sinh_file, "--mass", "0",
                      "--region", "-0.5,0.5,0.5,1.5", "--nodes", "200")
        assert len(data["eigenvalues"]) == 1
        root = data["eigenvalues"][0]
        jsonschema.validate(root, ROOT_SCHEMA)
        assert abs(complex(*root["z"]) - 1j) <= 1e-6
        assert root["abs_det"] <= 1e-8

    def test_reproducible(self, sinh_file):
        argv = ["spectrum", "--potential", sinh_file, "--mass", "0", "--region", "-0.5,0.5,0.5,1.5", "--nodes", "96"]
        assert run(argv)[1] == run(argv)[1]

    def test_resonances(self, capsys, sinh_file):
        data = report(capsys, "resonances", "--potential", sinh_file, "--mass", "0", "--phi", "0.1",
                      "--region", "-0.4,0.4,0.6,1.4")
        assert abs(complex(*data["eigenvalues"][0]["z"]) - 1j) <= 1e-6
        assert data["theta"] == [0.0, 0.1]

    def test_resonance_disks_reported(self, capsys, gauss_file):
        data = report(capsys, "resonances", "--potential", gauss_file, "--mass", "1", "--phi", "0.3",
                      "--region", "1.2,3,-0.1,0.1", "--nodes", "96")
        assert len(data["resonance_disks"]) == 2
        assert data["v_theta"] == pytest.approx(0.3 * math.sqrt(math.pi / math.cos(0.6)), rel=1e-10)

    def test_region_on_cut(self, capsys, gauss_file):
        status, _, err = invoke(capsys, "spectrum", "--potential", gauss_file, "--mass", "1",
                                "--region", "0.5,2,-0.1,0.1")
        assert status == 2 and "essential spectrum" in err

    def test_missing_potential_file(self, capsys, tmp_path):
        status, _, _ = invoke(capsys, "spectrum", "--potential", str(tmp_path / "nope.json"), "--mass", "0",
                              "--region", "-1,1,0.5,1")
        assert status == 2


class TestOtherCommands:
    def test_fv(self, capsys, tmp_path):
        path = tmp_path / "e.json"
        path.write_text(json.dumps({"type": "exponential_scalar", "a": 0.4}))
        data = report(capsys, "fv", "--potential", str(path), "--mass", "1")
        mu0 = (-1 + math.sqrt(4.2)) / 2
        assert data["gap_interval"][1] == pytest.approx(math.sqrt(1 - mu0 * mu0), abs=1e-8)

    def test_curves_csv(self, capsys, gauss_file, tmp_path):
        out = tmp_path / "curves.csv"
        status, stdout, _ = invoke(capsys, "curves", "--potential", gauss_file, "--mass", "1", "--phi", "0.5",
                                   "--samples", "6", "--format", "csv", "--out", str(out))
        assert status == 0 and stdout == ""
        rows = list(csv.reader(out.open()))
        assert rows[0] == ["phi", "re_z", "im_z", "family"] and len(rows) == 13


class TestFigures:
    def test_figure1(self, capsys):
        data = report(capsys, "--figure", "1")
        assert {c["v1"] for c in data["curves"]} == {0.8, 0.96, 0.978}

    def test_figure2(self, capsys):
        data = report(capsys, "--figure", "2", "--phi", "0.3")
        z = complex(*data["right"][-1])
        assert math.atan2((z * z - 1).imag, (z * z - 1).real) == pytest.approx(-0.6, abs=1e-12)

    def test_figure3_csv(self, capsys):
        status, out, _ = invoke(capsys, "--figure", "3", "--format", "csv", "--samples", "7")
        rows = list(csv.reader(io.StringIO(out)))
        assert status == 0 and len(rows) == 15
        assert float(rows[1][0]) == 0.0


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "diracspec.cli", "enclose", "--v1", "0.8", "--mass", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["disks"][0]["radius"] == pytest.approx(8 / 15)
    proc = subprocess.run([sys.executable, "-m", "diracspec.cli", "enclose", "--v1", "1.5", "--mass", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and proc.stderr


def test_numerical_failure_exit_code(monkeypatch, capsys):
    from diracspec import cli
    from diracspec.errors import WindingUnresolved

    def boom(args):
        raise WindingUnresolved("argument jump")

    monkeypatch.setitem(cli.HANDLERS, "enclose", boom)
    status, _, err = invoke(capsys, "enclose", "--v1", "0.5", "--mass", "1")
    assert status == 3 and "argument jump" in err
