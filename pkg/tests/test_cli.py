import json
import math

import pytest

from weylsys.cli import main, parse_complex


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestComplexParsing:
    @pytest.mark.parametrize(
        "text,want",
        [
            ("0+1i", 1j),
            ("1", 1.0),
            ("i", 1j),
            ("-i", -1j),
            ("2i", 2j),
            ("1-2i", 1 - 2j),
            ("-1+0.5i", -1 + 0.5j),
            ("1.5e-3+0.5i", 0.0015 + 0.5j),
            ("3+0j", 3.0),
        ],
    )
    def test_forms(self, text, want):
        assert parse_complex(text) == want

    def test_rejects_garbage(self):
        from weylsys.cli import CliError

        with pytest.raises(CliError):
            parse_complex("one+twoi")


class TestEvalM:
    def test_bessel_closed_form_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval-m", "--potential", "bessel:1.5", "--z", "0+1i"
        )
        assert code == 0
        data = json.loads(out)
        row = data["rows"][0]
        assert abs(row["m"]["re"] - 1.2071067811865475) < 1e-9
        assert abs(row["m"]["im"] + 0.5) < 1e-9

    def test_free_potential(self, capsys):
        code, out, _ = run_cli(capsys, "eval-m", "--potential", "free:0", "--z", "0+2i")
        data = json.loads(out)
        assert code == 0
        assert abs(data["rows"][0]["m"]["re"] - 1.0) < 1e-9
        assert abs(data["rows"][0]["m"]["im"] + 1.0) < 1e-9

    def test_on_spectrum_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "eval-m", "--potential", "bessel:1.5", "--z", "4+0i"
        )
        assert code == 2
        assert "OnSpectrum" in err

    def test_unknown_potential_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "eval-m", "--potential", "bogus:1", "--z", "i")
        assert code == 1

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval-m", "--potential", "free:0", "--z", "0+2i", "--format", "csv"
        )
        lines = out.strip().splitlines()
        assert lines[0] == "z_re,z_im,m_re,m_im,err_estimate"
        assert len(lines) == 2

    def test_engine_mode(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval-m", "--potential", "bessel:1.5", "--mode", "riccati_engine",
            "--z", "0+1i",
        )
        data = json.loads(out)
        assert data["mode"] == "riccati_engine"
        assert abs(data["rows"][0]["m"]["re"] - 1.2071067811865475) < 1e-6
        assert 0 < data["rows"][0]["err_estimate"] <= 1e-6

    def test_byte_determinism(self, capsys):
        args = ("eval-m", "--potential", "bessel:1.5", "--z", "0+1i", "--z", "-1+1i")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestEvalMAlpha:
    def test_reciprocal_case(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "eval-malpha", "--potential", "bessel:1.5",
            "--tan-alpha", "inf", "--z", "0+1i",
        )
        data = json.loads(out)
        assert code == 0
        assert data["tan_alpha"] == "inf"
        v = data["rows"][0]["value"]
        assert abs(v["re"] - 0.7071067811865476) < 1e-9
        assert abs(v["im"] - 0.2928932188134525) < 1e-9

    def test_requires_angle(self, capsys):
        code, _, err = run_cli(capsys, "eval-malpha", "--z", "i")
        assert code == 1


class TestRealize:
    @pytest.mark.parametrize(
        "argv,mu",
        [
            (("--target", "neg-m-infinity"), 0.0),
            (("--target", "recip-m-infinity"), "inf"),
            (("--target", "neg-m-alpha", "--tan-alpha", "1"), 1.0),
            (("--target", "neg-m-alpha", "--alpha", str(math.pi / 2)), "inf"),
        ],
    )
    def test_targets(self, capsys, argv, mu):
        code, out, _ = run_cli(capsys, "realize", *argv)
        data = json.loads(out)
        assert code == 0
        assert data["mu"] == mu
        assert data["h"] == {"re": 0.0, "im": 1.0}


class TestClassify:
    def test_accumulative_sectorial_angles(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--tan-alpha", "-1", "--potential", "bessel:1.5"
        )
        data = json.loads(out)
        assert code == 0
        assert data["lsystem_class"] == "accumulative_sectorial"
        assert data["angles"]["beta1"] == 0.0
        assert abs(data["angles"]["beta2"] - math.pi / 4) < 1e-15

    def test_alpha_zero_is_extremal(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--alpha", "0", "--potential", "bessel:1.5"
        )
        data = json.loads(out)
        assert data["lsystem_class"] == "accumulative_extremal"
        assert data["angles"] is None

    def test_mu_h_pair(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "classify", "--mu", "inf", "--h", "0+1i", "--potential", "bessel:1.5",
        )
        data = json.loads(out)
        assert data["lsystem_class"] == "accretive"
        assert data["operator"]["exact_angle_tan"] == 1.0

    def test_angle_and_pair_conflict(self, capsys):
        code, _, err = run_cli(
            capsys, "classify", "--alpha", "0", "--mu", "1", "--h", "0+1i"
        )
        assert code == 1


class TestRegionScan:
    def test_boundary_rows_bessel(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "region-scan", "--potential", "bessel:1.5",
            "--alpha-count", "64", "--format", "json",
        )
        data = json.loads(out)
        assert code == 0
        assert len(data["rows"]) == 64
        by_tan = {r["tan_alpha"]: r["lsystem_class"] for r in data["rows"]}
        assert by_tan[-1.0] == "accumulative_sectorial"
        assert by_tan[0.0] == "accumulative_extremal"
        assert by_tan[1.0] == "accretive"
        assert by_tan["inf"] == "accretive"

    def test_free_region_degenerates(self, capsys):
        code, out, _ = run_cli(
            capsys, "region-scan", "--potential", "free:0", "--alpha-count", "32",
            "--format", "json",
        )
        data = json.loads(out)
        accum = [r for r in data["rows"] if r["lsystem_class"].startswith("accumulative")]
        assert [r["tan_alpha"] for r in accum] == [0.0]

    def test_empty_grid_header_only(self, capsys):
        code, out, _ = run_cli(
            capsys, "region-scan", "--alpha-count", "0", "--format", "csv"
        )
        assert code == 0
        assert out == "alpha,tan_alpha,class,beta1,beta2,beta_class,beta_universal\n"

    def test_csv_column_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "region-scan", "--alpha-count", "8", "--format", "csv"
        )
        header = out.splitlines()[0]
        assert header == "alpha,tan_alpha,class,beta1,beta2,beta_class,beta_universal"


class TestMeasure:
    def test_files_written(self, capsys, tmp_path):
        out_file = tmp_path / "measure.csv"
        code, _, _ = run_cli(
            capsys,
            "measure", "--potential", "bessel:1.5", "--tan-alpha", "0",
            "--t-min", "0.5", "--t-max", "2.0", "--t-points", "3",
            "--format", "csv", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "t,density,cumulative"
        assert len(lines) == 4
        t_mid, dens_mid, _ = (float(v) for v in lines[2].split(","))
        assert t_mid == pytest.approx(1.0)
        assert dens_mid == pytest.approx(1.0 / (2 * math.pi), rel=1e-3)
        header = json.loads(out_file.with_suffix(".json").read_text())
        assert header["gamma"] == pytest.approx(-1.0, abs=1e-3)

    def test_empty_range_exits_1(self, capsys):
        code, _, err = run_cli(
            capsys, "measure", "--t-min", "2.0", "--t-max", "1.0"
        )
        assert code == 1


class TestVerify:
    def test_small_xmax_breaks_engine_oracle(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--xmax", "5", "--format", "json"
        )
        assert code == 3
        data = json.loads(out)
        oracle = next(c for c in data["checks"] if c["check_id"] == "1")
        assert not oracle["passed"]

    def test_text_report_lines(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--xmax", "5")
        lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
        assert len(lines) == 13
