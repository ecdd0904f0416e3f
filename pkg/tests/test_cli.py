"""Command-line front end: documents, rendering, exit codes."""

import json
import pathlib

from abelrank.cli import main

THETA4_JSON = json.dumps(
    {
        "g": 4,
        "chi": "24",
        "gamma": ["24", "6", "1", "1/6", "0"],
        "spectrum": [["24", "5", "2", "1"]],
    }
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeriesCommand:
    def test_theta_conv_document(self, capsys):
        code, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "3",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["f_star"] == ["0", "72", "-864", "10368"]
        assert doc["coefficients"] == ["0", "0", "58", "6618"]

    def test_prym_sym_document(self, capsys):
        code, out, _ = run(
            capsys, "series", "--preset", "prym", "--g", "2", "--m", "1",
            "--chi", "2", "--kind", "sym",
        )
        assert code == 0
        assert json.loads(out)["f_tilde"] == ["0", "1"]

    def test_descriptor_file(self, capsys, tmp_path):
        path = tmp_path / "theta.json"
        path.write_text(THETA4_JSON)
        code, out, _ = run(
            capsys, "series", "--input", str(path), "--kind", "conv"
        )
        assert code == 0
        assert json.loads(out)["f"] == ["0", "58", "-342", "5279"]

    def test_validation_failure_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            json.dumps({"g": 1, "chi": "2", "gamma": ["3", "1"]})
        )
        code, _, err = run(
            capsys, "series", "--input", str(path), "--kind", "conv"
        )
        assert code == 2
        assert "gamma_constant" in err

    def test_malformed_json_exits_3(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        code, _, err = run(
            capsys, "series", "--input", str(path), "--kind", "conv"
        )
        assert code == 3
        assert "parse error" in err

    def test_missing_file_exits_3(self, capsys):
        code, _, _ = run(
            capsys, "series", "--input", "/nonexistent.json", "--kind", "conv"
        )
        assert code == 3

    def test_schema_violation_exits_2(self, capsys, tmp_path):
        path = tmp_path / "schema.json"
        path.write_text(json.dumps({"g": 0, "chi": "1", "gamma": ["1"]}))
        code, _, err = run(
            capsys, "series", "--input", str(path), "--kind", "conv"
        )
        assert code == 2
        assert "schema" in err

    def test_no_source_exits_3(self, capsys):
        code, _, _ = run(capsys, "series", "--kind", "conv")
        assert code == 3

    def test_order_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("ABELRANK_MAX_ORDER", "4")
        code, _, err = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "5",
        )
        assert code == 3
        assert "order" in err
        monkeypatch.setenv("ABELRANK_MAX_ORDER", "80")
        code, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "70",
        )
        assert code == 0
        assert len(json.loads(out)["coefficients"]) == 71

    def test_byte_identical_reruns(self, capsys):
        argv = (
            "series", "--preset", "theta", "--g", "4", "--kind", "sym",
            "--order", "5",
        )
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_text_format(self, capsys):
        code, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "sym", "--order", "2", "--format", "text",
        )
        assert code == 0
        assert "f_tilde = 52*t^5 + 1292*t^4 + 5049*t^3 + 1292*t^2 + 52*t" in out

    def test_latex_format(self, capsys):
        code, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "2", "--format", "latex",
        )
        assert code == 0
        assert "10368 t^{3} - 864 t^{2} + 72 t" in out


class TestSchurCommand:
    def test_single(self, capsys):
        code, out, _ = run(
            capsys, "schur", "--preset", "theta", "--g", "4",
            "--alpha", "1,1",
        )
        assert code == 0
        assert json.loads(out)["rank"] == "6"

    def test_symmetric_square(self, capsys):
        code, out, _ = run(
            capsys, "schur", "--preset", "theta", "--g", "4", "--alpha", "2"
        )
        assert json.loads(out)["rank"] == "52"

    def test_table_weighted_sum(self, capsys):
        code, out, _ = run(
            capsys, "schur", "--preset", "theta", "--g", "4", "--all", "2"
        )
        doc = json.loads(out)
        assert doc["schur_sum"]["weighted_sum"] == "58"
        assert doc["schur_sum"]["pass"] is True

    def test_bad_partition_exits_3(self, capsys):
        code, _, _ = run(
            capsys, "schur", "--preset", "theta", "--g", "4", "--alpha", "1,2"
        )
        assert code == 3

    def test_alpha_or_all_required(self, capsys):
        code, _, _ = run(capsys, "schur", "--preset", "theta", "--g", "4")
        assert code == 3


class TestTraceCommand:
    def test_elliptic(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--preset", "elliptic", "--r", "2", "--chi", "3",
            "--sigma", "2,1",
        )
        assert code == 0
        assert json.loads(out)["c"] == "30"

    def test_prym(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--preset", "prym", "--g", "2", "--m", "1",
            "--chi", "2", "--sigma", "2",
        )
        assert json.loads(out)["c"] == "1"

    def test_identity_on_theta(self, capsys):
        code, out, _ = run(
            capsys, "trace", "--preset", "theta", "--g", "4", "--sigma", "1,1"
        )
        assert json.loads(out)["c"] == "58"


class TestVerifyCommand:
    def test_theta_functional_eq(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--preset", "theta", "--g", "4",
            "--suite", "functional_eq",
        )
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_prym_sweep(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--preset", "prym", "--sweep", "g=2..6,m=1..3",
            "--suite", "closed_forms", "--n-max", "3",
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["targets"]) == 15
        assert doc["pass"] is True

    def test_random_suites(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--random", "25", "--seed", "7",
            "--suite", "schur_sum,adams_routes,degree_bounds", "--n-max", "3",
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["targets"]) == 25
        assert doc["pass"] is True

    def test_failing_check_exits_1(self, capsys, tmp_path):
        # A fractional top class coefficient passes validation but breaks
        # the Schur integrality identity, so the suite reports a failure.
        path = tmp_path / "frac.json"
        path.write_text(
            json.dumps({"g": 1, "chi": "1", "gamma": ["1", "1/7"]})
        )
        code, out, _ = run(
            capsys, "verify", "--input", str(path), "--suite", "schur_sum",
            "--n-max", "2",
        )
        assert code == 1
        assert json.loads(out)["pass"] is False

    def test_unknown_suite_exits_3(self, capsys):
        code, _, _ = run(
            capsys, "verify", "--preset", "theta", "--g", "4",
            "--suite", "bogus",
        )
        assert code == 3

    def test_bad_sweep_exits_3(self, capsys):
        code, _, _ = run(
            capsys, "verify", "--preset", "prym", "--sweep", "q=1..2"
        )
        assert code == 3

    def test_text_rendering_lists_checks(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--preset", "theta", "--g", "4",
            "--suite", "degree_bounds", "--format", "text",
        )
        assert code == 0
        assert "PASS theta(g=4) degree_bounds/f_degree" in out
        assert out.strip().endswith("all checks passed")


class TestPresetCommand:
    def test_theta_document(self, capsys):
        code, out, _ = run(capsys, "preset", "--preset", "theta", "--g", "4")
        assert code == 0
        assert json.loads(out) == json.loads(THETA4_JSON)

    def test_missing_parameter_exits_3(self, capsys):
        code, _, _ = run(capsys, "preset", "--preset", "prym", "--g", "2")
        assert code == 3

    def test_degenerate_prym_exits_2(self, capsys):
        code, _, err = run(
            capsys, "preset", "--preset", "prym", "--g", "1", "--m", "1",
            "--chi", "0",
        )
        assert code == 2
        assert "spectrum" in err


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert run(capsys, "bogus")[0] == 3

    def test_unknown_flag(self, capsys):
        assert run(capsys, "series", "--nope")[0] == 3

    def test_exit_codes_are_disjoint(self, capsys, tmp_path):
        # 0: success; 1: failed checks; 2: invalid descriptor; 3: usage
        ok = run(
            capsys, "trace", "--preset", "elliptic", "--r", "1", "--chi", "1",
            "--sigma", "1",
        )[0]
        frac = tmp_path / "frac.json"
        frac.write_text(json.dumps({"g": 1, "chi": "1", "gamma": ["1", "1/7"]}))
        failed = run(
            capsys, "verify", "--input", str(frac), "--suite", "schur_sum",
            "--n-max", "1",
        )[0]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"g": 1, "chi": "2", "gamma": ["3", "1"]}))
        invalid = run(capsys, "series", "--input", str(bad), "--kind", "conv")[0]
        usage = run(capsys, "series", "--kind", "conv")[0]
        assert (ok, failed, invalid, usage) == (0, 1, 2, 3)


class TestGoldenDocuments:
    """Byte-exact pins of the flagship documents; catches format drift."""

    def test_theta_conv_golden(self, capsys):
        golden = (
            pathlib.Path(__file__).parent / "golden" / "theta4_conv.json"
        ).read_text()
        _, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "3",
        )
        assert out == golden

    def test_theta_sym_golden(self, capsys):
        golden = (
            pathlib.Path(__file__).parent / "golden" / "theta4_sym.json"
        ).read_text()
        _, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "sym", "--order", "4",
        )
        assert out == golden


class TestRoundTrip:
    def test_series_output_reparses_to_same_polynomial(self, capsys):
        from fractions import Fraction

        from abelrank.engine import f_polynomials
        from abelrank.exact import UniPoly
        from abelrank.model import preset_theta

        _, out, _ = run(
            capsys, "series", "--preset", "theta", "--g", "4",
            "--kind", "conv", "--order", "2",
        )
        doc = json.loads(out)
        for key, expected in (
            ("f_star", f_polynomials(preset_theta(4)).star),
            ("f", f_polynomials(preset_theta(4)).combined),
        ):
            assert UniPoly([Fraction(c) for c in doc[key]], "t") == expected

    def test_preset_output_feeds_back_in(self, capsys, tmp_path):
        # the preset document must be directly usable as an --input file
        _, out, _ = run(capsys, "preset", "--preset", "theta", "--g", "4")
        path = tmp_path / "echo.json"
        path.write_text(out)
        code, out2, _ = run(
            capsys, "series", "--input", str(path), "--kind", "conv",
            "--order", "2",
        )
        assert code == 0
        assert json.loads(out2)["coefficients"] == ["0", "0", "58"]
