"""Command-line surface: parsing, output formats, exit codes."""

import json
from fractions import Fraction

import pytest

from cantorval import cli
from cantorval.verify import CheckResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_text(self, capsys):
        code, out, err = run(capsys, "info")
        assert code == 0 and not err
        assert "alpha = 1/2" in out
        assert "mode = exact" in out

    def test_json_matches_oracles(self, capsys):
        code, out, _ = run(capsys, "info", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["M"].startswith("12.4869163570260333760")
        assert doc["s"].startswith("2.0800838230519041145")
        assert doc["fTotal"] == "1"

    def test_float_mode_flags(self, capsys):
        code, out, _ = run(capsys, "info", "--alpha", "1/4", "--output",
                           "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["mode"] == "float"
        assert doc["M"].startswith("2.44963138207188023115")


class TestEval:
    def test_single_point_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "1/3", "--depth", "12",
                           "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["locate"] == {"kind": "gap", "level": 5, "index": 1,
                                 "gapLo": doc["locate"]["gapLo"],
                                 "gapHi": doc["locate"]["gapHi"]}
        assert Fraction(doc["g"]["lo"]) <= Fraction(doc["g"]["hi"])
        assert Fraction(doc["f"]["lo"]) >= 0

    def test_pair_reports_surface(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "31/5", "--y", "31/5",
                           "--depth", "12", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert "F" in doc and "gradF" in doc
        f_lo = Fraction(doc["f"]["lo"])
        big_lo = Fraction(doc["F"]["lo"])
        assert abs(big_lo - 2 * f_lo) < Fraction(1, 10**30)

    def test_text_mentions_location(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "62/10", "--depth", "8")
        assert code == 0
        assert "gap level=1" in out

    def test_csv_rejected(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "1/3", "--output", "csv")
        assert code == 2
        assert "CSV" in err or "csv" in err


class TestDecompose:
    def test_known_split(self, capsys):
        code, out, _ = run(capsys, "decompose", "--u", "1/2", "--output",
                           "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["x"]["value"] == "1/4"
        assert doc["y"]["value"] == "1/4"
        assert doc["sumChecks"] == "1/2"

    def test_rejects_outside_range(self, capsys):
        code, _, err = run(capsys, "decompose", "--u", "5/2")
        assert code == 2 and "error" in err


class TestPreimage:
    def test_span_pins_value(self, capsys):
        code, out, _ = run(capsys, "preimage", "--u", "1/2", "--depth", "14",
                           "--output", "json")
        assert code == 0
        doc = json.loads(out)
        assert Fraction(doc["fSpan"]["lo"]) <= Fraction(1, 2)
        assert Fraction(doc["fSpan"]["hi"]) >= Fraction(1, 2)
        assert doc["xDigits"]["display"] == "0.(02)_3"

    def test_u_out_of_range(self, capsys):
        code, _, err = run(capsys, "preimage", "--u", "3")
        assert code == 2 and "error" in err


class TestVerifyCommand:
    def test_named_suite_text(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "measure,prop2",
                           "--depth", "10")
        assert code == 0
        assert "measure" in out and "prop2" in out
        assert "overall: pass" in out

    def test_json_deterministic_sans_timing(self, capsys):
        args = ("verify", "--suite", "measure,image_gaps", "--depth", "10",
                "--max-level", "4", "--output", "json")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("wallTimeMs")
        d2.pop("wallTimeMs")
        assert d1 == d2

    def test_unknown_check_rejected(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "nonsense")
        assert code == 2
        assert "nonsense" in err

    def test_failure_exits_one(self, capsys, monkeypatch):
        def broken(params, config):
            return CheckResult(name="measure", passed=False, samples=1,
                               worst="1", details={})
        monkeypatch.setitem(cli.SUITES, "measure", broken)
        code, out, _ = run(capsys, "verify", "--suite", "measure")
        assert code == 1
        assert "FAIL" in out


class TestSample:
    def test_csv_shape(self, capsys):
        code, out, _ = run(capsys, "sample", "--count", "4", "--depth", "10")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,g_lo,g_hi,f_lo,f_hi"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert Fraction(first[0]) == 0

    def test_what_column_selection(self, capsys):
        code, out, _ = run(capsys, "sample", "--count", "2", "--what", "g",
                           "--depth", "8")
        assert code == 0
        assert out.splitlines()[0] == "x,g_lo,g_hi"

    def test_endpoint_row_hits_total_mass(self, capsys):
        code, out, _ = run(capsys, "sample", "--count", "2", "--what", "f",
                           "--depth", "12")
        assert code == 0
        last = out.strip().splitlines()[-1].split(",")
        assert Fraction(last[1]) <= 1 <= Fraction(last[2])

    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "sample", "--count", "2", "--what", "f",
                           "--depth", "8", "--output", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 3
        assert set(rows[0]) == {"x", "f_lo", "f_hi"}

    def test_deterministic(self, capsys):
        args = ("sample", "--count", "6", "--depth", "10")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_count_validated(self, capsys):
        code, _, err = run(capsys, "sample", "--count", "1")
        assert code == 2 and "count" in err


class TestErrors:
    def test_alpha_above_threshold(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "0", "--alpha", "59/100")
        assert code == 2
        assert "alpha" in err

    def test_exact_mode_needs_alpha_half(self, capsys):
        code, _, err = run(capsys, "info", "--alpha", "1/4", "--mode",
                           "exact")
        assert code == 2 and "error" in err

    def test_malformed_fraction(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "banana")
        assert code == 2
        assert "banana" in err

    def test_point_outside_domain(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "99")
        assert code == 2

    def test_usage_error_from_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["eval"])  # missing required --x
        assert exc.value.code == 2
        capsys.readouterr()

    def test_entry_point_exits(self, monkeypatch):
        monkeypatch.setattr("sys.argv", ["cantorval", "info"])
        with pytest.raises(SystemExit) as exc:
            cli.entry()
        assert exc.value.code == 0
