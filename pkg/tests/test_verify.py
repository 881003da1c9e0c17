"""Verification suite behavior: reports, determinism, negative controls.

A deliberately inflated tent coefficient must trip the integral checks,
which pin contract constants rather than echoing the construction.
"""

import json
from fractions import Fraction

import pytest

from cantorval.construction import params_new
from cantorval.verify import (
    SUITES,
    VerifyConfig,
    check_c1,
    check_coverage,
    check_gap_integral,
    check_holder,
    check_image_gaps,
    check_measure,
    check_prop2,
    check_steinhaus,
    check_total_integral,
    run_all,
)

SMALL = VerifyConfig(depth=10, max_level=5, samples=150, grid=40, seed=42)


@pytest.fixture(scope="module")
def small_report(params_exact):
    return run_all(params_exact, SMALL)


class TestReportShape:
    def test_overall_and_names(self, small_report):
        assert small_report.overall is True
        assert [c.name for c in small_report.checks] == list(SUITES)
        assert all(c.passed for c in small_report.checks)

    def test_json_layout(self, small_report):
        doc = json.loads(small_report.to_json_str())
        assert set(doc) == {"params", "seed", "checks", "overall",
                            "wallTimeMs"}
        assert doc["overall"] == "pass"
        assert doc["seed"] == 42
        assert doc["params"]["alpha"] == "1/2"
        assert doc["params"]["mode"] == "exact"
        for entry in doc["checks"]:
            assert set(entry) == {"name", "status", "samples", "worstMetric",
                                  "details"}
            assert entry["status"] == "pass"
            assert entry["samples"] > 0

    def test_wall_time_recorded(self, small_report):
        assert small_report.wall_time_ms >= 0


class TestDeterminism:
    def test_repeat_runs_agree_exactly(self, params_exact):
        a = run_all(params_exact, SMALL).to_json()
        b = run_all(params_exact, SMALL).to_json()
        a.pop("wallTimeMs")
        b.pop("wallTimeMs")
        assert a == b

    def test_float_repeat_runs_agree(self, params_quarter):
        a = run_all(params_quarter, SMALL).to_json()
        b = run_all(params_quarter, SMALL).to_json()
        a.pop("wallTimeMs")
        b.pop("wallTimeMs")
        assert a == b

    def test_seed_changes_samples_not_verdict(self, params_exact):
        alt = VerifyConfig(depth=10, max_level=5, samples=150, grid=40,
                           seed=7)
        r = run_all(params_exact, alt)
        assert r.overall is True


class TestFloatModes:
    def test_quarter_passes(self, params_quarter):
        r = run_all(params_quarter, SMALL)
        assert r.overall is True

    def test_eleven_twentieths_passes(self, params_eleven):
        r = run_all(params_eleven, SMALL)
        assert r.overall is True

    def test_tight_constants_track_two_to_the_one_plus_alpha(
            self, params_exact, params_quarter, params_eleven):
        for p, expect in ((params_exact, 2 ** 1.5),
                          (params_quarter, 2 ** 1.25),
                          (params_eleven, 2 ** 1.55)):
            r = check_holder(p, samples=400, seed=42, max_level=5)
            assert r.passed
            assert abs(float(r.details["tightConstant"]) - expect) < 1e-3
            assert r.details["exceedsTheoreticalTight"] is False


class TestNegativeControls:
    def test_inflated_tent_breaks_gap_integral(self):
        crooked = params_new(Fraction(1, 2), tent_coefficient=Fraction(5))
        r = check_gap_integral(crooked, max_level=4)
        assert not r.passed

    def test_inflated_tent_breaks_total_integral(self):
        crooked = params_new(Fraction(1, 2), tent_coefficient=Fraction(5))
        r = check_total_integral(crooked, depth=12)
        assert not r.passed

    def test_failure_is_reported_not_raised(self):
        crooked = params_new(Fraction(1, 2), tent_coefficient=Fraction(5))
        doc = check_gap_integral(crooked, max_level=4).to_json()
        assert doc["status"] == "fail"
        assert doc["details"]["failures"]


class TestIndividualChecks:
    def test_gap_integral(self, params_exact):
        r = check_gap_integral(params_exact, max_level=5)
        assert r.passed
        assert float(r.worst) <= 1e-6

    def test_total_integral(self, params_exact):
        assert check_total_integral(params_exact, depth=14).passed

    def test_c1(self, params_exact):
        assert check_c1(params_exact, samples=150, seed=42,
                        max_level=5).passed

    def test_image_gaps(self, params_exact):
        r = check_image_gaps(params_exact, max_level=5)
        assert r.passed
        assert r.samples == 2**5 - 1

    def test_coverage(self, params_exact):
        assert check_coverage(params_exact, grid=40, depth=10).passed

    def test_measure(self, params_exact):
        assert check_measure(params_exact, depth=20).passed

    def test_steinhaus(self, params_exact):
        assert check_steinhaus(params_exact, samples=120, seed=42).passed

    def test_prop2(self, params_exact):
        r = check_prop2(params_exact, samples=40, seed=42, depths=(4, 8))
        assert r.passed
        assert float(r.worst) <= 1.0

    def test_suite_registry_is_complete(self):
        assert set(SUITES) == {
            "gap_integral", "total_integral", "holder", "c1", "image_gaps",
            "coverage", "measure", "steinhaus", "prop2",
        }
