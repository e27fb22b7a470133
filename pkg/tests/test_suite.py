# Corpus runner: proportions, thresholds and report assembly

# region imports
import json
from unittest.mock import patch

import numpy as np
import pytest

from src.bitio import BitStream
from src.generators import SplitMix64Generator, build_generator, reference_spec
from src.models import GeneratorName
from src.sts import p_value_uniformity, proportion_threshold, run_suite, run_suite_on_streams
import src.sts.suite
from src.sts.registry import run_test
from src.sts.models import SuiteReport
# endregion

FAST_FAMILIES = ["frequency", "block_frequency", "cumulative_sums", "runs", "longest_run", "fft"]


class TestProportionThreshold:
    def test_reference_values(self):
        assert proportion_threshold(0.01, 100) == pytest.approx(0.96015, abs=1e-5)
        assert proportion_threshold(0.5, 100) == pytest.approx(0.35)

    def test_large_corpus_limit(self):
        assert proportion_threshold(0.01, 10 ** 12) == pytest.approx(0.99, abs=1e-6)

    def test_rejects_empty_corpus(self):
        with pytest.raises(ValueError):
            proportion_threshold(0.01, 0)


class TestUniformity:
    def test_evenly_spread_p_values(self):
        p_values = [(i + 0.5) / 100 for i in range(100)]
        assert p_value_uniformity(p_values) == pytest.approx(1.0)

    def test_clustered_p_values(self):
        # all 100 in one bin: chi2 = 900
        assert p_value_uniformity([0.05] * 100) < 1e-100

    def test_one_is_in_the_last_bin(self):
        p_values = [0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 1.0]
        assert p_value_uniformity(p_values) == pytest.approx(1.0)

    def test_needs_p_values(self):
        with pytest.raises(ValueError):
            p_value_uniformity([])


class TestRunSuite:
    def test_alpha_zero_passes_everything(self):
        report = run_suite(SplitMix64Generator(1), 2, 5000, alpha=0.0)
        assert report.average_passing_rate == 1.0
        assert report.failing_families == []

    def test_single_sequence(self):
        report = run_suite(SplitMix64Generator(2), 1, 5000, families=FAST_FAMILIES)
        assert report.corpus.sequences == 1
        assert report.threshold == pytest.approx(proportion_threshold(0.01, 1))
        for subtest in report.subtests():
            assert subtest.applicable_count == 1
            assert subtest.proportion in (0.0, 1.0)

    def test_generator_and_stream_runs_match(self):
        generator = build_generator(reference_spec(GeneratorName.DYNAMICAL))
        from_generator = run_suite(generator, 3, 4000, families=FAST_FAMILIES)
        generator.reset()
        streams = [generator.fill(4000) for _ in range(3)]
        from_streams = run_suite_on_streams(streams, families=FAST_FAMILIES)
        assert from_generator.body_json() == from_streams.body_json()

    def test_worker_pool_gives_same_report(self):
        streams = SplitMix64Generator(3).fill(4 * 3000).split(3000, 4)
        serial = run_suite_on_streams(streams, families=FAST_FAMILIES, jobs=1)
        parallel = run_suite_on_streams(streams, families=FAST_FAMILIES, jobs=2)
        assert serial.body_json() == parallel.body_json()

    def test_inapplicable_results_are_noted_and_excluded(self):
        report = run_suite(SplitMix64Generator(4), 2, 2000, families=["frequency", "universal"])
        universal = report.family("universal")
        assert universal.proportion is None
        assert universal.subtests[0].applicable_count == 0
        assert {(n.sequence, n.test) for n in report.notes} == {(0, "universal"), (1, "universal")}
        assert report.average_passing_rate == report.family("frequency").proportion

    def test_biased_corpus_fails(self):
        zeros = [BitStream(np.zeros(2000, dtype=np.uint8)) for _ in range(3)]
        report = run_suite_on_streams(zeros, families=["frequency", "runs"])
        assert report.average_passing_rate == 0.0
        assert report.failing_families == ["frequency", "runs"]
        assert report.families_below_threshold() == ["frequency", "runs"]
        # the runs gate is noted but still counted
        assert report.family("runs").subtests[0].applicable_count == 3
        assert len(report.notes) == 3

    def test_full_registry_subtest_count(self):
        report = run_suite(SplitMix64Generator(5), 1, 2000)
        assert len(report.subtests()) == 188
        assert len(report.families) == 15

    def test_report_json_shape(self):
        report = run_suite(SplitMix64Generator(6), 1, 1000, families=["frequency"])
        data = json.loads(report.to_json())
        assert "averagePassingRate" in data
        assert "familyAveragePassingRate" in data
        subtest = data["families"][0]["subtests"][0]
        assert set(subtest) >= {"id", "proportion", "applicable_count", "passedCount", "belowThreshold"}
        assert SuiteReport.model_validate_json(report.to_json()).body_json() == report.body_json()

    def test_corpus_validation(self):
        with pytest.raises(ValueError):
            run_suite_on_streams([])
        with pytest.raises(ValueError):
            run_suite_on_streams([BitStream.from_string("1" * 200), BitStream.from_string("1" * 100)])
        with pytest.raises(ValueError):
            run_suite(SplitMix64Generator(1), 0, 1000)
        with pytest.raises(ValueError, match="unknown test family"):
            run_suite(SplitMix64Generator(1), 1, 1000, families=["frequency", "nope"])

    def test_family_error_is_recorded_per_sequence(self, caplog):
        def fft_breaks(name, bits, params=None, alpha=0.01):
            if name == "fft":
                raise FloatingPointError("overflow in transform")
            return run_test(name, bits, params, alpha)

        streams = SplitMix64Generator(8).fill(3 * 2000).split(2000, 3)
        with patch.object(src.sts.suite, "run_test", side_effect=fft_breaks):
            report = run_suite_on_streams(streams, families=["frequency", "fft"])
        assert report.family("frequency").subtests[0].applicable_count == 3
        assert report.family("fft").proportion is None
        assert [(n.sequence, n.test) for n in report.notes] == [(0, "fft"), (1, "fft"), (2, "fft")]
        assert all("FloatingPointError" in n.reason for n in report.notes)
        assert "fft failed" in caplog.text

    def test_uniformity_is_reported(self):
        report = run_suite(SplitMix64Generator(9), 10, 1000, families=["frequency"])
        subtest = report.family("frequency").subtests[0]
        assert 0.0 <= subtest.uniformity <= 1.0
        assert "uniformity" in json.loads(report.to_json())["families"][0]["subtests"][0]

    def test_metrics_are_counted(self, metrics):
        run_suite(SplitMix64Generator(7), 2, 1000, families=["frequency", "universal"])
        counters = metrics.get_metrics()
        assert counters["sequences_generated"] == 2
        assert counters["sequences_tested"] == 2
        assert counters["inapplicable_results"] == 2
        assert counters["suites_completed"] == 1


@pytest.mark.slow
class TestCalibration:
    """Full-size corpora; minutes per generator."""

    def test_splitmix_reference_corpus(self):
        report = run_suite(build_generator(reference_spec(GeneratorName.SPLITMIX64)), 100, 1_000_000, jobs=4)
        assert report.average_passing_rate >= 0.97
        assert not report.failing_families
        assert report.families_below_threshold() == []
        for family in report.families:
            assert family.proportion >= report.threshold, family.name
            if len(family.subtests) == 1:
                assert family.subtests[0].uniformity >= 1e-4, family.name

    def test_dynamical_reference_corpus(self):
        report = run_suite(build_generator(reference_spec(GeneratorName.DYNAMICAL)), 100, 1_000_000, jobs=4)
        assert report.average_passing_rate >= 0.97

    def test_lfsr_fails_linear_families(self):
        report = run_suite(build_generator(reference_spec(GeneratorName.LFSR32)), 20, 1_000_000,
                           families=["rank", "linear_complexity"], jobs=4)
        assert report.failing_families == ["rank", "linear_complexity"]
