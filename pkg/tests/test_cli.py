# End-to-end CLI runs: exit codes, files and manifests

# region imports
import json

import pytest

from src.cli import EXIT_GATE, EXIT_IO, EXIT_OK, EXIT_USAGE, main
from src.generators import REFERENCE_MASTER_SEED, build_generator, reference_spec
from src.models import GeneratorName
# endregion

FAST = "frequency,block_frequency,cumulative_sums,runs,longest_run,fft"


# region helpers
def body(path):
    data = json.loads(path.read_text())
    data.pop("manifest")
    return data


def write_seed(tmp_path, **fields):
    path = tmp_path / "seed.json"
    path.write_text(json.dumps(fields))
    return str(path)
# endregion


class TestGen:
    def test_ascii_output(self, tmp_path, capsys):
        out = tmp_path / "bits.txt"
        code = main(["gen", "--generator", "dynamical", "--count", "8", "--out", str(out)])
        assert code == EXIT_OK
        text = out.read_text()
        assert len(text) == 8 and set(text) <= {"0", "1"}
        manifest = json.loads(capsys.readouterr().out)
        assert manifest["command"] == "gen"
        assert manifest["generator"]["seed"]["x0"].startswith("0x")
        assert manifest["outputs"] == [str(out)]

    def test_default_seed_is_reference(self, tmp_path):
        out = tmp_path / "bits.txt"
        main(["gen", "--generator", "logistic64", "--count", "256", "--out", str(out)])
        expected = build_generator(reference_spec(GeneratorName.LOGISTIC64)).fill(256).to_ascii()
        assert out.read_text() == expected

    def test_binary_and_ascii_runs_decode_identically(self, tmp_path):
        for fmt in ("bin", "ascii"):
            args = ["gen", "--generator", "lfsr32", "--count", "200000", "--out", str(tmp_path / fmt),
                    "--format", fmt]
            assert main(args) == EXIT_OK
        from src.bitio import read_bits
        from src.models import BitFormat
        assert read_bits(tmp_path / "bin", BitFormat.BIN) == read_bits(tmp_path / "ascii", BitFormat.ASCII)

    def test_seed_file_and_override(self, tmp_path):
        seed = write_seed(tmp_path, masterSeed="0x1")
        main(["gen", "--generator", "glibc", "--seed-file", seed, "--count", "64", "--out", str(tmp_path / "a")])
        main(["gen", "--generator", "glibc", "--master-seed", "1", "--count", "64", "--out", str(tmp_path / "b")])
        assert (tmp_path / "a").read_text() == (tmp_path / "b").read_text()

    def test_glibc_defaults_to_word32_packing(self, tmp_path, capsys):
        out = tmp_path / "glibc.txt"
        main(["gen", "--generator", "glibc", "--count", "320", "--out", str(out)])
        assert json.loads(capsys.readouterr().out)["generator"]["glibcMode"] == "word32"
        assert set(out.read_text()[::32]) == {"0"}

        main(["gen", "--generator", "glibc", "--glibc-mode", "all31", "--count", "320", "--out", str(out)])
        assert json.loads(capsys.readouterr().out)["generator"]["glibcMode"] == "all31"

    def test_zero_x0_is_usage_error(self, tmp_path, caplog):
        seed = write_seed(tmp_path, wordLength=32, x0="0x0", gammas=["0xf0000000"])
        code = main(["gen", "--generator", "dynamical", "--seed-file", seed, "--count", "8",
                     "--out", str(tmp_path / "x")])
        assert code == EXIT_USAGE
        assert "x0" in caplog.text

    def test_gamma_outside_range_is_usage_error(self, tmp_path):
        seed = write_seed(tmp_path, wordLength=32, x0="0x1234", gammas=["0x80000000"])
        assert main(["gen", "--generator", "dynamical", "--seed-file", seed, "--count", "8",
                     "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_zero_lfsr_state_is_usage_error(self, tmp_path):
        assert main(["gen", "--generator", "lfsr32", "--state", "0", "--count", "8",
                     "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_bad_count(self, tmp_path):
        assert main(["gen", "--generator", "lfsr32", "--count", "0", "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_unwritable_path_is_io_error(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(["gen", "--generator", "lfsr32", "--count", "8", "--out", str(blocker / "bits.txt")]) == EXIT_IO

    def test_unknown_generator(self, tmp_path):
        assert main(["gen", "--generator", "mt19937", "--count", "8", "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_no_command(self):
        assert main([]) == EXIT_USAGE


class TestNist:
    def test_all_zeros_file_fails_gate(self, tmp_path):
        data = tmp_path / "zeros.txt"
        data.write_text("0" * 2000)
        report = tmp_path / "report.json"
        code = main(["nist", "--input", str(data), "--length", "2000", "--sequences", "1",
                     "--report", str(report)])
        assert code == EXIT_GATE
        document = json.loads(report.read_text())
        assert document["averagePassingRate"] < 0.96
        assert "frequency" in document["failingFamilies"]

    def test_pass_floor_flag(self, tmp_path):
        data = tmp_path / "zeros.txt"
        data.write_text("0" * 2000)
        code = main(["nist", "--input", str(data), "--length", "2000", "--report", str(tmp_path / "r.json"),
                     "--pass-floor", "0"])
        assert code == EXIT_OK

    def test_file_and_generator_reports_match(self, tmp_path):
        bits = tmp_path / "bits.bin"
        main(["gen", "--generator", "dynamical", "--count", "12000", "--out", str(bits), "--format", "bin"])
        from_file = tmp_path / "file.json"
        from_generator = tmp_path / "gen.json"
        common = ["--length", "4000", "--sequences", "3", "--families", FAST, "--pass-floor", "0"]
        assert main(["nist", "--input", str(bits), "--format", "bin", "--report", str(from_file)] + common) == 0
        assert main(["nist", "--generator", "dynamical", "--report", str(from_generator)] + common) == 0
        assert body(from_file) == body(from_generator)

    def test_replay_regenerates_report(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        args = ["nist", "--generator", "splitmix64", "--master-seed", "0x99", "--length", "5000",
                "--sequences", "2", "--families", FAST, "--report", str(report), "--pass-floor", "0"]
        assert main(args) == EXIT_OK
        manifest = json.loads(report.read_text())["manifest"]
        assert manifest["generator"]["state"] == "0x99"
        assert manifest["config"]["families"] == FAST.split(",")

        assert main(["nist", "--replay", str(report), "--pass-floor", "0"]) == EXIT_OK
        replay = tmp_path / "report.replay.json"
        assert body(replay) == body(report)
        assert "matches" in capsys.readouterr().out

    def test_sequences_default_from_input_size(self, tmp_path):
        data = tmp_path / "bits.txt"
        main(["gen", "--generator", "splitmix64", "--count", "3500", "--out", str(data)])
        report = tmp_path / "r.json"
        main(["nist", "--input", str(data), "--length", "1000", "--families", "frequency",
              "--report", str(report), "--pass-floor", "0"])
        assert json.loads(report.read_text())["corpus"]["sequences"] == 3

    def test_malformed_input_is_io_error(self, tmp_path, caplog):
        data = tmp_path / "bad.txt"
        data.write_text("0101x")
        code = main(["nist", "--input", str(data), "--length", "4", "--report", str(tmp_path / "r.json")])
        assert code == EXIT_IO
        assert "offset 4" in caplog.text

    def test_missing_input_is_io_error(self, tmp_path):
        assert main(["nist", "--input", str(tmp_path / "none.txt"), "--length", "100", "--sequences", "1",
                     "--report", str(tmp_path / "r.json")]) == EXIT_IO

    def test_needs_exactly_one_source(self, tmp_path):
        assert main(["nist", "--report", str(tmp_path / "r.json")]) == EXIT_USAGE

    def test_needs_report(self):
        assert main(["nist", "--generator", "lfsr32"]) == EXIT_USAGE

    def test_short_input(self, tmp_path):
        data = tmp_path / "bits.txt"
        data.write_text("01" * 100)
        assert main(["nist", "--input", str(data), "--length", "1000", "--report", str(tmp_path / "r.json")]) \
            == EXIT_USAGE

    def test_unknown_family(self, tmp_path):
        assert main(["nist", "--generator", "lfsr32", "--length", "1000", "--sequences", "1",
                     "--families", "frequency,bogus", "--report", str(tmp_path / "r.json")]) == EXIT_USAGE


class TestPeriodAndReproduce:
    def test_period_report(self, tmp_path, capsys):
        report = tmp_path / "period.json"
        assert main(["period", "--word-length", "10", "--trials", "20", "--report", str(report)]) == EXIT_OK
        data = json.loads(report.read_text())
        assert data["trials"] == 20
        assert data["masterSeed"] == f"{REFERENCE_MASTER_SEED:#x}"
        assert data["manifest"]["command"] == "period"
        assert "median rho" in capsys.readouterr().out

    def test_period_word_length_out_of_range(self):
        assert main(["period", "--word-length", "40"]) == EXIT_USAGE

    def test_reproduce_dry_run(self, tmp_path, capsys):
        assert main(["reproduce", "all", "--dry-run", "--workdir", str(tmp_path)]) == EXIT_OK
        manifests = json.loads(capsys.readouterr().out)
        assert [m["generator"]["name"] for m in manifests] == [
            "dynamical", "logistic64", "logistic32", "lfsr32", "glibc",
        ]
        assert all(m["config"]["sequences"] == 100 and m["config"]["length"] == 1_000_000 for m in manifests)
        assert not any(tmp_path.iterdir())

    def test_reproduce_unknown_target(self):
        assert main(["reproduce", "table9", "--dry-run"]) == EXIT_USAGE
