"""CLI subcommands, exit codes, and output reproducibility."""

import json

import pytest

from contraplot import Direction, ThresholdSpec, analyze_dataset, bundled_dataset, threshold_test
from contraplot.cli import main

K = ["--samples", "10000", "--seed", "42"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_json_output(self, capsys):
        code, out, err = run(capsys, "analyze", "--dataset", "tpc", *K, "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["dataset"] == "tpc"
        assert payload["seed"] == 42 and payload["samples"] == 10000
        assert len(payload["entries"]) == 35
        entry = payload["entries"][0]
        assert {"id", "lo", "hi", "median", "delta_l", "rank", "alpha_dm",
                "metadata"} == set(entry)

    def test_rerun_byte_identical(self, capsys):
        _, out1, _ = run(capsys, "analyze", "--dataset", "tpc", *K)
        _, out2, _ = run(capsys, "analyze", "--dataset", "tpc", *K)
        assert out1 == out2

    def test_worker_count_does_not_change_output(self, tmp_path, capsys):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "analyze", "--dataset", "tpc", *K, "--workers", "1", "--output", str(f1))
        run(capsys, "analyze", "--dataset", "tpc", *K, "--workers", "3", "--output", str(f2))
        assert f1.read_bytes() == f2.read_bytes()

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "analyze", "--dataset", "tpc", *K, "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 36
        assert lines[0].startswith("id,rank,lo,hi,median,delta_l")

    def test_sign_view_filter(self, capsys):
        code, out, _ = run(capsys, "analyze", "--dataset", "tpc", *K, "--sign", "decrease")
        entries = json.loads(out)["entries"]
        assert all(e["delta_l"] <= 0 for e in entries)

    def test_samples_below_minimum_exits_2(self, capsys):
        code, _, err = run(capsys, "analyze", "--dataset", "tpc",
                           "--samples", "10", "--seed", "1")
        assert code == 2
        assert "below minimum" in err

    def test_unknown_dataset_exits_2(self, capsys):
        code, _, err = run(capsys, "analyze", "--dataset", "xyz", *K)
        assert code == 2
        assert "unknown dataset" in err

    def test_missing_input_file_exits_1(self, capsys):
        code, _, err = run(capsys, "analyze", "--input", "/nonexistent/x.csv", *K)
        assert code == 1
        assert "I/O error" in err

    def test_random_seed_drawn_and_printed(self, capsys):
        code, out, err = run(capsys, "analyze", "--dataset", "tpc", "--samples", "1000")
        assert code == 0
        assert "seed:" in err
        printed = int(err.split("seed:")[1].split()[0])
        assert json.loads(out)["seed"] == printed

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        code, out, _ = run(capsys, "analyze", "--dataset", "tpc", *K,
                           "--output", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["dataset"] == "tpc"


class TestTest:
    def test_matches_library_threshold_test(self, capsys):
        code, out, _ = run(capsys, "test", "--dataset", "tpc", *K,
                           "--sign", "decrease", "--threshold", "-0.10")
        assert code == 0
        got = [int(line.split("\t")[0]) for line in out.strip().splitlines()]
        ds = bundled_dataset("tpc")
        result = analyze_dataset(ds, samples=10000, seed=42, sign_view="decrease")
        expected = [e.record.id for e in
                    threshold_test(result, ThresholdSpec(-0.10, Direction.DECREASE))]
        assert got == expected

    def test_zero_threshold_exits_2(self, capsys):
        code, _, err = run(capsys, "test", "--dataset", "tpc", *K,
                           "--sign", "decrease", "--threshold", "0")
        assert code == 2

    def test_sign_threshold_mismatch_exits_2(self, capsys):
        code, _, err = run(capsys, "test", "--dataset", "tpc", *K,
                           "--sign", "decrease", "--threshold", "0.5")
        assert code == 2


class TestPlot:
    def test_svg_written_with_gold_line(self, tmp_path, capsys):
        target = tmp_path / "plot.svg"
        code, _, _ = run(capsys, "plot", "--dataset", "plaque", *K,
                         "--sign", "decrease", "--threshold", "-0.20",
                         "--output", str(target))
        assert code == 0
        svg = target.read_text()
        assert svg.startswith("<?xml")
        assert 'class="threshold-line"' in svg
        assert 'class="zero-line"' in svg


class TestValidate:
    def test_bundled_tpc_ok(self, capsys):
        code, out, _ = run(capsys, "validate", "--dataset", "tpc")
        assert code == 0
        assert "OK: 35 records" in out

    def test_invalid_csv_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,study\n1,x\n")
        code, _, err = run(capsys, "validate", "--input", str(bad))
        assert code == 2
        assert "missing column" in err


class TestParserContract:
    def test_dataset_and_input_mutually_exclusive(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["analyze", "--dataset", "tpc", "--input", "x.csv"])
        assert exc.value.code == 2
