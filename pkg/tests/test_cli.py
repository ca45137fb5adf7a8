"""End-to-end CLI: generation, analysis, robustness scan, error reporting."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from hosr import __version__
from hosr.billiard import BilliardLevels, circular_billiard_levels
from hosr.cli import main
from hosr.estimator import scan_beta
from hosr.levelio import parse_level_file, write_level_file
from hosr.spectra import spacing_ratios


@pytest.fixture()
def runner():
    return CliRunner()


def invoke_ok(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


class TestGenerate:
    def test_goe_blocks(self, runner, tmp_path):
        out = tmp_path / "goe"
        invoke_ok(runner, [
            "generate", "goe", "--dim", "200", "--blocks", "2",
            "--seed", "3", "--outdir", str(out),
        ])
        lf = parse_level_file(out / "levels.txt")
        assert len(lf.levels) == 400
        meta = json.loads((out / "meta.json").read_text())
        assert meta["kind"] == "goe-tridiagonal"
        assert meta["blocks"] == 2
        assert meta["n_levels"] == 400
        assert meta["version"] == __version__

    def test_goe_dense_variant(self, runner, tmp_path):
        out = tmp_path / "dense"
        invoke_ok(runner, [
            "generate", "goe", "--dim", "60", "--dense", "--outdir", str(out),
        ])
        assert json.loads((out / "meta.json").read_text())["kind"] == "goe-dense"

    def test_poisson_count(self, runner, tmp_path):
        out = tmp_path / "poisson"
        invoke_ok(runner, [
            "generate", "poisson", "--n", "500", "--outdir", str(out),
        ])
        assert len(parse_level_file(out / "levels.txt").levels) == 500

    def test_spin_chain_sector_size(self, runner, tmp_path):
        out = tmp_path / "chain"
        invoke_ok(runner, [
            "generate", "spin-chain", "--sites", "10", "--outdir", str(out),
        ])
        assert len(parse_level_file(out / "levels.txt").levels) == 252
        meta = json.loads((out / "meta.json").read_text())
        assert meta["n_up"] == 5

    def test_circle_billiard_matches_library(self, runner, tmp_path):
        out = tmp_path / "disk"
        invoke_ok(runner, [
            "generate", "circle-billiard", "--n-max", "3",
            "--zeros-per-order", "10", "--outdir", str(out),
        ])
        direct = circular_billiard_levels(BilliardLevels(3, 10))
        assert np.array_equal(parse_level_file(out / "levels.txt").levels, direct.levels)

    def test_level_file_header_carries_label(self, runner, tmp_path):
        out = tmp_path / "goe"
        invoke_ok(runner, [
            "generate", "goe", "--dim", "100", "--outdir", str(out),
        ])
        first = (out / "levels.txt").read_text().splitlines()[0]
        assert first.startswith("# goe-tridiagonal")

    def test_generation_determinism(self, runner, tmp_path):
        for sub in ("a", "b"):
            invoke_ok(runner, [
                "generate", "goe", "--dim", "150", "--seed", "7",
                "--outdir", str(tmp_path / sub),
            ])
        assert (tmp_path / "a" / "levels.txt").read_bytes() == \
               (tmp_path / "b" / "levels.txt").read_bytes()


@pytest.fixture(scope="module")
def poisson_file(tmp_path_factory):
    root = tmp_path_factory.mktemp("poisson")
    CliRunner().invoke(main, [
        "generate", "poisson", "--n", "3000", "--seed", "2",
        "--outdir", str(root),
    ], catch_exceptions=False)
    return root / "levels.txt"


@pytest.fixture(scope="module")
def goe_file(tmp_path_factory):
    root = tmp_path_factory.mktemp("goe")
    CliRunner().invoke(main, [
        "generate", "goe", "--dim", "600", "--seed", "4",
        "--outdir", str(root),
    ], catch_exceptions=False)
    return root / "levels.txt"


class TestAnalyze:
    def test_report_and_tables(self, runner, tmp_path, poisson_file):
        out = tmp_path / "run"
        result = invoke_ok(runner, [
            "analyze", "--input", str(poisson_file), "--k-max", "3",
            "--outdir", str(out),
        ])
        assert "verdict: Integrable" in result.output
        report = json.loads((out / "report.json").read_text())
        assert report["version"] == __version__
        assert report["verdict_kind"] == "integrable"
        assert report["verdict_sectors"] is None
        assert report["screen_passed"] is True
        assert report["n_levels"] == 3000
        assert report["config"]["k_max"] == 3
        assert report["config"]["grid"] == {"lo": 0.5, "hi": 8.0, "step": 0.1}
        assert len(report["per_k"]) == 3
        for k, row in enumerate(report["per_k"], start=1):
            assert row["k"] == k
            assert row["n_ratios"] == 3000 - 2 * k
            for key in ("beta_hat", "d_min", "d_min_mean", "ks_d", "ks_p",
                        "poisson_ks_d", "poisson_ks_p"):
                assert isinstance(row[key], float)
            assert (out / f"hist_k{k}.csv").exists()
            assert (out / f"dcurve_k{k}.csv").exists()

    def test_table_shapes(self, runner, tmp_path, poisson_file):
        out = tmp_path / "run"
        invoke_ok(runner, [
            "analyze", "--input", str(poisson_file), "--k-max", "2",
            "--bins", "40", "--outdir", str(out),
        ])
        hist = (out / "hist_k1.csv").read_text().splitlines()
        assert hist[0] == "bin_center,empirical_density,wigner_pdf_at_beta_hat,poisson_hosr_pdf"
        assert len(hist) == 41
        dcurve = (out / "dcurve_k2.csv").read_text().splitlines()
        assert dcurve[0] == "beta_prime,d"
        assert len(dcurve) == 77

    def test_byte_identical_reruns(self, runner, tmp_path, poisson_file):
        for sub in ("x", "y"):
            invoke_ok(runner, [
                "analyze", "--input", str(poisson_file), "--k-max", "2",
                "--outdir", str(tmp_path / sub),
            ])
        for name in ("report.json", "hist_k1.csv", "hist_k2.csv",
                     "dcurve_k1.csv", "dcurve_k2.csv"):
            assert (tmp_path / "x" / name).read_bytes() == \
                   (tmp_path / "y" / name).read_bytes()

    def test_matches_in_memory_scan(self, runner, tmp_path, poisson_file):
        out = tmp_path / "run"
        invoke_ok(runner, [
            "analyze", "--input", str(poisson_file), "--k-max", "2",
            "--outdir", str(out),
        ])
        report = json.loads((out / "report.json").read_text())
        spectrum = parse_level_file(poisson_file).spectrum
        for row in report["per_k"]:
            direct, _ = scan_beta(spacing_ratios(spectrum, row["k"]))
            assert row["beta_hat"] == direct

    def test_collapse_flag(self, runner, tmp_path):
        levels = np.repeat(np.sort(np.random.default_rng(0).standard_normal(300)), 2)
        src = tmp_path / "degenerate.txt"
        write_level_file(src, levels)
        out = tmp_path / "run"
        result = invoke_ok(runner, [
            "analyze", "--input", str(src), "--k-max", "2",
            "--collapse-degeneracies", "--outdir", str(out),
        ])
        assert "collapsed 300 degenerate levels" in result.output
        report = json.loads((out / "report.json").read_text())
        assert report["n_levels"] == 300
        assert report["config"]["collapse_degeneracies"] is True

    def test_custom_grid_respected(self, runner, tmp_path, poisson_file):
        out = tmp_path / "run"
        invoke_ok(runner, [
            "analyze", "--input", str(poisson_file), "--k-max", "1",
            "--grid-lo", "1.0", "--grid-hi", "2.0", "--grid-step", "0.5",
            "--outdir", str(out),
        ])
        dcurve = (out / "dcurve_k1.csv").read_text().splitlines()
        assert [line.split(",")[0] for line in dcurve[1:]] == ["1.0", "1.5", "2.0"]


class TestMissingLevelsCommand:
    def test_outputs(self, runner, tmp_path, goe_file):
        out = tmp_path / "run"
        invoke_ok(runner, [
            "missing-levels", "--input", str(goe_file),
            "--fractions", "0,0.2", "--trials", "3", "--outdir", str(out),
        ])
        lines = (out / "missing_levels.csv").read_text().splitlines()
        assert lines[0] == "fraction,mean_beta_hat,stddev_beta_hat"
        assert len(lines) == 3
        payload = json.loads((out / "missing_levels.json").read_text())
        assert payload["config"]["trials"] == 3
        assert [row["fraction"] for row in payload["rows"]] == [0.0, 0.2]

    def test_zero_fraction_equals_plain_scan(self, runner, tmp_path, goe_file):
        out = tmp_path / "run"
        invoke_ok(runner, [
            "missing-levels", "--input", str(goe_file),
            "--fractions", "0", "--trials", "2", "--outdir", str(out),
        ])
        payload = json.loads((out / "missing_levels.json").read_text())
        spectrum = parse_level_file(goe_file).spectrum
        direct, _ = scan_beta(spacing_ratios(spectrum, 2))
        assert payload["rows"][0]["mean_beta_hat"] == direct
        assert payload["rows"][0]["stddev_beta_hat"] == 0.0

    def test_reproducible(self, runner, tmp_path, goe_file):
        for sub in ("m", "n"):
            invoke_ok(runner, [
                "missing-levels", "--input", str(goe_file),
                "--fractions", "0.1", "--trials", "2", "--seed", "9",
                "--outdir", str(tmp_path / sub),
            ])
        assert (tmp_path / "m" / "missing_levels.csv").read_bytes() == \
               (tmp_path / "n" / "missing_levels.csv").read_bytes()


class TestErrorReporting:
    def test_missing_input_file(self, runner, tmp_path):
        result = runner.invoke(main, [
            "analyze", "--input", str(tmp_path / "absent.txt"),
            "--outdir", str(tmp_path),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: io:")

    def test_bad_grid(self, runner, tmp_path):
        f = tmp_path / "levels.txt"
        write_level_file(f, np.arange(100.0))
        result = runner.invoke(main, [
            "analyze", "--input", str(f), "--grid-step", "-1",
            "--outdir", str(tmp_path),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: config:")

    def test_spectrum_too_short_for_k(self, runner, tmp_path):
        f = tmp_path / "levels.txt"
        write_level_file(f, [1.0, 2.0, 3.0, 4.0])
        result = runner.invoke(main, [
            "analyze", "--input", str(f), "--k-max", "8",
            "--outdir", str(tmp_path),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: size:")

    def test_unparseable_level_file(self, runner, tmp_path):
        f = tmp_path / "levels.txt"
        f.write_text("1.0\nbroken\n2.0\n")
        result = runner.invoke(main, [
            "analyze", "--input", str(f), "--outdir", str(tmp_path),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: parse:")
        assert "line 2" in result.stderr

    def test_bad_fractions(self, runner, tmp_path):
        f = tmp_path / "levels.txt"
        write_level_file(f, np.arange(50.0))
        result = runner.invoke(main, [
            "missing-levels", "--input", str(f), "--fractions", "0,1.5",
            "--outdir", str(tmp_path),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: config:")

    def test_version_flag(self, runner):
        result = invoke_ok(runner, ["--version"])
        assert __version__ in result.output
