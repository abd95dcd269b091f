"""Command-line surface: exit codes, formats, determinism."""

import json

import numpy as np
import pytest

import prdcurves as pr
from prdcurves import fileio
from prdcurves.cli import cli_dispatch


def write_histogram(path, weights):
    path.write_text("\n".join(str(w) for w in weights) + "\n")


def run(*argv):
    return cli_dispatch(list(argv))


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert run("frobnicate") == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_required_argument(self, capsys):
        assert run("theoretical", "--max-precision", "1.0") == 1

    def test_missing_input_file_is_data_error(self, tmp_path, capsys):
        out = str(tmp_path / "c.json")
        assert run("exact", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"),
                   "--out", out) == 2

    def test_invalid_histogram_is_data_error(self, tmp_path, capsys):
        p = tmp_path / "p.csv"
        write_histogram(p, [0.5, 0.6])
        assert run("exact", str(p), str(p)) == 2


class TestExact:
    def test_identical_histograms_unit_precision(self, tmp_path):
        p = tmp_path / "p.csv"
        write_histogram(p, [0.25, 0.75])
        out = tmp_path / "c.json"
        assert run("exact", str(p), str(p), "--lambdas", "101",
                   "--out", str(out)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        i = int(np.abs(curve.lam - 1.0).argmin())
        assert curve.alpha[i] == pytest.approx(1.0)

    def test_endpoints_flag(self, tmp_path):
        p = tmp_path / "p.csv"
        q = tmp_path / "q.csv"
        write_histogram(p, [1.0, 0.0])
        write_histogram(q, [0.5, 0.5])
        out = tmp_path / "c.json"
        assert run("exact", str(p), str(q), "--lambdas", "11",
                   "--endpoints", "--out", str(out)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        assert len(curve.lam) == 13
        assert curve.alpha[-1] == 0.5  # alpha_inf = Q(supp P)
        assert curve.beta[0] == 1.0    # beta_0 = P(supp Q)

    def test_stdout_csv(self, tmp_path, capsys):
        p = tmp_path / "p.csv"
        write_histogram(p, [1.0])
        assert run("exact", str(p), str(p), "--lambdas", "3",
                   "--format", "csv") == 0
        out = capsys.readouterr().out
        assert out.startswith("lambda,alpha,beta\n")


class TestEstimate:
    @pytest.fixture()
    def feature_files(self, tmp_path):
        rng = np.random.default_rng(0)
        real = tmp_path / "real.prdf"
        fake = tmp_path / "fake.prdf"
        fileio.save_features(
            pr.SampleSet(rng.standard_normal((64, 2))), str(real))
        fileio.save_features(
            pr.SampleSet(rng.standard_normal((64, 2)) + 12.0), str(fake))
        return str(real), str(fake)

    def test_disjoint_blobs_and_artifacts(self, tmp_path, feature_files):
        real, fake = feature_files
        out = tmp_path / "c.json"
        scores = tmp_path / "scores.csv"
        model = tmp_path / "model.json"
        assert run("estimate", real, fake, "--lambdas", "11", "--epochs", "5",
                   "--members", "2", "--out", str(out),
                   "--emit-scores", str(scores),
                   "--emit-model", str(model)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        i = int(np.abs(curve.lam - 1.0).argmin())
        assert curve.alpha[i] <= 0.1
        s, u = fileio.load_scores(str(scores))
        assert s.size == 64 and set(np.unique(u)) <= {0, 1}
        loaded = pr.EnsembleModel.from_json(model.read_text())
        assert len(loaded.members) == 2

    def test_byte_identical_reruns(self, tmp_path, feature_files):
        real, fake = feature_files
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for out in (a, b):
            assert run("estimate", real, fake, "--lambdas", "11",
                       "--epochs", "3", "--members", "2", "--seed", "5",
                       "--out", str(out)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_timestamp_only_when_requested(self, tmp_path, feature_files,
                                           monkeypatch):
        real, fake = feature_files
        out = tmp_path / "c.json"
        assert run("estimate", real, fake, "--lambdas", "11", "--epochs", "3",
                   "--members", "1", "--out", str(out)) == 0
        assert "timestamp" not in json.loads(out.read_text())["meta"]
        monkeypatch.setenv("PRD_TIMESTAMP", "1")
        assert run("estimate", real, fake, "--lambdas", "11", "--epochs", "3",
                   "--members", "1", "--out", str(out)) == 0
        assert "timestamp" in json.loads(out.read_text())["meta"]


class TestOtherCommands:
    def test_cluster_baseline(self, tmp_path):
        rng = np.random.default_rng(1)
        real = tmp_path / "real.csv"
        fake = tmp_path / "fake.csv"
        pts = rng.standard_normal((40, 2))
        fileio.save_features(pr.SampleSet(pts), str(real), fmt="csv")
        fileio.save_features(pr.SampleSet(pts), str(fake), fmt="csv")
        out = tmp_path / "c.json"
        assert run("cluster-baseline", str(real), str(fake), "--clusters",
                   "4", "--lambdas", "11", "--out", str(out)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        i = int(np.abs(curve.lam - 1.0).argmin())
        assert curve.alpha[i] == pytest.approx(1.0)

    def test_roc(self, tmp_path):
        scores = tmp_path / "s.csv"
        fileio.save_scores(np.array([0.9, 0.1]), np.array([1, 0]),
                           str(scores))
        out = tmp_path / "roc.json"
        assert run("roc", str(scores), "--out", str(out)) == 0
        obj = json.loads(out.read_text())
        assert obj["fpr"] and obj["tpr"]

    def test_mcr(self, tmp_path):
        p = tmp_path / "p.csv"
        q = tmp_path / "q.csv"
        write_histogram(p, [0.5, 0.5])
        write_histogram(q, [0.9, 0.1])
        out = tmp_path / "m.csv"
        assert run("mcr", str(p), str(q), "--out", str(out),
                   "--format", "csv") == 0
        assert out.read_text().startswith("epsilon,delta\n")

    def test_theoretical(self, tmp_path):
        out = tmp_path / "t.json"
        assert run("theoretical", "--max-precision", "1.0", "--max-recall",
                   "0.6", "--lambdas", "11", "--out", str(out)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        assert np.max(curve.beta) == pytest.approx(0.6)


class TestSynthCommand:
    def test_class_subset_with_sidecar(self, tmp_path):
        real = tmp_path / "real.prdf"
        fake = tmp_path / "fake.prdf"
        assert run("synth", "class-subset", "--q", "3", "--per-class", "10",
                   "--out-real", str(real), "--out-fake", str(fake)) == 0
        sidecar = json.loads((tmp_path / "real.prdf.theory.json").read_text())
        assert sidecar["max_precision"] == 1.0
        assert sidecar["max_recall"] == 0.6
        loaded = fileio.load_features(str(real))
        assert loaded.features.shape == (50, 16)

    def test_disjoint_split_generator(self, tmp_path):
        real = tmp_path / "real.prdf"
        fake = tmp_path / "fake.prdf"
        assert run("synth", "disjoint-split", "--clusters", "4",
                   "--per-side", "8", "--out-real", str(real),
                   "--out-fake", str(fake)) == 0
        sidecar = json.loads((tmp_path / "real.prdf.theory.json").read_text())
        assert sidecar["max_precision"] == 0.0

    def test_end_to_end_subset_estimate(self, tmp_path):
        # spec example: q=3 data, then estimate; alpha at lam=5/3 stays
        # near the rectangle top within sampling tolerance
        real = tmp_path / "real.prdf"
        fake = tmp_path / "fake.prdf"
        assert run("synth", "class-subset", "--q", "3", "--per-class", "400",
                   "--out-real", str(real), "--out-fake", str(fake)) == 0
        out = tmp_path / "c.json"
        assert run("estimate", str(real), str(fake), "--out", str(out)) == 0
        curve = fileio.load_curve_json(str(out)).curve
        i = int(np.abs(curve.lam - 5.0 / 3.0).argmin())
        assert curve.alpha[i] >= 0.95
