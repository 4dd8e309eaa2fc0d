import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from trelkit.cli import main
from trelkit.formats import (
    parse_judgments,
    parse_pool,
    parse_run,
    parse_trel,
    write_trel,
)
from trelkit.measures import MeasureKind, score_matrix
from trelkit.synth import FixtureConfig, generate_fixture
from trelkit.trels import sample_trels, trel_space, union_trel


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixture")
    config = FixtureConfig(
        n_topics=6,
        n_noise_topics=2,
        n_single_topics=1,
        docs_per_topic=60,
        docs_per_noise_topic=30,
        n_cross_topic_docs=4,
        n_pooling_runs=3,
        pooling_run_length=40,
        n_system_groups=3,
        modules_per_group=1,
        system_run_length=40,
        n_offtopic_candidates=8,
        pool_k=24,
        pool_k_g=4,
        pool_k_n=4,
        seed=9,
    )
    generate_fixture(config).write(root)
    return root


def invoke(*args):
    runner = CliRunner()
    result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


class TestSynthCommand:
    def test_deterministic_directories(self, tmp_path):
        invoke("synth", "--seed", 7, "--topics", 4, "--output", tmp_path / "a")
        invoke("synth", "--seed", 7, "--topics", 4, "--output", tmp_path / "b")
        files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
        assert files_a == files_b
        for rel in files_a:
            assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()

    def test_seed_echoed(self, tmp_path):
        result = invoke("synth", "--seed", 3, "--topics", 4, "--output", tmp_path / "x")
        assert "seed: 3" in result.output


class TestPoolCommands:
    def test_pool_make_matches_library(self, fixture_dir, tmp_path):
        invoke(
            "pool", "make",
            "--runs", fixture_dir / "runs" / "pooling",
            "--manifest", fixture_dir / "manifest.csv",
            "--search-run", fixture_dir / "runs" / "search" / "google.run",
            "--k", 24, "--kg", 4, "--kn", 4, "--seed", 9,
            "--output", tmp_path,
        )
        # seeds match the fixture generator, so pools must be identical
        expected = parse_pool((fixture_dir / "pools" / "001.pool").read_bytes())
        got = parse_pool((tmp_path / "pools" / "001.pool").read_bytes())
        assert got == expected
        stats = (tmp_path / "pool_stats.csv").read_text()
        assert stats.startswith("topic_id,pool_size,pool_depth")

    def test_pool_growth_nested(self, fixture_dir, tmp_path):
        invoke(
            "pool", "growth",
            "--runs", fixture_dir / "runs" / "pooling",
            "--manifest", fixture_dir / "manifest.csv",
            "--search-run", fixture_dir / "runs" / "search" / "google.run",
            "--sizes", "10,16,24", "--kg", 4, "--kn", 4, "--seed", 9,
            "--output", tmp_path,
        )
        pools = [
            parse_pool((tmp_path / "growth" / "001" / f"{s:04d}.pool").read_bytes())
            for s in (10, 16, 24)
        ]
        assert pools[0].doc_ids() <= pools[1].doc_ids() <= pools[2].doc_ids()


class TestTrelCommands:
    def test_sample_exhaustive(self, tmp_path):
        lines = []
        for topic, docs in {"001": ["a", "b"], "002": ["c"]}.items():
            for d in docs:
                lines.append(f"{topic} a1 {d} 1")
                lines.append(f"{topic} a2 {d} 0")
        judgments = tmp_path / "j.txt"
        judgments.write_text("\n".join(lines) + "\n")
        invoke("trel", "sample", "--judgments", judgments, "-n", 4, "--seed", 0,
               "--output", tmp_path)
        files = sorted((tmp_path / "trels").glob("*.trel"))
        assert len(files) == 4

    def test_union_and_intersect_match_library(self, fixture_dir, tmp_path):
        invoke("trel", "union", "--judgments", fixture_dir / "judgments.txt",
               "--output", tmp_path / "u.trel")
        invoke("trel", "intersect", "--judgments", fixture_dir / "judgments.txt",
               "--output", tmp_path / "i.trel")
        sets = parse_judgments((fixture_dir / "judgments.txt").read_bytes())
        assert parse_trel((tmp_path / "u.trel").read_bytes()) == union_trel(sets)
        levels_u = parse_trel((tmp_path / "u.trel").read_bytes()).topic_levels
        levels_i = parse_trel((tmp_path / "i.trel").read_bytes()).topic_levels
        for t, docs in levels_i.items():
            for d, lv in docs.items():
                assert lv <= levels_u[t][d]


class TestEvalCommand:
    def test_matches_direct_library_call(self, fixture_dir, tmp_path):
        sets = parse_judgments((fixture_dir / "judgments.txt").read_bytes())
        trel = union_trel(sets)
        (tmp_path / "u.trel").write_bytes(write_trel(trel))
        invoke(
            "eval",
            "--runs", fixture_dir / "runs" / "systems",
            "--trel", tmp_path / "u.trel",
            "--measure", "ndcg@10",
            "--output", tmp_path / "scores.csv",
        )
        runs = [
            parse_run(p.read_bytes())
            for p in sorted((fixture_dir / "runs" / "systems").glob("*.run"))
        ]
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            matrix = score_matrix(runs, trel, trel.topics(), MeasureKind("ndcg", 10))
        assert (tmp_path / "scores.csv").read_text() == matrix.to_csv()

    def test_curve_plot_data(self, fixture_dir, tmp_path):
        sets = parse_judgments((fixture_dir / "judgments.txt").read_bytes())
        trel = union_trel(sets)
        (tmp_path / "u.trel").write_bytes(write_trel(trel))
        invoke(
            "eval",
            "--runs", fixture_dir / "runs" / "systems",
            "--trel", tmp_path / "u.trel",
            "--measure", "r@10",
            "--curve-cutoffs", "5,10,20",
            "--output", tmp_path / "scores.csv",
        )
        lines = (tmp_path / "curve_r.csv").read_text().splitlines()
        assert lines[0] == "k,mean,min,max"
        assert [int(l.split(",")[0]) for l in lines[1:]] == [5, 10, 20]
        # recall means over systems never shrink with k
        means = [float(l.split(",")[1]) for l in lines[1:]]
        assert means == sorted(means)

    def test_byte_identical_across_runs(self, fixture_dir, tmp_path):
        sets = parse_judgments((fixture_dir / "judgments.txt").read_bytes())
        (tmp_path / "u.trel").write_bytes(write_trel(union_trel(sets)))
        for name in ("one.csv", "two.csv"):
            invoke(
                "eval",
                "--runs", fixture_dir / "runs" / "systems",
                "--trel", tmp_path / "u.trel",
                "--measure", "p@10",
                "--output", tmp_path / name,
            )
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()


class TestAnalyticsCommands:
    def test_agree(self, fixture_dir, tmp_path):
        invoke("agree", "--judgments", fixture_dir / "judgments.txt",
               "--orientation-n", 50, "--seed", 1, "--output", tmp_path)
        table = (tmp_path / "agreement.csv").read_text()
        assert table.startswith("topic_id,kappa,overlap,precision,recall")
        orientation = (tmp_path / "agreement_orientation.csv").read_text()
        assert orientation.startswith("statistic,precision,recall")

    def test_stability_scores(self, fixture_dir, tmp_path):
        invoke(
            "stability", "scores",
            "--runs", fixture_dir / "runs" / "systems",
            "--judgments", fixture_dir / "judgments.txt",
            "-n", 16, "--measure", "p@10", "--seed", 2,
            "--output", tmp_path,
        )
        dist = (tmp_path / "score_distribution_p@10.csv").read_text()
        assert dist.splitlines()[0].startswith("system,mean,std")
        assert (tmp_path / "largest_differences_p@10.csv").exists()

    def test_stability_tau(self, fixture_dir, tmp_path):
        invoke(
            "stability", "tau",
            "--runs", fixture_dir / "runs" / "systems",
            "--judgments", fixture_dir / "judgments.txt",
            "--pairs", 30, "--measure", "p@10", "--seed", 2,
            "--output", tmp_path / "tau.csv",
        )
        text = (tmp_path / "tau.csv").read_text()
        assert "mean," in text and "fraction_above_0.9," in text

    def test_stability_swaps(self, fixture_dir, tmp_path):
        sets = parse_judgments((fixture_dir / "judgments.txt").read_bytes())
        (tmp_path / "u.trel").write_bytes(write_trel(union_trel(sets)))
        invoke(
            "stability", "swaps",
            "--runs", fixture_dir / "runs" / "systems",
            "--trel", tmp_path / "u.trel",
            "--measure", "ndcg@10",
            "--output", tmp_path / "swaps.csv",
        )
        lines = (tmp_path / "swaps.csv").read_text().splitlines()
        assert lines[0] == "system_a,system_b,statistic,p_value,significant,n_used,method"
        assert len(lines) == 3  # 3 systems -> 2 adjacent pairs

    def test_incomplete(self, fixture_dir, tmp_path):
        invoke(
            "incomplete",
            "--runs", fixture_dir / "runs" / "systems",
            "--pooling-runs", fixture_dir / "runs" / "pooling",
            "--search-run", fixture_dir / "runs" / "search" / "google.run",
            "--manifest", fixture_dir / "manifest.csv",
            "--judgments", fixture_dir / "judgments.txt",
            "--sizes", "10,16,24", "-n", 8, "--kg", 4, "--kn", 4,
            "--measures", "p@10", "--seed", 3,
            "--output", tmp_path,
        )
        report = (tmp_path / "growth_report.csv").read_text()
        assert report.splitlines()[0] == "step,P@10_mean,P@10_std,P@10_max,P@10_excluded"
        assert len(report.splitlines()) == 3
        assert (tmp_path / "growth_plot_p@10.csv").exists()

    def test_qc_noise(self, fixture_dir, tmp_path):
        invoke(
            "qc", "noise",
            "--judgments", fixture_dir / "judgments.txt",
            "--manifest", fixture_dir / "manifest.csv",
            "--output", tmp_path / "qc.csv",
        )
        assert (tmp_path / "qc.csv").read_text().startswith("assessor_id,")


class TestCleanCommand:
    def test_cleans_directory(self, tmp_path):
        src = tmp_path / "docs"
        src.mkdir()
        (src / "d1.html").write_text("<p>keep</p><script>drop()</script>")
        invoke("clean", "--input", src, "--output", tmp_path / "out")
        cleaned = (tmp_path / "out" / "clean" / "d1.html").read_text()
        assert "keep" in cleaned and "script" not in cleaned


class TestConfigFile:
    def test_config_supplies_defaults(self, fixture_dir, tmp_path):
        config = {
            "judgments": str(fixture_dir / "judgments.txt"),
            "output_dir": str(tmp_path / "from_config"),
            "seed": 4,
        }
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config))
        result = invoke("--config", config_path, "agree", "--orientation-n", 10)
        assert "seed: 4" in result.output
        assert (tmp_path / "from_config" / "agreement.csv").exists()

    def test_unknown_keys_rejected(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"bogus": 1}))
        runner = CliRunner()
        result = runner.invoke(main, ["--config", str(config_path), "synth"])
        assert result.exit_code != 0

    def test_checked_in_track_config_loads(self):
        path = Path(__file__).resolve().parents[1] / "configs" / "eirex2010.json"
        data = json.loads(path.read_text())
        assert data["pool_k"] == 100
        assert data["trel_samples"] == 1000
        assert data["tau_pairs"] == 5000
        assert len(data["growth_sizes"]) == 17
