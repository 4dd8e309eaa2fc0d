"""Command-line entry point: every pipeline stage as a subcommand with
reproducible seeds and CSV/plot-data reports.

All randomized commands take --seed (defaulting from the config) and echo
it; identical inputs and seeds produce byte-identical outputs.
"""

from __future__ import annotations

import json
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import click

from . import formats
from .cleaning import clean_document
from .incompleteness import growth_report
from .judging.http import ServiceConfig, serve as serve_http
from .measures import MeasureKind, cutoff_curve, score_matrix
from .pooling import pool_growth_series, pool_stats, sample_noise_docs, size_k_pool
from .qc import noise_qc
from .reliability import (
    agreement_table,
    largest_differences,
    rank_systems,
    summarize,
    tau_distribution,
    wilcoxon_swap_test,
)
from .reliability._scoring import TrelScorer
from .synth import FixtureConfig, generate_fixture
from .trels import intersection_trel, sample_trels, trel_pairs, trel_space, union_trel
from .types import PoolSpec, derive_seed


@dataclass
class RunConfig:
    """Defaults shared across subcommands; a JSON config file can override
    any field, and command-line flags override the file."""

    topics: str | None = None
    runs_dir: str | None = None
    pooling_runs_dir: str | None = None
    search_run: str | None = None
    manifest: str | None = None
    judgments: str | None = None
    output_dir: str = "out"
    seed: int = 0
    trel_samples: int = 1000
    tau_pairs: int = 5000
    tau_threshold: float = 0.9
    alpha: float = 0.05
    pool_k: int = 100
    pool_kg: int = 10
    pool_kn: int = 10
    growth_sizes: list[int] = field(default_factory=lambda: list(range(20, 101, 5)))
    measures: list[str] = field(
        default_factory=lambda: ["ndcg@100", "ap@100", "p@10", "rr"]
    )
    qc_threshold: float = 0.1
    jobs: int = 1

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        config = cls()
        if path:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            known = {f.name for f in fields(cls)}
            unknown = set(data) - known
            if unknown:
                raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
            for key, value in data.items():
                setattr(config, key, value)
        return config


def _read_runs(directory: str) -> list:
    paths = sorted(Path(directory).glob("*.run"))
    if not paths:
        raise click.UsageError(f"no .run files in {directory!r}")
    return [formats.parse_run(p.read_bytes()) for p in paths]


def _read_judgments(path: str):
    return formats.parse_judgments(Path(path).read_bytes())


def _read_manifest(path: str):
    return formats.parse_manifest(Path(path).read_bytes())


def _write(path: Path, data: bytes | str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    path.write_bytes(data)
    click.echo(f"wrote {path}")


def _parse_sizes(text: str) -> list[int]:
    if ":" in text:
        start, stop, step = (int(x) for x in text.split(":"))
        return list(range(start, stop + 1, step))
    return [int(x) for x in text.split(",")]


def _echo_seed(seed: int) -> None:
    click.echo(f"seed: {seed}")


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="JSON config file with defaults for all subcommands.")
@click.pass_context
def main(ctx, config_path):
    """Small-scale IR test collections and their reliability analysis."""
    ctx.obj = RunConfig.load(config_path)


# ---------------------------------------------------------------------------
# pool

@main.group()
def pool():
    """Build judgment pools."""


@pool.command("make")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None)
@click.option("--search-run", "search_run_path", type=click.Path(exists=True), default=None)
@click.option("--k", type=int, default=None)
@click.option("--kg", type=int, default=None)
@click.option("--kn", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def pool_make(config, runs_dir, manifest_path, search_run_path, k, kg, kn, seed, jobs, output_dir):
    """Size-k pools with search-engine and noise injections, plus stats."""
    runs_dir = runs_dir or config.pooling_runs_dir or config.runs_dir
    manifest_path = manifest_path or config.manifest
    search_run_path = search_run_path or config.search_run
    if not (runs_dir and manifest_path and search_run_path):
        raise click.UsageError("need --runs, --manifest and --search-run")
    k = k if k is not None else config.pool_k
    kg = kg if kg is not None else config.pool_kg
    kn = kn if kn is not None else config.pool_kn
    seed = seed if seed is not None else config.seed
    jobs = jobs or config.jobs
    out = Path(output_dir or config.output_dir)
    _echo_seed(seed)

    runs = _read_runs(runs_dir)
    manifest = _read_manifest(manifest_path)
    search = formats.parse_run(Path(search_run_path).read_bytes())
    spec = PoolSpec(k=k, k_g=kg, k_n=kn)
    topics = sorted(set(manifest.topics()) - set(manifest.noise_topics))

    def build(topic_id):
        return size_k_pool(
            runs,
            topic_id,
            spec,
            search.top(topic_id, kg),
            sample_noise_docs(manifest, kn, derive_seed(seed, "noise", topic_id)),
            manifest,
        )

    with ThreadPoolExecutor(max_workers=max(jobs, 1)) as pool_exec:
        pools = list(pool_exec.map(build, topics))
    for p in pools:
        _write(out / "pools" / f"{p.topic_id}.pool", formats.write_pool(p))
    stats = pool_stats(pools)
    _write(out / "pool_stats.csv", stats.to_csv())
    _write(out / "pool_duplicates.csv", stats.duplicates_csv())


@pool.command("growth")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None)
@click.option("--search-run", "search_run_path", type=click.Path(exists=True), default=None)
@click.option("--sizes", type=str, default=None, help="e.g. 20:100:5 or 20,40,80")
@click.option("--kg", type=int, default=None)
@click.option("--kn", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def pool_growth(config, runs_dir, manifest_path, search_run_path, sizes, kg, kn, seed, output_dir):
    """Nested size-k pool series per topic."""
    runs_dir = runs_dir or config.pooling_runs_dir or config.runs_dir
    manifest_path = manifest_path or config.manifest
    search_run_path = search_run_path or config.search_run
    if not (runs_dir and manifest_path and search_run_path):
        raise click.UsageError("need --runs, --manifest and --search-run")
    size_list = _parse_sizes(sizes) if sizes else config.growth_sizes
    kg = kg if kg is not None else config.pool_kg
    kn = kn if kn is not None else config.pool_kn
    seed = seed if seed is not None else config.seed
    out = Path(output_dir or config.output_dir)
    _echo_seed(seed)

    runs = _read_runs(runs_dir)
    manifest = _read_manifest(manifest_path)
    search = formats.parse_run(Path(search_run_path).read_bytes())
    topics = sorted(set(manifest.topics()) - set(manifest.noise_topics))
    for topic_id in topics:
        series = pool_growth_series(
            runs,
            topic_id,
            size_list,
            search.top(topic_id, kg),
            sample_noise_docs(manifest, kn, derive_seed(seed, "noise", topic_id)),
            manifest,
        )
        for size, p in zip(series.sizes, series.pools):
            _write(out / "growth" / topic_id / f"{size:04d}.pool", formats.write_pool(p))


# ---------------------------------------------------------------------------
# eval

@main.command("eval")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--trel", "trel_path", type=click.Path(exists=True), required=True)
@click.option("--measure", "measure_text", type=str, default=None)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None)
@click.option("--curve-cutoffs", "curve_cutoffs", type=str, default=None,
              help="also emit (k, mean, min, max) plot data over these cutoffs, e.g. 10:100:10")
@click.option("--jobs", type=int, default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def eval_cmd(config, runs_dir, trel_path, measure_text, manifest_path, curve_cutoffs,
             jobs, output_path):
    """Score every system against a trel; CSV ordered by mean."""
    runs_dir = runs_dir or config.runs_dir
    if not runs_dir:
        raise click.UsageError("need --runs")
    measure = MeasureKind.parse(measure_text or config.measures[0])
    runs = _read_runs(runs_dir)
    trel = formats.parse_trel(Path(trel_path).read_bytes())
    manifest = _read_manifest(manifest_path or config.manifest) if (
        manifest_path or config.manifest
    ) else None
    topics = trel.topics()
    jobs = jobs or config.jobs
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool_exec:
                parts = list(
                    pool_exec.map(
                        lambda run: score_matrix([run], trel, topics, measure, manifest),
                        runs,
                    )
                )
            matrix = parts[0]
            for part in parts[1:]:
                matrix.scores.update(part.scores)
        else:
            matrix = score_matrix(runs, trel, topics, measure, manifest)
    out = Path(output_path) if output_path else Path(config.output_dir) / f"scores_{measure}.csv".lower()
    _write(out, matrix.to_csv())
    if curve_cutoffs:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows = cutoff_curve(
                runs, trel, topics, measure.kind, _parse_sizes(curve_cutoffs), manifest
            )
        lines = ["k,mean,min,max"]
        lines += [f"{k},{mean:.6f},{lo:.6f},{hi:.6f}" for k, mean, lo, hi in rows]
        _write(out.with_name(f"curve_{measure.kind}.csv"), "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# trel

@main.group()
def trel():
    """Build resolved ground-truth sets."""


@trel.command("sample")
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("-n", "n_samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def trel_sample(config, judgments_path, n_samples, seed, output_dir):
    """Sample distinct assessor combinations as trel files."""
    judgments_path = judgments_path or config.judgments
    if not judgments_path:
        raise click.UsageError("need --judgments")
    n_samples = n_samples if n_samples is not None else config.trel_samples
    seed = seed if seed is not None else config.seed
    out = Path(output_dir or config.output_dir) / "trels"
    _echo_seed(seed)
    space = trel_space(_read_judgments(judgments_path))
    click.echo(
        f"{len(space.dual_topics)} dual topics, "
        f"{space.total_combinations} combinations"
    )
    for t in sample_trels(space, n_samples, seed):
        _write(out / f"{t.name}.trel", formats.write_trel(t))


@trel.command("union")
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def trel_union(config, judgments_path, output_path):
    judgments_path = judgments_path or config.judgments
    if not judgments_path:
        raise click.UsageError("need --judgments")
    t = union_trel(_read_judgments(judgments_path))
    out = Path(output_path) if output_path else Path(config.output_dir) / "union.trel"
    _write(out, formats.write_trel(t))


@trel.command("intersect")
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def trel_intersect(config, judgments_path, output_path):
    judgments_path = judgments_path or config.judgments
    if not judgments_path:
        raise click.UsageError("need --judgments")
    t = intersection_trel(_read_judgments(judgments_path))
    out = Path(output_path) if output_path else Path(config.output_dir) / "intersection.trel"
    _write(out, formats.write_trel(t))


# ---------------------------------------------------------------------------
# agree

@main.command("agree")
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--orientation-n", type=int, default=1000)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def agree(config, judgments_path, orientation_n, seed, output_dir):
    """Per-topic assessor agreement plus orientation-free aggregates."""
    judgments_path = judgments_path or config.judgments
    if not judgments_path:
        raise click.UsageError("need --judgments")
    seed = seed if seed is not None else config.seed
    out = Path(output_dir or config.output_dir)
    _echo_seed(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        table = agreement_table(_read_judgments(judgments_path))
    _write(out / "agreement.csv", table.to_csv())
    sample = table.orientation_sample(n=orientation_n, seed=seed)
    lines = [
        "statistic,precision,recall",
        f"mean,{sample.mean_precision:.6f},{sample.mean_recall:.6f}",
        f"std,{sample.std_precision:.6f},{sample.std_recall:.6f}",
        f"min,{sample.min_precision:.6f},{sample.min_recall:.6f}",
        f"max,{sample.max_precision:.6f},{sample.max_recall:.6f}",
    ]
    _write(out / "agreement_orientation.csv", "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# stability

@main.group()
def stability():
    """Score and ranking stability across trels."""


def _load_systems_and_space(config, runs_dir, judgments_path):
    runs_dir = runs_dir or config.runs_dir
    judgments_path = judgments_path or config.judgments
    if not (runs_dir and judgments_path):
        raise click.UsageError("need --runs and --judgments")
    systems = _read_runs(runs_dir)
    judgment_sets = _read_judgments(judgments_path)
    return systems, judgment_sets, trel_space(judgment_sets)


@stability.command("scores")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("-n", "n_samples", type=int, default=None)
@click.option("--measure", "measure_text", type=str, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def stability_scores(config, runs_dir, judgments_path, n_samples, measure_text, seed, output_dir):
    """Per-system score distributions over sampled trels (with union /
    intersection and largest-difference rows)."""
    systems, judgment_sets, space = _load_systems_and_space(config, runs_dir, judgments_path)
    n_samples = n_samples if n_samples is not None else config.trel_samples
    seed = seed if seed is not None else config.seed
    measure = MeasureKind.parse(measure_text or config.measures[0])
    out = Path(output_dir or config.output_dir)
    _echo_seed(seed)
    trels = sample_trels(space, n_samples, seed)
    union = union_trel(judgment_sets)
    inter = intersection_trel(judgment_sets)
    topics = space.topics()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        scorer = TrelScorer(systems, measure, topics=topics)
        matrix = scorer.mean_matrix(trels)
        union_scores = scorer.mean_matrix([union])[:, 0]
        inter_scores = scorer.mean_matrix([inter])[:, 0]
        diffs = largest_differences(
            systems, measure, trels, union=union, intersection=inter, topics=topics
        )
    rows = []
    for i, run in enumerate(systems):
        s = summarize(matrix[i])
        rows.append((run.system_tag, s, float(union_scores[i]), float(inter_scores[i])))
    rows.sort(key=lambda r: (-r[1].mean, r[0]))
    lines = ["system,mean,std,min,max,ci95_lo,ci95_hi,ci99_lo,ci99_hi,union,intersection"]
    for tag, s, u, i_ in rows:
        lines.append(
            f"{tag},{s.mean:.6f},{s.std:.6f},{s.min:.6f},{s.max:.6f},"
            f"{s.ci95[0]:.6f},{s.ci95[1]:.6f},{s.ci99[0]:.6f},{s.ci99[1]:.6f},"
            f"{u:.6f},{i_:.6f}"
        )
    _write(out / f"score_distribution_{measure}.csv".lower(), "\n".join(lines) + "\n")
    _write(out / f"largest_differences_{measure}.csv".lower(), diffs.to_csv())


@stability.command("tau")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--pairs", "n_pairs", type=int, default=None)
@click.option("--measure", "measure_text", type=str, default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def stability_tau(config, runs_dir, judgments_path, n_pairs, measure_text, threshold, seed, output_path):
    """Kendall-tau distribution over random trel pairs."""
    systems, _judgment_sets, space = _load_systems_and_space(config, runs_dir, judgments_path)
    n_pairs = n_pairs if n_pairs is not None else config.tau_pairs
    threshold = threshold if threshold is not None else config.tau_threshold
    seed = seed if seed is not None else config.seed
    measure = MeasureKind.parse(measure_text or config.measures[0])
    _echo_seed(seed)
    pairs = trel_pairs(space, n_pairs, seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sample = tau_distribution(systems, measure, pairs, threshold=threshold, topics=space.topics())
    out = Path(output_path) if output_path else Path(config.output_dir) / f"tau_{measure}.csv".lower()
    _write(out, sample.to_csv())


@stability.command("swaps")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--trel", "trel_path", type=click.Path(exists=True), required=True)
@click.option("--measure", "measure_text", type=str, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def stability_swaps(config, runs_dir, trel_path, measure_text, alpha, output_path):
    """Wilcoxon signed-rank test for every adjacent pair in the ranking."""
    runs_dir = runs_dir or config.runs_dir
    if not runs_dir:
        raise click.UsageError("need --runs")
    alpha = alpha if alpha is not None else config.alpha
    measure = MeasureKind.parse(measure_text or config.measures[0])
    systems = _read_runs(runs_dir)
    trel_obj = formats.parse_trel(Path(trel_path).read_bytes())
    topics = trel_obj.topics()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        scorer = TrelScorer(systems, measure, topics=topics)
        means = scorer.mean_matrix([trel_obj])[:, 0]
        order = rank_systems([r.system_tag for r in systems], means)
        by_tag = {r.system_tag: r for r in systems}
        lines = ["system_a,system_b,statistic,p_value,significant,n_used,method"]
        for a, b in zip(order, order[1:]):
            result = wilcoxon_swap_test(
                by_tag[a], by_tag[b], measure, trel_obj, alpha=alpha, topics=topics
            )
            lines.append(
                f"{a},{b},{result.statistic:.6f},{result.p_value:.6f},"
                f"{int(result.significant)},{result.n_used},{result.method}"
            )
    out = Path(output_path) if output_path else Path(config.output_dir) / f"swaps_{measure}.csv".lower()
    _write(out, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# incomplete

@main.command("incomplete")
@click.option("--runs", "runs_dir", type=click.Path(exists=True), default=None)
@click.option("--pooling-runs", "pooling_runs_dir", type=click.Path(exists=True), default=None)
@click.option("--search-run", "search_run_path", type=click.Path(exists=True), default=None)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None)
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--sizes", type=str, default=None)
@click.option("-n", "n_samples", type=int, default=None)
@click.option("--measures", "measures_text", type=str, default=None)
@click.option("--kg", type=int, default=None)
@click.option("--kn", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def incomplete(config, runs_dir, pooling_runs_dir, search_run_path, manifest_path,
               judgments_path, sizes, n_samples, measures_text, kg, kn, seed, output_dir):
    """Pool-growth incompleteness report (percentage increments per step)."""
    runs_dir = runs_dir or config.runs_dir
    pooling_runs_dir = pooling_runs_dir or config.pooling_runs_dir
    search_run_path = search_run_path or config.search_run
    manifest_path = manifest_path or config.manifest
    judgments_path = judgments_path or config.judgments
    if not all([runs_dir, pooling_runs_dir, search_run_path, manifest_path, judgments_path]):
        raise click.UsageError(
            "need --runs, --pooling-runs, --search-run, --manifest and --judgments"
        )
    size_list = _parse_sizes(sizes) if sizes else config.growth_sizes
    n_samples = n_samples if n_samples is not None else config.trel_samples
    seed = seed if seed is not None else config.seed
    measure_list = [
        MeasureKind.parse(m)
        for m in (measures_text.split(",") if measures_text else config.measures)
    ]
    out = Path(output_dir or config.output_dir)
    _echo_seed(seed)

    systems = _read_runs(runs_dir)
    pooling_runs = _read_runs(pooling_runs_dir)
    search = formats.parse_run(Path(search_run_path).read_bytes())
    manifest = _read_manifest(manifest_path)
    judgment_sets = _read_judgments(judgments_path)
    space = trel_space(judgment_sets)
    trels = sample_trels(space, n_samples, seed)
    kg = kg if kg is not None else config.pool_kg
    kn = kn if kn is not None else config.pool_kn
    topics = space.topics()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        series = {
            t: pool_growth_series(
                pooling_runs,
                t,
                size_list,
                search.top(t, kg),
                sample_noise_docs(manifest, kn, derive_seed(seed, "noise", t)),
                manifest,
            )
            for t in topics
        }
        report = growth_report(systems, measure_list, series, trels, topics=topics)
    _write(out / "growth_report.csv", report.to_csv())
    for measure in measure_list:
        _write(out / f"growth_plot_{measure}.csv".lower(), report.plot_csv(measure))


# ---------------------------------------------------------------------------
# qc / clean / serve / synth

@main.group()
def qc():
    """Judgment quality control."""


@qc.command("noise")
@click.option("--judgments", "judgments_path", type=click.Path(exists=True), default=None)
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), default=None)
@click.option("--threshold", type=float, default=None)
@click.option("--output", "output_path", type=click.Path(), default=None)
@click.pass_obj
def qc_noise(config, judgments_path, manifest_path, threshold, output_path):
    """Noise-document violations per assessor."""
    judgments_path = judgments_path or config.judgments
    manifest_path = manifest_path or config.manifest
    if not (judgments_path and manifest_path):
        raise click.UsageError("need --judgments and --manifest")
    threshold = threshold if threshold is not None else config.qc_threshold
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = noise_qc(_read_judgments(judgments_path), _read_manifest(manifest_path), threshold)
    out = Path(output_path) if output_path else Path(config.output_dir) / "qc_noise.csv"
    _write(out, report.to_csv())
    if report.flagged_assessors():
        click.echo(f"flagged: {', '.join(report.flagged_assessors())}")


@main.command("clean")
@click.option("--input", "input_path", type=click.Path(exists=True), required=True)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.pass_obj
def clean_cmd(config, input_path, output_dir):
    """Clean raw HTML files into blinded reading documents."""
    src = Path(input_path)
    out = Path(output_dir or config.output_dir) / "clean"
    files = sorted(src.glob("*.html")) if src.is_dir() else [src]
    if not files:
        raise click.UsageError(f"no .html files in {input_path!r}")
    for f in files:
        doc = clean_document(f.read_bytes(), doc_id=f.stem)
        _write(out / f"{f.stem}.html", doc.to_html())


@main.command("serve")
@click.option("--config", "service_config_path", type=click.Path(exists=True), required=True,
              help="JSON service config (listen address, data dir, seed, tokens...).")
def serve_cmd(service_config_path):
    """Run the blinded judging server."""
    config = ServiceConfig.from_file(service_config_path)
    click.echo(f"serving on {config.host}:{config.port} (data: {config.data_dir})")
    serve_http(config)


@main.command("synth")
@click.option("--seed", type=int, default=None)
@click.option("--topics", "n_topics", type=int, default=None)
@click.option("--output", "output_dir", type=click.Path(), default=None)
@click.option("--flip-rate", type=float, default=None)
@click.pass_obj
def synth(config, seed, n_topics, output_dir, flip_rate):
    """Generate a seeded synthetic collection."""
    seed = seed if seed is not None else config.seed
    kwargs = {"seed": seed}
    if n_topics is not None:
        kwargs["n_topics"] = n_topics
    if flip_rate is not None:
        kwargs["flip_rate"] = flip_rate
    _echo_seed(seed)
    fixture = generate_fixture(FixtureConfig(**kwargs))
    out = Path(output_dir or config.output_dir)
    fixture.write(out)
    click.echo(f"wrote fixture to {out}")


if __name__ == "__main__":
    main()
