"""Batch command line: generate, decompose, stats, sample, verify, compare, report.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or malformed input).
"""
from __future__ import annotations

import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import click

from . import connectivity, generators, netstats, sampling, temporal
from .graph import Graph, giant_component, summarize
from .io import EdgeListError, ExperimentManifest, OutputDir, file_digest, load_edge_list
from .kcore import core_subgraph, decompose, fit_shell_powerlaw, shell_sizes

log = logging.getLogger("kcorekit")

OUT_DIR_ENV = "KCOREKIT_OUT_DIR"


class DataError(Exception):
    pass


class Run:
    """Per-invocation state shared by the subcommands."""

    def __init__(self, argv, out_dir, threads):
        self.manifest = ExperimentManifest(command=list(argv), config={})
        self.out = OutputDir(out_dir, self.manifest)
        self.threads = threads

    @contextmanager
    def stage(self, name):
        t0 = time.perf_counter()
        yield
        self.manifest.stages[name] = round(time.perf_counter() - t0, 3)

    def load(self, path) -> Graph:
        try:
            with self.stage(f"load:{Path(path).name}"):
                g = load_edge_list(path)
            self.manifest.inputs[str(path)] = file_digest(path)
        except (OSError, UnicodeDecodeError) as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
        except EdgeListError as exc:
            raise DataError(str(exc)) from exc
        return g

    def finish(self, command):
        self.out.finish(f"{command}_manifest.json")


pass_run = click.make_pass_decorator(Run)


@click.group()
@click.option("--out-dir", envvar=OUT_DIR_ENV, default=".", show_default=True,
              type=click.Path(file_okay=False), help=f"Output directory (env {OUT_DIR_ENV}).")
@click.option("--threads", type=click.IntRange(1), default=None,
              help="Cap on worker threads for betweenness.")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def cli(ctx, out_dir, threads, verbose):
    """k-core analysis of network maps."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if threads is not None:
        import numba
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
    ctx.obj = Run(ctx.obj or [], out_dir, threads)


@cli.command()
@click.option("--kind", type=click.Choice([k.value for k in generators.Kind]), required=True)
@click.option("--n", "n", type=click.IntRange(0), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--edges", type=click.IntRange(0), help="ER: edge count.")
@click.option("--m", type=click.IntRange(1), help="BA/BRITE: links per new vertex.")
@click.option("--p-extra", type=float, help="BRITE: extra-edge probability per step.")
@click.option("--gamma", type=float, help="pareto: exponent.")
@click.option("--a", "shape", type=float, help="weibull: shape a.")
@click.option("--c", "scale", type=float, help="weibull: scale c.")
@click.option("--min-degree", type=click.IntRange(0))
@click.option("--max-degree", type=click.IntRange(1), help="pareto: degree cutoff.")
@click.option("--out", default="graph.txt", show_default=True)
@pass_run
def generate(run, kind, n, seed, edges, m, p_extra, gamma, shape, scale, min_degree, max_degree, out):
    """Generate a synthetic topology as an edge list plus a JSON log."""
    params = {k: v for k, v in {
        "e": edges, "m": m, "p_extra": p_extra, "gamma": gamma, "a": shape, "c": scale,
        "min_degree": min_degree, "max_degree": max_degree}.items() if v is not None}
    if kind == "er" and "e" not in params:
        raise click.UsageError("--kind er requires --edges")
    try:
        cfg = generators.GeneratorConfig(kind, n, seed, params)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    run.manifest.config = cfg.as_dict()
    run.manifest.seeds = [seed]
    report = generators.GenerationLog()
    with run.stage("generate"):
        try:
            g = generators.generate(cfg, report)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    path = run.out.edges(out, g)
    gc = giant_component(g)
    run.out.json(Path(out).stem + "_log.json", {
        "config": cfg.as_dict(),
        "realized": summarize(g).as_dict(),
        "giant_component": summarize(gc).as_dict(),
        "isolated_vertices_not_written": int((g.degrees() == 0).sum()),
        "k_max": decompose(g).k_max,
        **report.as_dict(),
    })
    run.finish("generate")
    click.echo(f"wrote {path} ({g.n} vertices, {g.e} edges)")


@cli.command(name="decompose")
@click.option("--input", "input_path", required=True)
@click.option("--out", default="shells.csv", show_default=True)
@pass_run
def decompose_cmd(run, input_path, out):
    """Shell index of every vertex, plus shell sizes."""
    g = run.load(input_path)
    run.manifest.config = {"input": input_path, "out": out}
    with run.stage("decompose"):
        d = decompose(g)
    _write_decomposition(run, g, d, out)
    run.out.json("decompose_summary.json", {**summarize(g).as_dict(), "k_max": d.k_max,
                                            "top_core_size": int((d.shell_index == d.k_max).sum())})
    run.manifest.config["k_max"] = d.k_max
    run.finish("decompose")
    click.echo(f"k_max={d.k_max}")


def _write_decomposition(run, g, d, out="shells.csv"):
    run.out.csv(out, ["vertex_label", "shell_index"],
                ((g.label(v), c) for v, c in enumerate(d.shell_index.tolist())))
    run.out.csv("shell_sizes.csv", ["k", "size"], sorted(shell_sizes(d).items()))


@cli.command()
@click.option("--input", "input_path", required=True)
@click.option("--cores", default=None, help="Comma-separated core indices (default: 0..k_max/2).")
@click.option("--log-bins", type=click.IntRange(1), default=None,
              help="Also write log-binned spectra with this many bins per decade.")
@click.option("--betweenness/--no-betweenness", default=True, show_default=True)
@pass_run
def stats(run, input_path, cores, log_bins, betweenness):
    """Degree, correlation, clustering and centrality statistics."""
    g = run.load(input_path)
    run.manifest.config = {"input": input_path, "cores": cores, "log_bins": log_bins,
                           "betweenness": betweenness}
    _stats_bundle(run, g, _parse_cores(cores), log_bins, betweenness)
    run.finish("stats")


def _parse_cores(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise click.UsageError(f"bad --cores value {text!r}") from exc


def _stats_bundle(run, g, cores, log_bins, with_bc):
    with run.stage("decompose"):
        d = decompose(g)
    if cores is None:
        cores = list(range(0, d.k_max // 2 + 1))
    with run.stage("degree"):
        run.out.csv("ccdf.csv", ["d", "P_gt"], netstats.cumulative_degree_distribution(g))
        rescaled = netstats.rescaled_core_distributions(g, d, cores)
        rows = []
        for k, dist in rescaled.items():
            rows.extend((k, x, p) for x, p in dist.ccdf())
        run.out.csv("core_ccdf_rescaled.csv", ["k", "d_over_mean", "P_gt"], rows)
    with run.stage("spectra"):
        knn_rows, cc_rows, binned_rows = [], [], []
        collapse = {}
        base = {}
        for k, dist in rescaled.items():
            core = core_subgraph(g, d, k)
            knn = netstats.avg_nearest_neighbor_degree(core)
            cc = netstats.clustering_spectrum(core)
            for deg, v in sorted(knn.points.items()):
                knn_rows.append((k, deg, deg / dist.mean_degree, v,
                                 v / knn.mean_value if knn.mean_value else float("nan")))
            for deg, v in sorted(cc.points.items()):
                cc_rows.append((k, deg, deg / dist.mean_degree, v,
                                v / cc.mean_value if cc.mean_value else float("nan")))
            r_knn = netstats.rescale_spectrum(knn, dist.mean_degree)
            r_cc = netstats.rescale_spectrum(cc, dist.mean_degree)
            if log_bins:
                for name, pts in (("knn", r_knn), ("cc", r_cc)):
                    for b, (y, cnt) in netstats.log_bin(pts, log_bins).items():
                        binned_rows.append((k, name, 10 ** (b / log_bins), y, cnt))
            if not base:
                base = {"k": k, "samples": dist.samples, "knn": r_knn, "cc": r_cc}
            else:
                collapse[str(k)] = {
                    "ccdf_ks": netstats.collapse_distance(base["samples"], dist.samples),
                    "knn_linf": netstats.spectrum_distance(base["knn"], r_knn),
                    "cc_linf": netstats.spectrum_distance(base["cc"], r_cc),
                }
        run.out.csv("knn.csv", ["k", "d", "d_over_mean", "d_nn", "d_nn_over_mean"], knn_rows)
        run.out.csv("cc.csv", ["k", "d", "d_over_mean", "cc", "cc_over_mean"], cc_rows)
        if log_bins:
            run.out.csv("spectra_logbinned.csv",
                        ["k", "quantity", "bin_lower_d_over_mean", "value_over_mean", "count"],
                        binned_rows)
    summary = {**summarize(g).as_dict(), "k_max": d.k_max,
               "top_core_size": int((d.shell_index == d.k_max).sum()),
               "collapse_vs_core": {"reference_core": base.get("k"), "by_core": collapse}}
    thresholds = {"ccdf_ks_max": netstats.COLLAPSE_KS_MAX,
                  "spectrum_linf_max": netstats.SPECTRUM_LINF_MAX,
                  "spectrum_bins_per_decade": 5, "spectrum_min_bin_count": 50}
    summary["collapse_thresholds"] = thresholds
    run.manifest.config["collapse_thresholds"] = thresholds
    try:
        summary["shell_fit_slope"] = fit_shell_powerlaw(shell_sizes(d))
    except ValueError:
        summary["shell_fit_slope"] = None
    if with_bc:
        with run.stage("betweenness"):
            bc = netstats.betweenness(g)
            prof = netstats.shell_centrality_profile(g, d, bc)
        deg = g.degrees()
        run.out.csv("betweenness.csv", ["vertex_label", "betweenness", "shell_index", "degree"],
                    ((g.label(v), bc.values[v], d.shell_index[v], deg[v]) for v in range(g.n)))
        run.out.csv("bc_by_shell.csv", ["shell_index", "mean_bc", "std_bc"],
                    ((k, m, s) for k, (m, s) in prof.by_shell.items()))
        run.out.csv("shell_by_degree.csv", ["degree", "mean_shell", "std_shell"],
                    ((k, m, s) for k, (m, s) in prof.by_degree.items()))
        summary["betweenness_convention"] = bc.convention
        summary["profile_statistic"] = "mean and population standard deviation"
    run.out.json("stats_summary.json", summary)
    return d


@cli.command()
@click.option("--input", "input_path", required=True)
@click.option("--sources", "n_sources", type=click.IntRange(1), default=50, show_default=True)
@click.option("--targets", "n_targets", type=click.IntRange(1), default=None)
@click.option("--effort", type=float, default=None, help="N_S * N_T / N; sets --targets.")
@click.option("--strategy", type=click.Choice([s.value for s in sampling.Strategy]),
              default="usp", show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", default="sampled.txt", show_default=True)
@pass_run
def sample(run, input_path, n_sources, n_targets, effort, strategy, seed, out):
    """Traceroute-like sample of a map."""
    if (n_targets is None) == (effort is None):
        raise click.UsageError("give exactly one of --targets and --effort")
    g = run.load(input_path)
    if effort is not None:
        cfg = sampling.SamplingConfig.from_effort(g.n, n_sources, effort, seed, strategy)
    else:
        cfg = sampling.SamplingConfig(n_sources, n_targets, seed, strategy)
    run.manifest.config = {"input": input_path, "n_sources": cfg.n_sources,
                           "n_targets": cfg.n_targets, "strategy": cfg.strategy.value}
    run.manifest.seeds = [seed]
    with run.stage("sample"):
        try:
            smp = sampling.traceroute_sample(g, cfg)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
    d, ds = decompose(g), decompose(smp.graph)
    run.out.edges(out, smp.graph)
    run.out.json(Path(out).stem + "_report.json", {
        "effort": cfg.effort(g.n), "n_sources": cfg.n_sources, "n_targets": cfg.n_targets,
        "strategy": cfg.strategy.value, "seed": seed,
        "discovered": summarize(smp.graph).as_dict(), "original": summarize(g).as_dict(),
        "k_max_original": d.k_max, "k_max_sampled": ds.k_max,
        "skipped_pairs": smp.skipped_pairs,
    })
    run.finish("sample")


@cli.command()
@click.option("--input", "input_path", required=True)
@click.option("--pairs", type=click.IntRange(1), default=1000, show_default=True)
@click.option("--seed", type=int, required=True)
@pass_run
def verify(run, input_path, pairs, seed):
    """Core connectivity, disjoint-path bound and shell upward-edge checks."""
    g = run.load(input_path)
    run.manifest.config = {"input": input_path, "pairs": pairs}
    run.manifest.seeds = [seed]
    with run.stage("verify"):
        d = decompose(g)
        rep = connectivity.verify_disjoint_path_bound(g, d, pairs, seed)
        rep.core_connected = connectivity.verify_cores_connected(g, d)
        up = connectivity.verify_shell_upward_edges(g, d, seed=seed)
        rep.violating_clusters = up.violating_clusters
    out = rep.as_dict()
    out["top_core"] = {"k_max": d.k_max, "pairs_checked": up.top_core_pairs,
                       "min_disjoint_paths": up.top_core_min_paths,
                       "k_max_edge_connected_on_sample": up.top_core_ok}
    out["clusters_checked"] = up.clusters_checked
    run.out.json("connectivity.json", out)
    run.finish("verify")
    click.echo(f"violation_fraction={rep.violation_fraction:.4f} "
               f"violating_clusters={len(rep.violating_clusters)}")


@cli.command()
@click.option("--a", "path_a", required=True, help="Earlier/original map.")
@click.option("--b", "path_b", required=True, help="Later/sampled map.")
@pass_run
def compare(run, path_a, path_b):
    """Shell-index transitions and IN/OUT profiles between two maps."""
    g_a, g_b = run.load(path_a), run.load(path_b)
    run.manifest.config = {"a": path_a, "b": path_b}
    with run.stage("compare"):
        try:
            cmp = temporal.compare_maps(g_a, g_b)
        except ValueError as exc:
            raise DataError(str(exc)) from exc
    run.out.csv("transitions.csv", ["x", "y", "probability"], cmp.transitions.rows())
    run.out.csv("in_dist.csv", ["c", "probability"], sorted(cmp.in_out.in_dist.items()))
    run.out.csv("out_dist.csv", ["c", "probability"], sorted(cmp.in_out.out_dist.items()))
    run.out.json("compare_summary.json", {
        "diagonal_mass": cmp.diagonal_mass, "n_common": cmp.n_common,
        "n_in": cmp.in_out.n_in, "n_out": cmp.in_out.n_out,
        "shell_correlation": cmp.shell_correlation,
        "normalization": temporal.NORMALIZATION,
        "matching": "exact label match; renumbered vertices count as IN/OUT",
    })
    run.finish("compare")
    click.echo(f"diagonal_mass={cmp.diagonal_mass:.4f}")


@cli.command()
@click.option("--input", "input_path", required=True)
@click.option("--cores", default=None)
@pass_run
def report(run, input_path, cores):
    """Full bundle: summary, shells, spectra and centrality profile."""
    g = run.load(input_path)
    run.manifest.config = {"input": input_path, "cores": cores}
    d = _stats_bundle(run, g, _parse_cores(cores), log_bins=5, with_bc=True)
    _write_decomposition(run, g, d)
    run.finish("report")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=argv, prog_name="kcorekit", standalone_mode=False, obj=argv)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.exceptions.Abort:
        return 1
    except DataError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
