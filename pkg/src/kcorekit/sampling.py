"""Traceroute-like exploration: merge source-target shortest paths into a sampled map."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numba
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .graph import Graph, summarize
from .kcore import decompose, fit_shell_powerlaw, shell_sizes
from .temporal import compare_maps

log = logging.getLogger(__name__)


class Strategy(str, Enum):
    USP = "usp"  # one BFS tree per source
    RSP = "rsp"  # independent uniformly random shortest path per pair


@dataclass(frozen=True)
class SamplingConfig:
    n_sources: int
    n_targets: int
    seed: int
    strategy: Strategy = Strategy.USP

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if self.n_sources < 1 or self.n_targets < 1:
            raise ValueError("need at least one source and one target")

    def effort(self, n: int) -> float:
        return self.n_sources * self.n_targets / n

    @classmethod
    def from_effort(cls, n: int, n_sources: int, effort: float, seed: int,
                    strategy=Strategy.USP) -> "SamplingConfig":
        return cls(n_sources, max(1, int(round(effort * n / n_sources))), seed, strategy)


@dataclass(frozen=True)
class TracerouteSample:
    graph: Graph
    sources: np.ndarray
    targets: np.ndarray
    skipped_pairs: int


def _to_csr(g: Graph) -> csr_matrix:
    return csr_matrix((np.ones(g.indices.size, dtype=np.int8), g.indices, g.indptr),
                      shape=(g.n, g.n))


@numba.njit(cache=True)
def _bfs_sigma(indptr, indices, s):
    n = indptr.size - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    dist[s] = 0
    sigma[s] = 1.0
    order[0] = s
    head, tail = 0, 1
    while head < tail:
        v = order[head]
        head += 1
        for p in range(indptr[v], indptr[v + 1]):
            w = indices[p]
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                order[tail] = w
                tail += 1
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    return dist, sigma


def traceroute_sample(g: Graph, cfg: SamplingConfig) -> TracerouteSample:
    """Union of one shortest path per (source, target) pair.

    Sources and targets are distinct vertices drawn uniformly without
    replacement. The sampled graph keeps the labels of ``g`` (or its
    indices, if ``g`` is unlabeled) so it can be matched back to ``g``.
    """
    if cfg.n_sources + cfg.n_targets > g.n:
        raise ValueError("more sources and targets than vertices")
    rng = np.random.default_rng(cfg.seed)
    picked = rng.choice(g.n, size=cfg.n_sources + cfg.n_targets, replace=False)
    sources, targets = picked[:cfg.n_sources], picked[cfg.n_sources:]
    found: set[tuple[int, int]] = set()
    skipped = 0

    if cfg.strategy is Strategy.USP:
        mat = _to_csr(g)
        for s in sources.tolist():
            _, parent = breadth_first_order(mat, s, directed=True, return_predecessors=True)
            on_tree = {s}
            for t in targets.tolist():
                if parent[t] < 0:
                    skipped += 1
                    continue
                v = t
                while v not in on_tree:
                    p = int(parent[v])
                    found.add((p, v) if p < v else (v, p))
                    on_tree.add(v)
                    v = p
    else:
        for s in sources.tolist():
            dist, sigma = _bfs_sigma(g.indptr, g.indices, s)
            for t in targets.tolist():
                if dist[t] < 0:
                    skipped += 1
                    continue
                v = t
                while v != s:
                    nb = g.neighbors(v)
                    preds = nb[dist[nb] == dist[v] - 1]
                    w = sigma[preds]
                    p = int(preds[np.searchsorted(np.cumsum(w), rng.random() * w.sum(), side="right")])
                    found.add((p, v) if p < v else (v, p))
                    v = p
    if skipped:
        log.warning("%d source-target pairs unreachable, skipped", skipped)
    return TracerouteSample(_edges_to_graph(g, found), sources, targets, skipped)


def _edges_to_graph(g: Graph, edges: set[tuple[int, int]]) -> Graph:
    if not edges:
        return Graph.from_arrays(0, [], [], [])
    ea = np.array(sorted(edges), dtype=np.int64)
    verts = np.unique(ea)
    remap = np.searchsorted(verts, ea)
    return Graph.from_arrays(verts.size, remap[:, 0], remap[:, 1],
                             [g.label(int(v)) for v in verts])


@dataclass
class BiasReport:
    effort: float
    seed: int
    n_sources: int
    n_targets: int
    skipped_pairs: int
    original: dict
    sampled: dict
    k_max_original: int
    k_max_sampled: int
    shell_sizes_original: dict[int, int]
    shell_sizes_sampled: dict[int, int]
    transition_counts: np.ndarray = field(repr=False)
    transition_probabilities: np.ndarray = field(repr=False)
    diagonal_mass: float = float("nan")
    shell_correlation: float = float("nan")
    shell_fit_slope: float | None = None

    def as_dict(self) -> dict:
        return {
            "effort": self.effort, "seed": self.seed, "n_sources": self.n_sources,
            "n_targets": self.n_targets, "skipped_pairs": self.skipped_pairs,
            "original": self.original, "sampled": self.sampled,
            "k_max_original": self.k_max_original, "k_max_sampled": self.k_max_sampled,
            "shell_sizes_original": self.shell_sizes_original,
            "shell_sizes_sampled": self.shell_sizes_sampled,
            "diagonal_mass": self.diagonal_mass, "shell_correlation": self.shell_correlation,
            "shell_fit_slope": self.shell_fit_slope,
        }


def bias_experiment(g: Graph, n_sources: int, efforts, strategy=Strategy.USP,
                    seeds=(0,)) -> list[BiasReport]:
    """Sample ``g`` at each probing effort and seed, and compare shells.

    Effort is N_S * N_T / N, so each effort fixes the target count.
    """
    d = decompose(g)
    orig_sizes = shell_sizes(d)
    orig_summary = summarize(g).as_dict()
    reports = []
    for eps in efforts:
        for seed in seeds:
            cfg = SamplingConfig.from_effort(g.n, n_sources, eps, seed, strategy)
            smp = traceroute_sample(g, cfg)
            ds = decompose(smp.graph)
            cmp = compare_maps(g, smp.graph, d, ds)
            sizes = shell_sizes(ds)
            try:
                slope = fit_shell_powerlaw(sizes)
            except ValueError:
                slope = None
            reports.append(BiasReport(
                effort=float(eps), seed=int(seed), n_sources=n_sources,
                n_targets=cfg.n_targets, skipped_pairs=smp.skipped_pairs,
                original=orig_summary, sampled=summarize(smp.graph).as_dict(),
                k_max_original=d.k_max, k_max_sampled=ds.k_max,
                shell_sizes_original=orig_sizes, shell_sizes_sampled=sizes,
                transition_counts=cmp.transitions.counts,
                transition_probabilities=cmp.transitions.probabilities,
                diagonal_mass=cmp.diagonal_mass, shell_correlation=cmp.shell_correlation,
                shell_fit_slope=slope,
            ))
    return reports
