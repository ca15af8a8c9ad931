"""Degree, correlation, clustering and centrality statistics of graphs and k-cores."""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numba
import numpy as np

from .graph import Graph
from .kcore import ShellDecomposition, core_subgraph

log = logging.getLogger(__name__)

# older system TBB; numba falls back to another threading layer on its own
warnings.filterwarnings("ignore", message="The TBB threading layer", category=numba.NumbaWarning)

# betweenness sources are split into this many blocks regardless of thread
# count, so the floating-point reduction order never changes
_BC_BLOCKS = 64

# self-similarity gates: KS between rescaled core CCDFs, and the binned
# L-infinity gap between rescaled d_nn / cc spectra
COLLAPSE_KS_MAX = 0.1
SPECTRUM_LINF_MAX = 0.15


@dataclass(frozen=True)
class Spectrum:
    """A per-degree statistic.

    ``support_counts`` counts the vertices that entered the average (those
    for which the per-vertex quantity is defined). ``mean_value`` is the
    plain average of the per-vertex quantity over the same vertices.
    """
    points: dict[int, float]
    support_counts: dict[int, int]
    mean_value: float

    def degrees(self) -> np.ndarray:
        return np.array(sorted(self.points), dtype=np.int64)


@dataclass(frozen=True)
class CentralityTable:
    """Raw betweenness, unordered pairs, endpoints excluded."""
    values: np.ndarray
    convention: str = "unordered pairs, endpoints excluded, unnormalized"


@dataclass(frozen=True)
class RescaledDistribution:
    k: int
    n: int
    mean_degree: float
    samples: np.ndarray  # sorted degrees / mean_degree

    def ccdf(self) -> list[tuple[float, float]]:
        """(x, P(X > x)) at every distinct rescaled degree."""
        xs, counts = np.unique(self.samples, return_counts=True)
        above = 1.0 - np.cumsum(counts) / self.samples.size
        return list(zip(xs.tolist(), above.tolist()))


@dataclass(frozen=True)
class CentralityProfile:
    by_shell: dict[int, tuple[float, float]]  # shell -> (mean bc, std bc)
    by_degree: dict[int, tuple[float, float]]  # degree -> (mean shell, std shell)


def cumulative_degree_distribution(g: Graph) -> list[tuple[int, float]]:
    """P(degree > d) for d = 0..d_max."""
    deg = g.degrees()
    if g.n == 0:
        return []
    counts = np.bincount(deg)
    above = 1.0 - np.cumsum(counts) / g.n
    above[-1] = 0.0
    return [(d, float(p)) for d, p in enumerate(above)]


def rescaled_core_distributions(g: Graph, d: ShellDecomposition,
                                core_indices) -> dict[int, RescaledDistribution]:
    """Degree samples of each requested k-core, divided by that core's mean degree.

    Degrees are measured inside the core. Empty cores are skipped.
    """
    out = {}
    for k in core_indices:
        core = core_subgraph(g, d, k)
        if core.n == 0 or core.e == 0:
            log.warning("core %d is empty, skipped", k)
            continue
        deg = core.degrees().astype(float)
        mean = float(deg.mean())
        out[k] = RescaledDistribution(k, core.n, mean, np.sort(deg / mean))
    return out


def avg_nearest_neighbor_degree(g: Graph) -> Spectrum:
    """d_nn(d): mean over degree-d vertices of their neighbours' mean degree."""
    deg = g.degrees()
    nz = deg > 0
    if not nz.any():
        return Spectrum({}, {}, 0.0)
    # sum of neighbour degrees per vertex
    owner = np.repeat(np.arange(g.n), deg)
    nsum = np.bincount(owner, weights=deg[g.indices].astype(float), minlength=g.n)
    knn = nsum[nz] / deg[nz]
    return _per_degree(deg[nz], knn)


def local_clustering(g: Graph) -> np.ndarray:
    """Per-vertex clustering coefficient; NaN where degree < 2."""
    adj = [set(nb) for nb in g.adjacency_lists()]
    links = np.zeros(g.n)
    for u in range(g.n):
        au = adj[u]
        for v in au:
            if v > u:
                av = adj[v]
                t = len(au & av) if len(au) < len(av) else len(av & au)
                links[u] += t
                links[v] += t
    # each neighbour link of u was seen from both of its edges to u
    links /= 2.0
    deg = g.degrees().astype(float)
    cc = np.full(g.n, np.nan)
    ok = deg >= 2
    cc[ok] = 2.0 * links[ok] / (deg[ok] * (deg[ok] - 1.0))
    return cc


def clustering_spectrum(g: Graph) -> Spectrum:
    """cc(d): mean local clustering of degree-d vertices, for d >= 2."""
    deg = g.degrees()
    cc = local_clustering(g)
    ok = deg >= 2
    if not ok.any():
        return Spectrum({}, {}, 0.0)
    return _per_degree(deg[ok], cc[ok])


def _per_degree(deg: np.ndarray, values: np.ndarray) -> Spectrum:
    counts = np.bincount(deg)
    sums = np.bincount(deg, weights=values)
    present = np.flatnonzero(counts)
    return Spectrum(
        points={int(k): float(sums[k] / counts[k]) for k in present},
        support_counts={int(k): int(counts[k]) for k in present},
        mean_value=float(values.mean()),
    )


@numba.njit(cache=True)
def _brandes_block(indptr, indices, sources):
    n = indptr.size - 1
    bc = np.zeros(n)
    sigma = np.zeros(n)
    dist = np.empty(n, dtype=np.int64)
    delta = np.zeros(n)
    order = np.empty(n, dtype=np.int64)
    for s in sources:
        dist[:] = -1
        sigma[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        for i in range(tail):
            delta[order[i]] = 0.0
        for i in range(tail - 1, 0, -1):
            w = order[i]
            dw = dist[w]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
            bc[w] += delta[w]
    return bc


@numba.njit(parallel=True, cache=True)
def _brandes_all(indptr, indices, blocks):
    n = indptr.size - 1
    nb = len(blocks) - 1
    partial = np.zeros((nb, n))
    for b in numba.prange(nb):
        srcs = np.arange(blocks[b], blocks[b + 1])
        partial[b, :] = _brandes_block(indptr, indices, srcs)
    out = np.zeros(n)
    for b in range(nb):
        out += partial[b, :]
    return out


def betweenness(g: Graph) -> CentralityTable:
    """Exact shortest-path betweenness (Brandes dependency accumulation).

    Sums over unordered pairs {s, t} with s, t != v. Pairs in different
    components contribute nothing.
    """
    if g.n == 0:
        return CentralityTable(np.zeros(0))
    blocks = np.linspace(0, g.n, min(_BC_BLOCKS, g.n) + 1).astype(np.int64)
    raw = _brandes_all(g.indptr, g.indices, blocks)
    return CentralityTable(raw / 2.0)


def shell_centrality_profile(g: Graph, d: ShellDecomposition,
                             bc: CentralityTable | None = None) -> CentralityProfile:
    """Mean/std of betweenness per shell index and of shell index per degree.

    Betweenness is taken on ``g`` itself, never on a core.
    """
    if bc is None:
        bc = betweenness(g)
    return CentralityProfile(
        by_shell=_group_stats(d.shell_index, bc.values),
        by_degree=_group_stats(g.degrees(), d.shell_index.astype(float)),
    )


def _group_stats(keys: np.ndarray, values: np.ndarray) -> dict[int, tuple[float, float]]:
    if keys.size == 0:
        return {}
    counts = np.bincount(keys)
    s1 = np.bincount(keys, weights=values)
    s2 = np.bincount(keys, weights=values * values)
    out = {}
    for k in np.flatnonzero(counts):
        mean = s1[k] / counts[k]
        var = max(s2[k] / counts[k] - mean * mean, 0.0)
        out[int(k)] = (float(mean), float(np.sqrt(var)))
    return out


def collapse_distance(a, b, rel_tol: float = 1e-9) -> float:
    """Two-sample Kolmogorov-Smirnov statistic between two samples.

    Values within ``rel_tol`` of each other count as ties, so samples that
    differ only by floating-point rescaling noise (x/mean(x) against
    cx/mean(cx)) give exactly 0.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([a, b])
    grid = grid + rel_tol * np.abs(grid)
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def rescale_spectrum(spec: Spectrum, mean_degree: float) -> list[tuple[float, float, int]]:
    """(d / <d>, value / mean_value, n_d) triples."""
    if not spec.points or spec.mean_value == 0:
        return []
    return [(d / mean_degree, v / spec.mean_value, spec.support_counts[d])
            for d, v in sorted(spec.points.items())]


def log_bin(points: list[tuple[float, float, int]], per_decade: int = 5,
            origin: float = 1.0) -> dict[int, tuple[float, int]]:
    """Count-weighted averages of (x, y, count) points in log-spaced x bins.

    Bin ``i`` covers ``origin * 10**(i/per_decade)`` up to the next edge.
    Returns bin -> (mean y, total count).
    """
    acc: dict[int, list[float]] = {}
    for x, y, c in points:
        if x <= 0:
            continue
        i = int(np.floor(per_decade * np.log10(x / origin) + 1e-9))
        slot = acc.setdefault(i, [0.0, 0])
        slot[0] += y * c
        slot[1] += c
    return {i: (s / c, c) for i, (s, c) in sorted(acc.items())}


def spectrum_distance(a: list[tuple[float, float, int]], b: list[tuple[float, float, int]],
                      per_decade: int = 5, min_count: int = 50) -> float:
    """Max gap between two rescaled spectra on their common binned support.

    Both spectra are log-binned in rescaled degree; only bins holding at
    least ``min_count`` vertices on both sides are compared. Returns NaN if
    no bin qualifies.
    """
    ba, bb = log_bin(a, per_decade), log_bin(b, per_decade)
    gaps = [abs(ba[i][0] - bb[i][0]) for i in ba.keys() & bb.keys()
            if ba[i][1] >= min_count and bb[i][1] >= min_count]
    return float(max(gaps)) if gaps else float("nan")
