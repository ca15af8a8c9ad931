"""Edge-disjoint path counts and core connectivity checks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .graph import Graph, is_connected
from .kcore import ShellDecomposition, core_subgraph, shell_clusters


@dataclass(frozen=True)
class PairCheck:
    u: object
    v: object
    c_u: int
    c_v: int
    disjoint_paths: int

    @property
    def bound_satisfied(self) -> bool:
        return self.disjoint_paths >= min(self.c_u, self.c_v)


@dataclass(frozen=True)
class UpwardEdgeReport:
    clusters_checked: int
    violating_clusters: list[tuple[int, int, int]]  # (shell index, cluster id, upward edges)
    top_core_pairs: int
    top_core_min_paths: int | None
    top_core_ok: bool


@dataclass
class ConnectivityReport:
    core_connected: dict[int, bool] = field(default_factory=dict)
    sampled_pairs: list[PairCheck] = field(default_factory=list)
    violating_clusters: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def violation_fraction(self) -> float:
        if not self.sampled_pairs:
            return 0.0
        return sum(not p.bound_satisfied for p in self.sampled_pairs) / len(self.sampled_pairs)

    def violations_by_min_index(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.sampled_pairs:
            if not p.bound_satisfied:
                k = min(p.c_u, p.c_v)
                out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def as_dict(self) -> dict:
        return {
            "core_connected": {str(k): v for k, v in self.core_connected.items()},
            "n_pairs": len(self.sampled_pairs),
            "violation_fraction": self.violation_fraction,
            "violations_by_min_index": {str(k): v for k, v in self.violations_by_min_index().items()},
            "sampled_pairs": [
                {"u": str(p.u), "v": str(p.v), "c_u": p.c_u, "c_v": p.c_v,
                 "disjoint_paths": p.disjoint_paths, "bound_satisfied": p.bound_satisfied}
                for p in self.sampled_pairs
            ],
            "violating_clusters": [list(c) for c in self.violating_clusters],
        }


def _reverse_arcs(g: Graph) -> np.ndarray:
    rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees())
    keys = rows * g.n + g.indices
    return np.searchsorted(keys, g.indices * g.n + rows)


@numba.njit(cache=True)
def _unit_maxflow(indptr, indices, rev, s, t, limit):
    n = indptr.size - 1
    # residual capacity per arc; an undirected edge starts as two unit arcs
    cap = np.ones(indices.size, dtype=np.int64)
    parent_arc = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    flow = 0
    while flow < limit:
        parent_arc[:] = -1
        parent_arc[s] = -2
        queue[0] = s
        head, tail = 0, 1
        while head < tail and parent_arc[t] == -1:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if cap[p] > 0 and parent_arc[w] == -1:
                    parent_arc[w] = p
                    queue[tail] = w
                    tail += 1
        if parent_arc[t] == -1:
            break
        w = t
        while w != s:
            p = parent_arc[w]
            cap[p] -= 1
            cap[rev[p]] += 1
            w = indices[rev[p]]
        flow += 1
    return flow


def edge_disjoint_paths(g: Graph, u: int, v: int, _rev: np.ndarray | None = None) -> int:
    """Maximum number of pairwise edge-disjoint u-v paths (unit-capacity max flow)."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise IndexError("vertex not in graph")
    if u == v:
        raise ValueError("endpoints must differ")
    rev = _reverse_arcs(g) if _rev is None else _rev
    limit = min(g.degree(u), g.degree(v))
    return int(_unit_maxflow(g.indptr, g.indices, rev, u, v, limit))


def verify_cores_connected(g: Graph, d: ShellDecomposition) -> dict[int, bool]:
    return {k: is_connected(core_subgraph(g, d, k)) for k in range(1, d.k_max + 1)}


def verify_disjoint_path_bound(g: Graph, d: ShellDecomposition, n_pairs: int = 1000,
                               seed: int = 0) -> ConnectivityReport:
    """Check ``paths(u, v) >= min(c_u, c_v)`` on uniformly sampled vertex pairs."""
    if n_pairs < 1:
        raise ValueError("n_pairs must be positive")
    if g.n < 2:
        return ConnectivityReport()
    rng = np.random.default_rng(seed)
    rev = _reverse_arcs(g)
    c = d.shell_index
    pairs = []
    for _ in range(n_pairs):
        u, v = rng.choice(g.n, size=2, replace=False).tolist()
        k = edge_disjoint_paths(g, u, v, rev)
        pairs.append(PairCheck(g.label(u), g.label(v), int(c[u]), int(c[v]), k))
    return ConnectivityReport(sampled_pairs=pairs)


def verify_shell_upward_edges(g: Graph, d: ShellDecomposition, top_pairs: int = 200,
                              seed: int = 0) -> UpwardEdgeReport:
    """Flag shell clusters with fewer than ``c`` edges into higher shells.

    Also samples pairs inside the central core and checks that each has at
    least ``k_max`` edge-disjoint paths within that core.
    """
    clusters = [q for q in shell_clusters(g, d) if 0 < q.index < d.k_max]
    bad = []
    per_shell: dict[int, int] = {}
    for q in clusters:
        cid = per_shell.get(q.index, 0)
        per_shell[q.index] = cid + 1
        if q.upward_edge_count < q.index:
            bad.append((q.index, cid, q.upward_edge_count))

    top = core_subgraph(g, d, d.k_max)
    checked, worst = 0, None
    if top.n >= 2 and d.k_max > 0:
        rng = np.random.default_rng(seed)
        rev = _reverse_arcs(top)
        all_pairs = top.n * (top.n - 1) // 2
        if all_pairs <= top_pairs:
            pairs = [(a, b) for a in range(top.n) for b in range(a + 1, top.n)]
        else:
            pairs = [tuple(rng.choice(top.n, size=2, replace=False).tolist())
                     for _ in range(top_pairs)]
        for a, b in pairs:
            k = edge_disjoint_paths(top, a, b, rev)
            worst = k if worst is None else min(worst, k)
        checked = len(pairs)
    ok = worst is None or worst >= d.k_max
    return UpwardEdgeReport(len(clusters), bad, checked, worst, ok)


def connectivity_report(g: Graph, d: ShellDecomposition, n_pairs: int = 1000,
                        seed: int = 0) -> ConnectivityReport:
    """All three checks bundled for the ``verify`` command."""
    rep = verify_disjoint_path_bound(g, d, n_pairs, seed)
    rep.core_connected = verify_cores_connected(g, d)
    rep.violating_clusters = verify_shell_upward_edges(g, d, seed=seed).violating_clusters
    return rep
