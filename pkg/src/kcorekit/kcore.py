"""k-core decomposition: shell indices, cores, shells and intra-shell clusters."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class ShellDecomposition:
    shell_index: np.ndarray
    k_max: int
    shells: dict[int, list[int]] = field(repr=False)

    @classmethod
    def from_indices(cls, shell_index) -> "ShellDecomposition":
        idx = np.asarray(shell_index, dtype=np.int64)
        idx.setflags(write=False)
        k_max = int(idx.max()) if idx.size else 0
        shells: dict[int, list[int]] = {}
        for v, c in enumerate(idx.tolist()):
            shells.setdefault(c, []).append(v)
        return cls(idx, k_max, dict(sorted(shells.items())))

    @property
    def n(self) -> int:
        return int(self.shell_index.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShellDecomposition):
            return NotImplemented
        return self.k_max == other.k_max and np.array_equal(self.shell_index, other.shell_index)

    __hash__ = None


@dataclass(frozen=True)
class ShellCluster:
    index: int
    members: frozenset
    upward_edge_count: int


def decompose(g: Graph) -> ShellDecomposition:
    """Shell index of every vertex in O(n + e).

    Vertices are kept in an array sorted by current degree, with ``bins[d]``
    pointing at the first vertex of degree ``d``. Processing vertices in
    order and decrementing higher-degree neighbours (moving each to the
    front of its bin by a swap) keeps the array sorted throughout.
    """
    n = g.n
    if n == 0:
        return ShellDecomposition.from_indices([])
    deg = g.degrees().tolist()
    ptr = g.indptr.tolist()
    nbrs = g.indices.tolist()
    max_deg = max(deg)

    bins = [0] * (max_deg + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(max_deg + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        p = bins[deg[v]]
        pos[v] = p
        vert[p] = v
        bins[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in nbrs[ptr[v]:ptr[v + 1]]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bins[du] += 1
                deg[u] = du - 1
    return ShellDecomposition.from_indices(deg)


def brute_force_decompose(g: Graph) -> ShellDecomposition:
    """Reference decomposition by literal repeated pruning.

    For k = 1, 2, ... every vertex of remaining degree < k is deleted until
    none is left; a vertex deleted while building the k-core gets index k-1.
    Quadratic-ish; meant for small graphs in tests.
    """
    n = g.n
    adj = [set(nb) for nb in g.adjacency_lists()]
    alive = set(range(n))
    index = [0] * n
    k = 1
    while alive:
        changed = True
        while changed:
            changed = False
            doomed = [v for v in alive if len(adj[v] & alive) < k]
            if doomed:
                changed = True
                for v in doomed:
                    index[v] = k - 1
                alive.difference_update(doomed)
        k += 1
    return ShellDecomposition.from_indices(index)


def core_subgraph(g: Graph, d: ShellDecomposition, k: int) -> Graph:
    """Induced subgraph on vertices of shell index >= k (empty if k > k_max)."""
    return g.induced(d.shell_index >= k)


def shell_sizes(d: ShellDecomposition) -> dict[int, int]:
    """|S_k| for k = 1..k_max, zero-size shells included."""
    counts = np.bincount(d.shell_index, minlength=d.k_max + 1) if d.n else np.zeros(1, int)
    return {k: int(counts[k]) for k in range(1, d.k_max + 1)}


def shell_clusters(g: Graph, d: ShellDecomposition) -> list[ShellCluster]:
    """Connected components inside each shell, with their upward edge counts.

    Clusters are listed by shell index, then by smallest member.
    """
    adj = g.adjacency_lists()
    c = d.shell_index.tolist()
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        cs = c[s]
        seen[s] = True
        members = [s]
        up = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                cu = c[u]
                if cu == cs:
                    if not seen[u]:
                        seen[u] = True
                        members.append(u)
                        queue.append(u)
                elif cu > cs:
                    up += 1
        out.append(ShellCluster(cs, frozenset(members), up))
    out.sort(key=lambda q: (q.index, min(q.members)))
    return out


def fit_shell_powerlaw(sizes: dict[int, float], k_range: tuple[int, int] | None = None) -> float:
    """Least-squares slope of log|S_k| against log k over non-empty shells.

    Returns the slope itself, so a decaying power law gives a negative value.
    """
    lo, hi = k_range if k_range is not None else (1, max(sizes, default=0))
    pts = [(k, s) for k, s in sizes.items() if lo <= k <= hi and k > 0 and s > 0]
    if len(pts) < 3:
        raise ValueError("insufficient shells for fit")
    x = np.log([k for k, _ in pts])
    y = np.log([s for _, s in pts])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
