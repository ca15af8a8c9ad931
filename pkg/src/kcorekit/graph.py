"""Immutable undirected simple graphs stored in CSR form.

Vertices are dense indices ``0..n-1``. An optional label tuple maps each
index back to the external identifier it was built from (AS numbers,
node names, original indices of a parent graph).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np


class Graph:
    """Undirected simple graph with sorted CSR adjacency.

    Use :func:`build_graph` or :meth:`Graph.from_arrays` rather than the
    constructor; the constructor trusts its input.
    """

    __slots__ = ("n", "indptr", "indices", "_labels", "_index_of")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray,
                 labels: Sequence[Hashable] | None = None):
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self._labels = tuple(labels) if labels is not None else None
        self._index_of = None

    @classmethod
    def from_arrays(cls, n: int, src, dst, labels=None) -> "Graph":
        """Build from integer endpoint arrays, dropping loops and duplicates."""
        src = np.asarray(src, dtype=np.int64).ravel()
        dst = np.asarray(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise ValueError("endpoint arrays differ in length")
        if src.size and (min(src.min(), dst.min()) < 0
                         or max(src.max(), dst.max()) >= n):
            raise ValueError("endpoint index out of range")
        keep = src != dst
        lo = np.minimum(src[keep], dst[keep])
        hi = np.maximum(src[keep], dst[keep])
        key = np.unique(lo * max(n, 1) + hi)
        lo, hi = key // max(n, 1), key % max(n, 1)
        # both directions, sorted by (row, col)
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(n, indptr, cols.astype(np.int64), labels)

    # basic accessors

    @property
    def e(self) -> int:
        return int(self.indices.size // 2)

    @property
    def labels(self) -> tuple | None:
        return self._labels

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def label(self, v: int) -> Hashable:
        return self._labels[v] if self._labels is not None else v

    def label_list(self) -> list:
        return list(self._labels) if self._labels is not None else list(range(self.n))

    def index_of(self, label: Hashable) -> int:
        """Internal index for an external label (KeyError if absent)."""
        if self._labels is None:
            if isinstance(label, (int, np.integer)) and 0 <= label < self.n:
                return int(label)
            raise KeyError(label)
        if self._index_of is None:
            self._index_of = {lab: i for i, lab in enumerate(self._labels)}
        return self._index_of[label]

    def adjacency_lists(self) -> list[list[int]]:
        """Plain Python adjacency, handy for pure-Python traversals."""
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [ind[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    def edge_array(self) -> np.ndarray:
        """(e, 2) array of edges with u < v, lexicographically sorted."""
        rows = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        mask = rows < self.indices
        return np.column_stack([rows[mask], self.indices[mask]])

    def edges(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.edge_array().tolist()]

    def labeled_edges(self) -> list[tuple[Hashable, Hashable]]:
        return [(self.label(u), self.label(v)) for u, v in self.edges()]

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph; vertices keep their relative order and labels."""
        keep = np.zeros(self.n, dtype=bool)
        keep[np.fromiter(vertices, dtype=np.int64)] = True
        return self.induced(keep)

    def induced(self, mask: np.ndarray) -> "Graph":
        mask = np.asarray(mask, dtype=bool)
        old = np.flatnonzero(mask)
        new_id = np.full(self.n, -1, dtype=np.int64)
        new_id[old] = np.arange(old.size)
        ea = self.edge_array()
        sel = mask[ea[:, 0]] & mask[ea[:, 1]] if ea.size else np.zeros(0, bool)
        labels = [self.label(int(v)) for v in old]
        return Graph.from_arrays(old.size, new_id[ea[sel, 0]], new_id[ea[sel, 1]], labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"


@dataclass(frozen=True)
class GraphSummary:
    n: int
    e: int
    mean_degree: float
    d_max: int

    def as_dict(self) -> dict:
        return {"n": self.n, "e": self.e, "mean_degree": self.mean_degree, "d_max": self.d_max}


def build_graph(edge_pairs: Iterable[tuple[Hashable, Hashable]]) -> Graph:
    """Graph from labeled edge pairs.

    Labels are mapped to dense indices in order of first appearance.
    Self-loops are skipped before indexing, so a label seen only in a loop
    does not become a vertex. Repeated edges collapse to one.
    """
    index: dict = {}
    src, dst = [], []
    for a, b in edge_pairs:
        if a == b:
            continue
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        src.append(ia)
        dst.append(ib)
    return Graph.from_arrays(len(index), src, dst, list(index))


def connected_components(g: Graph) -> np.ndarray:
    """Component id per vertex; ids numbered by smallest contained index."""
    comp = np.full(g.n, -1, dtype=np.int64)
    adj = g.adjacency_lists()
    cid = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = cid
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if comp[u] < 0:
                    comp[u] = cid
                    queue.append(u)
        cid += 1
    return comp


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return bool(connected_components(g).max() == 0)


def giant_component(g: Graph) -> Graph:
    """Induced subgraph on the largest connected component.

    Ties go to the component holding the smallest vertex index.
    """
    if g.n == 0:
        return g
    comp = connected_components(g)
    sizes = np.bincount(comp)
    biggest = int(np.argmax(sizes))  # argmax returns first max = lowest-index component
    if sizes[biggest] == g.n:
        return g
    return g.induced(comp == biggest)


def summarize(g: Graph) -> GraphSummary:
    deg = g.degrees()
    return GraphSummary(
        n=g.n,
        e=g.e,
        mean_degree=(2.0 * g.e / g.n) if g.n else 0.0,
        d_max=int(deg.max()) if g.n else 0,
    )
