"""Shell-index comparison of two maps matched by vertex label."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .kcore import ShellDecomposition, decompose

NORMALIZATION = "row"  # each row conditioned on the shell index in map A


@dataclass(frozen=True)
class TransitionMatrix:
    """Shell-index transitions from map A (rows) to map B (columns).

    Index 0 on either axis means "absent from that map". Vertices with
    shell index 0 (isolated) count as absent, since an edge list cannot
    represent them.
    """
    counts: np.ndarray
    probabilities: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def rows(self) -> list[tuple[int, int, float]]:
        """(x, y, probability) for every non-zero entry."""
        xs, ys = np.nonzero(self.probabilities)
        return [(int(x), int(y), float(self.probabilities[x, y])) for x, y in zip(xs, ys)]


@dataclass(frozen=True)
class InOutProfile:
    in_dist: dict[int, float]   # vertices only in B, by their B shell index
    out_dist: dict[int, float]  # vertices only in A, by their A shell index
    n_in: int
    n_out: int


@dataclass(frozen=True)
class MapComparison:
    transitions: TransitionMatrix
    in_out: InOutProfile
    diagonal_mass: float
    n_common: int
    shell_correlation: float  # Pearson over vertices present in both


def compare_maps(g_a: Graph, g_b: Graph, d_a: ShellDecomposition | None = None,
                 d_b: ShellDecomposition | None = None) -> MapComparison:
    """Decompose both graphs (unless given) and align them by label."""
    d_a = decompose(g_a) if d_a is None else d_a
    d_b = decompose(g_b) if d_b is None else d_b
    shell_a = {lab: c for lab, c in zip(g_a.label_list(), d_a.shell_index.tolist()) if c > 0}
    shell_b = {lab: c for lab, c in zip(g_b.label_list(), d_b.shell_index.tolist()) if c > 0}
    common = shell_a.keys() & shell_b.keys()
    if not common:
        raise ValueError("disjoint label sets")

    counts = np.zeros((d_a.k_max + 1, d_b.k_max + 1), dtype=np.int64)
    for lab, x in shell_a.items():
        counts[x, shell_b.get(lab, 0)] += 1
    for lab, y in shell_b.items():
        if lab not in shell_a:
            counts[0, y] += 1
    totals = counts.sum(axis=1, keepdims=True)
    probs = np.divide(counts, totals, out=np.zeros(counts.shape), where=totals > 0)

    only_a = [shell_a[lab] for lab in shell_a.keys() - common]
    only_b = [shell_b[lab] for lab in shell_b.keys() - common]
    in_out = InOutProfile(_distribution(only_b), _distribution(only_a), len(only_b), len(only_a))

    xa = np.array([shell_a[lab] for lab in sorted(common, key=str)], dtype=float)
    xb = np.array([shell_b[lab] for lab in sorted(common, key=str)], dtype=float)
    diag = float(np.mean(xa == xb))
    if xa.std() > 0 and xb.std() > 0:
        corr = float(np.corrcoef(xa, xb)[0, 1])
    else:
        corr = float("nan")
    return MapComparison(TransitionMatrix(counts, probs), in_out, diag, len(common), corr)


def _distribution(values: list[int]) -> dict[int, float]:
    if not values:
        return {}
    c = np.bincount(values)
    return {int(k): float(c[k] / len(values)) for k in np.flatnonzero(c)}
