"""Seeded synthetic topologies: ER, BA, configuration model and a BRITE-like growth.

Every generator is a pure function of its parameters and seed. Randomness
comes from :func:`numpy.random.default_rng`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .graph import Graph

log = logging.getLogger(__name__)

# Table-1-scale RSF networks have d_max just under 10^3; see sample_degree_sequence.
DEFAULT_PARETO_CUTOFF = 1000
# one extra preferential edge per arrival with this probability gives <d> ~ 3.6 at m=1
DEFAULT_BRITE_P_EXTRA = 0.8


class Kind(str, Enum):
    ER = "er"
    BA = "ba"
    CONFIG_PARETO = "pareto"
    CONFIG_WEIBULL = "weibull"
    BRITE = "brite"


@dataclass(frozen=True)
class GeneratorConfig:
    kind: Kind
    n: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        p = self.params
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.kind in (Kind.BA, Kind.BRITE):
            m = p.get("m", 2 if self.kind is Kind.BA else 1)
            if not (m >= 1 and self.n >= m + 1):
                raise ValueError("growth models need n >= m + 1 and m >= 1")
            if self.kind is Kind.BRITE and not 0 <= p.get("p_extra", DEFAULT_BRITE_P_EXTRA) < 1:
                raise ValueError("p_extra must lie in [0, 1)")
        if self.kind is Kind.CONFIG_PARETO and p.get("gamma", 2.3) <= 2:
            raise ValueError("gamma must exceed 2 for a finite mean degree")
        if self.kind is Kind.CONFIG_WEIBULL and (p.get("a", 0.4) <= 0 or p.get("c", 0.6) <= 0):
            raise ValueError("Weibull shape and scale must be positive")

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "seed": self.seed, "params": dict(self.params)}


@dataclass(frozen=True)
class DegreeSequence:
    degrees: np.ndarray

    def __post_init__(self):
        deg = np.asarray(self.degrees, dtype=np.int64)
        if deg.size and deg.min() < 0:
            raise ValueError("negative degree")
        if int(deg.sum()) % 2:
            raise ValueError("degree sum must be even")
        if deg.size and deg.max() >= deg.size:
            raise ValueError("degree exceeds n - 1")
        object.__setattr__(self, "degrees", deg)


@dataclass
class GenerationLog:
    """Side information a generator reports alongside its graph."""
    dropped_stubs: int = 0
    target_stubs: int = 0
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"dropped_stubs": self.dropped_stubs, "target_stubs": self.target_stubs,
                "notes": list(self.notes)}


def gen_er(n: int, e: int, seed: int) -> Graph:
    """G(n, e): exactly ``e`` distinct edges drawn uniformly."""
    pairs = n * (n - 1) // 2
    if e > pairs:
        raise ValueError(f"cannot place {e} edges on {n} vertices (max {pairs})")
    rng = np.random.default_rng(seed)
    if e > pairs // 2:
        # dense: pick edge ranks directly
        ranks = np.sort(rng.choice(pairs, size=e, replace=False))
        u, v = _unrank_pairs(ranks, n)
        return Graph.from_arrays(n, u, v)
    keys = np.empty(0, dtype=np.int64)
    while keys.size < e:
        need = e - keys.size
        draw = int(need * 1.1) + 16
        u = rng.integers(0, n, size=draw)
        v = rng.integers(0, n, size=draw)
        ok = u != v
        lo, hi = np.minimum(u[ok], v[ok]), np.maximum(u[ok], v[ok])
        fresh = lo * n + hi
        # keep first occurrence order so the result depends only on the stream
        _, first = np.unique(fresh, return_index=True)
        fresh = fresh[np.sort(first)]
        fresh = fresh[~np.isin(fresh, keys)][:need]
        keys = np.concatenate([keys, fresh])
    return Graph.from_arrays(n, keys // n, keys % n)


def _unrank_pairs(ranks: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # rank r enumerates (i, j), i < j, row-major
    u = np.empty(ranks.size, dtype=np.int64)
    v = np.empty(ranks.size, dtype=np.int64)
    rows = np.arange(max(n - 1, 1), dtype=np.int64)
    row_start = rows * (n - 1) - rows * (rows - 1) // 2
    i = np.searchsorted(row_start, ranks, side="right") - 1
    u[:] = i
    v[:] = ranks - row_start[i] + i + 1
    return u, v


def _grow(n: int, m: int, p_extra: float, rng: np.random.Generator) -> Graph:
    """Shared preferential-attachment growth used by BA and BRITE."""
    m0 = min(n, m + 2)
    src: list[int] = []
    dst: list[int] = []
    stubs: list[int] = []  # every edge endpoint, so uniform picks are degree-proportional
    edges: set[tuple[int, int]] = set()

    def add(a: int, b: int) -> None:
        src.append(a)
        dst.append(b)
        stubs.append(a)
        stubs.append(b)
        edges.add((a, b) if a < b else (b, a))

    for a in range(m0):
        for b in range(a + 1, m0):
            add(a, b)
    random = rng.random
    for v in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(stubs[int(random() * len(stubs))])
        for t in sorted(targets):
            add(v, t)
        if p_extra > 0 and random() < p_extra:
            while True:
                a = stubs[int(random() * len(stubs))]
                b = stubs[int(random() * len(stubs))]
                if a != b and ((a, b) if a < b else (b, a)) not in edges:
                    add(a, b)
                    break
    return Graph.from_arrays(n, src, dst)


def gen_ba(n: int, m: int, seed: int) -> Graph:
    """Barabasi-Albert growth with ``m`` links per arriving vertex.

    Growth starts from a clique on ``m + 2`` vertices (or on all ``n`` if
    fewer). Targets are drawn from the endpoint list, so selection is
    linear in degree; repeats are redrawn.
    """
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    return _grow(n, m, 0.0, np.random.default_rng(seed))


def gen_brite(n: int, m: int, p_extra: float, seed: int) -> Graph:
    """BA-style growth plus preferential edges between existing vertices.

    After each arrival, with probability ``p_extra`` one extra edge is added
    whose two endpoints are both drawn preferentially (redrawn on a loop or
    an existing edge).
    """
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    if not 0 <= p_extra < 1:
        raise ValueError("p_extra must lie in [0, 1)")
    return _grow(n, m, p_extra, np.random.default_rng(seed))


def sample_degree_sequence(kind, params: dict, n: int, seed: int) -> DegreeSequence:
    """Draw ``n`` degrees from a heavy-tailed law.

    ``pareto``: discrete power law P(k) ~ k^-gamma on
    ``[min_degree, max_degree]`` sampled by inverse CDF. ``max_degree``
    defaults to 1000 (clamped to n - 1); pass ``None`` for no cutoff.

    ``weibull``: continuous Weibull(shape ``a``, scale ``c``) floored to an
    integer, then raised to ``min_degree`` where it falls below.

    An odd total is fixed by redrawing one randomly chosen entry until the
    parity flips.
    """
    kind = Kind(kind)
    rng = np.random.default_rng(seed)
    if kind is Kind.CONFIG_PARETO:
        gamma = params.get("gamma", 2.3)
        kmin = params.get("min_degree", 2)
        kmax = params.get("max_degree", DEFAULT_PARETO_CUTOFF)
        kmax = n - 1 if kmax is None else min(kmax, n - 1)
        ks = np.arange(kmin, kmax + 1, dtype=np.int64)
        cdf = np.cumsum(ks.astype(float) ** -gamma)
        cdf /= cdf[-1]

        def draw(size):
            return ks[np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), ks.size - 1)]
    elif kind is Kind.CONFIG_WEIBULL:
        a = params.get("a", 0.4)
        c = params.get("c", 0.6)
        kmin = params.get("min_degree", 1)

        def draw(size):
            x = np.floor(c * rng.weibull(a, size))
            return np.clip(x, kmin, n - 1).astype(np.int64)
    else:
        raise ValueError(f"no degree law for {kind.value}")

    deg = draw(n)
    while n and int(deg.sum()) % 2:
        i = int(rng.integers(n))
        deg[i] = draw(1)[0]
    return DegreeSequence(deg)


def gen_configuration(seq: DegreeSequence, seed: int, report: GenerationLog | None = None) -> Graph:
    """Random simple graph with (nearly) the given degrees.

    Stubs are shuffled and paired. A pair that would form a loop or repeat
    an edge ``(a, b)`` is rewired against a random accepted edge ``(c, d)``,
    replacing it with ``(a, c)`` and ``(b, d)``; this keeps every degree.
    Each rewiring pass gets ``200 * len(pending pairs)`` attempts. Pairs a
    pass cannot place are pooled, reshuffled and paired again (this only
    matters for tiny or near-complete sequences); whatever survives
    ``_REPAIR_ROUNDS`` rounds is dropped and reported.
    """
    rng = np.random.default_rng(seed)
    deg = seq.degrees
    n = deg.size
    stubs = np.repeat(np.arange(n, dtype=np.int64), deg)
    rng.shuffle(stubs)
    flat = stubs.tolist()
    edges: set[tuple[int, int]] = set()
    elist: list[tuple[int, int]] = []

    def pair_up(seq_):
        bad = []
        for a, b in zip(seq_[::2], seq_[1::2]):
            key = (a, b) if a < b else (b, a)
            if a == b or key in edges:
                bad.append((a, b))
            else:
                edges.add(key)
                elist.append(key)
        return bad

    pending = pair_up(flat)
    for _ in range(_REPAIR_ROUNDS):
        if not pending:
            break
        pending = _rewire(pending, edges, elist, rng)
        if not pending:
            break
        pool = [x for pair in pending for x in pair]
        rng.shuffle(pool)
        pending = pair_up(pool)
    dropped = 2 * len(pending)
    if report is not None:
        report.dropped_stubs = dropped
        report.target_stubs = len(flat)
    if dropped:
        log.info("configuration model dropped %d of %d stubs", dropped, len(flat))
    if not elist:
        return Graph.from_arrays(n, [], [])
    ea = np.array(elist, dtype=np.int64)
    return Graph.from_arrays(n, ea[:, 0], ea[:, 1])


_REPAIR_ROUNDS = 10


def _rewire(rejected, edges, elist, rng):
    """Place each rejected pair by a degree-preserving swap; return the unplaced ones."""
    budget = 200 * len(rejected)
    attempts = 0
    left = []
    for a, b in rejected:
        placed = False
        while attempts < budget and elist:
            attempts += 1
            i = int(rng.integers(len(elist)))
            c, d = elist[i]
            if rng.random() < 0.5:
                c, d = d, c
            k1 = (a, c) if a < c else (c, a)
            k2 = (b, d) if b < d else (d, b)
            if a == c or b == d or k1 == k2 or k1 in edges or k2 in edges:
                continue
            edges.discard(elist[i])
            elist[i] = k1
            elist.append(k2)
            edges.add(k1)
            edges.add(k2)
            placed = True
            break
        if not placed:
            left.append((a, b))
    return left


def generate(cfg: GeneratorConfig, report: GenerationLog | None = None) -> Graph:
    """Dispatch on ``cfg.kind``."""
    p = cfg.params
    if cfg.kind is Kind.ER:
        return gen_er(cfg.n, p["e"], cfg.seed)
    if cfg.kind is Kind.BA:
        return gen_ba(cfg.n, p.get("m", 2), cfg.seed)
    if cfg.kind is Kind.BRITE:
        return gen_brite(cfg.n, p.get("m", 1), p.get("p_extra", DEFAULT_BRITE_P_EXTRA), cfg.seed)
    seq_seed, wire_seed = np.random.SeedSequence(cfg.seed).spawn(2)
    seq = sample_degree_sequence(cfg.kind, p, cfg.n, seq_seed)
    return gen_configuration(seq, wire_seed, report)
