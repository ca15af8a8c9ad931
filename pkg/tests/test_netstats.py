import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import ks_2samp

from kcorekit import generators as gen
from kcorekit import netstats as ns
from kcorekit.graph import build_graph, giant_component
from kcorekit.kcore import decompose

import oracles
from conftest import complete, cycle, k4_plus_pendant, path, star


def test_ccdf_clique_and_star():
    c = dict(ns.cumulative_degree_distribution(complete(4)))
    assert c[2] == 1.0 and c[3] == 0.0
    s = dict(ns.cumulative_degree_distribution(star(5)))
    assert s[0] == 1.0
    assert s[1] == pytest.approx(1 / 6)
    assert s[5] == 0.0


def test_ccdf_slope_on_rsf():
    g = giant_component(gen.generate(gen.GeneratorConfig(
        "pareto", 100_000, 0, {"gamma": 2.3, "min_degree": 2})))
    pts = [(d, p) for d, p in ns.cumulative_degree_distribution(g) if 5 <= d <= 100 and p > 0]
    x, y = np.log([p[0] for p in pts]), np.log([p[1] for p in pts])
    assert np.polyfit(x, y, 1)[0] == pytest.approx(-1.3, abs=0.15)


def test_knn_hand_cases():
    assert ns.avg_nearest_neighbor_degree(complete(4)).points == {3: 3.0}
    assert ns.avg_nearest_neighbor_degree(star(5)).points == {1: 5.0, 5: 1.0}
    assert ns.avg_nearest_neighbor_degree(path(3)).points == {1: 2.0, 2: 1.0}


def test_knn_skips_isolated():
    spec = ns.avg_nearest_neighbor_degree(gen.gen_er(10, 0, seed=0))
    assert spec.points == {}


def test_clustering_hand_cases():
    assert ns.clustering_spectrum(complete(4)).points == {3: 1.0}
    assert ns.clustering_spectrum(star(5)).points == {5: 0.0}
    tri_pendant = build_graph([("a", "b"), ("b", "c"), ("c", "a"), ("c", "p")])
    spec = ns.clustering_spectrum(tri_pendant)
    assert spec.points[2] == 1.0
    assert spec.points[3] == pytest.approx(1 / 3)
    assert 1 not in spec.points
    assert spec.mean_value == pytest.approx((1 + 1 + 1 / 3) / 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.integers(0, 1000))
def test_regular_graph_spectra(n, seed):
    g = cycle(n)
    assert ns.avg_nearest_neighbor_degree(g).points == {2: 2.0}
    assert list(ns.clustering_spectrum(g).points) == [2]


def test_local_clustering_against_counting():
    rng = np.random.default_rng(9)
    g = oracles.random_er(40, 0.2, rng)
    adj = oracles.adjacency_sets(g)
    cc = ns.local_clustering(g)
    for v in range(g.n):
        k = len(adj[v])
        if k < 2:
            assert math.isnan(cc[v])
            continue
        links = sum(1 for a in adj[v] for b in adj[v] if a < b and b in adj[a])
        assert cc[v] == pytest.approx(2 * links / (k * (k - 1)))


def test_betweenness_path_and_star():
    assert ns.betweenness(path(3)).values.tolist() == [0.0, 1.0, 0.0]
    for leaves in (1, 2, 5, 17):
        bc = ns.betweenness(star(leaves)).values
        assert bc[0] == leaves * (leaves - 1) / 2
        assert (bc[1:] == 0).all()


def test_betweenness_long_path():
    n = 9
    bc = ns.betweenness(path(n)).values
    assert bc.tolist() == [float(i * (n - 1 - i)) for i in range(n)]


def test_betweenness_tree_closed_form():
    rng = np.random.default_rng(4)
    g = build_graph([(v, int(rng.integers(v))) for v in range(1, 50)])
    adj = oracles.adjacency_sets(g)
    total = sum(oracles.bfs_distances(adj, s)[t] - 1 for s in range(g.n) for t in range(s + 1, g.n))
    assert ns.betweenness(g).values.sum() == pytest.approx(total)


@pytest.mark.parametrize("seed", range(12))
def test_betweenness_matches_enumeration(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(5, 61))
    g = oracles.random_er(n, float(rng.uniform(0.03, 0.25)), rng)
    np.testing.assert_allclose(ns.betweenness(g).values, oracles.betweenness_by_enumeration(g),
                               rtol=1e-9, atol=1e-9)


def test_betweenness_disconnected_pairs_contribute_nothing():
    g = build_graph([(0, 1), (1, 2), (3, 4), (4, 5)])
    assert ns.betweenness(g).values.tolist() == [0, 1, 0, 0, 1, 0]


def test_betweenness_deterministic():
    g = gen.gen_ba(3000, 2, seed=1)
    assert np.array_equal(ns.betweenness(g).values, ns.betweenness(g).values)


def test_centrality_profile_k4_pendant():
    g = k4_plus_pendant()
    prof = ns.shell_centrality_profile(g, decompose(g))
    assert prof.by_shell[1] == (0.0, 0.0)
    bc = ns.betweenness(g).values
    assert bc.tolist() == [0, 0, 0, 3, 0]
    mean3, std3 = prof.by_shell[3]
    assert mean3 == pytest.approx(0.75)
    assert std3 == pytest.approx(np.std([0, 0, 0, 3]))
    assert prof.by_degree[4] == (3.0, 0.0)


def test_centrality_profile_ring():
    g = cycle(6)
    prof = ns.shell_centrality_profile(g, decompose(g))
    assert list(prof.by_shell) == [2]
    assert list(prof.by_degree) == [2]


def test_rescaled_core_distributions():
    g = complete(6)
    out = ns.rescaled_core_distributions(g, decompose(g), [0, 3, 5, 7])
    assert sorted(out) == [0, 3, 5]
    for dist in out.values():
        assert (dist.samples == 1.0).all()
        assert dist.ccdf() == [(1.0, 0.0)]
    g = k4_plus_pendant()
    whole = ns.rescaled_core_distributions(g, decompose(g), [0])[0]
    assert np.allclose(whole.samples * whole.mean_degree, np.sort(g.degrees()))


def test_collapse_distance_cases():
    x = np.arange(1, 11)
    assert ns.collapse_distance(x, x) == 0.0
    assert ns.collapse_distance(x, x + 10) == 1.0
    once = x / x.mean()
    assert ns.collapse_distance(once, once / once.mean()) == 0.0
    with pytest.raises(ValueError):
        ns.collapse_distance([], [1.0])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 800), min_size=1, max_size=50),
       st.lists(st.integers(0, 800), min_size=1, max_size=50))
def test_collapse_distance_matches_scipy(a, b):
    # eighths keep distinct values far apart relative to the tie tolerance
    a, b = np.array(a) / 8, np.array(b) / 8
    assert ns.collapse_distance(a, b) == pytest.approx(ks_2samp(a, b).statistic, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 1000), min_size=1, max_size=60), st.floats(0.01, 1000))
def test_rescaling_invariance(xs, c):
    x = np.array(xs, dtype=float)
    assert ns.collapse_distance(x / x.mean(), (c * x) / (c * x).mean()) <= 1e-12


def test_log_bin_and_distance():
    pts = [(1.0, 2.0, 10), (1.2, 4.0, 30), (2.0, 1.0, 100)]
    bins = ns.log_bin(pts, per_decade=5)
    assert bins[0] == (pytest.approx(3.5), 40)
    assert bins[1] == (1.0, 100)
    other = [(1.1, 3.0, 60), (2.1, 1.5, 100)]
    assert ns.spectrum_distance(pts, other, min_count=50) == pytest.approx(0.5)
    assert math.isnan(ns.spectrum_distance(pts, other, min_count=1000))


def test_rescale_spectrum():
    spec = ns.avg_nearest_neighbor_degree(star(4))
    pts = ns.rescale_spectrum(spec, 2 * 4 / 5)
    assert [p[2] for p in pts] == [4, 1]
    assert pts[0][0] == pytest.approx(1 / 1.6)
