import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kcorekit import generators as gen
from kcorekit.kcore import decompose, shell_sizes


def same_edges(a, b):
    return a.n == b.n and np.array_equal(a.edge_array(), b.edge_array())


@pytest.mark.parametrize("cfg", [
    gen.GeneratorConfig("er", 500, 3, {"e": 1500}),
    gen.GeneratorConfig("ba", 500, 3, {"m": 2}),
    gen.GeneratorConfig("brite", 500, 3, {"m": 1, "p_extra": 0.5}),
    gen.GeneratorConfig("pareto", 500, 3, {"gamma": 2.3, "min_degree": 2}),
    gen.GeneratorConfig("weibull", 500, 3, {"a": 0.4, "c": 0.6}),
])
def test_seed_determinism(cfg):
    again = gen.GeneratorConfig(cfg.kind, cfg.n, cfg.seed, cfg.params)
    other = gen.GeneratorConfig(cfg.kind, cfg.n, cfg.seed + 1, cfg.params)
    assert same_edges(gen.generate(cfg), gen.generate(again))
    assert not same_edges(gen.generate(cfg), gen.generate(other))


def test_config_validation():
    with pytest.raises(ValueError):
        gen.GeneratorConfig("pareto", 100, 0, {"gamma": 2.0})
    with pytest.raises(ValueError):
        gen.GeneratorConfig("ba", 2, 0, {"m": 2})
    with pytest.raises(ValueError):
        gen.GeneratorConfig("weibull", 100, 0, {"a": -1})
    with pytest.raises(ValueError):
        gen.GeneratorConfig("nope", 100, 0)


def test_er_forced_clique():
    g = gen.gen_er(4, 6, seed=0)
    assert g.e == 6 and (g.degrees() == 3).all()


def test_er_empty_and_too_many():
    g = gen.gen_er(100, 0, seed=0)
    assert (g.n, g.e) == (100, 0)
    with pytest.raises(ValueError):
        gen.gen_er(4, 7, seed=0)


@pytest.mark.parametrize("n,e", [(300, 1000), (50, 1000), (40, 780)])
def test_er_exact_edge_count(n, e):
    g = gen.gen_er(n, e, seed=5)
    assert g.e == e


def test_er_degree_dispersion_poisson_like():
    deg = gen.gen_er(20000, 100000, seed=1).degrees()
    assert deg.mean() == pytest.approx(10.0)
    assert 0.8 <= deg.var() / deg.mean() <= 1.2


def test_er_pair_uniformity():
    # every pair equally likely: average adjacency over many dense draws
    n, e, reps = 8, 14, 3000
    hits = np.zeros((n, n))
    for s in range(reps):
        for u, v in gen.gen_er(n, e, seed=s).edges():
            hits[u, v] += 1
    freq = hits[np.triu_indices(n, 1)] / reps
    assert np.abs(freq - e / 28).max() < 0.04


@pytest.mark.parametrize("n,m", [(50, 1), (200, 2), (1000, 3), (5, 4), (7, 2)])
def test_ba_edge_count(n, m):
    m0 = min(n, m + 2)
    assert gen.gen_ba(n, m, seed=1).e == m0 * (m0 - 1) // 2 + (n - m0) * m


def test_ba_seed_clique_only():
    g = gen.gen_ba(4, 3, seed=0)
    assert g.e == 6


def test_ba_shell_structure():
    d = decompose(gen.gen_ba(5000, 2, seed=0))
    sizes = shell_sizes(d)
    assert sizes[2] / 5000 >= 0.99
    assert d.k_max in (2, 3)


def test_brite_without_extra_edges_behaves_like_ba():
    for seed in range(3):
        d_b = decompose(gen.gen_brite(3000, 2, 0.0, seed))
        d_a = decompose(gen.gen_ba(3000, 2, seed))
        assert d_b.k_max in (2, 3) and d_a.k_max in (2, 3)
        assert shell_sizes(d_b)[2] / 3000 >= 0.99
        assert gen.gen_brite(3000, 2, 0.0, seed).e == gen.gen_ba(3000, 2, seed).e


def test_brite_heavy_core():
    g = gen.gen_brite(20000, 1, gen.DEFAULT_BRITE_P_EXTRA, seed=0)
    d = decompose(g)
    assert d.k_max > 2 * g.e / g.n


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["pareto", "weibull"]), st.integers(3, 400))
def test_degree_sum_even(seed, kind, n):
    seq = gen.sample_degree_sequence(kind, {}, n, seed)
    assert seq.degrees.sum() % 2 == 0
    assert seq.degrees.max() < n


def test_degree_sequence_validation():
    with pytest.raises(ValueError):
        gen.DegreeSequence([1, 1, 1])
    with pytest.raises(ValueError):
        gen.DegreeSequence([3, 1])


def test_pareto_mean():
    means = [gen.sample_degree_sequence("pareto", {"gamma": 2.3, "min_degree": 2},
                                        100_000, s).degrees.mean() for s in range(5)]
    for m in means:
        assert m == pytest.approx(6.0, rel=0.10)


def test_weibull_ccdf_matches_closed_form():
    a, c = 0.4, 0.6
    deg = gen.sample_degree_sequence("weibull", {"a": a, "c": c, "min_degree": 1},
                                     100_000, 11).degrees
    ks = np.arange(2, 200)
    empirical = np.array([(deg >= k).mean() for k in ks])
    analytic = np.exp(-(ks / c) ** a)
    assert np.abs(empirical - analytic).max() <= 0.02


def test_configuration_small_sequences():
    tri = gen.gen_configuration(gen.DegreeSequence([2, 2, 2]), seed=0)
    assert tri.edges() == [(0, 1), (0, 2), (1, 2)]
    one = gen.gen_configuration(gen.DegreeSequence([1, 1]), seed=0)
    assert one.edges() == [(0, 1)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=8, max_size=40), st.integers(0, 1000))
def test_configuration_is_simple_and_accounts_for_drops(degs, seed):
    if sum(degs) % 2:
        degs[0] += 1
    seq = gen.DegreeSequence(degs)
    log = gen.GenerationLog()
    g = gen.gen_configuration(seq, seed, log)
    got = g.degrees()
    assert (got <= seq.degrees).all()
    assert int((seq.degrees - got).sum()) == log.dropped_stubs
    assert log.target_stubs == int(seq.degrees.sum())


def test_configuration_rsf_realizes_degrees():
    log = gen.GenerationLog()
    cfg = gen.GeneratorConfig("pareto", 20000, 0, {"gamma": 2.3, "min_degree": 2})
    g = gen.generate(cfg, log)
    assert log.dropped_stubs / log.target_stubs < 0.001
