import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kcorekit import generators as gen
from kcorekit.graph import build_graph
from kcorekit.kcore import decompose
from kcorekit.temporal import NORMALIZATION, compare_maps

edge_lists = st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=1, max_size=60)


def test_identity():
    g = gen.gen_ba(400, 2, seed=0)
    cmp = compare_maps(g, g)
    assert cmp.diagonal_mass == 1.0
    assert cmp.in_out.in_dist == {} and cmp.in_out.out_dist == {}
    p = cmp.transitions.probabilities
    assert np.array_equal(p[1:, 1:], np.diag(np.diag(p[1:, 1:])))
    assert NORMALIZATION == "row"


def test_removing_first_shell_vertex():
    a = build_graph([("a", "b"), ("b", "c"), ("c", "a"), ("c", "p")])
    b = build_graph([("a", "b"), ("b", "c"), ("c", "a")])
    cmp = compare_maps(a, b)
    assert cmp.in_out.out_dist == {1: 1.0}
    assert cmp.in_out.in_dist == {}
    assert cmp.transitions.probabilities[1, 0] == 1.0
    assert cmp.transitions.probabilities[2, 2] == 1.0


def test_disjoint_labels():
    with pytest.raises(ValueError, match="disjoint label sets"):
        compare_maps(build_graph([("a", "b")]), build_graph([("x", "y")]))


@settings(max_examples=80, deadline=None)
@given(edge_lists, edge_lists)
def test_rows_are_distributions_and_swap_transposes(ea, eb):
    a, b = build_graph(ea), build_graph(eb)
    try:
        ab = compare_maps(a, b)
    except ValueError:
        return
    ba = compare_maps(b, a)
    counts = ab.transitions.counts
    probs = ab.transitions.probabilities
    rows = counts.sum(axis=1) > 0
    np.testing.assert_allclose(probs[rows].sum(axis=1), 1.0, atol=1e-9)
    assert ((probs >= 0) & (probs <= 1)).all()
    assert np.array_equal(counts, ba.transitions.counts.T)
    assert ab.in_out.in_dist == ba.in_out.out_dist
    assert ab.in_out.out_dist == ba.in_out.in_dist
    assert ab.diagonal_mass == ba.diagonal_mass
    for dist in (ab.in_out.in_dist, ab.in_out.out_dist):
        if dist:
            assert sum(dist.values()) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(edge_lists)
def test_self_comparison_diagonal(edges):
    g = build_graph(edges)
    assume(g.e > 0)
    assert compare_maps(g, g).diagonal_mass == 1.0


def test_precomputed_decompositions_give_same_result():
    a, b = gen.gen_ba(300, 2, 1), gen.gen_ba(300, 2, 2)
    x = compare_maps(a, b)
    y = compare_maps(a, b, decompose(a), decompose(b))
    assert np.array_equal(x.transitions.counts, y.transitions.counts)
