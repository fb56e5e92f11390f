from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_turan.errors import (
    CycleTooSmall,
    GraphError,
    InfeasibleDegree,
    InvalidPartCount,
    InvalidProbability,
    RetryBudgetExhausted,
    TooLarge,
)
from spectral_turan.graph import (
    Graph,
    complement,
    disjoint_union,
    enumerate_labeled,
    gen_gnp,
    gen_named,
    gen_random_regular,
    gen_turan,
    graph_from_code,
    graph_stats,
    labeled_codes,
)
from oracles import edges_of, naive_clique_number


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def test_invariants_rejected():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0b01), m=3)


@given(graphs())
def test_graph_invariants(g):
    a = g.adjacency()
    assert np.array_equal(a, a.T)
    assert not np.any(np.diag(a))
    assert g.m == int(a.sum()) // 2 == len(edges_of(g))
    stats = graph_stats(g)
    assert sum(stats.degrees) == 2 * g.m
    assert sorted(v for c in stats.components for v in c) == list(range(g.n))
    where = {v: k for k, c in enumerate(stats.components) for v in c}
    assert all(where[i] == where[j] for i, j in g.edges())


def test_gen_turan_examples():
    g = gen_turan(6, 3)
    assert g.m == 12 and graph_stats(g).regular_degree == 4
    assert gen_turan(5, 5) == gen_named("complete", 5)
    g = gen_turan(5, 2)
    assert g.m == 6
    stats = graph_stats(g)
    assert stats.regular_degree is None
    assert sorted(stats.degrees) == [2, 2, 2, 3, 3]
    for bad in (0, 6):
        with pytest.raises(InvalidPartCount):
            gen_turan(5, bad)


@pytest.mark.parametrize("n", range(1, 13))
def test_turan_clique_number(n):
    for w in range(1, n + 1):
        g = gen_turan(n, w)
        assert naive_clique_number(g) == w
        sizes = sorted(len(c) for c in graph_stats(complement(g)).components)
        assert sizes[-1] - sizes[0] <= 1


def test_named():
    assert gen_named("path", 5).m == 4
    assert gen_named("cycle", 5).m == 5
    assert gen_named("complete", 4).m == 6
    pet = gen_named("petersen")
    assert pet.n == 10 and pet.m == 15 and graph_stats(pet).regular_degree == 3
    with pytest.raises(CycleTooSmall):
        gen_named("cycle", 2)


def test_random_regular():
    g = gen_random_regular(8, 3, 11)
    assert graph_stats(g).regular_degree == 3
    with pytest.raises(InfeasibleDegree):
        gen_random_regular(5, 3, 1)
    with pytest.raises(InfeasibleDegree):
        gen_random_regular(4, 4, 1)
    assert gen_random_regular(6, 5, 3) == gen_named("complete", 6)
    assert gen_random_regular(20, 4, 99) == gen_random_regular(20, 4, 99)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40), st.integers(0, 6), st.integers(0, 2**63 - 1))
def test_random_regular_degrees(n, d, seed):
    if d >= n or (n * d) % 2:
        with pytest.raises(InfeasibleDegree):
            gen_random_regular(n, d, seed)
        return
    k = min(d, n - 1 - d)
    try:
        g = gen_random_regular(n, d, seed)
    except RetryBudgetExhausted:
        # rejection sampling is only expected to give up on dense pairings
        assert k >= 7
        return
    assert all(x == d for x in graph_stats(g).degrees)


def test_random_regular_uniform_on_small_case():
    # the 3 perfect matchings of K4 should appear about equally often
    seen = {}
    for seed in range(600):
        g = gen_random_regular(4, 1, seed)
        seen[g.rows] = seen.get(g.rows, 0) + 1
    assert len(seen) == 3
    assert min(seen.values()) > 150


def test_gnp():
    assert gen_gnp(10, 0.0, 5).m == 0
    assert gen_gnp(10, 1.0, 5) == gen_named("complete", 10)
    assert gen_gnp(50, 0.5, 123) == gen_gnp(50, 0.5, 123)
    with pytest.raises(InvalidProbability):
        gen_gnp(5, 1.5, 0)


def test_disjoint_union():
    t = gen_turan(6, 3)
    g = disjoint_union(t, t)
    assert (g.n, g.m, graph_stats(g).regular_degree) == (12, 24, 4)
    assert len(graph_stats(g).components) == 2
    assert disjoint_union(t, Graph(0, ())) == t
    g = disjoint_union(gen_turan(9, 3), gen_turan(6, 3))
    assert (g.n, g.m) == (15, 39)
    assert graph_stats(g).regular_degree is None
    assert set(graph_stats(g).degrees) == {6, 4}


def test_complement():
    assert complement(gen_named("complete", 5)) == gen_named("empty", 5)
    c5 = gen_named("cycle", 5)
    # self-complementary: brute-force isomorphism over all 5! relabelings
    from itertools import permutations

    comp = complement(c5)
    assert any(c5.relabel(p) == comp for p in permutations(range(5)))
    k222 = gen_turan(6, 3)
    k2 = gen_named("complete", 2)
    assert complement(k222) == disjoint_union(disjoint_union(k2, k2), k2)


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert complement(g).m == g.n * (g.n - 1) // 2 - g.m


def test_stats_examples():
    s = graph_stats(gen_named("cycle", 5))
    assert s.regular_degree == 2 and s.connected and not s.is_complete


def test_enumerate_labeled():
    assert len(list(enumerate_labeled(3))) == 8
    assert len(list(enumerate_labeled(1))) == 1
    five = list(enumerate_labeled(5))
    assert len(five) == 1024
    counts = {}
    for g in five:
        counts[g.m] = counts.get(g.m, 0) + 1
    assert counts == {k: comb(10, k) for k in range(11)}
    assert len(set(g.rows for g in five)) == 1024
    with pytest.raises(TooLarge):
        list(enumerate_labeled(8))


def test_enumeration_order_is_bitstring_order():
    # code k: first pair (0,1) is the most significant bit
    assert graph_from_code(3, 0b100).rows == (0b10, 0b01, 0)
    assert graph_from_code(3, 0b001).rows == (0, 0b100, 0b010)


@pytest.mark.parametrize("n", range(1, 7))
def test_regular_codes_match_filter(n):
    want = [c for c in range(1 << (n * (n - 1) // 2)) if graph_stats(graph_from_code(n, c)).regular_degree is not None]
    assert labeled_codes(n, regular_only=True).tolist() == want
