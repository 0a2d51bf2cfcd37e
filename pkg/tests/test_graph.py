from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from perfmatch.errors import ParseError, PreconditionError
from perfmatch.graph import (Edge, WeightedMultigraph, clique_sum, delete_vertices, format_graph,
                             format_rational, merge_parallel, parse_graph, parse_rational,
                             strip_zero_edges)
from perfmatch.matchgate import join_signatures
from perfmatch.oracle import brute_perfmatch, brute_signature, gen_complete, gen_planar


def random_multigraph(rng, n, m, zero_share=0.0, wr=(-3, 3)):
    edges = []
    for _ in range(m):
        a, b = rng.sample(range(1, n + 1), 2)
        w = 0 if rng.random() < zero_share else rng.randint(*wr)
        edges.append((a, b, w))
    return WeightedMultigraph(range(1, n + 1), edges)


def test_self_loop_rejected():
    with pytest.raises(PreconditionError):
        WeightedMultigraph([1, 2], [(1, 1, 1)])


def test_endpoints_join_vertex_set():
    assert WeightedMultigraph([1], [(1, 2, 1)]).vertices == {1, 2}


def test_clique_sum_keeps_parallel_edges():
    G = WeightedMultigraph([1, 2], [(1, 2, 2)])
    H = WeightedMultigraph([1, 2], [(1, 2, 3)])
    S = clique_sum(G, H, [1, 2])
    assert S.n == 2 and sorted(e.w for e in S.edges) == [2, 3]


def test_clique_sum_empty_is_disjoint_union():
    G = WeightedMultigraph([1, 2], [(1, 2, 1)])
    H = WeightedMultigraph([3, 4], [(3, 4, 5)])
    S = clique_sum(G, H, [])
    assert S.vertices == {1, 2, 3, 4} and S.m == 2
    assert brute_perfmatch(S) == 5


def test_clique_sum_rejects_extra_shared_vertex():
    G = WeightedMultigraph([1, 2, 3], [(1, 2, 1)])
    H = WeightedMultigraph([1, 2, 3], [(2, 3, 1)])
    with pytest.raises(PreconditionError):
        clique_sum(G, H, [1, 2])


def test_clique_sum_equals_join_formula(rng):
    for _ in range(40):
        G = random_multigraph(rng, 6, 9)
        H = WeightedMultigraph([1, 2] + list(range(7, 11)),
                               [(a, b, rng.randint(-3, 3)) for a, b in
                                [(1, 7), (7, 8), (8, 2), (1, 9), (9, 10), (10, 2), (7, 10), (1, 2)]])
        S = clique_sum(G, H, [1, 2])
        f = brute_signature(G, (1, 2))
        g = brute_signature(H, (1, 2))
        assert brute_perfmatch(S) == join_signatures(f, g)


def test_merge_parallel_examples():
    G = WeightedMultigraph([1, 2], [(1, 2, 2), (1, 2, 3)])
    assert merge_parallel(G).edges == (Edge(1, 2, Fraction(5)),)
    G = WeightedMultigraph([1, 2], [(1, 2, 2), (2, 1, -2)])
    assert merge_parallel(G).edges == (Edge(1, 2, Fraction(0)),)


def test_strip_zero_edges_examples():
    G = WeightedMultigraph([1, 2, 3], [(1, 2, 0), (2, 3, 0)])
    assert strip_zero_edges(G).m == 0
    tri = WeightedMultigraph([1, 2, 3], [(1, 2, 0), (2, 3, 1), (1, 3, 1)])
    assert brute_perfmatch(strip_zero_edges(tri)) == brute_perfmatch(tri) == 0


@given(st.integers(0, 10 ** 6))
def test_normalizations_preserve_perfmatch(seed):
    import random
    rng = random.Random(seed)
    G = random_multigraph(rng, rng.choice([6, 8, 10]), rng.randint(6, 20), zero_share=0.3)
    v = brute_perfmatch(G)
    assert brute_perfmatch(merge_parallel(G)) == v
    assert brute_perfmatch(strip_zero_edges(G)) == v


def test_delete_vertices():
    K4 = gen_complete([1, 2, 3, 4])
    T = delete_vertices(K4, [1])
    assert T.vertices == {2, 3, 4} and T.m == 3
    assert delete_vertices(K4, []) == K4
    E = WeightedMultigraph([1, 2, 3], [(1, 2, 1)])
    D = delete_vertices(E, [1, 2])
    assert D.vertices == {3} and D.m == 0
    with pytest.raises(PreconditionError):
        delete_vertices(K4, [9])


@given(st.integers(0, 10 ** 6))
def test_delete_vertices_composes(seed):
    import random
    rng = random.Random(seed)
    G = gen_planar(10, seed=seed)
    X = set(rng.sample(sorted(G.vertices), 3))
    Y = set(rng.sample(sorted(G.vertices - X), 2))
    assert delete_vertices(delete_vertices(G, X), Y) == delete_vertices(G, X | Y)


def test_rational_format():
    assert parse_rational("-3") == -3
    assert parse_rational("6/4") == Fraction(3, 2)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    for bad in ("1/0", "1.5", "", "a"):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(st.integers(0, 10 ** 6))
def test_graph_text_round_trip(seed):
    G = gen_planar(9, seed=seed, denominators=(1, 2, 3))
    assert parse_graph(format_graph(G, "demo")) == G


def test_graph_text_format_exact():
    G = WeightedMultigraph([1, 2, 3], [(1, 2, Fraction(1, 2)), (1, 2, -3)])
    assert format_graph(G) == "p pm 3 2\ne 1 2 1/2\ne 1 2 -3\n"


@pytest.mark.parametrize("text, line", [
    ("p pm 2 1\ne 1 3 1\n", 2),
    ("p pm 2 1\ne 1 1 1\n", 2),
    ("p pm 2 1\ne 1 2 1/0\n", 2),
    ("e 1 2 1\n", 1),
    ("p pm 2 2\ne 1 2 1\n", None),
    ("p pm 2 1\nx 1 2\n", 2),
    ("", None),
])
def test_graph_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
