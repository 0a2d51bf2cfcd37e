import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from perfmatch.decomposition import (DecompositionTree, Node, TreeDecomposition, check_tree_decomposition,
                                     compose, exact_tree_decomposition, face_repair, split_with_treedec,
                                     validate)
from perfmatch.engine import evaluate_decomposition
from perfmatch.errors import PreconditionError
from perfmatch.graph import WeightedMultigraph
from perfmatch.oracle import _triangles, brute_perfmatch, gen_complete, gen_grid, gen_planar
from perfmatch.planarity import check_planarity


def separating_fixture(seed):
    """Plane host with a child glued on a separating triangle, or None if the host has none."""
    rng = random.Random(seed)
    n = rng.randint(6, 10)
    host = gen_planar(n, density=1.0, seed=seed, weight_range=(-2, 3))
    emb = check_planarity(host)
    facial = {tuple(sorted({d.tail for d in w})) for w in emb.faces if len(w) == 3}
    sep = [t for t in _triangles(host.edges) if t not in facial]
    if not sep:
        return None
    K = rng.choice(sep)
    a, b = n + 1, n + 2
    child = WeightedMultigraph([*K, a, b], [(K[0], a, 1), (K[1], b, 2), (a, b, -1), (K[2], a, 3),
                                            (K[0], K[1], Fraction(1, 2))])
    return DecompositionTree(5, [Node(0, None, host, (), emb), Node(1, 0, child, K, check_planarity(child))], 0)


def octahedron_fixture():
    # triangle 1,2,3; inner vertex 4; outer vertex 5; child on the separating triangle 1,2,3
    host = WeightedMultigraph(range(1, 7), [(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 1, 1), (4, 2, 1), (4, 3, 2),
                                            (5, 1, 1), (5, 2, 3), (5, 3, 1), (5, 6, 1)])
    child = WeightedMultigraph([1, 2, 3, 7, 8], [(1, 7, 1), (7, 8, 2), (8, 3, 1), (2, 7, 1), (1, 2, 0)])
    return DecompositionTree(5, [Node(0, None, host, (), check_planarity(host)),
                                 Node(1, 0, child, (1, 2, 3), check_planarity(child))], 0)


def test_octahedron_repair():
    T = octahedron_fixture()
    G = compose(T)
    assert {v.kind for v in validate(T, G)} == {"attachment-not-facial"}
    R = face_repair(T, 0)
    assert validate(R, G) == []
    assert len(R) == 3
    assert evaluate_decomposition(R) == brute_perfmatch(G)


def test_face_repair_requires_offending_triangle():
    T = octahedron_fixture()
    R = face_repair(T, 0)
    with pytest.raises(PreconditionError):
        face_repair(R, 0)
    with pytest.raises(PreconditionError):
        face_repair(T, 99)


@pytest.mark.parametrize("seed", range(120))
def test_face_repair_random(seed):
    T = separating_fixture(seed)
    if T is None:
        pytest.skip("host has no separating triangle")
    G = compose(T)
    before = len(T)
    R = face_repair(T, 0)
    assert validate(R, G) == []
    assert len(R) - before <= T.nodes[0].graph.n
    assert evaluate_decomposition(R) == brute_perfmatch(G)


def outerplanar(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 11)
    ids = list(range(1, n + 1))
    E = [(ids[i], ids[(i + 1) % n], rng.randint(-2, 3)) for i in range(n)]
    E += [(1, ids[j], rng.randint(-2, 3)) for j in range(2, n - 1) if rng.random() < 0.5]
    return WeightedMultigraph(ids, E)


@pytest.mark.parametrize("seed", range(80))
def test_split_with_treedec_random(seed):
    G = outerplanar(seed)
    T = DecompositionTree(3, [Node(0, None, G, (), check_planarity(G))], 0)
    R = exact_tree_decomposition(G)
    assert check_tree_decomposition(G, R) == [] and R.width <= 2
    S = split_with_treedec(T, 0, R)
    assert validate(S, G) == []
    assert all(nd.graph.n <= S.c + 1 for nd in S.nodes.values())
    assert evaluate_decomposition(S) == brute_perfmatch(G)


def test_split_path_into_chain():
    G = WeightedMultigraph(range(1, 7), [(i, i + 1, i) for i in range(1, 6)])
    R = TreeDecomposition(tuple(frozenset((i, i + 1)) for i in range(1, 6)), (None, 0, 1, 2, 3))
    S = split_with_treedec(DecompositionTree(2, [Node(0, None, G)], 0), 0, R)
    assert len(S) == 5 and all(nd.graph.n == 2 for nd in S.nodes.values())
    assert validate(S, G) == []
    assert evaluate_decomposition(S) == brute_perfmatch(G) == 15


def test_split_single_bag_is_identity():
    G = gen_complete([1, 2, 3, 4])
    T = DecompositionTree(3, [Node(0, None, G, (), check_planarity(G))], 0)
    S = split_with_treedec(T, 0, TreeDecomposition((frozenset(G.vertices),), (None,)))
    assert len(S) == 1 and S.nodes[0].graph == G and validate(S, G) == []


def test_split_keeps_children_attached():
    G = gen_grid(2, 4)
    child = WeightedMultigraph([1, 9, 10], [(1, 9, 2), (9, 10, 1)])
    T = DecompositionTree(3, [Node(0, None, G, (), check_planarity(G)), Node(1, 0, child, (1,))], 0)
    S = split_with_treedec(T, 0, exact_tree_decomposition(G))
    full = compose(T)
    assert validate(S, full) == []
    assert evaluate_decomposition(S) == brute_perfmatch(full)


def test_split_rejects_bad_inputs():
    G = gen_grid(3, 3)
    T = DecompositionTree(3, [Node(0, None, G, (), check_planarity(G))], 0)
    with pytest.raises(PreconditionError):
        split_with_treedec(T, 0, TreeDecomposition((frozenset(range(1, 9)),), (None,)))
    with pytest.raises(PreconditionError):
        split_with_treedec(T, 0, TreeDecomposition((frozenset(range(1, 10)),), (None,)))


KNOWN_WIDTHS = [
    (WeightedMultigraph(range(1, 8), [(i, i + 1, 1) for i in range(1, 7)]), 1),
    (WeightedMultigraph(range(1, 7), [(i, i % 6 + 1, 1) for i in range(1, 7)]), 2),
    (gen_complete(range(1, 6)), 4),
    (gen_grid(3, 3), 3),
    (gen_grid(4, 4), 4),
]


@pytest.mark.parametrize("G, width", KNOWN_WIDTHS)
def test_exact_treewidth_known(G, width):
    R = exact_tree_decomposition(G)
    assert check_tree_decomposition(G, R) == []
    assert R.width == width


@given(st.integers(0, 10 ** 6), st.integers(1, 9))
@settings(max_examples=30)
def test_exact_tree_decomposition_is_valid(seed, n):
    G = gen_planar(n, 0.8, seed=seed)
    R = exact_tree_decomposition(G)
    assert check_tree_decomposition(G, R) == []
    assert R.width <= max(n - 1, 0)


def test_exact_treedec_size_guard():
    with pytest.raises(PreconditionError):
        exact_tree_decomposition(gen_grid(3, 7))
