import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from perfmatch.errors import PreconditionError
from perfmatch.graph import WeightedMultigraph
from perfmatch.oracle import brute_perfmatch, gen_complete, gen_complete_bipartite, gen_grid, gen_planar
from perfmatch.planarity import (check_planarity, cycle_bounds_face, embed_with_common_face, faces,
                                 is_planar, on_common_face, splice_in_face)
from perfmatch.matchgate import join_signatures, realize_planar
from perfmatch.oracle import brute_signature


def test_k4_has_four_faces():
    emb = check_planarity(gen_complete([1, 2, 3, 4]))
    assert len(faces(emb)) == 4 and emb.is_valid()


def test_kuratowski_graphs_rejected():
    assert check_planarity(gen_complete(range(1, 6))) is None
    assert check_planarity(gen_complete_bipartite([1, 2, 3], [4, 5, 6])) is None


def test_face_examples():
    c4 = WeightedMultigraph([1, 2, 3, 4], [(1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 1, 1)])
    fs = faces(check_planarity(c4))
    assert sorted(len(f) for f in fs) == [4, 4]
    edge = WeightedMultigraph([1, 2], [(1, 2, 1)])
    assert [len(f) for f in faces(check_planarity(edge))] == [2]
    assert len(faces(check_planarity(gen_grid(3, 3)))) == 5


def test_parallel_edges_embed():
    G = WeightedMultigraph([1, 2, 3], [(1, 2, 1), (1, 2, 2), (2, 3, 1), (1, 3, 1)])
    emb = check_planarity(G)
    assert emb.is_valid() and len(faces(emb)) == 3


@given(st.integers(0, 10 ** 6), st.integers(1, 16), st.floats(0.2, 1.0))
def test_every_embedding_is_valid(seed, n, density):
    emb = check_planarity(gen_planar(n, density, seed=seed))
    assert emb is not None and emb.is_valid()
    darts = [(d.edge, d.tail) for f in emb.faces for d in f]
    assert len(darts) == len(set(darts)) == 2 * emb.graph.m


def _kuratowski_subgraph(edges, verts):
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for five in itertools.combinations(verts, 5):
        if all(b in adj[a] for a, b in itertools.combinations(five, 2)):
            return True
    for six in itertools.combinations(verts, 6):
        for left in itertools.combinations(six[1:], 2):
            L = (six[0],) + left
            R = [v for v in six if v not in L]
            if all(b in adj[a] for a in L for b in R):
                return True
    return False


def _planar_by_minors(edges, verts):
    """No K5 / K3,3 minor: every minor is a subgraph of some contraction of G."""
    seen = set()

    def bad(es, vs):
        key = (es, vs)
        if key in seen:
            return False
        seen.add(key)
        if len(vs) >= 5 and _kuratowski_subgraph(es, vs):
            return True
        for a, b in es:
            merged = frozenset(tuple(sorted((a if x == b else x, a if y == b else y)))
                               for x, y in es if {x, y} != {a, b})
            if bad(frozenset(e for e in merged if e[0] != e[1]), tuple(v for v in vs if v != b)):
                return True
        return False

    return not bad(frozenset(edges), tuple(verts))


def test_planarity_matches_kuratowski_minor_check():
    rng = random.Random(7)
    checked = 0
    outcomes = set()
    for n in (5, 6, 7):
        for _ in range(25):
            pairs = [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.75]
            W = WeightedMultigraph(range(1, n + 1), [(a + 1, b + 1, 1) for a, b in pairs])
            expected = _planar_by_minors(pairs, tuple(range(n)))
            assert is_planar(W) == expected
            outcomes.add(expected)
            checked += 1
    assert checked == 75 and outcomes == {True, False}


def _octahedron_with_inner_vertex():
    # triangle 1,2,3 with vertex 4 inside, plus outside vertex 5 joined to all
    return WeightedMultigraph(range(1, 6), [(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 1, 1), (4, 2, 1), (4, 3, 1),
                                            (5, 1, 1), (5, 2, 1), (5, 3, 1)])


def test_cycle_bounds_face():
    G = _octahedron_with_inner_vertex()
    emb = check_planarity(G)
    assert not cycle_bounds_face(emb, (1, 2, 3))
    assert cycle_bounds_face(emb, (1, 2, 4))
    assert cycle_bounds_face(emb, (1, 2))
    with pytest.raises(PreconditionError):
        cycle_bounds_face(emb, (1, 4, 5))


def test_splice_examples():
    host = gen_planar(8, 1.0, seed=3)
    emb = check_planarity(host)
    gadget = WeightedMultigraph([1, 20, 21], [(1, 20, 1), (20, 21, 1)])
    g, e = splice_in_face(host, gadget, (1,), emb)
    assert e.is_valid() and check_planarity(g) is not None
    face = next(f for f in emb.faces if len(f) == 3)
    K = tuple(sorted(d.tail for d in face))
    tri = WeightedMultigraph(K, [(K[0], K[1], 0), (K[1], K[2], 0), (K[0], K[2], 0)])
    g, e = splice_in_face(host, tri, K, emb)
    assert e.is_valid()


def test_splice_preserves_join_value():
    for seed in range(30):
        rng = random.Random(seed)
        host = gen_planar(rng.randint(5, 9), 1.0, seed=seed)
        emb = check_planarity(host)
        faces3 = [f for f in emb.faces if len(f) == 3]
        K = tuple(sorted(d.tail for d in rng.choice(faces3)))
        f = brute_signature(gen_planar(5, 0.8, seed=seed, first_id=50).__class__(
            list(K) + [60, 61], [(K[0], 60, rng.randint(-2, 2)), (60, 61, 1), (61, K[2], 2), (K[1], 60, 1)]), K)
        gate, _ = realize_planar(f, 100)
        g, e = splice_in_face(host, gate.graph, K, emb)
        assert e.is_valid()
        assert brute_perfmatch(g) == join_signatures(brute_signature(host, K), f)


def test_splice_rejects_nonfacial_triangle():
    G = _octahedron_with_inner_vertex()
    gadget = WeightedMultigraph([1, 2, 3, 9], [(1, 9, 1)])
    with pytest.raises(PreconditionError):
        splice_in_face(G, gadget, (1, 2, 3), check_planarity(G))


def test_common_face_via_apex():
    # prism: externals on one triangle
    G = WeightedMultigraph(range(1, 7), [(1, 2, 1), (2, 3, 1), (1, 3, 1), (4, 5, 1), (5, 6, 1), (4, 6, 1),
                                         (1, 4, 1), (2, 5, 1), (3, 6, 1)])
    emb = embed_with_common_face(G, (1, 2, 3))
    assert emb.is_valid() and on_common_face(emb, (1, 2, 3))
    assert embed_with_common_face(G, (1, 2, 6)) is None
    split = WeightedMultigraph([1, 2, 3, 4], [(1, 2, Fraction(1))])
    assert on_common_face(check_planarity(split), (1, 3, 4))
