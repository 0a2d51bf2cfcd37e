import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from perfmatch.decomposition import validate
from perfmatch.errors import PreconditionError
from perfmatch.graph import WeightedMultigraph, disjoint_union
from perfmatch.matchgate import signature_of, Matchgate
from perfmatch.oracle import (brute_perfmatch, brute_signature, gen_cliquesum, gen_cliquesum_sized, gen_complete,
                              gen_grid, gen_planar)
from perfmatch.pfaffian import perfmatch_planar
from perfmatch.planarity import is_planar


def test_brute_examples():
    assert brute_perfmatch(gen_complete([1, 2, 3, 4])) == 3
    assert brute_perfmatch(gen_planar(5, seed=1)) == 0
    assert brute_perfmatch(WeightedMultigraph([1, 2], [(1, 2, Fraction(7, 2))])) == Fraction(7, 2)
    assert brute_perfmatch(WeightedMultigraph([1, 2], [(1, 2, 2), (1, 2, 3)])) == 5
    assert brute_perfmatch(gen_complete(range(1, 9))) == 105


def test_size_guard():
    with pytest.raises(PreconditionError):
        brute_perfmatch(WeightedMultigraph(range(42), []))


def test_grid_generator():
    assert brute_perfmatch(gen_grid(2, 2)) == 2
    assert gen_grid(1, 2).m == 1 and brute_perfmatch(gen_grid(1, 2)) == 1
    assert brute_perfmatch(gen_grid(4, 4)) == 36


@given(st.integers(0, 10 ** 6))
def test_disjoint_union_multiplies(seed):
    G = gen_planar(6, 0.8, seed=seed)
    H = gen_planar(4, 0.8, seed=seed + 7, first_id=30)
    assert brute_perfmatch(disjoint_union(G, H)) == brute_perfmatch(G) * brute_perfmatch(H)


@given(st.integers(0, 10 ** 6))
def test_brute_signature_matches_planar_engine(seed):
    G = gen_planar(8, 0.8, seed=seed)
    S = tuple(sorted(G.vertices))[:3]
    assert brute_signature(G, S) == signature_of(Matchgate(G, S), perfmatch_planar)


def test_generators_are_deterministic():
    assert gen_planar(12, seed=5) == gen_planar(12, seed=5)
    assert gen_cliquesum(5, seed=5)[0] == gen_cliquesum(5, seed=5)[0]
    assert gen_cliquesum(5, seed=5)[1] == gen_cliquesum(5, seed=5)[1]
    assert gen_cliquesum_sized(300, seed=5) == gen_cliquesum_sized(300, seed=5)


def test_gen_planar_properties():
    with pytest.raises(PreconditionError):
        gen_planar(0)
    G = gen_planar(12, 0.9, seed=3)
    assert is_planar(G) and perfmatch_planar(G) == brute_perfmatch(G)
    weights = {e.w for s in range(20) for e in gen_planar(10, 1.0, seed=s).edges}
    assert 0 in weights and min(weights) < 0


@pytest.mark.parametrize("seed", range(20))
def test_cliquesum_ground_truth_is_valid(seed):
    G, T = gen_cliquesum(6, seed=seed)
    assert validate(T, G) == []


def test_sized_instances_have_matchings():
    for n in (64, 256):
        G = gen_cliquesum_sized(n, seed=1)
        assert G.n == n
    assert brute_perfmatch(gen_cliquesum_sized(24, seed=2)) > 0
