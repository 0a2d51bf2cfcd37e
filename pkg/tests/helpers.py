"""Shared random-instance builders for the test modules."""

import random
from fractions import Fraction

from perfmatch.graph import WeightedMultigraph, clique_sum
from perfmatch.matchgate import Signature
from perfmatch.oracle import gen_planar


def random_target(rng: random.Random, k: int, odd: bool, lo=-3, hi=3) -> Signature:
    vals = []
    for m in range(1 << k):
        wanted = bin(m).count("1") % 2 == int(odd)
        vals.append(Fraction(rng.randint(lo, hi)) if wanted else Fraction(0))
    return Signature(tuple(range(1, k + 1)), tuple(vals))


def random_gate(rng: random.Random, S, n_internal, first_id, p=0.6, wr=(-3, 3)):
    """Random graph on S plus fresh internal vertices (not necessarily planar)."""
    verts = list(S) + list(range(first_id, first_id + n_internal))
    edges = [(a, b, rng.randint(*wr)) for i, a in enumerate(verts) for b in verts[i + 1:]
             if rng.random() < p]
    return WeightedMultigraph(verts, edges)


def random_gate_pair(rng: random.Random, k: int):
    S = tuple(range(1, k + 1))
    G = random_gate(rng, S, rng.randint(1, 4), 10)
    H = random_gate(rng, S, rng.randint(1, 4), 20)
    return S, G, H


def glued(G, H, S):
    return clique_sum(G, H, S)


def planar_host(rng: random.Random, n):
    return gen_planar(n, 1.0, seed=rng.randrange(10 ** 9))
