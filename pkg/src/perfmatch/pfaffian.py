"""Planar perfect-matching sums via Kasteleyn orientations and exact Pfaffians.

The Pfaffian of the oriented, weighted skew adjacency matrix equals the
matching sum up to one global sign shared by all matchings.  That sign is
read off a second Pfaffian over the same orientation with every weight set
to one, which equals the sign times the number of perfect matchings.

Pfaffians are computed exactly: denominators are cleared, the integer
Pfaffian is evaluated modulo enough 62-bit primes to exceed a Hadamard bound,
and the residues are combined by Chinese remaindering.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from . import kernels
from .errors import InternalConsistencyError, PreconditionError
from .graph import WeightedMultigraph, connected_components, merge_parallel
from .planarity import PlaneEmbedding, embed, restrict

# ---------------------------------------------------------------------------
# Kasteleyn orientation


def kasteleyn_orient(embedding: PlaneEmbedding):
    """Orient every edge so each bounded face has an odd number of edges along its walk.

    Returns a tuple ``orientation[e] = (tail, head)``.  The graph must be
    connected and free of parallel edges.
    """
    G = embedding.graph
    m = G.m
    orient = [None] * m
    if m == 0:
        return ()
    adj = G.adjacency()
    if len(connected_components(G)) != 1:
        raise PreconditionError("kasteleyn_orient needs a connected graph; split components first")
    root = min(G.vertices)
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in adj[x]:
            y = G.edges[e].other(x)
            if y not in seen:
                seen.add(y)
                orient[e] = (x, y)
                queue.append(y)

    walks = embedding.faces
    outer = embedding.outer_face
    faces_of = [[] for _ in range(m)]
    remaining = [0] * len(walks)
    for f, walk in enumerate(walks):
        for d in walk:
            faces_of[d.edge].append(f)
            if orient[d.edge] is None:
                remaining[f] += 1
    ready = [f for f in range(len(walks)) if f != outer and remaining[f] == 1]
    while ready:
        f = ready.pop()
        if remaining[f] != 1:
            continue
        along = 0
        free = None
        for d in walks[f]:
            o = orient[d.edge]
            if o is None:
                free = d
            elif o == (d.tail, d.head):
                along += 1
        # make the count odd
        orient[free.edge] = (free.tail, free.head) if along % 2 == 0 else (free.head, free.tail)
        remaining[f] = 0
        for g in faces_of[free.edge]:
            if g != f:
                remaining[g] -= 1
                if g != outer and remaining[g] == 1:
                    ready.append(g)
    if any(o is None for o in orient):
        raise InternalConsistencyError("Kasteleyn orientation left edges unoriented")
    return tuple(orient)


def clockwise_count(embedding: PlaneEmbedding, orientation, face: int) -> int:
    """Number of edges of a face oriented in the direction of its boundary walk."""
    return sum(1 for d in embedding.faces[face] if orientation[d.edge] == (d.tail, d.head))


def is_kasteleyn(embedding: PlaneEmbedding, orientation) -> bool:
    outer = embedding.outer_face
    return all(clockwise_count(embedding, orientation, f) % 2 == 1
               for f in range(len(embedding.faces)) if f != outer)


def skew_matrix(G: WeightedMultigraph, orientation, order=None):
    """Oriented weighted adjacency matrix as a list of Fraction rows."""
    order = sorted(G.vertices) if order is None else list(order)
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    A = [[Fraction(0)] * n for _ in range(n)]
    for e, (t, h) in zip(G.edges, orientation):
        i, j = idx[t], idx[h]
        A[i][j] += e.w
        A[j][i] -= e.w
    return A


# ---------------------------------------------------------------------------
# exact Pfaffians


def _is_probable_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic below 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _prime(i):
    """The i-th prime below 2**62, counting downwards."""
    start = (1 << 62) - 1 if i == 0 else _prime(i - 1) - 2
    p = start
    while not _is_probable_prime(p):
        p -= 2
    return p


def _pf_integer(n, entries):
    """Exact Pfaffian of the integer skew matrix given as {(i, j): x} with i < j."""
    if n % 2:
        return 0
    if n == 0:
        return 1
    norm2 = [0] * n
    for (i, j), x in entries.items():
        norm2[i] += x * x
        norm2[j] += x * x
    bound2 = 1
    for r in norm2:
        if r == 0:
            return 0
        bound2 *= r
    bound = isqrt(isqrt(bound2)) + 1  # |Pf| <= prod(|row|)^(1/2)
    residues = []
    modulus = 1
    k = 0
    while modulus <= 2 * bound:
        p = _prime(k)
        k += 1
        flat = [0] * (n * n)
        for (i, j), x in entries.items():
            r = x % p
            flat[i * n + j] = r
            flat[j * n + i] = (p - r) % p
        residues.append((kernels.pfaffian_mod(n, flat, p), p))
        modulus *= p
    x, M = 0, 1
    for r, p in residues:
        # x = r (mod p), keeping x (mod M)
        t = (r - x) * pow(M, -1, p) % p
        x += M * t
        M *= p
    if x > M // 2:
        x -= M
    return x


def pfaffian_exact(A) -> Fraction:
    """Exact Pfaffian of a skew-symmetric rational matrix (list of rows)."""
    n = len(A)
    for i in range(n):
        if len(A[i]) != n:
            raise PreconditionError("matrix is not square")
        if A[i][i] != 0:
            raise PreconditionError("skew matrix has nonzero diagonal")
        for j in range(i + 1, n):
            if A[i][j] != -A[j][i]:
                raise PreconditionError(f"matrix is not skew-symmetric at ({i}, {j})")
    if n % 2:
        return Fraction(0)
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            q = Fraction(A[i][j]).denominator
            den = den * q // gcd(den, q)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(A[i][j]) * den
            if x:
                entries[(i, j)] = int(x)
    return Fraction(_pf_integer(n, entries), den ** (n // 2))


# ---------------------------------------------------------------------------
# planar engine


def _merged_embedding(embedding: PlaneEmbedding):
    G = embedding.graph
    H = merge_parallel(G)
    if H is G:
        return embedding
    first = {}
    keep = []
    for i, e in enumerate(G.edges):
        if e.key() not in first:
            first[e.key()] = i
            keep.append(i)
    return restrict(embedding, H, keep)


def _component_perfmatch(emb: PlaneEmbedding) -> Fraction:
    G = emb.graph
    n = G.n
    if n % 2:
        return Fraction(0)
    orientation = kasteleyn_orient(emb)
    idx = {v: i for i, v in enumerate(sorted(G.vertices))}
    den = 1
    for e in G.edges:
        q = e.w.denominator
        den = den * q // gcd(den, q)
    weighted = {}
    unit = {}
    for e, (t, h) in zip(G.edges, orientation):
        i, j = idx[t], idx[h]
        x = int(e.w * den)
        if i > j:
            i, j, x, s = j, i, -x, -1
        else:
            s = 1
        unit[(i, j)] = s
        if x:
            weighted[(i, j)] = x
    count = _pf_integer(n, unit)
    if count == 0:
        return Fraction(0)
    value = _pf_integer(n, weighted)
    if count < 0:
        value = -value
    return Fraction(value, den ** (n // 2))


def perfmatch_planar(G: WeightedMultigraph, embedding: PlaneEmbedding | None = None) -> Fraction:
    """Exact weighted perfect-matching sum of a planar graph.

    ``embedding`` may be supplied to skip the planarity test; it must embed
    ``G`` itself.  Raises :class:`NotPlanarError` otherwise.
    """
    if embedding is None:
        embedding = embed(G)
    elif embedding.graph is not G:
        raise PreconditionError("embedding does not belong to the given graph")
    emb = _merged_embedding(embedding)
    H = emb.graph
    if H.n % 2:
        return Fraction(0)
    comps = connected_components(H)
    if any(len(c) % 2 for c in comps):
        return Fraction(0)
    if len(comps) == 1:
        return _component_perfmatch(emb)
    result = Fraction(1)
    for comp in comps:
        keep = [i for i, e in enumerate(H.edges) if e.u in comp]
        sub = WeightedMultigraph._raw(comp, tuple(H.edges[i] for i in keep))
        result *= _component_perfmatch(restrict(emb, sub, keep))
        if result == 0:
            break
    return result
