"""Exponential-time ground truth and seeded instance generators.

Nothing in here depends on the planar engine or the decomposition machinery
it is used to check; the enumerator only knows what a perfect matching is.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import PreconditionError
from .graph import Edge, WeightedMultigraph, delete_vertices

MAX_BRUTE_VERTICES = 40


def brute_perfmatch(G: WeightedMultigraph) -> Fraction:
    """Sum of w(M) over all perfect matchings M of ``G``.

    Branches on the lowest unmatched vertex and memoizes on the set of
    vertices still to be matched.  Parallel edges are separate branches.
    """
    n = G.n
    if n > MAX_BRUTE_VERTICES:
        raise PreconditionError(f"brute force limited to {MAX_BRUTE_VERTICES} vertices, got {n}")
    if n % 2:
        return Fraction(0)
    bit = {v: i for i, v in enumerate(sorted(G.vertices))}
    inc = [[] for _ in range(n)]
    for e in G.edges:
        a, b = bit[e.u], bit[e.v]
        inc[a].append((b, e.w))
        inc[b].append((a, e.w))
    memo = {0: Fraction(1)}

    def rec(mask):
        got = memo.get(mask)
        if got is not None:
            return got
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        total = Fraction(0)
        for u, w in inc[low]:
            if rest >> u & 1 and w:
                total += w * rec(rest & ~(1 << u))
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def brute_signature(graph: WeightedMultigraph, externals):
    """Signature values of the matchgate (graph, externals), little-endian subset order."""
    from .matchgate import Signature

    ext = tuple(externals)
    values = []
    for mask in range(1 << len(ext)):
        X = [ext[i] for i in range(len(ext)) if mask >> i & 1]
        values.append(brute_perfmatch(delete_vertices(graph, X)))
    return Signature(ext, tuple(values))


# ---------------------------------------------------------------------------
# generators


def _weight(rng, weight_range, denominators):
    lo, hi = weight_range
    return Fraction(rng.randint(lo, hi), rng.choice(denominators))


def gen_planar(n, density=0.7, weight_range=(-3, 3), seed=0, denominators=(1,),
               first_id=1) -> WeightedMultigraph:
    """Random planar graph on ``n`` vertices.

    Grows a triangulation by repeatedly inserting a vertex into a random
    triangular face, then keeps each edge with probability ``density``.
    """
    if n < 1:
        raise PreconditionError("gen_planar needs n >= 1")
    rng = random.Random(seed)
    ids = list(range(first_id, first_id + n))
    if n == 1:
        return WeightedMultigraph(ids, ())
    if n == 2:
        pairs = [(ids[0], ids[1])]
    else:
        a, b, c = ids[:3]
        pairs = [(a, b), (b, c), (a, c)]
        faces = [(a, b, c), (a, c, b)]
        for x in ids[3:]:
            i = rng.randrange(len(faces))
            p, q, r = faces[i]
            faces[i] = (p, q, x)
            faces.append((q, r, x))
            faces.append((r, p, x))
            pairs.extend([(p, x), (q, x), (r, x)])
    edges = [Edge(u, v, _weight(rng, weight_range, denominators))
             for u, v in pairs if rng.random() < density]
    return WeightedMultigraph(ids, edges)


def gen_grid(rows, cols, weight=1) -> WeightedMultigraph:
    """Unit-weight ``rows`` x ``cols`` grid graph, vertices numbered row-major from 1."""
    if rows < 1 or cols < 1:
        raise PreconditionError("grid dimensions must be positive")

    def vid(r, c):
        return r * cols + c + 1

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1), weight))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c), weight))
    return WeightedMultigraph(range(1, rows * cols + 1), edges)


def gen_complete(ids, weight=1) -> WeightedMultigraph:
    ids = list(ids)
    return WeightedMultigraph(ids, [(a, b, weight) for i, a in enumerate(ids) for b in ids[i + 1:]])


def gen_complete_bipartite(left, right, weight=1) -> WeightedMultigraph:
    return WeightedMultigraph(list(left) + list(right),
                              [(a, b, weight) for a in left for b in right])


def gen_cliquesum(pieces, seed=0, max_piece=8, k5_fraction=0.3, weight_range=(-3, 3),
                  denominators=(1,), density=0.8, even=False, with_tree=True, max_k=2,
                  sums=(0, 1, 2, 2)):
    """Random 0-, 1- and 2-clique-sums of planar pieces and K5 blocks.

    Returns ``(G, T)`` where ``T`` is the ground-truth decomposition (one node
    per piece, c = 5); ``T`` is None when ``with_tree`` is false.  The result
    has no K3,3 minor.  With ``even`` a pendant edge is added if needed to make
    the vertex count even.  ``sums`` lists the clique sizes drawn for the
    gluing steps; ``max_k = 3`` also allows 3-sums along triangles
    (facial ones in large planar parents); such graphs may contain K3,3.
    """
    from .decomposition.tree import DecompositionTree, Node
    from .planarity import check_planarity

    emb_cache = {}

    def _embedding(i, loc):
        if i not in emb_cache:
            g = WeightedMultigraph._raw(frozenset(loc[3]), tuple(loc[2]))
            emb_cache[i] = check_planarity(g)
        return emb_cache[i]

    if pieces < 1:
        raise PreconditionError("gen_cliquesum needs at least one piece")
    rng = random.Random(seed)
    next_id = 1
    locals_ = []  # (parent, navel, edges as list of Edge, vertices)
    for i in range(pieces):
        if rng.random() < k5_fraction:
            ids = list(range(next_id, next_id + 5))
            edges = [Edge(a, b, _weight(rng, weight_range, denominators))
                     for j, a in enumerate(ids) for b in ids[j + 1:]]
        else:
            n = rng.randint(3, max_piece)
            g = gen_planar(n, density, weight_range, rng.randrange(2 ** 32), denominators, next_id)
            ids = sorted(g.vertices)
            edges = list(g.edges)
        next_id += len(ids)
        parent, navel = None, ()
        if i:
            parent = rng.randrange(i)
            p_edges, p_verts = locals_[parent][2], locals_[parent][3]
            k = rng.choice(tuple(sums) + ((3, 3) if max_k >= 3 else ()))
            mapping = None
            if k == 3:
                mine = _triangles(edges)
                theirs = _parent_triangles(parent, locals_[parent], _embedding)
                if mine and theirs:
                    tri = rng.choice(mine)
                    mapping = dict(zip(tri, rng.sample(rng.choice(theirs), 3)))
                else:
                    k = 2
            if k == 2 and (not edges or not p_edges):
                k = 1
            if mapping is not None:
                pass
            elif k == 1:
                mapping = {rng.choice(ids): rng.choice(sorted(p_verts))}
            elif k == 2:
                ce = rng.choice(edges)
                pe = rng.choice(p_edges)
                mapping = {ce.u: pe.u, ce.v: pe.v} if rng.random() < 0.5 else {ce.u: pe.v, ce.v: pe.u}
            else:
                mapping = {}
            ids = [mapping.get(v, v) for v in ids]
            edges = [Edge(mapping.get(e.u, e.u), mapping.get(e.v, e.v), e.w) for e in edges]
            navel = tuple(sorted(mapping.values()))
        locals_.append((parent, navel, edges, set(ids)))
    total = set().union(*(loc[3] for loc in locals_))
    if even and len(total) % 2:
        host = rng.randrange(pieces)
        v = rng.choice(sorted(locals_[host][3]))
        pend = next_id
        next_id += 1
        locals_.append((host, (v,), [Edge(v, pend, Fraction(rng.randint(1, 3)))], {v, pend}))
    verts = set()
    all_edges = []
    for _, _, edges, vs in locals_:
        verts |= vs
        all_edges.extend(edges)
    G = WeightedMultigraph._raw(frozenset(verts), tuple(all_edges))
    if not with_tree:
        return G, None
    nodes = []
    for i, (parent, navel, edges, vs) in enumerate(locals_):
        g = WeightedMultigraph._raw(frozenset(vs), tuple(edges))
        emb = emb_cache[i] if i in emb_cache else check_planarity(g)
        nodes.append(Node(i, parent, g, navel, emb))
    return G, DecompositionTree(5, nodes, 0)


def _triangles(edges):
    adj = {}
    for e in edges:
        adj.setdefault(e.u, set()).add(e.v)
        adj.setdefault(e.v, set()).add(e.u)
    out = set()
    for e in edges:
        for x in adj[e.u] & adj[e.v]:
            out.add(tuple(sorted((e.u, e.v, x))))
    return sorted(out)


def _parent_triangles(i, loc, embedding_of):
    """Triangles a child may attach to: facial ones when the parent is large and planar."""
    tris = _triangles(loc[2])
    if len(loc[3]) <= 5:
        return tris
    emb = embedding_of(i, loc)
    if emb is None:
        return []
    facial = {tuple(sorted({d.tail for d in walk})) for walk in emb.faces if len(walk) == 3}
    return [t for t in tris if t in facial]


def gen_cliquesum_sized(n, seed=0, max_piece=8, weight_range=(1, 3), k5_fraction=0.3):
    """A K3,3-minor-free clique-sum graph with exactly ``n`` vertices (benchmark instances).

    Every piece brings an even number of new vertices (even planar
    triangulations glued along an edge, K5 blocks glued at a vertex), so the
    graph has perfect matchings and the count is a genuinely large number.
    The remainder is made up by a path hanging off one vertex.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    rng = random.Random(seed)
    sizes = [s for s in range(4, max_piece + 1, 2)] or [4]
    first = min(n, rng.choice(sizes))
    while True:
        g = gen_planar(first, 1.0, weight_range, rng.randrange(2 ** 32))
        if first % 2 or brute_perfmatch(g) != 0:
            break
    verts = set(g.vertices)
    edges = list(g.edges)
    nxt = first + 1
    while n - len(verts) >= max(max(sizes), 4):
        if rng.random() < k5_fraction:
            v = rng.choice(edges).u
            ids = [v] + list(range(nxt, nxt + 4))
            new = [Edge(a, b, _weight(rng, weight_range, (1,))) for j, a in enumerate(ids) for b in ids[j + 1:]]
        else:
            s = rng.choice(sizes)
            while True:  # the private vertices must be matchable among themselves
                piece = gen_planar(s, 1.0, weight_range, rng.randrange(2 ** 32), (1,), nxt)
                ce = rng.choice(piece.edges)
                if brute_perfmatch(delete_vertices(piece, (ce.u, ce.v))) != 0:
                    break
            host = rng.choice(edges)
            mapping = {ce.u: host.u, ce.v: host.v}
            new = [Edge(mapping.get(e.u, e.u), mapping.get(e.v, e.v), e.w) for e in piece.edges]
            ids = [mapping.get(x, x) for x in piece.vertices]
        verts.update(ids)
        edges.extend(new)
        nxt = max(verts) + 1
    start = rng.choice(sorted(verts))
    path = [start] + list(range(nxt, nxt + n - len(verts)))
    lo, hi = weight_range
    edges.extend(Edge(a, b, Fraction(rng.randint(max(lo, 1), max(hi, 1)))) for a, b in zip(path, path[1:]))
    verts.update(path)
    return WeightedMultigraph._raw(frozenset(verts), tuple(edges))
