"""Clique-sum decomposition of K3,3-minor-free graphs.

A graph has no K3,3 minor iff every triconnected component of every block is
planar or a K5.  Components become decomposition nodes; the virtual edge
between two adjacent components becomes a zero-weight edge on both sides, so
every attachment set has at most two vertices and is a clique.
"""

from __future__ import annotations

from collections import defaultdict, deque
from fractions import Fraction

import networkx as nx

from ..errors import NotInClassError
from ..graph import Edge, WeightedMultigraph, connected_components, normalized
from ..planarity import check_planarity
from .tree import DecompositionTree, Node
from .triconnected import RIGID, triconnected_components

C_K33 = 5
ZERO = Fraction(0)


def is_k5(G: WeightedMultigraph) -> bool:
    pairs = {e.key() for e in G.edges}
    return G.n == 5 and len(pairs) == 10


class _Builder:
    def __init__(self):
        self.nodes = []  # (parent index or None, navel, graph, embedding)

    def add(self, parent, navel, graph, embedding):
        self.nodes.append((parent, tuple(navel), graph, embedding))
        return len(self.nodes) - 1


def _local_node(vertices, real, virtual_pairs, weight):
    edges = [Edge(u, v, weight[(u, v) if u < v else (v, u)]) for u, v in real]
    have = {e.key() for e in edges}
    for a, b in virtual_pairs:
        k = (a, b) if a < b else (b, a)
        if k not in have:
            have.add(k)
            edges.append(Edge(k[0], k[1], ZERO))
    return WeightedMultigraph._raw(frozenset(vertices), tuple(edges))


def _embed_or_fail(graph, where):
    emb = check_planarity(graph)
    if emb is not None:
        return emb
    if is_k5(graph):
        return None
    raise NotInClassError(
        f"triconnected component on vertices {sorted(graph.vertices)[:12]}"
        f"{'...' if graph.n > 12 else ''} ({graph.n} vertices, {graph.m} edges{where}) "
        "is neither planar nor K5, so the graph has a K3,3 minor")


def _block_nodes(block_edges, weight, attach_vertex, parent, navel, builder, where):
    """Add the nodes of one block below ``parent``; returns {vertex: node index} covering the block.

    The block's subtree is rooted at a node containing ``attach_vertex``.
    """
    verts = {x for e in block_edges for x in e}
    if len(verts) == 2:
        g = _local_node(verts, block_edges, (), weight)
        idx = builder.add(parent, navel, g, check_planarity(g))
        return {v: idx for v in verts}
    split = triconnected_components(block_edges, sorted(verts))
    comps = split.components
    ends = split.ends
    n_real = split.n_real
    holders = defaultdict(list)
    comp_verts = []
    for i, c in enumerate(comps):
        comp_verts.append({x for e in c.edges for x in ends[e]})
        for e in c.edges:
            if e >= n_real:
                holders[e].append(i)
    adj = defaultdict(list)
    for e, (i, j) in holders.items():
        adj[i].append((j, e))
        adj[j].append((i, e))
    if attach_vertex is None:
        start = 0
    else:
        start = next(i for i, vs in enumerate(comp_verts) if attach_vertex in vs)
    where_of = {}
    seen = {start}
    queue = deque([(start, parent, navel)])
    while queue:
        i, par, nav = queue.popleft()
        c = comps[i]
        real = [ends[e] for e in c.edges if e < n_real]
        virt = [ends[e] for e in c.edges if e >= n_real]
        g = _local_node(comp_verts[i], real, virt, weight)
        emb = _embed_or_fail(g, where) if c.kind == RIGID else check_planarity(g)
        idx = builder.add(par, nav, g, emb)
        for v in comp_verts[i]:
            where_of.setdefault(v, idx)
        for j, e in adj[i]:
            if j not in seen:
                seen.add(j)
                queue.append((j, idx, ends[e]))
    return where_of


def decompose_k33free(G: WeightedMultigraph) -> DecompositionTree:
    """A 5-nice decomposition whose nodes are planar (embedded) or K5 copies.

    Raises :class:`NotInClassError` if some triconnected component is neither,
    i.e. if ``G`` has a K3,3 minor.
    """
    H = normalized(G)
    weight = {e.key(): e.w for e in H.edges}
    builder = _Builder()
    root = None
    for comp in connected_components(H):
        if len(comp) == 1:
            (v,) = comp
            g = WeightedMultigraph._raw(frozenset(comp), ())
            idx = builder.add(root, (), g, check_planarity(g))
            root = idx if root is None else root
            continue
        simple = nx.Graph()
        simple.add_edges_from(k for k in weight if k[0] in comp)
        blocks = [list(b) for b in nx.biconnected_component_edges(simple)]
        blocks_at = defaultdict(list)
        block_verts = []
        for i, b in enumerate(blocks):
            vs = {x for e in b for x in e}
            block_verts.append(vs)
            for v in vs:
                blocks_at[v].append(i)
        seen = {0}
        queue = deque([(0, None)])
        node_of = {}
        while queue:
            i, x = queue.popleft()
            if x is None:
                par, nav = root, ()
            else:
                par, nav = node_of[x], (x,)
            where = f", block {i}"
            placed = _block_nodes(blocks[i], weight, x, par, nav, builder, where)
            if root is None:
                root = 0
            for v, idx in placed.items():
                node_of.setdefault(v, idx)
            for v in sorted(block_verts[i]):
                for j in blocks_at[v]:
                    if j not in seen:
                        seen.add(j)
                        queue.append((j, v))
    if root is None:
        g = WeightedMultigraph._raw(frozenset(), ())
        builder.add(None, (), g, None)
        root = 0
    nodes = [Node(i, par, g, nav, emb) for i, (par, nav, g, emb) in enumerate(builder.nodes)]
    return DecompositionTree(C_K33, nodes, root)
