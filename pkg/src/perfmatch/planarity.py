"""Combinatorial plane embeddings.

An embedding is a rotation system: for every vertex, the clockwise cyclic
order of its incident edge ids.  Faces are traced from the rotation alone.
Planarity testing itself is delegated to networkx (left-right algorithm);
everything built on top of the rotation lives here.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from .errors import NotPlanarError, PreconditionError
from .graph import Edge, WeightedMultigraph, clique_sum


class Dart(NamedTuple):
    edge: int
    tail: int
    head: int


class PlaneEmbedding:
    """Rotation system over ``graph`` plus a designated outer face."""

    def __init__(self, graph: WeightedMultigraph, rotation, outer_face=None):
        self.graph = graph
        self.rotation = {v: tuple(rotation.get(v, ())) for v in graph.vertices}
        self._faces = None
        self._pos = None
        self._outer = outer_face

    def _positions(self):
        if self._pos is None:
            self._pos = {(v, e): i for v, rot in self.rotation.items() for i, e in enumerate(rot)}
        return self._pos

    def next_dart(self, d: Dart) -> Dart:
        rot = self.rotation[d.head]
        i = self._positions()[(d.head, d.edge)]
        e = rot[(i + 1) % len(rot)]
        return Dart(e, d.head, self.graph.edges[e].other(d.head))

    @property
    def faces(self):
        """Face boundary walks, each a tuple of darts; deterministic in the rotation."""
        if self._faces is None:
            edges = self.graph.edges
            seen = set()
            faces = []
            for v in sorted(self.rotation):
                for e in self.rotation[v]:
                    d = Dart(e, v, edges[e].other(v))
                    if (d.edge, d.tail) in seen:
                        continue
                    walk = []
                    while (d.edge, d.tail) not in seen:
                        seen.add((d.edge, d.tail))
                        walk.append(d)
                        d = self.next_dart(d)
                    faces.append(tuple(walk))
            self._faces = faces
        return self._faces

    @property
    def outer_face(self) -> int | None:
        if self._outer is None and self.faces:
            self._outer = max(range(len(self.faces)), key=lambda i: len(self.faces[i]))
        return self._outer

    def face_vertices(self, i):
        return {d.tail for d in self.faces[i]}

    def with_outer_face(self, i) -> "PlaneEmbedding":
        emb = PlaneEmbedding(self.graph, self.rotation, i)
        emb._faces = self._faces
        return emb

    def is_valid(self) -> bool:
        """Rotation covers exactly the incident edges and Euler's formula holds per component."""
        adj = self.graph.adjacency()
        for v in self.graph.vertices:
            if sorted(self.rotation[v]) != sorted(adj[v]):
                return False
        comp_of = {}
        for c, comp in enumerate(_components(self.graph)):
            for v in comp:
                comp_of[v] = c
        n_c = defaultdict(int)
        m_c = defaultdict(int)
        f_c = defaultdict(int)
        for v in self.graph.vertices:
            n_c[comp_of[v]] += 1
        for e in self.graph.edges:
            m_c[comp_of[e.u]] += 1
        for face in self.faces:
            f_c[comp_of[face[0].tail]] += 1
        for c in n_c:
            f = f_c[c] if m_c[c] else 1
            if n_c[c] - m_c[c] + f != 2:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PlaneEmbedding):
            return NotImplemented
        return self.graph == other.graph and self.rotation == other.rotation

    __hash__ = None

    def to_json(self):
        return {"rotation": {str(v): list(rot) for v, rot in sorted(self.rotation.items())}}


def _components(G):
    from .graph import connected_components
    return connected_components(G)


def _expand_bundles(G: WeightedMultigraph, simple_rotation):
    """Turn a rotation over representative edges into one over all parallel copies."""
    bundles = defaultdict(list)
    for i, e in enumerate(G.edges):
        bundles[e.key()].append(i)
    rotation = {}
    for v, rot in simple_rotation.items():
        out = []
        for rep in rot:
            e = G.edges[rep]
            b = bundles[e.key()]
            # nested arcs: one endpoint sees the bundle forwards, the other backwards
            out.extend(b if v == e.key()[0] else reversed(b))
        rotation[v] = out
    return rotation


def check_planarity(G: WeightedMultigraph) -> PlaneEmbedding | None:
    """A plane embedding of ``G``, or ``None`` when ``G`` is not planar."""
    reps = {}
    for i, e in enumerate(G.edges):
        reps.setdefault(e.key(), i)
    adj = defaultdict(list)
    for k, i in reps.items():
        adj[k[0]].append(i)
        adj[k[1]].append(i)
    if all(len(a) <= 2 for a in adj.values()):
        # paths and cycles: every rotation is planar
        simple_rot = {v: adj.get(v, []) for v in G.vertices}
        return PlaneEmbedding(G, _expand_bundles(G, simple_rot))
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(reps)
    ok, emb = nx.check_planarity(H)
    if not ok:
        return None
    simple_rot = {}
    for v in G.vertices:
        simple_rot[v] = [reps[(v, w) if v < w else (w, v)] for w in emb.neighbors_cw_order(v)]
    return PlaneEmbedding(G, _expand_bundles(G, simple_rot))


def embed(G: WeightedMultigraph) -> PlaneEmbedding:
    emb = check_planarity(G)
    if emb is None:
        raise NotPlanarError(f"graph with {G.n} vertices and {G.m} edges is not planar")
    return emb


def is_planar(G: WeightedMultigraph) -> bool:
    return check_planarity(G) is not None


def faces(embedding: PlaneEmbedding):
    return embedding.faces


def restrict(embedding: PlaneEmbedding, subgraph: WeightedMultigraph, old_ids) -> PlaneEmbedding:
    """Embedding of a subgraph; ``subgraph.edges[j]`` is old edge ``old_ids[j]``.

    Deleting edges and vertices from a plane graph keeps it plane, so the
    restricted rotation is valid without re-testing.
    """
    new_id = {old: j for j, old in enumerate(old_ids)}
    rotation = {v: [new_id[e] for e in embedding.rotation.get(v, ()) if e in new_id]
                for v in subgraph.vertices}
    return PlaneEmbedding(subgraph, rotation)


def delete_vertices_embedded(embedding: PlaneEmbedding, X):
    G = embedding.graph
    X = frozenset(X)
    keep = [i for i, e in enumerate(G.edges) if e.u not in X and e.v not in X]
    sub = WeightedMultigraph._raw(G.vertices - X, tuple(G.edges[i] for i in keep))
    return restrict(embedding, sub, keep)


def induces_cycle(G: WeightedMultigraph, C) -> bool:
    C = set(C)
    nbrs = {v: set() for v in C}
    for e in G.edges:
        if e.u in C and e.v in C:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)
    if any(len(s) != 2 for s in nbrs.values()):
        return False
    start = next(iter(C))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in nbrs[x] - seen:
            seen.add(y)
            stack.append(y)
    return seen == C


def cycle_bounds_face(embedding: PlaneEmbedding, C) -> bool:
    """Whether the cycle on vertex set ``C`` is the boundary walk of some face.

    Sets of at most two vertices bound a face by convention.
    """
    C = frozenset(C)
    if len(C) <= 2:
        return True
    if not C <= embedding.graph.vertices or not induces_cycle(embedding.graph, C):
        raise PreconditionError(f"vertices {sorted(C)} do not induce a cycle")
    k = len(C)
    for walk in embedding.faces:
        if len(walk) == k and {d.tail for d in walk} == C:
            return True
    return False


def cycle_sides(embedding: PlaneEmbedding, cycle, cycle_edges):
    """Split the graph along a cycle.

    ``cycle`` lists the vertices in order and ``cycle_edges[i]`` joins
    ``cycle[i]`` to ``cycle[i+1]``.  Returns two ``(vertices, edges)`` pairs,
    one per side of the cycle; the cycle itself belongs to neither.  Edges are
    all edges with an endpoint strictly on that side, plus chords between cycle
    vertices drawn on that side.
    """
    G = embedding.graph
    on_cycle = set(cycle)
    cyc_edges = set(cycle_edges)
    seeds = ([], [])
    chords = (set(), set())
    for i, x in enumerate(cycle):
        e_prev, e_next = cycle_edges[i - 1], cycle_edges[i]
        rot = embedding.rotation[x]
        d = len(rot)
        a = rot.index(e_prev)
        side = 0
        # clockwise from the incoming edge to the outgoing edge is one side,
        # the rest of the rotation is the other
        for step in range(1, d):
            e = rot[(a + step) % d]
            if e == e_next:
                side = 1
                continue
            if e in cyc_edges:
                continue
            y = G.edges[e].other(x)
            if y in on_cycle:
                chords[side].add(e)
            else:
                seeds[side].append(y)
    adj = defaultdict(list)
    for e in G.edges:
        if e.u not in on_cycle and e.v not in on_cycle:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
    result = []
    for s in (0, 1):
        verts = set(seeds[s])
        stack = list(verts)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in verts:
                    verts.add(y)
                    stack.append(y)
        edges = {i for i, e in enumerate(G.edges) if e.u in verts or e.v in verts}
        result.append((frozenset(verts), frozenset(edges | chords[s])))
    if result[0][0] & result[1][0]:
        raise PreconditionError("cycle does not separate consistently; embedding invalid")
    return result[0], result[1]


def face_containing(embedding: PlaneEmbedding, S) -> int | None:
    S = set(S)
    if not S:
        return embedding.outer_face
    for i, walk in enumerate(embedding.faces):
        if S <= {d.tail for d in walk}:
            return i
    return None


def on_common_face(embedding: PlaneEmbedding, S) -> bool:
    """Whether some drawing of the embedding puts all of ``S`` on one face.

    Components can be nested freely, so it suffices that within each connected
    component the members of ``S`` share a face of that component.
    """
    S = set(S)
    G = embedding.graph
    if not S <= G.vertices:
        raise PreconditionError(f"{sorted(S - G.vertices)} not in graph")
    face_sets = [{d.tail for d in walk} for walk in embedding.faces]
    for comp in _components(G):
        part = S & comp
        if len(part) <= 1 or len(comp) == 1:
            continue
        if not any(part <= fs for fs in face_sets if fs & comp):
            return False
    return True


def embed_with_common_face(G: WeightedMultigraph, S) -> PlaneEmbedding | None:
    """An embedding with all of ``S`` on one face (made outer when connected), or None.

    Uses the apex trick: such an embedding exists iff ``G`` plus a new vertex
    adjacent to all of ``S`` is planar.
    """
    S = sorted(set(S))
    if len(S) <= 1:
        return check_planarity(G)
    apex = max(G.vertices) + 1
    extra = tuple(Edge(v, apex, Fraction(0)) for v in S)
    H = WeightedMultigraph._raw(G.vertices | {apex}, G.edges + extra)
    emb = check_planarity(H)
    if emb is None:
        return None
    emb = restrict(emb, G, range(G.m))
    face = face_containing(emb, S)
    return emb if face is None else emb.with_outer_face(face)


def splice_in_face(host: WeightedMultigraph, gadget: WeightedMultigraph, K,
                   host_embedding: PlaneEmbedding | None = None,
                   gadget_embedding: PlaneEmbedding | None = None):
    """Glue a plane gadget into ``host`` along ``K`` and re-embed the result.

    For ``|K| = 3`` the host must have ``K`` as a face (checked on
    ``host_embedding`` when given) and the gadget must have ``K`` on one face.
    """
    K = frozenset(K)
    if len(K) > 3:
        raise PreconditionError(f"attachment clique {sorted(K)} has more than 3 vertices")
    if len(K) == 3:
        if host_embedding is not None and not cycle_bounds_face(host_embedding, K):
            raise PreconditionError(f"attachment clique {sorted(K)} does not bound a face of the host")
        g_emb = gadget_embedding or check_planarity(gadget)
        if g_emb is None or not on_common_face(g_emb, K):
            raise PreconditionError(f"gadget does not have {sorted(K)} on a common face")
    union = clique_sum(host, gadget, K)
    emb = check_planarity(union)
    if emb is None:
        raise NotPlanarError(f"splice along {sorted(K)} is not planar")
    return union, emb
