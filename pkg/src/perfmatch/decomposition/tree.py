"""Clique-sum decomposition trees, composition and validation."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

from ..errors import InvalidDecompositionError, PreconditionError
from ..graph import WeightedMultigraph, normalized, relabel, same_labeled_graph
from ..planarity import PlaneEmbedding, cycle_bounds_face, induces_cycle


@dataclass(frozen=True)
class Node:
    id: int
    parent: int | None
    graph: WeightedMultigraph
    navel: tuple = ()
    embedding: PlaneEmbedding | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "navel", tuple(sorted(set(self.navel))))


class Violation(NamedTuple):
    kind: str
    nodes: tuple
    message: str

    def __str__(self):
        where = ",".join(map(str, self.nodes))
        return f"{self.kind} [{where}]: {self.message}"


class DecompositionTree:
    """Rooted tree of local graphs.  Immutable by convention: edits build new trees."""

    def __init__(self, c: int, nodes, root: int):
        if isinstance(nodes, dict):
            nodes = nodes.values()
        self.c = c
        self.nodes = {}
        for nd in nodes:
            if nd.id in self.nodes:
                raise PreconditionError(f"duplicate node id {nd.id}")
            self.nodes[nd.id] = nd
        self.root = root
        self._children = None

    def __eq__(self, other):
        if not isinstance(other, DecompositionTree):
            return NotImplemented
        return self.c == other.c and self.root == other.root and self.nodes == other.nodes

    __hash__ = None

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"DecompositionTree(c={self.c}, nodes={len(self.nodes)}, root={self.root})"

    def children(self, t) -> list:
        if self._children is None:
            ch = defaultdict(list)
            for nd in self.nodes.values():
                if nd.parent is not None:
                    ch[nd.parent].append(nd.id)
            self._children = {k: sorted(v) for k, v in ch.items()}
        return self._children.get(t, [])

    def postorder(self) -> list:
        """Node ids, children before parents."""
        out = []
        stack = [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                out.append(t)
                continue
            stack.append((t, True))
            for s in reversed(self.children(t)):
                stack.append((s, False))
        return out

    def total_size(self) -> int:
        """Sum over nodes of local vertex counts."""
        return sum(nd.graph.n for nd in self.nodes.values())

    def replace(self, removed=(), added=()) -> "DecompositionTree":
        nodes = {k: v for k, v in self.nodes.items() if k not in set(removed)}
        for nd in added:
            nodes[nd.id] = nd
        return DecompositionTree(self.c, nodes, self.root)

    def next_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    def relabel(self, mapping) -> "DecompositionTree":
        """Rename vertices in every node; embeddings carry over since edge order is kept."""
        out = []
        for nd in self.nodes.values():
            g = relabel(nd.graph, mapping)
            emb = None
            if nd.embedding is not None:
                emb = PlaneEmbedding(g, {mapping[v]: r for v, r in nd.embedding.rotation.items()})
            out.append(Node(nd.id, nd.parent, g, tuple(mapping[v] for v in nd.navel), emb))
        return DecompositionTree(self.c, out, self.root)


def _shape_violations(T: DecompositionTree):
    out = []
    if T.root not in T.nodes:
        return [Violation("tree-shape", (T.root,), "root id is not a node")]
    if T.nodes[T.root].parent is not None:
        out.append(Violation("tree-shape", (T.root,), "root has a parent"))
    for nd in T.nodes.values():
        if nd.id != T.root:
            if nd.parent is None:
                out.append(Violation("tree-shape", (nd.id,), "second parentless node"))
            elif nd.parent not in T.nodes:
                out.append(Violation("tree-shape", (nd.id,), f"parent {nd.parent} does not exist"))
    if out:
        return out
    reached = set(T.postorder())
    lost = sorted(set(T.nodes) - reached)
    if lost:
        out.append(Violation("tree-shape", tuple(lost), "nodes not reachable from the root (cycle)"))
    return out


def compose(T: DecompositionTree) -> WeightedMultigraph:
    """The glued graph: union of all local graphs along their shared ids.

    Equal to the iterated clique-sum once tree shape, navels and running
    intersection hold, which are checked first.
    """
    bad = _shape_violations(T) or _navel_violations(T) or _running_intersection(T)
    if bad:
        raise InvalidDecompositionError("cannot compose: " + "; ".join(map(str, bad)), bad)
    verts = set()
    edges = []
    for t in reversed(T.postorder()):
        G = T.nodes[t].graph
        verts |= G.vertices
        edges.extend(G.edges)
    return WeightedMultigraph._raw(frozenset(verts), tuple(edges))


def _navel_violations(T: DecompositionTree):
    out = []
    root = T.nodes[T.root]
    if root.navel:
        out.append(Violation("root-navel", (T.root,), "root navel must be empty"))
    for nd in T.nodes.values():
        if nd.parent is None:
            continue
        par = T.nodes[nd.parent]
        shared = nd.graph.vertices & par.graph.vertices
        if set(nd.navel) != shared:
            out.append(Violation("navel-mismatch", (nd.parent, nd.id),
                                 f"navel {list(nd.navel)} != shared vertices {sorted(shared)}"))
    return out


def _running_intersection(T: DecompositionTree):
    out = []
    tops = defaultdict(list)
    for nd in T.nodes.values():
        par = None if nd.parent is None else T.nodes[nd.parent]
        for v in nd.graph.vertices:
            if par is None or v not in par.graph.vertices:
                tops[v].append(nd.id)
    for v, ts in sorted(tops.items()):
        if len(ts) > 1:
            out.append(Violation("running-intersection", tuple(sorted(ts)),
                                 f"nodes containing vertex {v} are not connected"))
    return out


def _clique_violations(T: DecompositionTree):
    out = []
    for nd in T.nodes.values():
        if nd.parent is None:
            continue
        K = nd.navel
        if len(K) > 3:
            out.append(Violation("clique-too-large", (nd.parent, nd.id), f"|K| = {len(K)} > 3"))
        par = T.nodes[nd.parent]
        for i, a in enumerate(K):
            for b in K[i + 1:]:
                if not (nd.graph.has_edge(a, b) or par.graph.has_edge(a, b)):
                    out.append(Violation("clique-not-adjacent", (nd.parent, nd.id),
                                         f"attachment vertices {a} and {b} are not adjacent"))
    return out


def _planarity_violations(T: DecompositionTree):
    out = []
    for nd in T.nodes.values():
        emb = nd.embedding
        if emb is None:
            if nd.graph.n > T.c:
                out.append(Violation("missing-embedding", (nd.id,),
                                     f"{nd.graph.n} > c = {T.c} vertices but no embedding"))
            continue
        if emb.graph != nd.graph or not emb.is_valid():
            out.append(Violation("invalid-embedding", (nd.id,), "embedding is not a plane embedding of the node graph"))
            continue
        if nd.graph.n <= T.c:
            continue
        for s in T.children(nd.id):
            K = T.nodes[s].navel
            if len(K) != 3 or not set(K) <= nd.graph.vertices:
                continue
            if not induces_cycle(nd.graph, K):
                out.append(Violation("attachment-not-facial", (nd.id, s),
                                     f"attachment triangle {list(K)} is not a triangle of the node graph"))
            elif not cycle_bounds_face(emb, K):
                out.append(Violation("attachment-not-facial", (nd.id, s),
                                     f"attachment triangle {list(K)} does not bound a face"))
    return out


def validate(T: DecompositionTree, G: WeightedMultigraph | None = None) -> list:
    """All violated invariants; an empty list means valid (and, with ``G``, composing to ``G``)."""
    if not isinstance(T.c, int) or T.c < 1:
        return [Violation("bad-c", (), f"c must be a positive integer, got {T.c!r}")]
    bad = _shape_violations(T)
    if bad:
        return bad
    bad = _navel_violations(T) + _running_intersection(T)
    bad += _clique_violations(T) + _planarity_violations(T)
    if G is not None and not any(v.kind in ("navel-mismatch", "running-intersection") for v in bad):
        H = compose(T)
        if not same_labeled_graph(normalized(H), normalized(G)):
            missing = sorted(G.vertices - H.vertices)
            extra = sorted(H.vertices - G.vertices)
            detail = "weighted edge multisets differ"
            if missing or extra:
                detail = f"vertex sets differ (missing {missing[:10]}, extra {extra[:10]})"
            bad.append(Violation("composition-mismatch", (T.root,), detail))
    return bad


def require_valid(T: DecompositionTree, G: WeightedMultigraph | None = None) -> None:
    bad = validate(T, G)
    if bad:
        raise InvalidDecompositionError(f"{len(bad)} violation(s): " + "; ".join(map(str, bad[:5])), bad)
