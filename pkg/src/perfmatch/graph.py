"""Exact-weighted multigraphs and the clique-sum operator.

Vertices are opaque integer ids that survive every subgraph operation, so
gluing two graphs along a clique is nothing more than a union of vertex sets
and a concatenation of edge lists.  Weights are :class:`fractions.Fraction`
throughout; there is no floating point anywhere in the package.
"""

from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ParseError, PreconditionError

Rational = Fraction


class Edge(NamedTuple):
    u: int
    v: int
    w: Fraction

    def key(self):
        """Unordered endpoint pair."""
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    def other(self, x):
        return self.v if x == self.u else self.u


def as_rational(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        raise TypeError("floating-point weights are not supported; use Fraction or int")
    if isinstance(w, str):
        return parse_rational(w)
    return Fraction(w)


class WeightedMultigraph:
    """Undirected multigraph with rational edge weights.

    Edge ids are positions in :attr:`edges`.  Endpoints are added to the
    vertex set automatically; self-loops are rejected.
    """

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable = ()):
        es = []
        verts = set(vertices)
        for e in edges:
            u, v, w = e
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            es.append(Edge(int(u), int(v), as_rational(w)))
            verts.add(u)
            verts.add(v)
        self.vertices = frozenset(verts)
        self.edges = tuple(es)
        self._adj = None

    @classmethod
    def _raw(cls, vertices: frozenset, edges: tuple) -> "WeightedMultigraph":
        # trusted constructor for internal use: no validation, no copying
        g = object.__new__(cls)
        g.vertices = vertices
        g.edges = edges
        g._adj = None
        return g

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_vertices(self):
        return sorted(self.vertices)

    def adjacency(self):
        """Map vertex -> list of incident edge ids (cached)."""
        if self._adj is None:
            adj = {v: [] for v in self.vertices}
            for i, e in enumerate(self.edges):
                adj[e.u].append(i)
                adj[e.v].append(i)
            self._adj = adj
        return self._adj

    def neighbors(self, v):
        return {self.edges[i].other(v) for i in self.adjacency()[v]}

    def has_edge(self, a, b) -> bool:
        return any(self.edges[i].other(a) == b for i in self.adjacency().get(a, ()))

    def edge_multiset(self):
        """Sorted list of (min endpoint, max endpoint, weight)."""
        return sorted((*e.key(), e.w) for e in self.edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    __hash__ = None

    def __repr__(self):
        return f"WeightedMultigraph(n={self.n}, m={self.m})"


def _as_set(K) -> frozenset:
    return K if isinstance(K, frozenset) else frozenset(K)


def clique_sum(G: WeightedMultigraph, G2: WeightedMultigraph, K) -> WeightedMultigraph:
    """Glue ``G`` and ``G2`` along the shared vertex set ``K``.

    Both graphs must meet exactly in ``K``; parallel edges between vertices of
    ``K`` are kept.
    """
    K = _as_set(K)
    shared = G.vertices & G2.vertices
    if not K <= shared:
        raise PreconditionError(f"clique vertices {sorted(K - shared)} missing from an operand")
    if shared != K:
        raise PreconditionError(f"operands share vertices outside K: {sorted(shared - K)}")
    return WeightedMultigraph._raw(G.vertices | G2.vertices, G.edges + G2.edges)


def merge_parallel(G: WeightedMultigraph) -> WeightedMultigraph:
    """Replace every bundle of parallel edges by one edge carrying the summed weight.

    The merged edge sits at the position of the bundle's first edge.  Bundles
    that cancel to zero are kept as zero-weight edges.
    """
    first = {}
    weights = []
    ends = []
    for e in G.edges:
        k = e.key()
        i = first.get(k)
        if i is None:
            first[k] = len(weights)
            weights.append(e.w)
            ends.append((e.u, e.v))
        else:
            weights[i] += e.w
    if len(weights) == len(G.edges):
        return G
    edges = tuple(Edge(u, v, w) for (u, v), w in zip(ends, weights))
    return WeightedMultigraph._raw(G.vertices, edges)


def strip_zero_edges(G: WeightedMultigraph) -> WeightedMultigraph:
    edges = tuple(e for e in G.edges if e.w != 0)
    if len(edges) == len(G.edges):
        return G
    return WeightedMultigraph._raw(G.vertices, edges)


def delete_vertices(G: WeightedMultigraph, X) -> WeightedMultigraph:
    X = _as_set(X)
    if not X:
        return G
    if not X <= G.vertices:
        raise PreconditionError(f"vertices {sorted(X - G.vertices)} not in graph")
    edges = tuple(e for e in G.edges if e.u not in X and e.v not in X)
    return WeightedMultigraph._raw(G.vertices - X, edges)


def induced_subgraph(G: WeightedMultigraph, S) -> WeightedMultigraph:
    S = _as_set(S)
    return delete_vertices(G, G.vertices - S)


def normalized(G: WeightedMultigraph) -> WeightedMultigraph:
    """Parallel-merge then drop zero edges; the canonical form used for comparisons."""
    return strip_zero_edges(merge_parallel(G))


def same_labeled_graph(G: WeightedMultigraph, H: WeightedMultigraph) -> bool:
    """Equal vertex ids and equal weighted edge multisets (edge order ignored)."""
    return G.vertices == H.vertices and G.edge_multiset() == H.edge_multiset()


def connected_components(G: WeightedMultigraph):
    """Vertex sets of the connected components, ordered by smallest vertex."""
    adj = defaultdict(list)
    for e in G.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = set()
    comps = []
    for s in sorted(G.vertices):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def disjoint_union(G: WeightedMultigraph, H: WeightedMultigraph) -> WeightedMultigraph:
    return clique_sum(G, H, ())


def relabel(G: WeightedMultigraph, mapping) -> WeightedMultigraph:
    """Apply an injective vertex renaming."""
    verts = frozenset(mapping[v] for v in G.vertices)
    if len(verts) != len(G.vertices):
        raise PreconditionError("relabel mapping is not injective")
    edges = tuple(Edge(mapping[e.u], mapping[e.v], e.w) for e in G.edges)
    return WeightedMultigraph._raw(verts, edges)


# ---------------------------------------------------------------------------
# text format:  c <comment> / p pm <n> <m> / e <u> <v> <w>

_INT = re.compile(r"-?\d+\Z")
_RAT = re.compile(r"(-?\d+)/(\d+)\Z")


def parse_rational(text: str) -> Fraction:
    if _INT.match(text):
        return Fraction(int(text))
    m = _RAT.match(text)
    if m:
        q = int(m.group(2))
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), q)
    raise ValueError(f"not a rational: {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_graph(text: str) -> WeightedMultigraph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.split(" ")
        tag = fields[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 4 or fields[1] != "pm":
                raise ParseError("expected 'p pm <n> <m>'", lineno)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative header count", lineno)
            continue
        if tag == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(fields) != 4:
                raise ParseError("expected 'e <u> <v> <w>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError("vertex ids must be integers", lineno) from None
            for col, x in ((2, u), (3, v)):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex id {x} out of range 1..{n}", lineno, col)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            try:
                w = parse_rational(fields[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, 4) from None
            edges.append(Edge(u, v, w))
            continue
        raise ParseError(f"unknown line type {tag!r}", lineno, 1)
    if n is None:
        raise ParseError("missing 'p pm' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return WeightedMultigraph(range(1, n + 1), edges)


def format_graph(G: WeightedMultigraph, comment: str | None = None) -> str:
    """Render in the text format; vertex ids are renumbered 1..n in sorted order."""
    order = {v: i for i, v in enumerate(sorted(G.vertices), start=1)}
    lines = []
    if comment:
        lines.extend(f"c {c}".rstrip() for c in comment.splitlines())
    lines.append(f"p pm {G.n} {G.m}")
    for e in G.edges:
        lines.append(f"e {order[e.u]} {order[e.v]} {format_rational(e.w)}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> WeightedMultigraph:
    try:
        with open(path, encoding="ascii") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"non-ASCII input: {exc}") from None
    return parse_graph(text)


def write_graph(G: WeightedMultigraph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_graph(G, comment))
