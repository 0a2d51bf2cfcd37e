"""Local patches that turn a rough decomposition into a c-nice one.

``face_repair`` cuts the region enclosed by a separating attachment triangle
out of a plane node into a new child.  ``split_with_treedec`` replaces a
node of small treewidth by the bags of a tree decomposition.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from ..errors import PreconditionError
from ..graph import Edge, WeightedMultigraph
from ..planarity import check_planarity, cycle_bounds_face, cycle_sides, induces_cycle, restrict
from .tree import DecompositionTree, Node

ZERO = Fraction(0)
MAX_EXACT_TREEDEC = 20


class TreeDecomposition(NamedTuple):
    bags: tuple  # frozensets of vertices
    parent: tuple  # parent bag index, None at the root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def check_tree_decomposition(G: WeightedMultigraph, R: TreeDecomposition) -> list:
    """Problems with ``R`` as a tree decomposition of ``G`` (empty if valid)."""
    out = []
    bags = R.bags
    if len(R.parent) != len(bags):
        return ["bag and parent lists differ in length"]
    roots = [i for i, p in enumerate(R.parent) if p is None]
    if len(roots) != 1:
        out.append(f"expected one root bag, found {len(roots)}")
    covered = set().union(*bags) if bags else set()
    if covered != set(G.vertices):
        out.append("bags do not cover exactly the vertex set")
    for e in G.edges:
        if not any(e.u in b and e.v in b for b in bags):
            out.append(f"edge {e.u}-{e.v} not covered")
    for v in covered:
        tops = [i for i, b in enumerate(bags)
                if v in b and (R.parent[i] is None or v not in bags[R.parent[i]])]
        if len(tops) != 1:
            out.append(f"bags containing {v} are not connected")
    return out


# ---------------------------------------------------------------------------
# face repair


def _offending(T, t):
    node = T.nodes[t]
    if node.embedding is None or node.graph.n <= T.c:
        return None
    for s in T.children(t):
        K = T.nodes[s].navel
        if len(K) != 3:
            continue
        if not induces_cycle(node.graph, K):
            raise PreconditionError(f"node {t}: attachment clique {list(K)} is not a triangle of the node graph")
        if not cycle_bounds_face(node.embedding, K):
            return K
    return None


def _cycle_edges(G, K):
    a, b, c = K
    pick = {}
    for i, e in enumerate(G.edges):
        k = e.key()
        if set(k) <= set(K) and k not in pick:
            pick[k] = i
    key = lambda x, y: (x, y) if x < y else (y, x)  # noqa: E731
    return [pick[key(a, b)], pick[key(b, c)], pick[key(c, a)]]


def _split_once(T, t, K):
    node = T.nodes[t]
    G, emb = node.graph, node.embedding
    cyc = _cycle_edges(G, K)
    sides = cycle_sides(emb, list(K), cyc)
    navel_out = set(node.navel) - set(K)
    choice = None
    for verts, edges in sides:
        if verts and not (verts & navel_out):
            choice = (verts, edges)
            break
    if choice is None:
        raise PreconditionError(f"node {t}: cannot separate triangle {list(K)} from the navel")
    inner, inner_edges = choice
    # the host keeps everything else; the triangle edges keep their weights there
    keep = [i for i in range(G.m) if i not in inner_edges]
    host = WeightedMultigraph._raw(G.vertices - inner, tuple(G.edges[i] for i in keep))
    host_emb = restrict(emb, host, keep)
    zero = tuple(Edge(x, y, ZERO) for x, y in ((K[0], K[1]), (K[1], K[2]), (K[0], K[2])))
    f_graph = WeightedMultigraph._raw(inner | set(K), tuple(G.edges[i] for i in sorted(inner_edges)) + zero)
    f_emb = check_planarity(f_graph)
    new_id = T.next_id()
    moved = []
    for s in T.children(t):
        nav = set(T.nodes[s].navel)
        if nav <= inner | set(K) and not nav <= set(K):
            if not nav & inner:
                raise PreconditionError(f"child {s} attaches ambiguously")
            moved.append(s)
        elif nav & inner:
            raise PreconditionError(f"child {s} straddles triangle {list(K)}")
    added = [Node(t, node.parent, host, node.navel, host_emb),
             Node(new_id, t, f_graph, K, f_emb)]
    for s in moved:
        c = T.nodes[s]
        added.append(Node(s, new_id, c.graph, c.navel, c.embedding))
    return T.replace(added=added), new_id


def face_repair(T: DecompositionTree, t: int) -> DecompositionTree:
    """Split node ``t`` (and the nodes it spawns) until every non-navel attachment triangle bounds a face."""
    if t not in T.nodes:
        raise PreconditionError(f"no node {t}")
    K = _offending(T, t)
    if K is None:
        raise PreconditionError(f"node {t} has no separating attachment triangle")
    work = [t]
    while work:
        x = work.pop()
        K = _offending(T, x)
        if K is None:
            continue
        T, y = _split_once(T, x, K)
        work.extend([x, y])
    return T


# ---------------------------------------------------------------------------
# splitting along a tree decomposition


def split_with_treedec(T: DecompositionTree, t: int, R: TreeDecomposition) -> DecompositionTree:
    """Replace node ``t`` by the bags of ``R``, rooted at a bag containing the navel.

    Every edge of G_t goes to the topmost bag holding both ends; each bag also
    gets zero-weight edges on the vertices it shares with its parent bag. A bag
    with more than c vertices also gets them on every clique attached to it, and
    each attached triangle must bound a face of its plane embedding.
    Bags may have at most c vertices (c + 1 if the bag graph is planar), and
    adjacent bags may share at most three vertices.
    """
    node = T.nodes[t]
    G = node.graph
    problems = check_tree_decomposition(G, R)
    if problems:
        raise PreconditionError("invalid tree decomposition: " + "; ".join(problems[:3]))
    bags = [frozenset(b) for b in R.bags]
    navel = set(node.navel)
    root = next((i for i, b in enumerate(bags) if navel <= b), None)
    if root is None:
        raise PreconditionError(f"navel {sorted(navel)} of node {t} is in no bag")
    # re-root R at `root`
    nbrs = [[] for _ in bags]
    for i, p in enumerate(R.parent):
        if p is not None:
            nbrs[i].append(p)
            nbrs[p].append(i)
    par = [None] * len(bags)
    order = [root]
    seen = {root}
    for i in order:
        for j in nbrs[i]:
            if j not in seen:
                seen.add(j)
                par[j] = i
                order.append(j)
    depth = [0] * len(bags)
    for i in order[1:]:
        depth[i] = depth[par[i]] + 1
    # topmost bag per edge
    bag_edges = [[] for _ in bags]
    for e in G.edges:
        best = min((i for i, b in enumerate(bags) if e.u in b and e.v in b), key=lambda i: depth[i])
        bag_edges[best].append(e)
    ids = {root: t}
    nxt = T.next_id()
    for i in order[1:]:
        ids[i] = nxt
        nxt += 1
    host_of = {}
    for s in T.children(t):
        host = min((i for i in order if set(T.nodes[s].navel) <= bags[i]), key=lambda i: depth[i], default=None)
        if host is None:
            raise PreconditionError(f"navel of child {s} is in no bag")
        host_of[s] = host
    # attachment cliques hanging off each bag
    attached = [[] for _ in bags]
    for i in order[1:]:
        attached[par[i]].append(tuple(sorted(bags[i] & bags[par[i]])))
    for s, host in host_of.items():
        attached[host].append(T.nodes[s].navel)
    added = []
    for i in order:
        b = bags[i]
        edges = list(bag_edges[i])
        nav = node.navel if par[i] is None else tuple(sorted(b & bags[par[i]]))
        if par[i] is not None and len(nav) > 3:
            raise PreconditionError(f"bags share {len(nav)} > 3 vertices")
        cliques = [nav] if par[i] is not None else []
        if len(b) > T.c:
            # a plane bag must carry its attachment triangles itself
            cliques += attached[i]
        have = {e.key() for e in edges}
        for K in cliques:
            for x in K:
                for y in K:
                    if x < y and (x, y) not in have:
                        have.add((x, y))
                        edges.append(Edge(x, y, ZERO))
        g = WeightedMultigraph._raw(b, tuple(edges))
        emb = None
        if len(b) > T.c:
            if len(b) > T.c + 1:
                raise PreconditionError(f"bag of size {len(b)} exceeds c + 1 = {T.c + 1}")
            emb = check_planarity(g)
            if emb is None:
                raise PreconditionError(f"bag of size {len(b)} > c is not planar")
            for K in attached[i]:
                if len(K) == 3 and not cycle_bounds_face(emb, K):
                    raise PreconditionError(f"attachment triangle {list(K)} does not bound a face of its bag")
        elif g == G:
            emb = node.embedding
        else:
            emb = check_planarity(g)
        added.append(Node(ids[i], node.parent if par[i] is None else ids[par[i]], g, nav, emb))
    for s, host in host_of.items():
        c = T.nodes[s]
        added.append(Node(s, ids[host], c.graph, c.navel, c.embedding))
    return T.replace(removed=[t], added=added)


# ---------------------------------------------------------------------------
# exact tree decompositions of small graphs


def exact_tree_decomposition(G: WeightedMultigraph) -> TreeDecomposition:
    """A minimum-width tree decomposition by dynamic programming over vertex subsets.

    Exponential; limited to graphs with at most 20 vertices.
    """
    verts = sorted(G.vertices)
    n = len(verts)
    if n > MAX_EXACT_TREEDEC:
        raise PreconditionError(f"exact tree decomposition limited to {MAX_EXACT_TREEDEC} vertices")
    if n == 0:
        return TreeDecomposition((frozenset(),), (None,))
    idx = {v: i for i, v in enumerate(verts)}
    nb = [0] * n
    for e in G.edges:
        a, b = idx[e.u], idx[e.v]
        nb[a] |= 1 << b
        nb[b] |= 1 << a

    def q_size(S, v):
        # vertices outside S + v reachable from v through S
        comp = 1 << v
        frontier = comp
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= nb[low.bit_length() - 1]
                f ^= low
            new = reach & S & ~comp
            comp |= new
            frontier = new
        out = 0
        c = comp
        while c:
            low = c & -c
            out |= nb[low.bit_length() - 1]
            c ^= low
        return bin(out & ~S & ~(1 << v)).count("1")

    full = (1 << n) - 1
    INF = n + 1
    tw = [INF] * (1 << n)
    choice = [0] * (1 << n)
    tw[0] = -1
    for S in range(1, full + 1):
        best, arg = INF, -1
        s = S
        while s:
            low = s & -s
            v = low.bit_length() - 1
            s ^= low
            prev = tw[S ^ low]
            if prev >= best:
                continue
            val = max(prev, q_size(S ^ low, v))
            if val < best:
                best, arg = val, v
        tw[S] = best
        choice[S] = arg
    order = []
    S = full
    while S:
        v = choice[S]
        order.append(v)
        S ^= 1 << v
    order.reverse()  # elimination order
    return _from_elimination(verts, nb, order)


def _from_elimination(verts, nb, order):
    n = len(verts)
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(j for j in range(n) if nb[i] >> j & 1) for i in range(n)]
    bags = []
    higher = []
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        for a in later:
            adj[a] |= later - {a}
        bags.append(frozenset([v]) | later)
        higher.append(later)
    parent = []
    for i, v in enumerate(order):
        if higher[i]:
            u = min(higher[i], key=lambda x: pos[x])
            parent.append(pos[u])
        else:
            parent.append(None)
    # connect a forest into one tree under the last bag
    roots = [i for i, p in enumerate(parent) if p is None]
    for r in roots[:-1]:
        parent[r] = roots[-1]
    bags = [frozenset(verts[x] for x in b) for b in bags]
    return _contract(bags, parent)


def _contract(bags, parent):
    """Merge bags contained in their parent, then renumber."""
    bags = list(bags)
    parent = list(parent)
    alive = [True] * len(bags)
    changed = True
    while changed:
        changed = False
        for i in range(len(bags)):
            p = parent[i]
            if alive[i] and p is not None and bags[i] <= bags[p]:
                alive[i] = False
                for j in range(len(bags)):
                    if alive[j] and parent[j] == i:
                        parent[j] = p
                changed = True
    keep = [i for i in range(len(bags)) if alive[i]]
    new = {old: k for k, old in enumerate(keep)}
    return TreeDecomposition(tuple(bags[i] for i in keep),
                             tuple(None if parent[i] is None else new[parent[i]] for i in keep))
