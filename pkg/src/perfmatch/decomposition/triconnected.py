"""Triconnected components of a biconnected multigraph in linear time.

Path-search algorithm over a palm tree: one DFS computes low points, the
adjacency lists are reordered so that paths are generated in the right
order, and a second DFS splits off separation pairs of type 1 and type 2
using a stack of edges and a stack of candidate triples.  Split components
are finally merged bond-with-bond and polygon-with-polygon.

Vertices are arbitrary hashable ids; edges are given as endpoint pairs and
identified by position.  Virtual edges get ids from ``len(edges)`` upwards.
"""

from __future__ import annotations

import heapq
import sys
import threading
from collections import defaultdict
from typing import NamedTuple

from ..errors import PreconditionError

BOND = "bond"
POLYGON = "polygon"
RIGID = "rigid"


class TriComponent(NamedTuple):
    kind: str
    edges: tuple


class SplitResult(NamedTuple):
    components: list
    ends: list  # endpoints of every edge id, real and virtual
    n_real: int


def _run_deep(fn):
    """Run ``fn`` in a thread with a large stack; recursion depth is O(n)."""
    box = {}

    def target():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 10 ** 6))
        try:
            box["r"] = fn()
        except BaseException as exc:  # re-raised in the caller
            box["e"] = exc
        finally:
            sys.setrecursionlimit(old)

    size = threading.stack_size()
    threading.stack_size(512 * 1024 * 1024)
    try:
        t = threading.Thread(target=target)
        t.start()
    finally:
        threading.stack_size(size)
    t.join()
    if "e" in box:
        raise box["e"]
    return box["r"]


class _PathSearch:
    def __init__(self, ends, work, vertices):
        self.ends = ends
        self.comps = []
        # internal vertex ids 1..n in order of the second DFS
        self.verts = vertices
        self.work = work

    # -- graph bookkeeping -------------------------------------------------

    def new_virtual(self, a, b):
        e = len(self.ends)
        self.ends.append((self.orig[a], self.orig[b]))
        self.src.append(a)
        self.tgt.append(b)
        self.alive.append(True)
        self.tree.append(False)
        self.time.append(0)
        self.start.append(False)
        self.inc[a].add(e)
        self.inc[b].add(e)
        return e

    def remove(self, e):
        if self.alive[e]:
            self.alive[e] = False
            self.inc[self.src[e]].discard(e)
            self.inc[self.tgt[e]].discard(e)

    def component(self, edges):
        """Record a component; its edges leave the graph except freshly created virtual ones."""
        self.comps.append(list(edges))

    def high(self, v):
        h = self.hp[v]
        while h and not (self.alive[h[0][1]] and not self.tree[h[0][1]] and self.tgt[h[0][1]] == v):
            heapq.heappop(h)
        return self.src[h[0][1]] if h else 0

    def make_tree(self, e, a, b):
        self.src[e], self.tgt[e] = a, b
        self.tree[e] = True
        self.father[b] = a
        self.tree_in[b] = e

    def make_frond(self, e, a, b, key):
        self.src[e], self.tgt[e] = a, b
        self.tree[e] = False
        heapq.heappush(self.hp[b], (key, e))

    # -- the two numbering DFS passes ----------------------------------------

    def prepare(self):
        ends = self.ends
        n = len(self.verts)
        index = {v: i for i, v in enumerate(self.verts)}
        adj0 = [[] for _ in range(n)]
        for e in self.work:
            a, b = ends[e]
            adj0[index[a]].append(e)
            adj0[index[b]].append(e)
        num = [0] * n
        low1 = [0] * n
        low2 = [0] * n
        nd = [0] * n
        par = [-1] * n
        m_total = len(ends)
        typed = [False] * m_total
        s_ = [0] * m_total
        t_ = [0] * m_total
        is_tree = [False] * m_total
        counter = [0]

        def other(e, x):
            a, b = ends[e]
            return index[b] if index[a] == x else index[a]

        def dfs1(v):
            counter[0] += 1
            num[v] = counter[0]
            low1[v] = low2[v] = num[v]
            nd[v] = 1
            for e in adj0[v]:
                if typed[e]:
                    continue
                typed[e] = True
                w = other(e, v)
                s_[e], t_[e] = v, w
                if num[w] == 0:
                    is_tree[e] = True
                    par[w] = v
                    dfs1(w)
                    if low1[w] < low1[v]:
                        low2[v] = min(low1[v], low2[w])
                        low1[v] = low1[w]
                    elif low1[w] == low1[v]:
                        low2[v] = min(low2[v], low2[w])
                    else:
                        low2[v] = min(low2[v], low1[w])
                    nd[v] += nd[w]
                else:
                    if num[w] < low1[v]:
                        low2[v] = low1[v]
                        low1[v] = num[w]
                    elif num[w] > low1[v]:
                        low2[v] = min(low2[v], num[w])

        dfs1(0)
        if counter[0] != n:
            raise PreconditionError("graph is not connected")

        def phi(e):
            v, w = s_[e], t_[e]
            if is_tree[e]:
                return 3 * low1[w] if low2[w] < num[v] else 3 * low1[w] + 2
            return 3 * num[w] + 1

        out = [[] for _ in range(n)]
        for e in self.work:
            out[s_[e]].append(e)
        for v in range(n):
            out[v].sort(key=phi)

        newnum = [0] * n
        by_num = [0] * (n + 1)
        for v in range(n):
            by_num[num[v]] = v
        hp = [[] for _ in range(n + 1)]
        start = [False] * m_total
        time = [0] * m_total
        state = {"m": n, "s": 0, "clock": 0}

        def dfs2(v):
            newnum[v] = state["m"] - nd[v] + 1
            for e in out[v]:
                state["clock"] += 1
                time[e] = state["clock"]
                if state["s"] == 0:
                    state["s"] = v + 1
                    start[e] = True
                w = t_[e]
                if is_tree[e]:
                    dfs2(w)
                    state["m"] -= 1
                else:
                    fronds.append(e)
                    state["s"] = 0

        fronds = []
        dfs2(0)

        # everything below is in the new numbering 1..n
        N = lambda x: newnum[x]  # noqa: E731
        self.n = n
        self.orig = [None] * (n + 1)
        for v in range(n):
            self.orig[N(v)] = self.verts[v]
        self.low1 = [0] * (n + 1)
        self.low2 = [0] * (n + 1)
        self.nd = [0] * (n + 1)
        self.father = [0] * (n + 1)
        self.adj = [[] for _ in range(n + 1)]
        for v in range(n):
            x = N(v)
            self.low1[x] = N(by_num[low1[v]])
            self.low2[x] = N(by_num[low2[v]])
            self.nd[x] = nd[v]
            self.father[x] = N(par[v]) if par[v] >= 0 else 0
            self.adj[x] = out[v]
        self.src = [0] * m_total
        self.tgt = [0] * m_total
        for e in self.work:
            self.src[e] = N(s_[e])
            self.tgt[e] = N(t_[e])
        self.tree = is_tree
        self.alive = [False] * m_total
        for e in self.work:
            self.alive[e] = True
        self.start = start
        self.time = time
        self.inc = [set() for _ in range(n + 1)]
        for e in self.work:
            self.inc[self.src[e]].add(e)
            self.inc[self.tgt[e]].add(e)
        self.tree_in = [None] * (n + 1)
        for e in self.work:
            if is_tree[e]:
                self.tree_in[self.tgt[e]] = e
        self.hp = [[] for _ in range(n + 1)]
        for e in fronds:
            self.hp[self.tgt[e]].append((time[e], e))  # visit order = key order
        self.last_tree_pos = [-1] * (n + 1)
        for x in range(1, n + 1):
            for i, e in enumerate(self.adj[x]):
                if is_tree[e]:
                    self.last_tree_pos[x] = i

    # -- path search -----------------------------------------------------------

    def run(self):
        self.prepare()
        self.estack = []
        self.tstack = [None]  # None marks end of a segment (EOS)
        self.search(1)
        if self.estack:
            self.component(self.estack)
            for e in self.estack:
                self.remove(e)
            self.estack = []
        return self.comps

    def _ends_match(self, e, a, b):
        return {self.src[e], self.tgt[e]} == {a, b}

    def search(self, v):
        ts = self.tstack
        es = self.estack
        for idx, e in enumerate(self.adj[v]):
            w = self.tgt[e]
            if self.tree[e]:
                if self.start[e]:
                    y = 0
                    last_b = None
                    while ts[-1] is not None and ts[-1][1] > self.low1[w]:
                        h, a, b = ts.pop()
                        y = max(y, h)
                        last_b = b
                    if last_b is None:
                        ts.append((w + self.nd[w] - 1, self.low1[w], v))
                    else:
                        ts.append((max(y, w + self.nd[w] - 1), self.low1[w], last_b))
                    ts.append(None)
                self.search(w)
                es.append(self.tree_in[w])
                w = self._type2(v, w)
                self._type1(v, w, e, idx)
                if self.start[e]:
                    while ts.pop() is not None:
                        pass
                while ts[-1] is not None:
                    h, a, b = ts[-1]
                    if a != v and b != v and self.high(v) > h:
                        ts.pop()
                    else:
                        break
            else:
                if self.start[e]:
                    y = 0
                    last_b = None
                    while ts[-1] is not None and ts[-1][1] > w:
                        h, a, b = ts.pop()
                        y = max(y, h)
                        last_b = b
                    if last_b is None:
                        ts.append((v, w, v))
                    else:
                        ts.append((y, w, last_b))
                if w == self.father[v]:
                    t_e = self.tree_in[v]
                    self.remove(e)
                    self.remove(t_e)
                    e2 = self.new_virtual(w, v)
                    self.component([e, t_e, e2])
                    self.make_tree(e2, w, v)
                else:
                    es.append(e)

    def _first_child_test(self, w):
        if len(self.inc[w]) != 2:
            return False
        t_in = self.tree_in[w]
        for f in self.inc[w]:
            if f != t_in:
                return self.tree[f] and self.src[f] == w
        return False

    def _type2(self, v, w):
        ts = self.tstack
        es = self.estack
        while v != 1:
            top = ts[-1]
            cond_t = top is not None and top[1] == v
            cond_d = self._first_child_test(w)
            if not (cond_t or cond_d):
                break
            if cond_t:
                h, a, b = top
                if self.father[b] == a:
                    ts.pop()
                    continue
            e_ab = None
            if cond_d:
                e1 = es.pop()
                e2 = es.pop()
                x = self.tgt[e2] if self.src[e2] == w else self.src[e2]
                self.remove(e1)
                self.remove(e2)
                ev = self.new_virtual(v, x)
                self.component([e1, e2, ev])
                if es and self._ends_match(es[-1], x, v):
                    e_ab = es.pop()
                    self.remove(e_ab)
                b = x
            else:
                h, a, b = ts.pop()
                popped = []
                while es:
                    f = es[-1]
                    x, y = self.src[f], self.tgt[f]
                    if not (a <= x <= h and a <= y <= h):
                        break
                    es.pop()
                    if {x, y} == {a, b}:
                        e_ab = f
                    else:
                        popped.append(f)
                    self.remove(f)
                ev = self.new_virtual(a, b)
                self.component(popped + [ev])
            if e_ab is not None:
                self.remove(ev)
                e3 = self.new_virtual(v, b)
                self.component([e_ab, ev, e3])
                ev = e3
            es.append(ev)
            self.make_tree(ev, v, b)
            w = b
        return w

    def _type1(self, v, w, e, idx):
        if not (self.low2[w] >= v and self.low1[w] < v
                and (self.father[v] != 1 or idx < self.last_tree_pos[v])):
            return
        es = self.estack
        lo, hi = w, w + self.nd[w]
        popped = []
        while es:
            f = es[-1]
            x, y = self.src[f], self.tgt[f]
            if lo <= x < hi or lo <= y < hi:
                popped.append(es.pop())
                self.remove(f)
            else:
                break
        l1 = self.low1[w]
        ev = self.new_virtual(v, l1)
        self.component(popped + [ev])
        if es and self._ends_match(es[-1], v, l1):
            f = es.pop()
            self.remove(f)
            self.remove(ev)
            e3 = self.new_virtual(v, l1)
            self.component([f, ev, e3])
            ev = e3
        if l1 != self.father[v]:
            es.append(ev)
            self.make_frond(ev, v, l1, self.time[e])
        else:
            t_in = self.tree_in[v]
            self.remove(ev)
            self.remove(t_in)
            e3 = self.new_virtual(l1, v)
            self.component([ev, t_in, e3])
            self.make_tree(e3, l1, v)


def _classify(edges, ends):
    verts = set()
    deg = defaultdict(int)
    for e in edges:
        a, b = ends[e]
        verts.add(a)
        verts.add(b)
        deg[a] += 1
        deg[b] += 1
    if len(verts) == 2:
        return BOND
    if len(edges) == len(verts) and all(d == 2 for d in deg.values()):
        return POLYGON
    return RIGID


def _merge(comps, ends, n_real):
    kinds = [_classify(c, ends) for c in comps]
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    holders = defaultdict(list)
    for i, c in enumerate(comps):
        for e in c:
            if e >= n_real:
                holders[e].append(i)
    internal = set()
    for e, hs in holders.items():
        if len(hs) != 2:
            raise AssertionError(f"virtual edge {e} appears in {len(hs)} components")
        i, j = hs
        if kinds[i] == kinds[j] and kinds[i] != RIGID:
            internal.add(e)
            parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i, c in enumerate(comps):
        groups[find(i)].extend(e for e in c if e not in internal)
    out = []
    for r in sorted(groups):
        out.append(TriComponent(kinds[r], tuple(sorted(groups[r]))))
    return out


def triconnected_components(edges, vertices=None) -> SplitResult:
    """Triconnected components (bonds, polygons, rigid parts) of a biconnected multigraph.

    ``edges`` is a list of endpoint pairs.  Each virtual edge appears in
    exactly two components; each real edge in exactly one.
    """
    ends = [tuple(e) for e in edges]
    n_real = len(ends)
    verts = sorted(set(vertices) if vertices is not None else {x for e in ends for x in e})
    for a, b in ends:
        if a == b:
            raise PreconditionError("self-loop")
    if len(verts) <= 2:
        return SplitResult([TriComponent(BOND, tuple(range(n_real)))], ends, n_real)
    comps = []
    bundles = defaultdict(list)
    for i, (a, b) in enumerate(ends):
        bundles[(a, b) if a < b else (b, a)].append(i)
    work = []
    for key, ids in bundles.items():
        if len(ids) == 1:
            work.append(ids[0])
        else:
            e = len(ends)
            ends.append(key)
            comps.append(ids + [e])
            work.append(e)
    ps = _PathSearch(ends, work, verts)
    comps.extend(_run_deep(ps.run))
    comps = [c for c in comps if c]
    return SplitResult(_merge(comps, ends, n_real), ends, n_real)
