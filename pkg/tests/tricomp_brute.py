"""Reference splitter: repeated separation-pair splits, then bond/polygon merging."""

from collections import defaultdict
from itertools import combinations

from perfmatch.decomposition.triconnected import BOND, POLYGON, RIGID, _classify


def _classes(edges, ends, a, b):
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    at = defaultdict(list)
    for e in edges:
        for x in ends[e]:
            if x not in (a, b):
                at[x].append(e)
    for es in at.values():
        for f in es[1:]:
            parent[find(f)] = find(es[0])
    groups = defaultdict(list)
    for e in edges:
        groups[find(e)].append(e)
    return sorted(groups.values())


def _split_once(edges, ends):
    verts = sorted({x for e in edges for x in ends[e]})
    for a, b in combinations(verts, 2):
        cls = _classes(edges, ends, a, b)
        if len(cls) < 2:
            continue
        sizes = sorted(len(c) for c in cls)
        if len(cls) == 2 and sizes[0] == 1:
            continue
        if len(cls) == 3 and sizes == [1, 1, 1]:
            continue
        options = [c for c in cls if len(c) >= 2]
        singles = [c for c in cls if len(c) == 1]
        if len(singles) >= 2:
            options.append(singles[0] + singles[1])
        left = next((o for o in options if len(edges) - len(o) >= 2), None)
        if left is None:
            continue
        right = [e for e in edges if e not in left]
        v = len(ends)
        ends.append((a, b))
        return left + [v], right + [v]
    return None


def brute_components(edge_list):
    ends = [tuple(e) for e in edge_list]
    n_real = len(ends)
    todo = [list(range(n_real))]
    done = []
    while todo:
        c = todo.pop()
        r = _split_once(c, ends)
        if r is None:
            done.append(c)
        else:
            todo.extend(r)
    kinds = [_classify(c, ends) for c in done]
    parent = list(range(len(done)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    holders = defaultdict(list)
    for i, c in enumerate(done):
        for e in c:
            if e >= n_real:
                holders[e].append(i)
    internal = set()
    for e, (i, j) in holders.items():
        if kinds[i] == kinds[j] != RIGID:
            internal.add(e)
            parent[find(i)] = find(j)
    groups = defaultdict(list)
    for i, c in enumerate(done):
        groups[find(i)].extend(e for e in c if e not in internal)
    return [(kinds[r], g) for r, g in groups.items()], ends, n_real


def canonical(components, ends, n_real):
    out = []
    for kind, es in components:
        verts = frozenset(x for e in es for x in ends[e])
        real = tuple(sorted(e for e in es if e < n_real))
        out.append((kind, tuple(sorted(verts)), real, sum(1 for e in es if e >= n_real)))
    return sorted(out)
