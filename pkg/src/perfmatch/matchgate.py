"""Matchgates, signatures, and planar gadgets with prescribed signatures.

A matchgate is a graph with an ordered list of external vertices S.  Its
signature maps every X subset of S to the perfect-matching sum of the graph
with X deleted.  Signatures are stored as vectors indexed by little-endian
bitmasks over the external order: bit i set means ``externals[i]`` is in X.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import GadgetSynthesisError, PreconditionError
from .graph import WeightedMultigraph, delete_vertices, format_rational
from .planarity import embed_with_common_face, on_common_face

MAX_SUBSET_VERTICES = 22
MAX_GADGET_VERTICES = 10


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    NEITHER = "neither"


@dataclass(frozen=True)
class Matchgate:
    graph: WeightedMultigraph
    externals: tuple

    def __post_init__(self):
        ext = tuple(self.externals)
        object.__setattr__(self, "externals", ext)
        if len(set(ext)) != len(ext):
            raise PreconditionError("duplicate external vertices")
        if not set(ext) <= self.graph.vertices:
            raise PreconditionError(f"externals {sorted(set(ext) - self.graph.vertices)} not in graph")


@dataclass(frozen=True)
class Signature:
    externals: tuple
    values: tuple

    def __post_init__(self):
        ext = tuple(self.externals)
        vals = tuple(Fraction(x) for x in self.values)
        object.__setattr__(self, "externals", ext)
        object.__setattr__(self, "values", vals)
        if len(set(ext)) != len(ext):
            raise PreconditionError("duplicate external vertices")
        if len(vals) != 1 << len(ext):
            raise PreconditionError(f"signature over {len(ext)} externals needs {1 << len(ext)} values")

    def mask(self, X) -> int:
        pos = {v: i for i, v in enumerate(self.externals)}
        m = 0
        for v in X:
            if v not in pos:
                raise PreconditionError(f"{v} is not an external vertex")
            m |= 1 << pos[v]
        return m

    def __getitem__(self, X):
        if isinstance(X, int):
            return self.values[X]
        return self.values[self.mask(X)]

    def __len__(self):
        return len(self.values)

    def reorder(self, externals) -> "Signature":
        """Same function with the external list permuted."""
        externals = tuple(externals)
        if sorted(externals) != sorted(self.externals):
            raise PreconditionError("reorder needs the same external set")
        k = len(externals)
        out = []
        for m in range(1 << k):
            out.append(self[[externals[i] for i in range(k) if m >> i & 1]])
        return Signature(externals, tuple(out))


def _popcount(x):
    return bin(x).count("1")


def parity_of(f: Signature) -> Parity:
    """EVEN if odd-size entries vanish, ODD if even-size entries vanish.

    The all-zero signature is EVEN.
    """
    odd_zero = all(v == 0 for i, v in enumerate(f.values) if _popcount(i) % 2)
    if odd_zero:
        return Parity.EVEN
    even_zero = all(v == 0 for i, v in enumerate(f.values) if _popcount(i) % 2 == 0)
    return Parity.ODD if even_zero else Parity.NEITHER


def subset_signature(graph: WeightedMultigraph, externals) -> Signature:
    """Signature by a bottom-up table of matching sums over all vertex subsets.

    Suitable for constant-size graphs only (at most 22 vertices).
    """
    ext = tuple(externals)
    order = sorted(graph.vertices)
    n = len(order)
    if n > MAX_SUBSET_VERTICES:
        raise PreconditionError(f"subset table limited to {MAX_SUBSET_VERTICES} vertices, got {n}")
    bit = {v: i for i, v in enumerate(order)}
    inc = [[] for _ in range(n)]
    for e in graph.edges:
        if e.w:
            a, b = bit[e.u], bit[e.v]
            inc[a].append((b, e.w))
            inc[b].append((a, e.w))
    full = (1 << n) - 1
    ext_bits = [1 << bit[v] for v in ext]
    # only subsets reachable from a target by removing matched pairs matter
    targets = []
    for m in range(1 << len(ext)):
        X = 0
        for i, b in enumerate(ext_bits):
            if m >> i & 1:
                X |= b
        targets.append(full & ~X)
    table = {0: Fraction(1)}
    for mask in range(1, full + 1):
        if _popcount(mask) % 2:
            continue
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        s = Fraction(0)
        for u, w in inc[low]:
            if rest >> u & 1:
                s += w * table[rest ^ (1 << u)]
        table[mask] = s
    return Signature(ext, tuple(table.get(t, Fraction(0)) for t in targets))


def signature_of(gate: Matchgate, engine=None) -> Signature:
    """Signature of ``gate``; ``engine`` maps a graph to its matching sum.

    Without an engine the constant-size subset table is used.
    """
    if engine is None:
        return subset_signature(gate.graph, gate.externals)
    ext = gate.externals
    k = len(ext)
    values = []
    for m in range(1 << k):
        X = [ext[i] for i in range(k) if m >> i & 1]
        values.append(engine(delete_vertices(gate.graph, X)))
    return Signature(ext, tuple(values))


def join_signatures(f: Signature, g: Signature) -> Fraction:
    """Matching sum of two gates glued along their common external set."""
    if set(f.externals) != set(g.externals):
        raise PreconditionError("join needs identical external sets")
    g = g.reorder(f.externals)
    full = len(f.values) - 1
    return sum((f.values[Y] * g.values[full ^ Y] for Y in range(full + 1)), Fraction(0))


def join_count(gate: Matchgate, other: Matchgate, engine=None) -> Fraction:
    """PerfMatch of ``gate.graph`` glued to ``other.graph`` on S, from signatures only."""
    if set(gate.externals) != set(other.externals):
        raise PreconditionError("matchgates have different external sets")
    return join_signatures(signature_of(gate, engine), signature_of(other, engine))


def join_extend(prev: Signature, child: Signature) -> Signature:
    """Glue a child gate on K into a gate on V (K subset of V); result is over V.

    ``out[X] = sum over Z in K - X of prev[X + Z] * child[K - Z]``: the
    vertices Z of K are the ones matched inside the child.
    """
    V = prev.externals
    K = child.externals
    pos = {v: i for i, v in enumerate(V)}
    missing = [v for v in K if v not in pos]
    if missing:
        raise PreconditionError(f"child externals {missing} not among parent externals")
    kbits = [1 << pos[v] for v in K]
    kmask = sum(kbits)
    # V-mask (restricted to K) -> child index
    to_child = {}
    for cm in range(1 << len(K)):
        vm = 0
        for i, b in enumerate(kbits):
            if cm >> i & 1:
                vm |= b
        to_child[vm] = cm
    pv = prev.values
    cv = child.values
    out = []
    for X in range(1 << len(V)):
        free = kmask & ~X
        total = Fraction(0)
        Z = free
        while True:
            c = cv[to_child[kmask & ~Z]]
            if c:
                p = pv[X | Z]
                if p:
                    total += p * c
            if Z == 0:
                break
            Z = (Z - 1) & free
        out.append(total)
    return Signature(V, tuple(out))


def restrict_signature(f: Signature, K) -> Signature:
    """Entries of ``f`` on subsets of ``K``; vertices outside K stay undeleted."""
    K = tuple(K)
    pos = {v: i for i, v in enumerate(f.externals)}
    missing = [v for v in K if v not in pos]
    if missing:
        raise PreconditionError(f"{missing} not among signature externals")
    out = []
    for m in range(1 << len(K)):
        vm = 0
        for i, v in enumerate(K):
            if m >> i & 1:
                vm |= 1 << pos[v]
        out.append(f.values[vm])
    return Signature(K, tuple(out))


def format_signature(f: Signature) -> str:
    """Debug rendering: externals, then values ordered by subset size then position."""
    k = len(f.externals)
    order = [0]
    for r in range(1, k + 1):
        for combo in combinations(range(k), r):
            order.append(sum(1 << i for i in combo))
    return (" ".join(map(str, f.externals)) + "\n"
            + " ".join(format_rational(f.values[i]) for i in order) + "\n")


# ---------------------------------------------------------------------------
# gadget synthesis
#
# Each template takes the target values and fresh vertex ids and returns an
# edge list, or None when the target is degenerate for that template.  The
# caller checks every candidate against the subset table before accepting it.


def _t_isolated(ext, f, fresh):
    # every entry zero: an unmatched internal vertex kills all matchings
    return [fresh[0]], []


def _t0_edge(ext, f, fresh):
    u, v = fresh[:2]
    return [u, v], [(u, v, f[0])]


def _t1_even(ext, f, fresh):
    (a,), u = ext, fresh[0]
    return [u], [(a, u, f[0])]


def _t1_odd(ext, f, fresh):
    u, v = fresh[:2]
    return [u, v], [(u, v, f[1])]


def _t2_even_edge(ext, f, fresh):
    a, b = ext
    if f[3] != 1:
        return None
    return [], [(a, b, f[0])]


def _t2_even_square(ext, f, fresh):
    # a-u-v-b plus chord a-b:  Sig(ab) = w(uv),  Sig(0) = w(au)w(vb) + w(ab)w(uv)
    a, b = ext
    u, v = fresh[:2]
    z = f[3]
    if z == 0:
        return None
    return [u, v], [(a, u, 1), (u, v, z), (v, b, 1), (a, b, (f[0] - 1) / z)]


def _t2_even_pendants(ext, f, fresh):
    a, b = ext
    u, v = fresh[:2]
    if f[3] != 0:
        return None
    return [u, v], [(a, u, f[0]), (b, v, 1)]


def _t2_odd_path(ext, f, fresh):
    a, b = ext
    u = fresh[0]
    return [u], [(b, u, f[1]), (a, u, f[2])]


def _t3_even_prism(ext, f, fresh):
    # pendant a-a', b-b', c-c'; inner triangle a'b'c' carries the pair entries;
    # one chord between externals corrects the empty-set entry
    a, b, c = ext
    a2, b2, c2 = fresh[:3]
    f0, fab, fac, fbc = f[0], f[3], f[5], f[6]
    edges = [(a, a2, 1), (b, b2, 1), (c, c2, 1)]
    if fab == fac == fbc == 0:
        edges[0] = (a, a2, f0)
        return [a2, b2, c2], edges
    edges += [(a2, b2, fab), (a2, c2, fac), (b2, c2, fbc)]
    if fab:
        edges.append((a, b, (f0 - 1) / fab))
    elif fac:
        edges.append((a, c, (f0 - 1) / fac))
    else:
        edges.append((b, c, (f0 - 1) / fbc))
    return [a2, b2, c2], edges


def _t3_odd_triangle(ext, f, fresh):
    # triangle on the externals plus a separate edge u-v of weight Sig(abc)
    a, b, c = ext
    u, v = fresh[:2]
    d = f[7]
    if d == 0:
        return None
    return [u, v], [(b, c, f[1] / d), (a, c, f[2] / d), (a, b, f[4] / d), (u, v, d)]


def _t3_odd_spider(ext, f, fresh):
    # pendants a-a', b-b', c-c' and a hub joined to a', b', c'; Sig(abc) = 0
    a, b, c = ext
    a2, b2, c2, h = fresh[:4]
    if f[7] != 0:
        return None
    return [a2, b2, c2, h], [(a, a2, 1), (b, b2, 1), (c, c2, 1),
                             (h, a2, f[1]), (h, b2, f[2]), (h, c2, f[4])]


_TEMPLATES = {
    (0, Parity.EVEN): [_t0_edge],
    (1, Parity.EVEN): [_t1_even],
    (1, Parity.ODD): [_t1_odd],
    (2, Parity.EVEN): [_t2_even_edge, _t2_even_square, _t2_even_pendants],
    (2, Parity.ODD): [_t2_odd_path],
    (3, Parity.EVEN): [_t3_even_prism],
    (3, Parity.ODD): [_t3_odd_triangle, _t3_odd_spider],
}


def realize_planar(f: Signature, fresh_start: int | None = None):
    """A plane matchgate with signature exactly ``f`` and externals on one face.

    Works for even or odd signatures over at most three externals.  Internal
    vertices get ids counting up from ``fresh_start`` (default: one past the
    largest external).  Returns ``(Matchgate, PlaneEmbedding)`` whose outer
    face contains the externals (for disconnected gadgets: each component
    carries its externals on one of its faces, so they can all be drawn on the
    outer face).
    """
    ext = f.externals
    k = len(ext)
    if k > 3:
        raise PreconditionError("planar gadgets exist only for at most 3 externals")
    parity = parity_of(f)
    if parity is Parity.NEITHER:
        raise GadgetSynthesisError(f"signature over {list(ext)} is neither even nor odd")
    if fresh_start is None:
        fresh_start = max(ext, default=0) + 1
    fresh = list(range(fresh_start, fresh_start + 6))
    vals = f.values
    if all(v == 0 for v in vals):
        templates = [_t_isolated]
    else:
        templates = _TEMPLATES.get((k, parity), [])
    for template in templates:
        built = template(ext, vals, fresh)
        if built is None:
            continue
        internal, edges = built
        graph = WeightedMultigraph(list(ext) + internal, edges)
        gadget = _accept(graph, ext, f)
        if gadget is not None:
            return gadget
    raise GadgetSynthesisError(f"no planar gadget realizes signature {list(vals)} over {list(ext)}")


def _accept(graph, ext, f):
    if graph.n > MAX_GADGET_VERTICES:
        return None
    if subset_signature(graph, ext).values != f.values:
        return None
    emb = embed_with_common_face(graph, ext)
    if emb is None or not on_common_face(emb, ext):
        return None
    return Matchgate(graph, ext), emb
