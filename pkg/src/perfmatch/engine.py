"""Bottom-up evaluation of a decomposition tree.

Every node t computes the signature of the matchgate formed by everything
below it (its subtree glued together) with its navel as external set.
Small nodes do this by a subset table over their own vertices, folding in
child signatures one at a time.  Large nodes are plane: the children hanging
off each attachment clique are first folded into one signature, which is
replaced by a constant-size plane gadget with the same signature; the
gadgets are glued into the node graph and the result is evaluated by the
Pfaffian engine once per subset of the navel.
"""

from __future__ import annotations

import random
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (InternalConsistencyError, InvalidDecompositionError, NotInClassError,
                     PreconditionError)
from .graph import WeightedMultigraph, merge_parallel, normalized
from .matchgate import (Parity, Signature, join_extend, parity_of, realize_planar,
                        restrict_signature, subset_signature)
from .oracle import brute_perfmatch
from .pfaffian import perfmatch_planar
from .planarity import check_planarity, cycle_bounds_face, delete_vertices_embedded, induces_cycle

MODES = ("auto", "planar", "k33", "brute", "decomp")
SMALL_TABLE_LIMIT = 16


@dataclass
class EngineStats:
    nodes: int = 0
    small_nodes: int = 0
    planar_nodes: int = 0
    planar_calls: int = 0
    gadgets: int = 0
    gadget_vertices_max: int = 0
    planar_sizes: list = field(default_factory=list)

    @property
    def sum_n(self) -> int:
        return sum(self.planar_sizes)

    @property
    def sum_n15(self) -> float:
        return sum(n ** 1.5 for n in self.planar_sizes)

    def work_bound_ok(self) -> bool:
        """Sum of n_t^1.5 over planar nodes is at most (sum of n_t)^1.5."""
        return self.sum_n15 <= self.sum_n ** 1.5 * (1 + 1e-12)

    def merge(self, other: "EngineStats"):
        self.nodes += other.nodes
        self.small_nodes += other.small_nodes
        self.planar_nodes += other.planar_nodes
        self.planar_calls += other.planar_calls
        self.gadgets += other.gadgets
        self.gadget_vertices_max = max(self.gadget_vertices_max, other.gadget_vertices_max)
        self.planar_sizes.extend(other.planar_sizes)


def _unit(K) -> Signature:
    """Signature of the edgeless gate on K: the neutral element of join_extend."""
    vals = [Fraction(0)] * (1 << len(K))
    vals[-1] = Fraction(1)
    return Signature(tuple(K), tuple(vals))


def _check_parity(f: Signature, where):
    if parity_of(f) is Parity.NEITHER:
        raise InternalConsistencyError(f"signature at {where} is neither even nor odd")


def _small_node(T, t, children, child_sigs, stats):
    node = T.nodes[t]
    V = tuple(sorted(node.graph.vertices))
    sig = subset_signature(node.graph, V)
    for s in children:
        sig = join_extend(sig, child_sigs[s])
    stats.small_nodes += 1
    return restrict_signature(sig, node.navel)


def _planar_node(T, t, children, child_sigs, stats):
    node = T.nodes[t]
    G = node.graph
    groups = defaultdict(list)
    for s in children:
        groups[T.nodes[s].navel].append(s)
    fresh = max(G.vertices, default=0) + 1
    emb = node.embedding
    extra_vertices = set()
    extra_edges = []
    for K in sorted(groups, key=lambda k: (len(k), k)):
        if len(K) == 3:
            if not induces_cycle(G, K) or emb is None or not cycle_bounds_face(emb, K):
                raise InvalidDecompositionError(
                    f"node {t}: attachment clique {list(K)} does not bound a face")
        f = _unit(K)
        for s in groups[K]:
            f = join_extend(f, child_sigs[s])
        _check_parity(f, f"node {t}, clique {list(K)}")
        gate, _ = realize_planar(f, fresh)
        internal = gate.graph.vertices - set(K)
        fresh += len(internal)
        extra_vertices |= internal
        extra_edges.extend(gate.graph.edges)
        stats.gadgets += 1
        stats.gadget_vertices_max = max(stats.gadget_vertices_max, gate.graph.n)
    if extra_edges or extra_vertices or emb is None:
        psi = WeightedMultigraph._raw(G.vertices | extra_vertices, G.edges + tuple(extra_edges))
        psi = merge_parallel(psi)
        emb = check_planarity(psi)
        if emb is None:
            raise InvalidDecompositionError(f"node {t}: splicing the gadgets breaks planarity")
    else:
        psi = merge_parallel(G)
        if psi is not G:
            emb = check_planarity(psi)
    K = node.navel
    n = psi.n
    vals = []
    for m in range(1 << len(K)):
        X = [K[i] for i in range(len(K)) if m >> i & 1]
        if (n - len(X)) % 2:
            vals.append(Fraction(0))
            continue
        sub = delete_vertices_embedded(emb, X)
        vals.append(perfmatch_planar(sub.graph, sub))
        stats.planar_calls += 1
    stats.planar_nodes += 1
    stats.planar_sizes.append(n)
    return Signature(K, tuple(vals))


def process_node(T, t, child_sigs, stats: EngineStats | None = None, children=None) -> Signature:
    """Signature over navel(t) of the gate formed by the subtree of t."""
    stats = stats if stats is not None else EngineStats()
    children = T.children(t) if children is None else children
    node = T.nodes[t]
    stats.nodes += 1
    small = node.graph.n <= T.c and (node.graph.n <= SMALL_TABLE_LIMIT or node.embedding is None)
    if small:
        if node.graph.n > 22:
            raise PreconditionError(f"node {t} is too large for the subset table and has no embedding")
        sig = _small_node(T, t, children, child_sigs, stats)
    else:
        if node.embedding is None:
            raise InvalidDecompositionError(f"node {t} has {node.graph.n} > c vertices but no embedding")
        sig = _planar_node(T, t, children, child_sigs, stats)
    _check_parity(sig, f"node {t}")
    return sig


def evaluate_decomposition(T, threads: int = 1, child_order_seed=None,
                           stats: EngineStats | None = None) -> Fraction:
    """PerfMatch of the composed graph of ``T``; ``T`` is assumed valid.

    ``child_order_seed`` shuffles the order in which children are folded
    (the result does not depend on it).  With ``threads > 1`` independent
    subtrees are processed concurrently.
    """
    stats = stats if stats is not None else EngineStats()
    rng = random.Random(child_order_seed) if child_order_seed is not None else None
    order = {}
    for t in T.nodes:
        ch = list(T.children(t))
        if rng is not None:
            rng.shuffle(ch)
        order[t] = ch
    sigs = {}
    if threads <= 1:
        for t in T.postorder():
            sigs[t] = process_node(T, t, sigs, stats, order[t])
            for s in order[t]:
                del sigs[s]
    else:
        _parallel(T, order, sigs, stats, threads)
    if not stats.work_bound_ok():
        raise InternalConsistencyError("work-bound counter check failed")
    return sigs[T.root].values[0]


def _parallel(T, order, sigs, stats, threads):
    pending = {t: len(order[t]) for t in T.nodes}
    parent = {t: T.nodes[t].parent for t in T.nodes}
    local = {}

    def work(t):
        st = EngineStats()
        return t, process_node(T, t, sigs, st, order[t]), st

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {pool.submit(work, t) for t in T.nodes if pending[t] == 0}
        while futures:
            done = next(iter(futures))
            futures.discard(done)
            t, sig, st = done.result()
            sigs[t] = sig
            local[t] = st
            p = parent[t]
            if p is not None:
                pending[p] -= 1
                if pending[p] == 0:
                    futures.add(pool.submit(work, p))
    for t in sorted(local):  # deterministic merge
        stats.merge(local[t])


def count_perfmatch(G: WeightedMultigraph, mode: str = "auto", decomposition=None,
                    threads: int = 1, stats: EngineStats | None = None) -> Fraction:
    """Exact PerfMatch(G) by the requested method.

    ``decomp`` mode needs ``decomposition`` and validates it against ``G``.
    ``auto`` tries the planar engine, then the K3,3-free decomposition.
    """
    from .decomposition.k33 import decompose_k33free
    from .decomposition.tree import require_valid

    if mode not in MODES:
        raise PreconditionError(f"unknown mode {mode!r}")
    if mode == "decomp":
        if decomposition is None:
            raise PreconditionError("decomp mode needs a decomposition")
        require_valid(decomposition, G)
        if G.n % 2:
            return Fraction(0)
        return evaluate_decomposition(decomposition, threads, stats=stats)
    if G.n % 2:
        return Fraction(0)
    if mode == "brute":
        return brute_perfmatch(G)
    if mode == "planar":
        return perfmatch_planar(normalized(G))
    if mode == "k33":
        return evaluate_decomposition(decompose_k33free(G), threads, stats=stats)
    H = normalized(G)
    emb = check_planarity(H)
    if emb is not None:
        return perfmatch_planar(H, emb)
    try:
        T = decompose_k33free(G)
    except NotInClassError as exc:
        raise NotInClassError(f"{exc}; supply a decomposition file to count this graph") from None
    return evaluate_decomposition(T, threads, stats=stats)

