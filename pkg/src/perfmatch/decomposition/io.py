"""JSON carrier for decomposition trees.

Only syntax is checked here; semantic checks live in :func:`tree.validate`.
"""

from __future__ import annotations

import json

from ..errors import ParseError
from ..graph import WeightedMultigraph, format_rational, parse_rational
from ..planarity import PlaneEmbedding
from .tree import DecompositionTree, Node


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what}: expected integer, got {json.dumps(x)}")
    return x


def _int_list(x, what):
    if not isinstance(x, list):
        raise ParseError(f"{what}: expected list")
    return [_int(v, what) for v in x]


def _node(obj, i):
    where = f"nodes[{i}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected object")
    for key in ("id", "parent", "navel", "vertices", "edges"):
        if key not in obj:
            raise ParseError(f"{where}: missing key {key!r}")
    nid = _int(obj["id"], f"{where}.id")
    parent = obj["parent"]
    if parent is not None:
        parent = _int(parent, f"{where}.parent")
    navel = _int_list(obj["navel"], f"{where}.navel")
    vertices = _int_list(obj["vertices"], f"{where}.vertices")
    if len(set(vertices)) != len(vertices):
        raise ParseError(f"{where}.vertices: duplicate vertex id")
    vset = set(vertices)
    if not isinstance(obj["edges"], list):
        raise ParseError(f"{where}.edges: expected list")
    edges = []
    for j, e in enumerate(obj["edges"]):
        ew = f"{where}.edges[{j}]"
        if not isinstance(e, list) or len(e) != 3:
            raise ParseError(f"{ew}: expected [u, v, weight]")
        u, v = _int(e[0], ew), _int(e[1], ew)
        if u == v:
            raise ParseError(f"{ew}: self-loop")
        if u not in vset or v not in vset:
            raise ParseError(f"{ew}: endpoint not among node vertices")
        if not isinstance(e[2], str):
            raise ParseError(f"{ew}: weight must be a string rational")
        try:
            w = parse_rational(e[2])
        except ValueError as err:
            raise ParseError(f"{ew}: {err}") from None
        edges.append((u, v, w))
    graph = WeightedMultigraph(vertices, edges)
    embedding = None
    raw = obj.get("embedding")
    if raw is not None:
        if not isinstance(raw, dict) or not isinstance(raw.get("rotation"), dict):
            raise ParseError(f"{where}.embedding: expected {{\"rotation\": {{...}}}}")
        rotation = {}
        for key, rot in raw["rotation"].items():
            try:
                v = int(key)
            except ValueError:
                raise ParseError(f"{where}.embedding: bad vertex key {key!r}") from None
            if v not in vset:
                raise ParseError(f"{where}.embedding: vertex {v} not in node")
            ids = _int_list(rot, f"{where}.embedding.rotation[{key}]")
            if any(not 0 <= k < len(edges) for k in ids):
                raise ParseError(f"{where}.embedding.rotation[{key}]: edge index out of range")
            rotation[v] = ids
        embedding = PlaneEmbedding(graph, rotation)
    return Node(nid, parent, graph, tuple(navel), embedding)


def parse_decomposition(text: str) -> DecompositionTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("c", "root", "nodes"):
        if key not in doc:
            raise ParseError(f"missing top-level key {key!r}")
    c = _int(doc["c"], "c")
    root = _int(doc["root"], "root")
    if not isinstance(doc["nodes"], list) or not doc["nodes"]:
        raise ParseError("nodes must be a non-empty list")
    nodes = [_node(obj, i) for i, obj in enumerate(doc["nodes"])]
    ids = [nd.id for nd in nodes]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate node id")
    return DecompositionTree(c, nodes, root)


def decomposition_to_json(T: DecompositionTree) -> dict:
    nodes = []
    for t in sorted(T.nodes):
        nd = T.nodes[t]
        nodes.append({
            "id": nd.id,
            "parent": nd.parent,
            "navel": list(nd.navel),
            "vertices": sorted(nd.graph.vertices),
            "edges": [[e.u, e.v, format_rational(e.w)] for e in nd.graph.edges],
            "embedding": None if nd.embedding is None else nd.embedding.to_json(),
        })
    return {"c": T.c, "root": T.root, "nodes": nodes}


def serialize_decomposition(T: DecompositionTree) -> str:
    return json.dumps(decomposition_to_json(T), indent=1) + "\n"


def read_decomposition(path) -> DecompositionTree:
    with open(path, encoding="utf-8") as fh:
        return parse_decomposition(fh.read())


def write_decomposition(T: DecompositionTree, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_decomposition(T))
