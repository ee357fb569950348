"""JSON interchange for graphs, homomorphisms and pushout results.

One format, canonical key order, arrays sorted by id, so serializing a
parsed file is idempotent and certificates diff cleanly.
"""

from __future__ import annotations

import hashlib
import json
import os

from .graph import Graph
from .morphism import GraphHom
from .pushout import PushoutGraph, class_id


class FormatError(ValueError):
    def __init__(self, message, path=None, line=None, col=None):
        self.path = path
        self.line = line
        self.col = col
        where = ""
        if path:
            where = f"{path}: "
        if line is not None:
            where += f"line {line}, column {col}: "
        super().__init__(where + message)


def graph_to_obj(g: Graph) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "edges": [{"id": e, "src": g.src[e], "tgt": g.tgt[e]} for e in sorted(g.edges)],
        "omega_tails": [list(t) for t in sorted(g.omega_tails)],
    }


def graph_from_obj(obj, path=None) -> Graph:
    if not isinstance(obj, dict):
        raise FormatError("graph must be a JSON object", path)
    vertices = obj.get("vertices", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise FormatError("'vertices' must be a list of strings", path)
    if len(set(vertices)) != len(vertices):
        raise FormatError("duplicate vertex ids", path)
    src, tgt = {}, {}
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError("'edges' must be a list", path)
    for item in edges:
        if not isinstance(item, dict) or not {"id", "src", "tgt"} <= set(item):
            raise FormatError("each edge needs 'id', 'src' and 'tgt'", path)
        e = item["id"]
        if e in src:
            raise FormatError(f"duplicate edge id {e!r}", path)
        src[e] = item["src"]
        tgt[e] = item["tgt"]
    tails = []
    for t in obj.get("omega_tails", []):
        if not (isinstance(t, list) and len(t) == 2):
            raise FormatError("each omega tail must be a pair [v, w]", path)
        tails.append((t[0], t[1]))
    return Graph(vertices, src.keys(), src, tgt, tails)


def hom_to_obj(h: GraphHom) -> dict:
    return {
        "domain": graph_to_obj(h.domain),
        "codomain": graph_to_obj(h.codomain),
        "f0": {v: h.f0[v] for v in sorted(h.f0)},
        "f1": {e: h.f1[e] for e in sorted(h.f1)},
    }


def hom_from_obj(obj, path=None, base_dir=None) -> GraphHom:
    if not isinstance(obj, dict):
        raise FormatError("homomorphism must be a JSON object", path)
    for key in ("domain", "codomain", "f0", "f1"):
        if key not in obj:
            raise FormatError(f"missing {key!r}", path)

    def resolve(side):
        value = obj[side]
        if isinstance(value, str):
            ref = os.path.join(base_dir or ".", value)
            return load_graph(ref)
        return graph_from_obj(value, path)

    f0, f1 = obj["f0"], obj["f1"]
    if not isinstance(f0, dict) or not isinstance(f1, dict):
        raise FormatError("'f0' and 'f1' must be objects", path)
    return GraphHom(resolve("domain"), resolve("codomain"), f0, f1)


def pushout_to_obj(po: PushoutGraph) -> dict:
    def classes_obj(sp):
        return [{"class": class_id(rep),
                 "members": [[side, str(x)] for side, x in members]}
                for rep, members in sorted(sp.classes.items(),
                                           key=lambda kv: class_id(kv[0]))]
    return {
        "graph": graph_to_obj(po.graph),
        "vertex_classes": classes_obj(po.vertex_classes),
        "edge_classes": classes_obj(po.edge_classes),
        "iota_E": {"f0": dict(sorted(po.iota_left.f0.items())),
                   "f1": dict(sorted(po.iota_left.f1.items()))},
        "iota_F": {"f0": dict(sorted(po.iota_right.f0.items())),
                   "f1": dict(sorted(po.iota_right.f1.items()))},
    }


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(str(exc), path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, path, exc.lineno, exc.colno)


def load_graph(path) -> Graph:
    return graph_from_obj(load_json(path), path)


def load_hom(path) -> GraphHom:
    return hom_from_obj(load_json(path), path, base_dir=os.path.dirname(path))


def save_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(obj))


def file_digest(path) -> str:
    try:
        with open(path, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError:
        return ""
