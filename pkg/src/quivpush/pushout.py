"""Pushouts of sets and graphs, universal maps, and the path-space comparison.

Set pushouts are computed by union-find on the tagged disjoint union, with
the minimal equivalence generated by f(z) ~ g(z).  Canonical class
representatives order the left side before the right side, so class ids and
all serializations are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, Path, paths_up_to, require_tail_free, union_graph
from .morphism import (GraphHom, DomainMismatch, check_valid_hom,
                       breaking_vertices, induced_path_map, _injective)


class PreconditionError(Exception):
    """A verification op refused to run; .flag names the failing hypothesis."""

    def __init__(self, flag: str, detail: str = ""):
        self.flag = flag
        self.detail = detail
        super().__init__(f"precondition {flag} failed" + (f": {detail}" if detail else ""))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass(frozen=True)
class SetPushout:
    """Quotient of X ⊔ Y by the relation generated by f(z) ~ g(z).

    classes maps each canonical representative (side, element) to the sorted
    tuple of its members; inj_left / inj_right send elements to their class
    representative.
    """

    classes: dict
    inj_left: dict
    inj_right: dict
    left: frozenset
    right: frozenset
    apex: frozenset
    to_left: dict
    to_right: dict
    labels: tuple

    def class_members(self, rep):
        return self.classes[rep]


def set_pushout(left, right, apex, f: dict, g: dict, labels=("X", "Y"),
                sort_key=None) -> SetPushout:
    """Pushout of left <- apex -> right in sets; f lands in left, g in right."""
    key = sort_key or (lambda x: x)
    lab_l, lab_r = labels
    items = [(lab_l, x) for x in left] + [(lab_r, y) for y in right]
    uf = _UnionFind(items)
    for z in apex:
        if z not in f or z not in g:
            raise GraphError(f"apex element {z!r} has no image")
        uf.union((lab_l, f[z]), (lab_r, g[z]))
    groups = {}
    for item in items:
        groups.setdefault(uf.find(item), []).append(item)
    classes = {}
    for members in groups.values():
        members.sort(key=lambda sx: (0 if sx[0] == lab_l else 1, key(sx[1])))
        classes[members[0]] = tuple(members)
    inj_left, inj_right = {}, {}
    for rep, members in classes.items():
        for side, x in members:
            (inj_left if side == lab_l else inj_right)[x] = rep
    return SetPushout(classes, inj_left, inj_right,
                      frozenset(left), frozenset(right), frozenset(apex),
                      dict(f), dict(g), labels)


def set_universal_map(p: SetPushout, j_left: dict, j_right: dict) -> dict:
    """The unique map out of the pushout commuting with both injections."""
    for z in sorted(p.apex):
        if j_left[p.to_left[z]] != j_right[p.to_right[z]]:
            raise PreconditionError("compatible-cone", f"witness apex element {z!r}")
    h = {}
    for rep, members in p.classes.items():
        values = {(j_left if side == p.labels[0] else j_right)[x] for side, x in members}
        if len(values) != 1:
            raise PreconditionError("compatible-cone", f"class of {rep} maps inconsistently")
        h[rep] = values.pop()
    return h


@dataclass(frozen=True)
class PushoutGraph:
    graph: Graph
    iota_left: GraphHom
    iota_right: GraphHom
    vertex_classes: SetPushout
    edge_classes: SetPushout


def class_id(rep) -> str:
    side, x = rep
    return f"{side}:{x}"


def graph_pushout(f: GraphHom, g: GraphHom, labels=("E", "F")) -> PushoutGraph:
    """Pushout graph of E <-f- G -g-> F with its two injections.

    Source and target maps on classes are checked to be representative
    independent, which is the universal-property diagram chase made executable.
    """
    if f.domain != g.domain:
        raise DomainMismatch("pushout legs must share their domain")
    for graph in (f.domain, f.codomain, g.codomain):
        require_tail_free(graph, "graph_pushout")
    check_valid_hom(f)
    check_valid_hom(g)
    E, F, G = f.codomain, g.codomain, f.domain
    vp = set_pushout(E.vertices, F.vertices, G.vertices, f.f0, g.f0, labels)
    ep = set_pushout(E.edges, F.edges, G.edges, f.f1, g.f1, labels)
    lab_l = labels[0]

    def vclass(side, v):
        return vp.inj_left[v] if side == lab_l else vp.inj_right[v]

    src, tgt = {}, {}
    for rep, members in ep.classes.items():
        eid = class_id(rep)
        sources = {class_id(vclass(side, (E if side == lab_l else F).src[e]))
                   for side, e in members}
        targets = {class_id(vclass(side, (E if side == lab_l else F).tgt[e]))
                   for side, e in members}
        if len(sources) != 1 or len(targets) != 1:
            raise GraphError(f"pushout source/target ill defined on class {eid}")
        src[eid] = sources.pop()
        tgt[eid] = targets.pop()
    graph = Graph({class_id(r) for r in vp.classes}, set(src), src, tgt)
    iota_left = GraphHom(E, graph,
                         {v: class_id(vp.inj_left[v]) for v in E.vertices},
                         {e: class_id(ep.inj_left[e]) for e in E.edges})
    iota_right = GraphHom(F, graph,
                          {v: class_id(vp.inj_right[v]) for v in F.vertices},
                          {e: class_id(ep.inj_right[e]) for e in F.edges})
    check_valid_hom(iota_left)
    check_valid_hom(iota_right)
    return PushoutGraph(graph, iota_left, iota_right, vp, ep)


def graph_universal_map(p: PushoutGraph, j_left: GraphHom, j_right: GraphHom) -> GraphHom:
    """Mediating homomorphism out of a pushout graph against a commuting cone."""
    if j_left.codomain != j_right.codomain:
        raise DomainMismatch("cone legs must share their codomain")
    h0 = set_universal_map(p.vertex_classes, j_left.f0, j_right.f0)
    h1 = set_universal_map(p.edge_classes, j_left.f1, j_right.f1)
    hom = GraphHom(p.graph, j_left.codomain,
                   {class_id(rep): h0[rep] for rep in h0},
                   {class_id(rep): h1[rep] for rep in h1})
    return check_valid_hom(hom)


def pushout_square(f: GraphHom, g: GraphHom, labels=("E", "F")) -> PushoutGraph:
    """Pushout routed through the union graph when both legs are inclusions
    whose domain is the full overlap; the generic quotient otherwise.

    The union route keeps original ids, which admissible-union instances and
    their certificates rely on.
    """
    E, F, G = f.codomain, g.codomain, f.domain
    if (f.is_inclusion() and g.is_inclusion()
            and E.vertices & F.vertices == G.vertices
            and E.edges & F.edges == G.edges):
        u = union_graph(E, F)
        vp = set_pushout(E.vertices, F.vertices, G.vertices, f.f0, g.f0, labels)
        ep = set_pushout(E.edges, F.edges, G.edges, f.f1, g.f1, labels)
        return PushoutGraph(u, GraphHom.inclusion(E, u), GraphHom.inclusion(F, u),
                            vp, ep)
    return graph_pushout(f, g, labels)


@dataclass(frozen=True)
class TheoremFlags:
    vertex_injectivity: bool
    one_color: bool
    one_sided_injectivity: bool
    p1: bool
    p2: bool

    def as_dict(self):
        return {"vertex_injectivity": self.vertex_injectivity,
                "one_color": self.one_color,
                "one_sided_injectivity": self.one_sided_injectivity,
                "P1": self.p1, "P2": self.p2}


def check_theorem_preconditions(f: GraphHom, g: GraphHom,
                                po: PushoutGraph | None = None) -> TheoremFlags:
    """Hypothesis flags for the pushout-to-pullback theorems."""
    po = po or graph_pushout(f, g)
    E, F, G = f.codomain, g.codomain, f.domain
    vertex_injectivity = _injective(f.f0) and _injective(g.f0)

    p = po.graph
    img_e = set(po.iota_left.f1.values())
    img_f = set(po.iota_right.f1.values())
    one_color = True
    for x in p.edges:
        for y in p.edges:
            if p.tgt[x] == p.src[y]:
                if not ((x in img_e and y in img_e) or (x in img_f and y in img_f)):
                    one_color = False
    one_sided = _injective(f.f1) or _injective(g.f1)
    p1 = _injective(f.f0) and _injective(f.f1)

    b_e = breaking_vertices(E, E.vertices - f.vertex_image())
    restricted = sorted(v for v in G.vertices if f.f0[v] in b_e)
    images = [g.f0[v] for v in restricted]
    b_f = breaking_vertices(F, F.vertices - g.vertex_image())
    p2 = len(set(images)) == len(images) and all(w in b_f for w in images)
    return TheoremFlags(vertex_injectivity, one_color, one_sided, p1, p2)


def breakarrow_identity(f: GraphHom, g: GraphHom,
                        po: PushoutGraph | None = None):
    """The breaking-arrow set identity, checked at every vertex of the left
    codomain that is the unique preimage of its class: edges from it into the
    complement of the shared image match, through the injection, the pushout
    edges from its class into the complement of the right-hand image.

    Returns (ok, witness list of offending vertices).
    """
    po = po or graph_pushout(f, g)
    E = f.codomain
    p_graph = po.graph
    img_g_in_e = f.vertex_image()
    img_f_in_p = frozenset(po.iota_right.f0.values())
    iota = po.iota_left
    fibers = {}
    for u in E.vertices:
        fibers.setdefault(iota.f0[u], []).append(u)
    witnesses = []
    for w in sorted(E.vertices):
        p = iota.f0[w]
        if fibers[p] != [w]:
            continue
        lhs = {e for e in E.edges
               if E.src[e] == w and E.tgt[e] not in img_g_in_e}
        rhs = {e for e in E.edges
               if p_graph.src[iota.f1[e]] == p
               and p_graph.tgt[iota.f1[e]] not in img_f_in_p}
        if lhs != rhs:
            witnesses.append(w)
    return not witnesses, witnesses


@dataclass(frozen=True)
class PathCompareReport:
    bijective: bool
    injective: bool
    surjective: bool
    truncation: int
    missing: tuple
    collisions: tuple
    class_count: int
    path_count: int


def path_pushout_compare(f: GraphHom, g: GraphHom, n: int = 4,
                         po: PushoutGraph | None = None) -> PathCompareReport:
    """Compare the pushout of truncated path sets with the paths of the
    pushout graph through the natural map, reporting bijectivity up to n.

    Homomorphisms preserve path length, so the degree-wise truncation of the
    path-set pushout is the pushout of the truncations.
    """
    if f.domain != g.domain:
        raise DomainMismatch("legs must share their domain")
    po = po or graph_pushout(f, g)
    E, F, G = f.codomain, g.codomain, f.domain
    fp_e, fp_f, fp_g = paths_up_to(E, n), paths_up_to(F, n), paths_up_to(G, n)
    f_paths = {p: induced_path_map(f, p) for p in fp_g}
    g_paths = {p: induced_path_map(g, p) for p in fp_g}
    pp = set_pushout(fp_e, fp_f, fp_g, f_paths, g_paths, labels=("E", "F"),
                     sort_key=Path.sort_key)
    h = {}
    for rep, members in pp.classes.items():
        images = {induced_path_map(po.iota_left if side == "E" else po.iota_right, q)
                  for side, q in members}
        if len(images) != 1:
            raise GraphError(f"natural path map ill defined on class of {rep}")
        h[rep] = images.pop()
    target = paths_up_to(po.graph, n)
    seen = {}
    collisions = []
    for rep, path in sorted(h.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key())):
        if path in seen:
            collisions.append((str(seen[path][1]), str(rep[1]), str(path)))
        else:
            seen[path] = rep
    missing = tuple(str(p) for p in target if p not in seen)
    injective = not collisions
    surjective = not missing
    return PathCompareReport(injective and surjective, injective, surjective,
                             n, missing, tuple(collisions), len(h), len(target))
