"""Graph homomorphisms and the predicate ladder OG > POG > TBPOG > CRTBPOG.

Also: hereditary/saturated vertex-set analysis, breaking vertices, and
(strongly) admissible inclusions.  Homomorphisms between tailed graphs are
restricted to inclusions; this keeps target bijectivity decidable while a
tail bundle still behaves like countably many parallel edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, GraphError, Path, is_subgraph, regular_vertices

CATEGORY_OG = "OG"
CATEGORY_POG = "POG"
CATEGORY_TBPOG = "TBPOG"
CATEGORY_CRTBPOG = "CRTBPOG"


class HomError(ValueError):
    pass


class DomainMismatch(HomError):
    pass


class GraphHom:
    """A pair of maps (vertices, edges) with commuting source/target squares."""

    def __init__(self, domain: Graph, codomain: Graph, f0: dict, f1: dict):
        self.domain = domain
        self.codomain = codomain
        self.f0 = dict(f0)
        self.f1 = dict(f1)

    @staticmethod
    def identity(g: Graph) -> "GraphHom":
        return GraphHom(g, g, {v: v for v in g.vertices}, {e: e for e in g.edges})

    @staticmethod
    def inclusion(sub: Graph, sup: Graph) -> "GraphHom":
        if not is_subgraph(sub, sup):
            raise HomError("inclusion requires an id-wise subgraph")
        return GraphHom(sub, sup, {v: v for v in sub.vertices},
                        {e: e for e in sub.edges})

    def vertex_image(self) -> frozenset:
        return frozenset(self.f0.values())

    def edge_image(self) -> frozenset:
        return frozenset(self.f1.values())

    def is_inclusion(self) -> bool:
        return (all(self.f0.get(v) == v for v in self.domain.vertices)
                and all(self.f1.get(e) == e for e in self.domain.edges)
                and is_subgraph(self.domain, self.codomain))

    def __repr__(self):
        return f"GraphHom({len(self.domain.vertices)}v/{len(self.domain.edges)}e -> " \
               f"{len(self.codomain.vertices)}v/{len(self.codomain.edges)}e)"


@dataclass(frozen=True)
class HomClassification:
    injective: bool
    surjective: bool
    proper: bool
    target_bijective: bool
    regular: bool
    category: str


def validate_hom(h: GraphHom) -> list:
    """Report totality and commuting-square failures; empty list means ok."""
    problems = []
    for v in sorted(h.domain.vertices):
        if v not in h.f0:
            problems.append(f"vertex {v}: no image")
        elif h.f0[v] not in h.codomain.vertices:
            problems.append(f"vertex {v}: image {h.f0[v]} not in codomain")
    for e in sorted(h.domain.edges):
        if e not in h.f1:
            problems.append(f"edge {e}: no image")
            continue
        x = h.f1[e]
        if x not in h.codomain.edges:
            problems.append(f"edge {e}: image {x} not in codomain")
            continue
        if h.f0.get(h.domain.src[e]) != h.codomain.src[x]:
            problems.append(f"edge {e}: source square fails")
        if h.f0.get(h.domain.tgt[e]) != h.codomain.tgt[x]:
            problems.append(f"edge {e}: target square fails")
    if h.domain.has_tails or h.codomain.has_tails:
        if not h.is_inclusion():
            problems.append("tailed graphs only admit inclusion homomorphisms")
    return problems


def check_valid_hom(h: GraphHom) -> GraphHom:
    problems = validate_hom(h)
    if problems:
        raise HomError("; ".join(problems))
    return h


def _fibers(mapping: dict, keys) -> dict:
    fib = {}
    for k in keys:
        fib.setdefault(mapping[k], []).append(k)
    return fib


def _injective(mapping: dict) -> bool:
    vals = list(mapping.values())
    return len(set(vals)) == len(vals)


def _target_bijective(h: GraphHom) -> bool:
    dom, cod = h.domain, h.codomain
    vfib = _fibers(h.f0, dom.vertices)
    efib = _fibers(h.f1, dom.edges)
    for x in cod.edges:
        pre_e = efib.get(x, [])
        pre_v = vfib.get(cod.tgt[x], [])
        targets = [dom.tgt[e] for e in pre_e]
        if len(set(targets)) != len(targets) or set(targets) != set(pre_v):
            return False
    # a codomain tail bundle ending in the image must be a domain bundle
    image = h.vertex_image()
    for (v, w) in cod.omega_tails:
        if w in image and (v, w) not in dom.omega_tails:
            return False
    return True


def classify_hom(h: GraphHom) -> HomClassification:
    """Exhaustively computed flags and the strongest category containing h.

    On finite graphs every map is finite-to-one, so proper always holds.
    """
    check_valid_hom(h)
    injective = _injective(h.f0) and _injective(h.f1)
    surjective = (h.vertex_image() == h.codomain.vertices
                  and h.edge_image() == h.codomain.edges)
    proper = True
    tb = _target_bijective(h)
    reg_dom = regular_vertices(h.domain)
    reg_cod = regular_vertices(h.codomain)
    regular = all(h.f0[v] not in reg_cod for v in h.domain.vertices if v not in reg_dom)
    if proper and tb and regular:
        category = CATEGORY_CRTBPOG
    elif proper and tb:
        category = CATEGORY_TBPOG
    elif proper:
        category = CATEGORY_POG
    else:
        category = CATEGORY_OG
    return HomClassification(injective, surjective, proper, tb, regular, category)


def compose(g: GraphHom, f: GraphHom) -> GraphHom:
    """The composite g after f."""
    if f.codomain != g.domain:
        raise DomainMismatch("codomain of the first factor must equal domain of the second")
    return GraphHom(f.domain, g.codomain,
                    {v: g.f0[f.f0[v]] for v in f.domain.vertices},
                    {e: g.f1[f.f1[e]] for e in f.domain.edges})


def induced_path_map(h: GraphHom, p: Path) -> Path:
    """The length-preserving image of a path under the homomorphism."""
    if p.is_vertex:
        if p.vertex not in h.domain.vertices:
            raise HomError(f"vertex {p.vertex} not in the domain")
        return Path.at(h.f0[p.vertex])
    for e, nxt in zip(p.edges, p.edges[1:]):
        if h.domain.tgt.get(e) != h.domain.src.get(nxt):
            raise HomError(f"{p} is not a path of the domain")
    if any(e not in h.domain.edges for e in p.edges):
        raise HomError(f"{p} is not a path of the domain")
    return Path.of(h.f1[e] for e in p.edges)


@dataclass(frozen=True)
class HereditaryReport:
    ok: bool
    prodigal: frozenset

    def __bool__(self):
        return self.ok


def is_hereditary(g: Graph, h_set) -> HereditaryReport:
    """True iff every edge or tail starting in the set also ends in it."""
    h_set = frozenset(h_set)
    if not h_set <= g.vertices:
        raise GraphError("subset contains unknown vertices")
    prodigal = set()
    for e in g.edges:
        if g.src[e] in h_set and g.tgt[e] not in h_set:
            prodigal.add(g.src[e])
    for v, w in g.omega_tails:
        if v in h_set and w not in h_set:
            prodigal.add(v)
    return HereditaryReport(not prodigal, frozenset(prodigal))


def desaturating_vertices(g: Graph, h_set) -> frozenset:
    """Regular vertices outside the set whose every emitted edge ends in it."""
    h_set = frozenset(h_set)
    reg = regular_vertices(g)
    out = g.out_map()
    result = set()
    for v in g.vertices - h_set:
        if v in reg and out[v] and all(g.tgt[e] in h_set for e in out[v]):
            result.add(v)
    return frozenset(result)


def is_saturated(g: Graph, h_set) -> bool:
    return not desaturating_vertices(g, h_set)


def saturation(g: Graph, h_set) -> frozenset:
    """Smallest saturated superset, by fixpoint over desaturating vertices."""
    h_set = frozenset(h_set)
    if not h_set <= g.vertices:
        raise GraphError("subset contains unknown vertices")
    current = set(h_set)
    while True:
        extra = desaturating_vertices(g, current)
        if not extra:
            return frozenset(current)
        current |= extra


def breaking_vertices(g: Graph, h_set) -> frozenset:
    """Vertices outside the set emitting infinitely many edges, only finitely
    many of which (but at least one) end outside the set.

    A tail into the complement counts as infinitely many such edges, so the
    finiteness clause forces every tail of a breaking vertex into the set.
    """
    h_set = frozenset(h_set)
    if not h_set <= g.vertices:
        raise GraphError("subset contains unknown vertices")
    result = set()
    tails_by_src = {}
    for v, w in g.omega_tails:
        tails_by_src.setdefault(v, []).append(w)
    out = g.out_map()
    for v in g.vertices - h_set:
        tails = tails_by_src.get(v, [])
        if not tails:
            continue
        if any(w not in h_set for w in tails):
            continue
        named_out = sum(1 for e in out[v] if g.tgt[e] not in h_set)
        if named_out > 0:
            result.add(v)
    return frozenset(result)


def is_unbroken(g: Graph, h_set) -> bool:
    return not breaking_vertices(g, h_set)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    strongly: bool
    witnesses: dict = field(default_factory=dict)


def is_admissible(h: GraphHom) -> AdmissibilityReport:
    """Check (A1) complement-of-image saturated and (A2) edges into the image
    come from the image; strongly admissible adds an unbroken complement.

    For tailed graphs (inclusions only), (A2) also requires every codomain
    tail ending in the image to be a domain tail.
    """
    check_valid_hom(h)
    cls_inj = _injective(h.f0) and _injective(h.f1)
    if not cls_inj:
        raise HomError("admissibility is defined for injective homomorphisms")
    cod = h.codomain
    image_v = h.vertex_image()
    image_e = h.edge_image()
    complement = cod.vertices - image_v
    witnesses = {}

    desat = desaturating_vertices(cod, complement)
    a1 = not desat
    if desat:
        witnesses["A1_desaturating"] = sorted(desat)

    a2 = True
    for x in sorted(cod.edges):
        if cod.tgt[x] in image_v and x not in image_e:
            a2 = False
            witnesses["A2_edge"] = x
            break
    if a2:
        for (v, w) in sorted(cod.omega_tails):
            if w in image_v and (v, w) not in h.domain.omega_tails:
                a2 = False
                witnesses["A2_tail"] = [v, w]
                break

    admissible = a1 and a2
    broken = breaking_vertices(cod, complement)
    strongly = admissible and not broken
    if broken:
        witnesses["breaking"] = sorted(broken)
    return AdmissibilityReport(admissible, strongly, witnesses)


def admissible_equiv_crtbpog(h: GraphHom) -> bool:
    """Cross-check: admissibility coincides with membership in CRTBPOG."""
    report = is_admissible(h)
    cls = classify_hom(h)
    return report.admissible == (cls.category == CATEGORY_CRTBPOG)
