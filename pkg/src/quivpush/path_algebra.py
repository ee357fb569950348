"""Path algebras over an exact field and their contravariant pullbacks.

An element is a finite linear combination of basis paths; the product is
bilinear concatenation.  The pullback along a homomorphism sends a basis
path to the sum over its path preimages, and the theorem verifier compares
graded components of the pushout algebra with the fiber product by exact
rank computations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .graph import (Graph, Path, is_acyclic, longest_path_length,
                    paths_up_to, require_tail_free)
from .linalg import matmul, rank
from .morphism import GraphHom, DomainMismatch, check_valid_hom, induced_path_map
from .pushout import (PreconditionError, PushoutGraph, check_theorem_preconditions,
                      pushout_square)


class PAElement:
    """A finite linear combination of paths of one graph."""

    __slots__ = ("graph", "field", "terms")

    def __init__(self, graph: Graph, field, terms: dict):
        self.graph = graph
        self.field = field
        self.terms = {p: c for p, c in terms.items() if c != field.zero}

    @staticmethod
    def zero(graph, field=QQ):
        return PAElement(graph, field, {})

    @staticmethod
    def basis(graph, path: Path, field=QQ):
        return PAElement(graph, field, {path: field.one})

    def is_zero(self):
        return not self.terms

    def _check_compatible(self, other):
        if self.graph != other.graph or self.field != other.field:
            raise DomainMismatch("elements live over different graphs or fields")

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, self.field.zero) + c
        return PAElement(self.graph, self.field, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PAElement(self.graph, self.field, {p: -c for p, c in self.terms.items()})

    def scale(self, scalar):
        return PAElement(self.graph, self.field,
                         {p: scalar * c for p, c in self.terms.items()})

    def __mul__(self, other):
        return pa_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, PAElement):
            return NotImplemented
        return self.graph == other.graph and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pc: pc[0].sort_key())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*chi[{p}]" for p, c in self.sorted_terms())


def concat_paths(g: Graph, p: Path, q: Path):
    """pq when t(p) = s(q), else None."""
    if p.target(g) != q.source(g):
        return None
    if p.is_vertex:
        return q
    if q.is_vertex:
        return p
    return Path.of(p.edges + q.edges)


def pa_mul(a: PAElement, b: PAElement) -> PAElement:
    a._check_compatible(b)
    g = a.graph
    terms = {}
    zero = a.field.zero
    for p, cp in a.terms.items():
        for q, cq in b.terms.items():
            pq = concat_paths(g, p, q)
            if pq is not None:
                terms[pq] = terms.get(pq, zero) + cp * cq
    return PAElement(g, a.field, terms)


def pa_unit(g: Graph, field=QQ) -> PAElement:
    """The sum of vertex idempotents; the identity when the graph is nonempty."""
    require_tail_free(g, "path algebra")
    return PAElement(g, field, {Path.at(v): field.one for v in g.vertices})


def path_preimages(h: GraphHom, p: Path) -> list:
    """All domain paths mapping onto p; finite since lengths are preserved."""
    dom = h.domain
    if p.is_vertex:
        return [Path.at(v) for v in sorted(dom.vertices) if h.f0[v] == p.vertex]
    options = []
    for x in p.edges:
        lifts = sorted(e for e in dom.edges if h.f1[e] == x)
        if not lifts:
            return []
        options.append(lifts)
    results = []

    def extend(prefix):
        i = len(prefix)
        if i == len(options):
            results.append(Path.of(prefix))
            return
        for e in options[i]:
            if not prefix or dom.tgt[prefix[-1]] == dom.src[e]:
                extend(prefix + [e])

    extend([])
    return results


def pa_pullback(h: GraphHom, a: PAElement) -> PAElement:
    """The algebra homomorphism sending chi_p to the sum over path preimages."""
    check_valid_hom(h)
    require_tail_free(h.domain, "path algebra")
    require_tail_free(h.codomain, "path algebra")
    if a.graph != h.codomain:
        raise DomainMismatch("element must live over the codomain graph")
    terms = {}
    zero = a.field.zero
    for p, c in a.terms.items():
        for q in path_preimages(h, p):
            terms[q] = terms.get(q, zero) + c
    return PAElement(h.domain, a.field, terms)


def _paths_by_length(g: Graph, n: int) -> list:
    buckets = [[] for _ in range(n + 1)]
    for p in paths_up_to(g, n):
        buckets[p.length].append(p)
    return buckets


def _pullback_matrix(h: GraphHom, dom_paths, cod_paths):
    """Matrix of the pullback on one graded component: rows are domain paths,
    columns codomain paths, entry 1 iff the domain path maps onto the column."""
    index = {p: i for i, p in enumerate(cod_paths)}
    m = [[0] * len(cod_paths) for _ in dom_paths]
    for r, q in enumerate(dom_paths):
        image = induced_path_map(h, q)
        c = index.get(image)
        if c is not None:
            m[r][c] = 1
    return m


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    dim_pushout: int
    dim_image: int
    dim_fiber: int
    commutes: bool
    injective: bool
    surjective: bool

    @property
    def ok(self):
        return self.commutes and self.injective and self.surjective


@dataclass(frozen=True)
class PathPullbackReport:
    ok: bool
    exact: bool
    truncation: int
    degrees: tuple

    def total_dim_pushout(self):
        return sum(d.dim_pushout for d in self.degrees)

    def total_dim_fiber(self):
        return sum(d.dim_fiber for d in self.degrees)


def verify_path_pullback(f: GraphHom, g: GraphHom, n: int = 4,
                         po: PushoutGraph | None = None) -> PathPullbackReport:
    """Check degree by degree that the pushout path algebra is the fiber
    product: the pair of injection pullbacks commutes over the base, is
    injective, and hits exactly the fiber product.

    Each graded component of a finite graph's path algebra is finite
    dimensional, so the per-degree checks are exact; the report is EXACT when
    the pushout is acyclic and n bounds its longest path, else truncated.
    """
    po = po or pushout_square(f, g)
    flags = check_theorem_preconditions(f, g, po)
    for name, value in (("vertex_injectivity", flags.vertex_injectivity),
                        ("one_color", flags.one_color),
                        ("one_sided_injectivity", flags.one_sided_injectivity)):
        if not value:
            raise PreconditionError(name)
    E, F, G = f.codomain, g.codomain, f.domain
    p = po.graph
    pe = _paths_by_length(E, n)
    pf = _paths_by_length(F, n)
    pg = _paths_by_length(G, n)
    pp = _paths_by_length(p, n)
    checks = []

    def shaped_mul(a, b, nrows, ninner, ncols):
        if nrows == 0 or ncols == 0:
            return []
        if ninner == 0:
            return [[0] * ncols for _ in range(nrows)]
        return matmul(a, b)

    for d in range(n + 1):
        m_ie = _pullback_matrix(po.iota_left, pe[d], pp[d])
        m_if = _pullback_matrix(po.iota_right, pf[d], pp[d])
        m_f = _pullback_matrix(f, pg[d], pe[d])
        m_g = _pullback_matrix(g, pg[d], pf[d])
        lhs = shaped_mul(m_f, m_ie, len(pg[d]), len(pe[d]), len(pp[d]))
        rhs = shaped_mul(m_g, m_if, len(pg[d]), len(pf[d]), len(pp[d]))
        commutes = lhs == rhs
        stacked = m_ie + m_if
        r_stacked = rank(stacked)
        injective = r_stacked == len(pp[d])
        constraint = [m_f[i] + [-x for x in m_g[i]] for i in range(len(pg[d]))]
        if not pg[d]:
            dim_fiber = len(pe[d]) + len(pf[d])
        else:
            dim_fiber = len(pe[d]) + len(pf[d]) - rank(constraint)
        surjective = commutes and r_stacked == dim_fiber
        checks.append(DegreeCheck(d, len(pp[d]), r_stacked, dim_fiber,
                                  commutes, injective, surjective))
    exact = is_acyclic(p) and longest_path_length(p) <= n
    ok = all(c.ok for c in checks)
    return PathPullbackReport(ok, exact, n, tuple(checks))
