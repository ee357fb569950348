"""Finite directed graphs (quivers), paths, extended graphs, unions.

A graph is a quadruple of vertex set, edge set and source/target maps.
Infinite emitters are modelled combinatorially: an omega tail ``(v, w)``
stands for countably many anonymous parallel edges from v to w.  Tails
take part in single-graph predicates and in union/intersection only; the
algebra modules and general pushouts reject tailed graphs.

Graphs are immutable after construction and all operations here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass


class GraphError(ValueError):
    pass


class IncompatibleOverlap(GraphError):
    """Shared ids on which two graphs disagree; union/intersection undefined."""


@dataclass(frozen=True)
class Path:
    """A finite path: a lone vertex (length 0) or a nonempty composable edge tuple."""

    vertex: str | None = None
    edges: tuple[str, ...] = ()

    @staticmethod
    def at(vertex: str) -> "Path":
        return Path(vertex=vertex)

    @staticmethod
    def of(edges) -> "Path":
        edges = tuple(edges)
        if not edges:
            raise GraphError("edge sequence path must be nonempty; use Path.at for vertices")
        return Path(vertex=None, edges=edges)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def length(self) -> int:
        return len(self.edges)

    def source(self, g: "Graph") -> str:
        return self.vertex if self.is_vertex else g.src[self.edges[0]]

    def target(self, g: "Graph") -> str:
        return self.vertex if self.is_vertex else g.tgt[self.edges[-1]]

    def sort_key(self):
        return (len(self.edges), self.edges, self.vertex or "")

    def __str__(self):
        return self.vertex if self.is_vertex else ".".join(self.edges)


class Graph:
    """A finite quiver with optional omega tails."""

    def __init__(self, vertices, edges=(), src=None, tgt=None, omega_tails=()):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(edges)
        self.src = dict(src or {})
        self.tgt = dict(tgt or {})
        self.omega_tails = frozenset((v, w) for v, w in omega_tails)

    @staticmethod
    def build(vertices, edge_triples=(), omega_tails=()) -> "Graph":
        """Construct from (edge_id, source, target) triples."""
        src = {e: u for e, u, _ in edge_triples}
        tgt = {e: w for e, _, w in edge_triples}
        return Graph(vertices, src.keys(), src, tgt, omega_tails)

    @staticmethod
    def empty() -> "Graph":
        return Graph(())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.src == other.src and self.tgt == other.tgt
                and self.omega_tails == other.omega_tails)

    def __hash__(self):
        return hash((self.vertices, self.edges, frozenset(self.src.items()),
                     frozenset(self.tgt.items()), self.omega_tails))

    def __repr__(self):
        return (f"Graph({sorted(self.vertices)}, edges={sorted(self.edges)}, "
                f"tails={sorted(self.omega_tails)})")

    @property
    def has_tails(self) -> bool:
        return bool(self.omega_tails)

    def out_edges(self, v: str):
        return [e for e in sorted(self.edges) if self.src.get(e) == v]

    def in_edges(self, v: str):
        return [e for e in sorted(self.edges) if self.tgt.get(e) == v]

    def out_map(self) -> dict:
        """Vertex -> sorted list of outgoing edge ids."""
        out = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            u = self.src.get(e)
            if u in out:
                out[u].append(e)
        return out

    def in_map(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            w = self.tgt.get(e)
            if w in inc:
                inc[w].append(e)
        return inc


class ExtendedGraph(Graph):
    """A graph doubled with ghost edges e* reversing each real edge."""

    def __init__(self, base: Graph, ghost: dict):
        self.base = base
        self.ghost = dict(ghost)                       # real id -> ghost id
        self.ghost_of = {g: e for e, g in ghost.items()}  # ghost id -> real id
        src = dict(base.src)
        tgt = dict(base.tgt)
        for e, g in ghost.items():
            src[g] = base.tgt[e]
            tgt[g] = base.src[e]
        super().__init__(base.vertices, set(base.edges) | set(self.ghost_of),
                         src, tgt)

    def is_ghost(self, edge: str) -> bool:
        return edge in self.ghost_of


@dataclass(frozen=True)
class VertexClasses:
    sinks: frozenset
    sources: frozenset
    regular: frozenset
    infinite_emitters: frozenset


def validate_graph(g: Graph) -> list:
    """Report every violated graph invariant; an empty list means ok."""
    problems = []
    for v in g.vertices:
        if not isinstance(v, str) or not v:
            problems.append(f"vertex id {v!r} is not a nonempty string")
    for e in g.edges:
        if not isinstance(e, str) or not e:
            problems.append(f"edge id {e!r} is not a nonempty string")
    for e in sorted(g.edges):
        if e not in g.src:
            problems.append(f"edge {e}: missing source")
        elif g.src[e] not in g.vertices:
            problems.append(f"edge {e}: dangling source {g.src[e]}")
        if e not in g.tgt:
            problems.append(f"edge {e}: missing target")
        elif g.tgt[e] not in g.vertices:
            problems.append(f"edge {e}: dangling target {g.tgt[e]}")
    for v, w in sorted(g.omega_tails):
        if v not in g.vertices:
            problems.append(f"omega tail ({v},{w}): dangling source {v}")
        if w not in g.vertices:
            problems.append(f"omega tail ({v},{w}): dangling target {w}")
    return problems


def check_valid(g: Graph) -> Graph:
    problems = validate_graph(g)
    if problems:
        raise GraphError("; ".join(problems))
    return g


def require_tail_free(g: Graph, context: str = "this operation"):
    if g.has_tails:
        raise GraphError(f"{context} rejects graphs with omega tails")


def classify_vertices(g: Graph) -> VertexClasses:
    """Split vertices into sinks, sources, regular vertices and infinite emitters.

    A vertex is a sink iff it emits nothing (no edge and no tail), a source
    iff it receives nothing, an infinite emitter iff some tail starts at it,
    and regular iff it is neither a sink nor an infinite emitter.
    """
    emits = set(g.src.values())
    receives = set(g.tgt.values())
    tail_src = {v for v, _ in g.omega_tails}
    tail_tgt = {w for _, w in g.omega_tails}
    sinks = frozenset(v for v in g.vertices if v not in emits and v not in tail_src)
    sources = frozenset(v for v in g.vertices if v not in receives and v not in tail_tgt)
    infinite = frozenset(v for v in g.vertices if v in tail_src)
    regular = frozenset(g.vertices - sinks - infinite)
    return VertexClasses(sinks, sources, regular, infinite)


def regular_vertices(g: Graph) -> frozenset:
    return classify_vertices(g).regular


GHOST_MARK = "*"


def extended_graph(g: Graph) -> ExtendedGraph:
    """Double the edges with ghosts: s(e*) = t(e) and t(e*) = s(e)."""
    require_tail_free(g, "extended_graph")
    ghost = {e: e + GHOST_MARK for e in g.edges}
    clashes = set(ghost.values()) & g.edges
    if clashes:
        raise GraphError(f"ghost ids collide with edge ids: {sorted(clashes)}")
    return ExtendedGraph(g, ghost)


def paths_up_to(g: Graph, n: int) -> list:
    """All paths of length <= n, each once, vertices included, in (length, edges) order."""
    require_tail_free(g, "path enumeration")
    if n < 0:
        raise GraphError("path length bound must be nonnegative")
    out = g.out_map()
    result = [Path.at(v) for v in sorted(g.vertices)]
    frontier = [Path.of([e]) for e in sorted(g.edges)]
    length = 1
    while frontier and length <= n:
        result.extend(frontier)
        nxt = []
        for p in frontier:
            for e in out[g.tgt[p.edges[-1]]]:
                nxt.append(Path.of(p.edges + (e,)))
        frontier = nxt
        length += 1
    return result


def _check_overlap(f: Graph, g: Graph):
    bad = []
    for e in sorted(f.edges & g.edges):
        if f.src[e] != g.src[e]:
            bad.append(f"edge {e}: sources differ ({f.src[e]} vs {g.src[e]})")
        if f.tgt[e] != g.tgt[e]:
            bad.append(f"edge {e}: targets differ ({f.tgt[e]} vs {g.tgt[e]})")
    if bad:
        raise IncompatibleOverlap("; ".join(bad))


def union_graph(f: Graph, g: Graph) -> Graph:
    """Componentwise union; shared ids are identified and must agree."""
    _check_overlap(f, g)
    src = dict(g.src)
    src.update(f.src)
    tgt = dict(g.tgt)
    tgt.update(f.tgt)
    return Graph(f.vertices | g.vertices, f.edges | g.edges, src, tgt,
                 f.omega_tails | g.omega_tails)


def intersection_graph(f: Graph, g: Graph) -> Graph:
    """Componentwise intersection; shared ids are identified and must agree."""
    _check_overlap(f, g)
    edges = f.edges & g.edges
    return Graph(f.vertices & g.vertices, edges,
                 {e: f.src[e] for e in edges}, {e: f.tgt[e] for e in edges},
                 f.omega_tails & g.omega_tails)


def is_subgraph(sub: Graph, sup: Graph) -> bool:
    """Id-wise containment with agreeing structure maps and tails."""
    if not (sub.vertices <= sup.vertices and sub.edges <= sup.edges
            and sub.omega_tails <= sup.omega_tails):
        return False
    return all(sub.src[e] == sup.src[e] and sub.tgt[e] == sup.tgt[e]
               for e in sub.edges)


def is_acyclic(g: Graph) -> bool:
    order = topological_order(g)
    return order is not None


def topological_order(g: Graph):
    """Topological vertex order, or None if the graph has a cycle (tails count)."""
    succ = {v: set() for v in g.vertices}
    indeg = {v: 0 for v in g.vertices}
    arcs = [(g.src[e], g.tgt[e]) for e in g.edges] + list(g.omega_tails)
    for u, w in arcs:
        succ[u].add(w)
    for u in succ:
        for w in succ[u]:
            indeg[w] += 1
    ready = sorted(v for v in g.vertices if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == len(g.vertices) else None


def longest_path_length(g: Graph) -> int:
    """Longest path length in an acyclic graph."""
    order = topological_order(g)
    if order is None:
        raise GraphError("longest path is undefined on cyclic graphs")
    best = {v: 0 for v in g.vertices}
    for v in reversed(order):
        for e in g.out_edges(v):
            best[v] = max(best[v], 1 + best[g.tgt[e]])
    return max(best.values(), default=0)
