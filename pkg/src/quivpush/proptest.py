"""Seeded randomized suites for the library's theorems and invariants.

Each suite draws one instance satisfying its hypotheses and checks the
claimed conclusion.  Failures are minimized by greedy vertex/edge deletion
preserving the failure, then reported as findings; the admpush suite in
particular treats its closure property as a conjecture to probe, never as
an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (Graph, intersection_graph, paths_up_to, union_graph,
                    validate_graph)
from .morphism import (GraphHom, classify_hom, compose, is_admissible,
                       validate_hom, admissible_equiv_crtbpog)
from .pushout import graph_pushout, path_pushout_compare, breakarrow_identity
from .path_algebra import PAElement, pa_mul, pa_pullback, pa_unit
from .leavitt import l_mul, l_pullback, l_unit, monomial_element, vertex_monomial
from . import randgen


@dataclass
class CaseResult:
    ok: bool
    detail: str = ""
    minimized: str = ""


def _restrict_hom(h: GraphHom, keep_dom_v, keep_dom_e) -> GraphHom:
    dom = randgen.restrict_graph(h.domain, keep_dom_v, keep_dom_e)
    return GraphHom(dom, h.codomain,
                    {v: h.f0[v] for v in dom.vertices},
                    {e: h.f1[e] for e in dom.edges})


def _shrink_codomain(h: GraphHom):
    """Candidate homs with one junk codomain vertex or edge removed."""
    cod = h.codomain
    used_v = h.vertex_image()
    used_e = h.edge_image()
    for e in sorted(cod.edges - used_e):
        yield GraphHom(h.domain,
                       randgen.restrict_graph(cod, cod.vertices, cod.edges - {e}),
                       dict(h.f0), dict(h.f1))
    for v in sorted(cod.vertices - used_v):
        incident = {e for e in cod.edges
                    if cod.src[e] == v or cod.tgt[e] == v}
        if incident & used_e:
            continue
        yield GraphHom(h.domain, randgen.restrict_graph(cod, cod.vertices - {v}),
                       dict(h.f0), dict(h.f1))


def minimize_legs(fails, f: GraphHom, g: GraphHom):
    """Greedy deletion preserving failure: shared-domain vertices/edges, then
    junk in either codomain."""
    while True:
        shrunk = False
        dom = f.domain
        for e in sorted(dom.edges):
            cand_f = _restrict_hom(f, dom.vertices, dom.edges - {e})
            cand_g = _restrict_hom(g, dom.vertices, dom.edges - {e})
            if fails(cand_f, cand_g):
                f, g = cand_f, cand_g
                shrunk = True
                break
        if shrunk:
            continue
        for v in sorted(dom.vertices):
            keep_v = dom.vertices - {v}
            cand_f = _restrict_hom(f, keep_v, dom.edges)
            cand_g = _restrict_hom(g, keep_v, dom.edges)
            if fails(cand_f, cand_g):
                f, g = cand_f, cand_g
                shrunk = True
                break
        if shrunk:
            continue
        for cand_f in _shrink_codomain(f):
            if fails(cand_f, g):
                f = cand_f
                shrunk = True
                break
        if shrunk:
            continue
        for cand_g in _shrink_codomain(g):
            if fails(f, cand_g):
                g = cand_g
                shrunk = True
                break
        if not shrunk:
            return f, g


def minimize_graph_pair(fails, f_graph: Graph, g_graph: Graph):
    """Greedy deletion on either graph preserving failure and validity."""
    while True:
        shrunk = False
        for which in (0, 1):
            graph = (f_graph, g_graph)[which]
            for e in sorted(graph.edges):
                cand = randgen.restrict_graph(graph, graph.vertices,
                                              graph.edges - {e})
                pair = (cand, g_graph) if which == 0 else (f_graph, cand)
                if fails(*pair):
                    f_graph, g_graph = pair
                    shrunk = True
                    break
            if shrunk:
                break
            for v in sorted(graph.vertices):
                cand = randgen.restrict_graph(graph, graph.vertices - {v})
                pair = (cand, g_graph) if which == 0 else (f_graph, cand)
                if fails(*pair):
                    f_graph, g_graph = pair
                    shrunk = True
                    break
            if shrunk:
                break
        if not shrunk:
            return f_graph, g_graph


def _show_legs(f: GraphHom, g: GraphHom) -> str:
    return (f"domain={f.domain!r} left={f.codomain!r} right={g.codomain!r} "
            f"f=({f.f0},{f.f1}) g=({g.f0},{g.f1})")


def suite_composition(rng) -> CaseResult:
    outer, inner = randgen.composable_tb_pair(rng)
    comp = compose(outer, inner)
    cls = classify_hom(comp)
    ok = cls.target_bijective and cls.proper
    return CaseResult(ok, "" if ok else f"composite not TB: {_show_legs(outer, inner)}")


def suite_admissible_equiv(rng) -> CaseResult:
    h = randgen.random_injective_hom(rng, tails=rng.random() < 0.3)
    ok = admissible_equiv_crtbpog(h)
    return CaseResult(ok, "" if ok else
                      f"admissible != CRTBPOG on {_show_legs(h, h)}")


def suite_captocup(rng) -> CaseResult:
    f_graph, g_graph = randgen.captocup_pair(rng, tails=True)

    def fails(fg, gg):
        if validate_graph(fg) or validate_graph(gg):
            return False
        try:
            inter = intersection_graph(fg, gg)
            if not (is_admissible(GraphHom.inclusion(inter, fg)).strongly
                    and is_admissible(GraphHom.inclusion(inter, gg)).strongly):
                return False
            u = union_graph(fg, gg)
            return not (is_admissible(GraphHom.inclusion(fg, u)).strongly
                        and is_admissible(GraphHom.inclusion(gg, u)).strongly)
        except Exception:
            return False

    if not fails(f_graph, g_graph):
        return CaseResult(True)
    small = minimize_graph_pair(fails, f_graph, g_graph)
    return CaseResult(False, "union not strongly admissible",
                      f"F={small[0]!r} G={small[1]!r}")


def suite_admpush(rng) -> CaseResult:
    f, g = randgen.admpush_instance(rng)

    def fails(ff, gg):
        if validate_hom(ff) or validate_hom(gg):
            return False
        cf, cg = classify_hom(ff), classify_hom(gg)
        if not (cf.target_bijective and cf.regular and cg.target_bijective
                and cg.regular):
            return False
        if not (cf.injective or cg.injective):
            return False
        po = graph_pushout(ff, gg)
        ce = classify_hom(po.iota_left)
        cf2 = classify_hom(po.iota_right)
        return not (ce.target_bijective and ce.regular
                    and cf2.target_bijective and cf2.regular)

    if not fails(f, g):
        return CaseResult(True)
    small = minimize_legs(fails, f, g)
    return CaseResult(False, "pushout injections lost regularity or target bijectivity",
                      _show_legs(*small))


def suite_h_bijective(rng) -> CaseResult:
    f, g = randgen.one_color_instance(rng)
    report = path_pushout_compare(f, g, 4)
    if report.bijective:
        return CaseResult(True)

    def fails(ff, gg):
        if validate_hom(ff) or validate_hom(gg):
            return False
        flags = None
        try:
            from .pushout import check_theorem_preconditions
            flags = check_theorem_preconditions(ff, gg)
            if not (flags.vertex_injectivity and flags.one_color):
                return False
            return not path_pushout_compare(ff, gg, 4).bijective
        except Exception:
            return False

    small = minimize_legs(fails, f, g)
    return CaseResult(False, "path comparison map not bijective",
                      _show_legs(*small))


def suite_pa_hom(rng) -> CaseResult:
    base = randgen.random_graph(rng, max_v=4, max_e=5, prefix="b")
    h = randgen.random_general_hom(rng, base)
    paths = paths_up_to(base, 3)
    if not paths:
        return CaseResult(True)
    for _ in range(6):
        p = rng.choice(paths)
        q = rng.choice(paths)
        a = PAElement.basis(base, p)
        b = PAElement.basis(base, q)
        lhs = pa_pullback(h, pa_mul(a, b))
        rhs = pa_mul(pa_pullback(h, a), pa_pullback(h, b))
        if lhs != rhs:
            return CaseResult(False, f"f*({p}.{q}) != f*({p})f*({q})",
                              _show_legs(h, h))
    if pa_pullback(h, pa_unit(base)) != pa_unit(h.domain):
        return CaseResult(False, "pullback not unital", _show_legs(h, h))
    return CaseResult(True)


def suite_lk_hom(rng) -> CaseResult:
    h = randgen.random_crtbpog_hom(rng)
    cod = h.codomain
    gens = [monomial_element(cod, vertex_monomial(v)) for v in sorted(cod.vertices)]
    from .leavitt import edge_monomial, ghost_monomial
    for e in sorted(cod.edges):
        gens.append(monomial_element(cod, edge_monomial(cod, e)))
        gens.append(monomial_element(cod, ghost_monomial(cod, e)))
    if not gens:
        return CaseResult(True)
    for _ in range(6):
        a = rng.choice(gens)
        b = rng.choice(gens)
        lhs = l_pullback(h, l_mul(a, b))
        rhs = l_mul(l_pullback(h, a), l_pullback(h, b))
        if lhs != rhs:
            return CaseResult(False, "Leavitt pullback not multiplicative",
                              _show_legs(h, h))
    if l_pullback(h, l_unit(cod)) != l_unit(h.domain):
        return CaseResult(False, "Leavitt pullback not unital", _show_legs(h, h))
    return CaseResult(True)


def suite_kerver(rng) -> CaseResult:
    h = randgen.random_crtbpog_hom(rng)
    cod = h.codomain
    image = h.vertex_image()
    for v in sorted(cod.vertices):
        elem = l_pullback(h, monomial_element(cod, vertex_monomial(v)))
        if elem.is_zero() != (v not in image):
            return CaseResult(False, f"kernel biconditional fails at {v}",
                              _show_legs(h, h))
    return CaseResult(True)


def suite_breakarrow(rng) -> CaseResult:
    f, g = randgen.one_color_instance(rng, need_one_sided=True)
    po = graph_pushout(f, g)
    ok, witnesses = breakarrow_identity(f, g, po)
    if ok:
        return CaseResult(True)
    return CaseResult(False, f"breaking-arrow sets differ at {witnesses}",
                      _show_legs(f, g))


SUITES = {
    "composition": suite_composition,
    "admissible-equiv": suite_admissible_equiv,
    "captocup": suite_captocup,
    "admpush": suite_admpush,
    "h-bijective": suite_h_bijective,
    "pa-hom": suite_pa_hom,
    "lk-hom": suite_lk_hom,
    "kerver": suite_kerver,
    "breakarrow": suite_breakarrow,
}


def run_suite(name: str, seed: int, cases: int, emit=None):
    """Run a suite; returns (pass_count, list of failing CaseResults)."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    suite = SUITES[name]
    failures = []
    passes = 0
    for i in range(cases):
        result = suite(randgen.case_rng(seed, i))
        if result.ok:
            passes += 1
        else:
            failures.append((i, result))
            if emit:
                emit(f"case {i:04d} FAIL {name}: {result.detail}")
                if result.minimized:
                    emit(f"  minimized: {result.minimized}")
    return passes, failures
