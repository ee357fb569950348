import pytest
from hypothesis import given, settings, strategies as st

from quivpush.fields import QQ, PrimeField

from quivpush.graph import Graph, GraphError, Path, union_graph
from quivpush.morphism import GraphHom, classify_hom, compose, regular_vertices
from quivpush.pushout import PreconditionError
from quivpush.leavitt import (LElement, LMonomial, edge_monomial,
                              ghost_monomial, graded_ideal_generators,
                              ker_generators, l_mul, l_pullback, l_unit,
                              leavitt_dimension_enumerated,
                              leavitt_dimension_oracle, monomial_element,
                              normal_form, normal_monomials_window,
                              verify_descent, verify_leavitt_pullback,
                              vertex_monomial)
from quivpush.randgen import (case_rng, fold_hom, leavitt_union_instance,
                              random_crtbpog_hom, random_graph)

EDGE = Graph.build(["v", "w"], [("e", "v", "w")])
LOOP = Graph.build(["u"], [("l", "u", "u")])


def _mono(g, mono, field=QQ):
    return monomial_element(g, mono, field)


def test_ck1_same_edge():
    assert normal_form(EDGE, ["e*", "e"]) == _mono(EDGE, vertex_monomial("w"))


def test_ck1_different_edges():
    g = Graph.build(["a", "b"], [("e", "a", "b"), ("f", "a", "b")])
    assert normal_form(g, ["e*", "f"]).is_zero()


def test_ck2_single_edge_collapses_to_vertex():
    assert normal_form(EDGE, ["e", "e*"]) == _mono(EDGE, vertex_monomial("v"))


def test_normal_form_rejects_non_paths():
    with pytest.raises(GraphError):
        normal_form(EDGE, ["e", "e"])


def test_vertex_idempotent():
    chi_v = _mono(EDGE, vertex_monomial("v"))
    assert l_mul(chi_v, chi_v) == chi_v


def test_loop_corner_invertibility():
    chi_l = _mono(LOOP, edge_monomial(LOOP, "l"))
    chi_ls = _mono(LOOP, ghost_monomial(LOOP, "l"))
    chi_u = _mono(LOOP, vertex_monomial("u"))
    assert l_mul(chi_ls, chi_l) == chi_u
    assert l_mul(chi_l, chi_ls) == chi_u
    assert l_mul(l_mul(chi_l, chi_ls), chi_l) == chi_l


def test_single_edge_dimension_four():
    assert leavitt_dimension_enumerated(EDGE) == 4
    assert leavitt_dimension_oracle(EDGE) == 4
    window = normal_monomials_window(EDGE, 2)
    assert len(window) == 4
    assert LMonomial(Path.of(["e"]), Path.of(["e"])) not in window


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_dimension_oracle_matches_enumeration(seed):
    g = random_graph(case_rng(seed, 30), max_v=5, max_e=6, acyclic=True)
    assert leavitt_dimension_enumerated(g) == leavitt_dimension_oracle(g)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_ck_identities_in_normal_form(seed):
    g = random_graph(case_rng(seed, 31), max_v=4, max_e=5)
    for e in sorted(g.edges):
        for f in sorted(g.edges):
            lhs = l_mul(_mono(g, ghost_monomial(g, e)), _mono(g, edge_monomial(g, f)))
            rhs = _mono(g, vertex_monomial(g.tgt[e])) if e == f else LElement.zero(g)
            assert lhs == rhs
    for v in sorted(regular_vertices(g)):
        acc = LElement.zero(g)
        for e in sorted(g.edges):
            if g.src[e] == v:
                acc = acc + l_mul(_mono(g, edge_monomial(g, e)),
                                  _mono(g, ghost_monomial(g, e)))
        assert acc == _mono(g, vertex_monomial(v))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_l_mul_associative(seed):
    rng = case_rng(seed, 32)
    g = random_graph(rng, max_v=4, max_e=5)
    monos = normal_monomials_window(g, 2)
    if not monos:
        return
    for _ in range(8):
        a = _mono(g, rng.choice(monos))
        b = _mono(g, rng.choice(monos))
        c = _mono(g, rng.choice(monos))
        assert l_mul(l_mul(a, b), c) == l_mul(a, l_mul(b, c))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_grading(seed):
    rng = case_rng(seed, 33)
    g = random_graph(rng, max_v=4, max_e=5)
    monos = normal_monomials_window(g, 3)
    if not monos:
        return
    for _ in range(8):
        m1 = rng.choice(monos)
        m2 = rng.choice(monos)
        elem = l_mul(_mono(g, m1), _mono(g, m2))
        assert all(m.degree == m1.degree + m2.degree for m in elem.terms)


def test_normal_form_preserves_grading():
    g = Graph.build(["a", "b", "c"],
                    [("e1", "a", "b"), ("e2", "a", "c"), ("f", "b", "c")])
    non_normal = LMonomial(Path.of(["e1"]), Path.of(["e1"]))
    elem = monomial_element(g, non_normal)
    assert all(m.degree == 0 for m in elem.terms)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_normal_form_matches_iterated_letter_product(seed):
    """Reducing a word in one pass agrees with multiplying its letters one
    at a time, an independent route through CK1/CK2."""
    from quivpush.graph import extended_graph
    rng = case_rng(seed, 39)
    g = random_graph(rng, max_v=4, max_e=5)
    if not g.edges:
        return
    eg = extended_graph(g)
    out = eg.out_map()
    for _ in range(5):
        start = rng.choice(sorted(eg.vertices))
        letters = []
        here = start
        for _ in range(rng.randint(1, 6)):
            if not out[here]:
                break
            e = rng.choice(out[here])
            letters.append(e)
            here = eg.tgt[e]
        if not letters:
            continue
        direct = normal_form(g, letters)
        stepwise = None
        for x in letters:
            if eg.is_ghost(x):
                factor = _mono(g, ghost_monomial(g, eg.ghost_of[x]))
            else:
                factor = _mono(g, edge_monomial(g, x))
            stepwise = factor if stepwise is None else l_mul(stepwise, factor)
        assert direct == stepwise


def test_pullback_identity():
    h = GraphHom.identity(EDGE)
    chi = _mono(EDGE, edge_monomial(EDGE, "e"))
    assert l_pullback(h, chi) == chi


def test_pullback_admissible_inclusion_spec_example():
    sup = union_graph(EDGE, Graph(["v", "w", "u"]))
    h = GraphHom.inclusion(EDGE, sup)
    assert l_pullback(h, _mono(sup, vertex_monomial("u"))).is_zero()
    assert l_pullback(h, _mono(sup, vertex_monomial("v"))) == \
        _mono(EDGE, vertex_monomial("v"))


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_pullback_contravariant_on_folds(seed):
    rng = case_rng(seed, 34)
    base = random_graph(rng, max_v=3, max_e=3, prefix="b")
    outer = fold_hom(2, base, prefix="m")
    inner = fold_hom(2, outer.domain, prefix="d")
    comp = compose(outer, inner)
    for v in sorted(base.vertices):
        chi = _mono(base, vertex_monomial(v))
        assert l_pullback(comp, chi) == l_pullback(inner, l_pullback(outer, chi))
    for e in sorted(base.edges):
        chi = _mono(base, edge_monomial(base, e))
        assert l_pullback(comp, chi) == l_pullback(inner, l_pullback(outer, chi))


def test_pullback_renormalizes_when_special_edges_differ():
    """A fiber can reorder edge names, so the lift of a NORMAL monomial may
    end in the domain's designated edge and needs a fresh CK2 pass."""
    cod = Graph.build(["w", "s1", "s2"],
                      [("a", "w", "s1"), ("b", "w", "s2")])
    dom = Graph.build(["w0", "s1_0", "s2_0"],
                      [("zz", "w0", "s1_0"), ("aa", "w0", "s2_0")])
    h = GraphHom(dom, cod, {"w0": "w", "s1_0": "s1", "s2_0": "s2"},
                 {"zz": "a", "aa": "b"})
    assert classify_hom(h).category == "CRTBPOG"
    bb_star = _mono(cod, LMonomial(Path.of(["b"]), Path.of(["b"])))
    assert len(bb_star.terms) == 1  # normal upstairs: b is not special at w
    pulled = l_pullback(h, bb_star)
    expect = (_mono(dom, vertex_monomial("w0"))
              - _mono(dom, LMonomial(Path.of(["zz"]), Path.of(["zz"]))))
    assert pulled == expect


def test_word_reduction_mixed_letters():
    # e* e e*  ->  e*;  e e* e -> e
    assert normal_form(EDGE, ["e*", "e", "e*"]) == \
        _mono(EDGE, LMonomial(Path.at("w"), Path.of(["e"])))
    assert normal_form(EDGE, ["e", "e*", "e"]) == \
        _mono(EDGE, LMonomial(Path.of(["e"]), Path.at("w")))


def test_pullback_refuses_non_crtbpog():
    h = GraphHom.inclusion(Graph(["w"]), EDGE)
    with pytest.raises(PreconditionError) as err:
        l_pullback(h, _mono(EDGE, vertex_monomial("w")))
    assert err.value.flag == "CRTBPOG"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_descent_identities_and_kerver(seed):
    h = random_crtbpog_hom(case_rng(seed, 35))
    verify_descent(h)
    image = h.vertex_image()
    for v in sorted(h.codomain.vertices):
        elem = l_pullback(h, _mono(h.codomain, vertex_monomial(v)))
        assert elem.is_zero() == (v not in image)


def test_pullback_unital():
    h = fold_hom(2, EDGE)
    assert l_pullback(h, l_unit(EDGE)) == l_unit(h.domain)


def test_graded_ideal_generators_examples():
    assert graded_ideal_generators(EDGE, set()).is_empty()
    allv = graded_ideal_generators(EDGE, {"v", "w"})
    assert allv.vertex_gens == {"v", "w"}
    iso = union_graph(EDGE, Graph(["u"]))
    pres = graded_ideal_generators(iso, {"u"})
    assert pres.vertex_gens == {"u"} and pres.breaking_gens == ()


def test_graded_ideal_generators_breaking_schema_on_tailed_graph():
    """The presentation itself is combinatorial, so a tailed graph exercises
    the breaking-vertex generators that finite graphs never produce."""
    g = Graph(["v", "h", "w"], ["e"], {"e": "v"}, {"e": "w"},
              omega_tails=[("v", "h")])
    pres = graded_ideal_generators(g, {"h"})
    assert pres.vertex_gens == {"h"}
    assert pres.breaking_gens == (("v", ("e",)),)


def test_graded_ideal_generators_rejects_bad_sets():
    with pytest.raises(GraphError):
        graded_ideal_generators(EDGE, {"v"})   # not hereditary
    with pytest.raises(GraphError):
        graded_ideal_generators(EDGE, {"w"})   # hereditary but not saturated


def test_ker_generators_identity_and_inclusion():
    assert ker_generators(GraphHom.identity(EDGE)).is_empty()
    sup = union_graph(EDGE, Graph(["u"]))
    pres = ker_generators(GraphHom.inclusion(EDGE, sup))
    assert pres.vertex_gens == {"u"}
    fold = fold_hom(2, EDGE)
    assert ker_generators(fold).is_empty()


def test_ker_generators_refuses_non_crtbpog():
    with pytest.raises(PreconditionError):
        ker_generators(GraphHom.inclusion(Graph(["w"]), EDGE))


def test_leavitt_pullback_identity_legs():
    ident = GraphHom.identity(EDGE)
    report = verify_leavitt_pullback(ident, ident, 3)
    assert report.ok


def test_leavitt_pullback_disjoint_union():
    empty = Graph(())
    f = GraphHom(empty, EDGE, {}, {})
    g = GraphHom(empty, LOOP, {}, {})
    report = verify_leavitt_pullback(f, g, 3)
    assert report.ok


def test_leavitt_pullback_three_vertex_instance():
    base = Graph.build(["v", "w"], [("e", "v", "w")])
    left = union_graph(base, Graph(["v", "w", "x"]))
    right = union_graph(base, Graph(["v", "w", "y"]))
    report = verify_leavitt_pullback(GraphHom.inclusion(base, left),
                                     GraphHom.inclusion(base, right), 4)
    assert report.ok
    assert report.kerint_ok and report.kernel_ok and report.breakarrow_ok


def test_leavitt_pullback_refuses_p1_violation():
    base = Graph(["z1", "z2"])
    cod = Graph(["c"])
    fold = GraphHom(base, cod, {"z1": "c", "z2": "c"}, {})
    ident = GraphHom.identity(base)
    with pytest.raises(PreconditionError) as err:
        verify_leavitt_pullback(fold, ident, 2)
    assert err.value.flag in ("P1", "CRTBPOG")


def test_leavitt_pullback_refuses_non_admissible_gluing():
    """Gluing a target to a source is not target bijective, so the verifier
    refuses; mixed-color monomials in that pushout would otherwise vanish
    under both injection pullbacks and break the kernel lemma."""
    e_graph = Graph.build(["v", "w"], [("e", "v", "w")])
    f_graph = Graph.build(["vp", "wp"], [("ep", "vp", "wp")])
    point = Graph(["z"])
    f = GraphHom(point, e_graph, {"z": "w"}, {})
    g = GraphHom(point, f_graph, {"z": "vp"}, {})
    with pytest.raises(PreconditionError) as err:
        verify_leavitt_pullback(f, g, 3)
    assert err.value.flag == "CRTBPOG"


def test_leavitt_pullback_over_prime_field():
    f, g = leavitt_union_instance(case_rng(2, 36))
    report = verify_leavitt_pullback(f, g, 3, field=PrimeField(13))
    assert report.ok


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_leavitt_pullback_random_unions(seed):
    f, g = leavitt_union_instance(case_rng(seed, 37))
    report = verify_leavitt_pullback(f, g, 3)
    assert report.ok, report.failures


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6))
def test_leavitt_pullback_quotient_instances(seed):
    from quivpush.randgen import admpush_instance
    f, g = admpush_instance(case_rng(seed, 38))
    report = verify_leavitt_pullback(f, g, 3)
    assert report.ok, report.failures
