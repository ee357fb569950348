import pytest
from hypothesis import given, settings, strategies as st

from quivpush.graph import (Graph, GraphError, IncompatibleOverlap, Path,
                            classify_vertices, extended_graph,
                            intersection_graph, is_subgraph, paths_up_to,
                            union_graph, validate_graph, longest_path_length,
                            is_acyclic)
from quivpush.randgen import case_rng, random_graph


def test_validate_single_vertex_ok():
    assert validate_graph(Graph(["v"])) == []


def test_validate_dangling_source():
    g = Graph(["w"], ["e"], {"e": "v"}, {"e": "w"})
    problems = validate_graph(g)
    assert any("dangling source" in p for p in problems)


def test_validate_dangling_tail():
    g = Graph(["v"], omega_tails=[("v", "w")])
    problems = validate_graph(g)
    assert any("dangling target" in p for p in problems)


def test_classify_loop():
    g = Graph.build(["u"], [("l", "u", "u")])
    classes = classify_vertices(g)
    assert classes.regular == {"u"}
    assert not classes.sinks and not classes.sources


def test_classify_single_edge():
    g = Graph.build(["v", "w"], [("e", "v", "w")])
    classes = classify_vertices(g)
    assert classes.regular == {"v"}
    assert classes.sinks == {"w"}
    assert classes.sources == {"v"}


def test_classify_omega_tail_emitter():
    g = Graph(["v", "w"], omega_tails=[("v", "w")])
    classes = classify_vertices(g)
    assert classes.infinite_emitters == {"v"}
    assert "v" not in classes.regular
    assert classes.sinks == {"w"}


def test_extended_single_edge():
    g = Graph.build(["v", "w"], [("e", "v", "w")])
    eg = extended_graph(g)
    assert eg.src["e*"] == "w" and eg.tgt["e*"] == "v"
    assert eg.ghost_of["e*"] == "e"


def test_extended_loop_ghost_is_loop():
    g = Graph.build(["u"], [("l", "u", "u")])
    eg = extended_graph(g)
    assert eg.src["l*"] == "u" and eg.tgt["l*"] == "u"


def test_extended_no_edges():
    g = Graph(["v"])
    eg = extended_graph(g)
    assert eg.edges == frozenset()
    assert eg.vertices == {"v"}


def test_extended_rejects_tails():
    with pytest.raises(GraphError):
        extended_graph(Graph(["v"], omega_tails=[("v", "v")]))


def test_paths_single_vertex():
    assert paths_up_to(Graph(["v"]), 5) == [Path.at("v")]


def test_paths_loop():
    g = Graph.build(["u"], [("l", "u", "u")])
    paths = paths_up_to(g, 3)
    assert len(paths) == 4
    assert Path.of(["l", "l", "l"]) in paths


def test_paths_single_edge():
    g = Graph.build(["v", "w"], [("e", "v", "w")])
    paths = paths_up_to(g, 2)
    assert len(paths) == 3
    assert {str(p) for p in paths} == {"v", "w", "e"}


def _matrix_power_count(g, n):
    """Independent oracle: |V| + sum over k<=n of entries of A^k."""
    verts = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    size = len(verts)
    a = [[0] * size for _ in range(size)]
    for e in g.edges:
        a[idx[g.src[e]]][idx[g.tgt[e]]] += 1
    total = size
    power = [row[:] for row in a]
    for _ in range(n):
        total += sum(sum(row) for row in power)
        power = [[sum(power[i][k] * a[k][j] for k in range(size))
                  for j in range(size)] for i in range(size)]
    return total


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_path_count_matches_matrix_power(seed, n):
    g = random_graph(case_rng(seed, 0), max_v=4, max_e=5)
    assert len(paths_up_to(g, n)) == _matrix_power_count(g, n)


def test_union_intersection_idempotent():
    g = Graph.build(["v", "w"], [("e", "v", "w")], [("v", "w")])
    assert union_graph(g, g) == g
    assert intersection_graph(g, g) == g


def test_union_disjoint():
    f = Graph.build(["a"], [])
    g = Graph.build(["b"], [])
    assert intersection_graph(f, g) == Graph(())
    u = union_graph(f, g)
    assert u.vertices == {"a", "b"}


def test_union_intersection_spec_example():
    f = Graph.build(["v", "w"], [("e", "v", "w")])
    g = Graph(["w"])
    inter = intersection_graph(f, g)
    assert inter == Graph(["w"])
    assert union_graph(f, g) == f


def test_union_rejects_incompatible_overlap():
    f = Graph.build(["v", "w"], [("e", "v", "w")])
    g = Graph.build(["v", "w"], [("e", "w", "v")])
    with pytest.raises(IncompatibleOverlap):
        union_graph(f, g)
    with pytest.raises(IncompatibleOverlap):
        intersection_graph(f, g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_union_intersection_subgraph_invariants(seed):
    rng = case_rng(seed, 1)
    base = random_graph(rng, max_v=5, max_e=6, tails=True)
    keep_f = {v for v in base.vertices if rng.random() < 0.8}
    keep_g = {v for v in base.vertices if rng.random() < 0.8}
    from quivpush.randgen import restrict_graph
    f = restrict_graph(base, keep_f)
    g = restrict_graph(base, keep_g)
    u = union_graph(f, g)
    inter = intersection_graph(f, g)
    assert validate_graph(u) == []
    assert validate_graph(inter) == []
    assert is_subgraph(inter, f) and is_subgraph(inter, g)
    assert is_subgraph(f, u) and is_subgraph(g, u)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_extended_functorial_for_inclusions(seed):
    rng = case_rng(seed, 2)
    sup = random_graph(rng, max_v=5, max_e=6)
    from quivpush.randgen import restrict_graph
    sub = restrict_graph(sup, {v for v in sup.vertices if rng.random() < 0.7})
    assert is_subgraph(extended_graph(sub), extended_graph(sup))


def test_longest_path_and_acyclicity():
    g = Graph.build(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")])
    assert is_acyclic(g)
    assert longest_path_length(g) == 2
    loop = Graph.build(["u"], [("l", "u", "u")])
    assert not is_acyclic(loop)
