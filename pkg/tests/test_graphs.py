import math

import pytest

import raagqi.graphs as G
from raagqi.graphs import DefiningGraph, GraphError

from conftest import corpus, wedge_of_cycles


def test_validation_rejects_bad_input():
    with pytest.raises(GraphError):
        DefiningGraph(["a", "a"], [])
    with pytest.raises(GraphError):
        DefiningGraph(["a", "b"], [("a", "a")])
    with pytest.raises(GraphError):
        DefiningGraph(["a", "b"], [("a", "c")])


def test_edges_are_deduplicated_and_sorted():
    g = DefiningGraph(["b", "a"], [("b", "a"), ("a", "b")])
    assert g.edges == (("a", "b"),)


def test_pentagon_is_atomic(pentagon):
    rep = G.check_atomic(pentagon)
    assert rep.is_atomic
    assert rep.failures == ()


def test_path_fails_valence():
    g = G.path_graph(["a", "b", "c"])
    rep = G.check_atomic(g)
    assert not rep.is_atomic
    assert {"kind": "vertex_of_valence_lt_2", "vertex": "a"} in [dict(f) for f in rep.failures]


def test_empty_graph_is_an_error():
    with pytest.raises(GraphError):
        G.check_atomic(DefiningGraph([], []))


def test_doubled_pentagon_has_separating_star(pentagon):
    dp = G.double_along_closed_star(pentagon, "a")
    assert len(dp.vertices) == 7
    assert len(dp.edges) == 8
    rep = G.check_atomic(dp)
    assert not rep.is_atomic
    kinds = {f["kind"] for f in rep.failures}
    assert kinds == {"separating_closed_star"}
    assert any(f["kind"] == "separating_closed_star" and f["vertex"] == "a" for f in rep.failures)


def test_double_counts_match_star_size(pentagon):
    for v in pentagon.vertices:
        star_verts, star_edges = pentagon.closed_star(v)
        d = G.double_along_closed_star(pentagon, v)
        assert len(d.vertices) == 2 * 5 - len(star_verts)
        assert len(d.edges) == 2 * 5 - len(star_edges)


def test_star_graph_doubles_to_itself():
    g = G.star_graph("b", ["a", "c", "d"])
    assert G.isomorphism(G.double_along_closed_star(g, "b"), g) is not None


def test_glue_k():
    p = G.pentagon()
    g2 = G.glue_k_copies_along_star(p, "a", 2)
    assert G.isomorphism(g2, G.double_along_closed_star(p, "a")) is not None
    g3 = G.glue_k_copies_along_star(p, "a", 3)
    assert len(g3.vertices) == 9
    assert len(g3.edges) == 11
    for k in (2, 3, 4):
        gk = G.glue_k_copies_along_star(p, "a", k)
        rep = G.check_atomic(gk)
        assert not rep.is_atomic
        assert any(f["kind"] == "separating_closed_star" for f in rep.failures)
    with pytest.raises(GraphError):
        G.glue_k_copies_along_star(p, "a", 1)


def test_girth():
    assert G.girth(G.pentagon()) == 5
    tree = G.path_graph(["a", "b", "c", "d"])
    assert G.girth(tree) == math.inf
    assert G.girth(G.dodecahedron()) == 5
    sq = G.cycle_graph(4)
    assert G.girth(sq) == 4


def test_girth_matches_cycle_enumeration():
    from raagqi.cycles import enumerate_cycles

    for g in corpus(12, seed=7) + [G.dodecahedron()]:
        cyc = enumerate_cycles(g, len(g.vertices))
        expect = min((len(c) for c in cyc), default=math.inf)
        assert G.girth(g) == expect


def test_orthogonal_complement(pentagon):
    assert G.orthogonal_complement(pentagon, {"a"}) == {"b", "e"}
    assert G.orthogonal_complement(pentagon, {"a", "c"}) == {"b"}
    assert G.orthogonal_complement(pentagon, {"a", "b"}) == set()
    with pytest.raises(GraphError):
        G.orthogonal_complement(pentagon, {"zz"})


def test_orthogonal_complement_antitone(pentagon):
    import itertools

    vs = pentagon.vertices
    for r in (1, 2):
        for sub in itertools.combinations(vs, r):
            for bigger in itertools.combinations(vs, r + 1):
                if set(sub) <= set(bigger):
                    assert G.orthogonal_complement(pentagon, bigger) <= G.orthogonal_complement(
                        pentagon, sub
                    )


def test_cut_vertices(pentagon, dodeca_double):
    assert G.cut_vertices(pentagon) == set()
    w = wedge_of_cycles(5, 5)
    assert G.cut_vertices(w) == {"p0"}
    assert G.cut_vertices(dodeca_double) == set()
    with pytest.raises(GraphError):
        G.cut_vertices(DefiningGraph(["a", "b"], []))


def test_atomic_graphs_have_no_cut_vertices_or_separating_closed_edges():
    # consequence asserted over every atomic graph in the corpus
    atomics = [G.pentagon(), G.dodecahedron_double()] + [
        g for g in corpus(40, seed=11) if G.check_atomic(g).is_atomic
    ]
    assert atomics
    for g in atomics:
        assert G.cut_vertices(g) == set()
        for a, b in g.edges:
            keep = [v for v in g.vertices if v not in (a, b)]
            if not keep:
                continue
            seen = {keep[0]}
            stack = [keep[0]]
            while stack:
                x = stack.pop()
                for u in g.neighbors(x):
                    if u in keep and u not in seen and x in keep:
                        seen.add(u)
                        stack.append(u)
            assert len(seen) == len(keep), "separating closed edge in an atomic graph"


def test_isomorphism_witness_and_count(pentagon):
    relab = DefiningGraph(
        ["x1", "x2", "x3", "x4", "x5"],
        [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x5"), ("x5", "x1")],
    )
    wit = G.isomorphism(pentagon, relab)
    assert wit is not None
    assert G.is_isomorphism(pentagon, relab, wit)
    assert G.isomorphism(pentagon, G.cycle_graph(6)) is None
    assert G.count_isomorphisms(pentagon, relab) == 10


def test_automorphism_orders(pentagon, dodeca):
    assert G.automorphism_group_order(pentagon) == 10
    assert G.automorphism_group_order(DefiningGraph(["a", "b"], [("a", "b")])) == 2
    assert G.automorphism_group_order(dodeca) == 120


def test_isomorphism_is_an_equivalence():
    gs = corpus(8, seed=3)
    for g in gs:
        wit = G.isomorphism(g, g)
        assert wit is not None and G.is_isomorphism(g, g, wit)
    g1, g2 = gs[0], gs[1]
    w12 = G.isomorphism(g1, g2)
    if w12 is not None:
        w21 = G.isomorphism(g2, g1)
        assert w21 is not None
    # composition of witnesses is a witness
    relab = DefiningGraph([v + "_r" for v in g1.vertices], [(a + "_r", b + "_r") for a, b in g1.edges])
    w1 = G.isomorphism(g1, relab)
    w2 = G.isomorphism(relab, g1)
    comp = {v: w2[w1[v]] for v in g1.vertices}
    assert G.is_isomorphism(g1, g1, comp)


def test_dodecahedron_double(dodeca_double):
    assert len(dodeca_double.vertices) == 35
    assert len(dodeca_double.edges) == 55
    assert G.girth(dodeca_double) == 5
    assert G.check_atomic(dodeca_double).is_atomic


def test_json_round_trip(pentagon):
    text = pentagon.to_json()
    again = DefiningGraph.from_json(text)
    assert again == pentagon
    assert again.to_json() == text  # byte stable
    with pytest.raises(GraphError) as err:
        DefiningGraph.from_json("{bad")
    assert "line 1" in str(err.value)


def test_dot_output(pentagon):
    dot = pentagon.to_dot()
    assert dot.startswith("graph")
    assert '"a" -- "b";' in dot
