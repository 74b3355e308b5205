import pytest

import raagqi.flatspace as FS
import raagqi.words as W
from raagqi.graphs import DefiningGraph, GraphError, star_graph
from raagqi.words import flat_key, identity, normal_form, singular_key


def test_radius_validation(pentagon):
    with pytest.raises(GraphError):
        FS.build_ball(pentagon, 1)
    with pytest.raises(GraphError):
        FS.build_ball(DefiningGraph(["a", "b"], []), 2)


def test_fundamental_domain_counts(pentagon):
    b = FS.build_ball(pentagon, 2)
    st = b.stats()
    assert st["vertices"] == 11
    assert st["vertices_by_type"] == {"cone": 1, "singular": 5, "flat": 5}
    assert st["squares"] == 5
    assert st["complete_radius"] == 0


def test_ball_determinism(pentagon):
    b1 = FS.build_ball(pentagon, 5)
    b2 = FS.build_ball(pentagon, 5)
    assert b1.vkeys == b2.vkeys
    assert (b1.edge_lo == b2.edge_lo).all() and (b1.edge_hi == b2.edge_hi).all()
    assert (b1.squares == b2.squares).all()


def test_ball_structure_pentagon(pentagon_ball6):
    rep = FS.verify_ball_structure(pentagon_ball6)
    assert rep["passed"], rep


def test_cone_link_is_barycentric_subdivision(pentagon):
    b = FS.build_ball(pentagon, 4)
    for ci in b.vertices_by_kind("cone"):
        nodes, edges = b.cone_link_graph(ci)
        sing = {i for i in nodes if b.kind_of(i) == "singular"}
        flat = {i for i in nodes if b.kind_of(i) == "flat"}
        assert len(sing) == 5 and len(flat) == 5
        # every link edge joins a singular of kind u to a flat containing u
        for a, bb in edges:
            s, f = (a, bb) if b.kind_of(a) == "singular" else (bb, a)
            assert b.gens_of(s)[0] in b.gens_of(f)
        # each flat meets exactly its two endpoint singulars
        deg = {f: 0 for f in flat}
        for a, bb in edges:
            f = a if b.kind_of(a) == "flat" else bb
            deg[f] += 1
        assert set(deg.values()) == {2}


def test_key_lookup_roundtrip(pentagon_ball6, pentagon):
    e = identity(pentagon)
    k = flat_key(e, "a", "b")
    i = pentagon_ball6.find(k)
    assert i >= 0
    assert pentagon_ball6.key_of(i) == k
    missing = flat_key(normal_form(pentagon, "a b c a b c"), "d", "e")
    assert pentagon_ball6.find(missing) == -1 or missing in pentagon_ball6


def test_classify_turn(pentagon, pentagon_ball6):
    b = pentagon_ball6
    e = identity(pentagon)
    fab = flat_key(e, "a", "b")
    fae = flat_key(e, "a", "e")
    fbc = flat_key(e, "b", "c")
    sa = singular_key(e, "a")
    sb = singular_key(e, "b")
    bga = singular_key(normal_form(pentagon, "b"), "a")
    fbae = flat_key(normal_form(pentagon, "b"), "a", "e")

    # two distinct full edges through one singular vertex: same stabilizer
    k13 = star_graph("b", ["a", "c", "d"])
    bk = FS.build_ball(k13, 2)
    e13 = identity(k13)
    s13 = singular_key(e13, "b")
    assert (
        FS.classify_turn(
            bk,
            (flat_key(e13, "a", "b"), s13, flat_key(e13, "b", "c")),
            (flat_key(e13, "b", "c"), s13, flat_key(e13, "b", "d")),
        )
        == "illegal"
    )
    # the reversed copy of one full edge is rejected
    with pytest.raises(GraphError):
        FS.classify_turn(b, (fae, sa, fab), (fab, sa, fae))
    # different kinds at the shared flat: trivial intersection
    assert FS.classify_turn(b, (fae, sa, fab), (fab, sb, fbc)) == "legal"
    # translate along the commuting direction: equal stabilizers, illegal
    assert FS.classify_turn(b, (fae, sa, fab), (fab, bga, fbae)) == "illegal"
    with pytest.raises(GraphError):
        FS.classify_turn(b, (fae, sa, fab), (fbc, sb, flat_key(e, "c", "d")))


def test_full_edge_path_and_coarse_length(pentagon, pentagon_ball6):
    e = identity(pentagon)
    path = FS.FullEdgePath([flat_key(e, "a", "b"), singular_key(e, "b"), flat_key(e, "b", "c")])
    assert FS.coarse_length(pentagon_ball6, path) == 1

    stalling = FS.FullEdgePath(
        [
            flat_key(e, "a", "e"),
            singular_key(e, "a"),
            flat_key(e, "a", "b"),
            singular_key(normal_form(pentagon, "b"), "a"),
            flat_key(normal_form(pentagon, "b"), "a", "e"),
        ]
    )
    assert [t for t in stalling.turns()] == ["illegal"]
    assert FS.coarse_length(pentagon_ball6, stalling) == 1

    two_turns = FS.FullEdgePath(
        [
            flat_key(e, "a", "b"),
            singular_key(e, "b"),
            flat_key(e, "b", "c"),
            singular_key(e, "c"),
            flat_key(e, "c", "d"),
        ]
    )
    assert FS.coarse_length(pentagon_ball6, two_turns) == 2
    with pytest.raises(GraphError):
        FS.FullEdgePath([flat_key(e, "a", "b"), singular_key(e, "c"), flat_key(e, "c", "d")])


def test_coarse_distance(pentagon, pentagon_ball6):
    e = identity(pentagon)
    fab = flat_key(e, "a", "b")
    fae = flat_key(e, "a", "e")
    fcd = flat_key(e, "c", "d")
    assert FS.coarse_distance(pentagon_ball6, fab, fab).value == 0
    d = FS.coarse_distance(pentagon_ball6, fab, fae)
    assert d.value == 1 and d.certified
    d = FS.coarse_distance(pentagon_ball6, fab, fcd)
    assert d.value == 2 and d.certified


def test_coarse_distance_metric_properties(pentagon, pentagon_ball6):
    e = identity(pentagon)
    flats = [flat_key(normal_form(pentagon, w), u, v)
             for w in ("", "a", "b c", "c")
             for (u, v) in (("a", "b"), ("c", "d"), ("a", "e"))]
    flats = sorted(set(flats))
    dist = {}
    for f1 in flats:
        for f2 in flats:
            r = FS.coarse_distance(pentagon_ball6, f1, f2)
            assert r.certified
            dist[(f1, f2)] = r.value
    for f1 in flats:
        for f2 in flats:
            assert dist[(f1, f2)] == dist[(f2, f1)]
            for f3 in flats:
                assert dist[(f1, f3)] <= dist[(f1, f2)] + dist[(f2, f3)]


def test_same_parallel_set_examples(pentagon, pentagon_ball6):
    e = identity(pentagon)
    fab = flat_key(e, "a", "b")
    fae = flat_key(e, "a", "e")
    fcd = flat_key(e, "c", "d")
    assert FS.same_parallel_set(pentagon_ball6, fab, fae)
    assert not FS.same_parallel_set(pentagon_ball6, fab, fcd)
    assert not FS.same_parallel_set(pentagon_ball6, fab, fab)
    # a^5 <a,e> is the same coset as <a,e>
    assert flat_key(normal_form(pentagon, "a^5"), "a", "e") == fae


def test_same_parallel_set_agrees_with_stalling_bfs(pentagon):
    ball = FS.build_ball(pentagon, 8)
    e = identity(pentagon)
    start = flat_key(e, "a", "b")
    reach = FS.stalling_reachable_flats(ball, start)
    # BFS reachability implies the algebraic relation
    for f in reach:
        if f != start:
            assert FS.same_parallel_set(ball, start, f)
    # and conversely for translates of bounded size
    for w in ("", "a", "b", "a b", "b^2", "a^-1 b", "a^3"):
        g = normal_form(pentagon, w)
        for (u, v) in pentagon.edges:
            f = flat_key(g, u, v)
            if f == start or ball.find(f) < 0:
                continue
            if FS.same_parallel_set(ball, start, f) and len(f.rep) <= 2:
                assert f in reach, f.label()


def test_parallel_set_slice(pentagon):
    b2 = FS.build_ball(pentagon, 2)
    e = identity(pentagon)
    sl = FS.parallel_set_slice(b2, singular_key(e, "a"))
    assert {k.label() for k in sl} == {"flat[1]<a,b>", "flat[1]<a,e>"}


def test_parallel_set_slice_translation_invariance(pentagon):
    ball = FS.build_ball(pentagon, 8)
    e = identity(pentagon)
    sa = singular_key(e, "a")
    sl = set(FS.parallel_set_slice(ball, sa))
    a = W.generator(pentagon, "a")
    for k in (1, 2, 3):
        t = a ** k
        for f in sl:
            tf = flat_key(t * f.rep, *f.gens)
            if ball.find(tf) >= 0:
                assert tf in sl


def test_parallel_set_separates_ball(pentagon, pentagon_ball6):
    # removing the closed star of a parallel-set slice disconnects the
    # remaining cones into at least two parts (truncated separation)
    ball = pentagon_ball6
    e = identity(pentagon)
    sa = singular_key(e, "a")
    # slice cells: flats of the parallel set plus their whole stars
    slice_flats = {ball.find(f) for f in FS.parallel_set_slice(ball, sa)}
    slice_flats.discard(-1)
    removed = set(slice_flats)
    for fi in list(slice_flats):
        for eid, other in ball.incident_edges(fi):
            removed.add(other)
    comp = {}
    nxt = 0
    for start in range(ball.nvertices):
        if start in removed or start in comp:
            continue
        nxt += 1
        comp[start] = nxt
        stack = [start]
        while stack:
            x = stack.pop()
            for _, y in ball.incident_edges(x):
                if y not in removed and y not in comp:
                    comp[y] = nxt
                    stack.append(y)
    cone_comps = {comp[i] for i in ball.vertices_by_kind("cone") if i in comp}
    assert len(cone_comps) >= 2


def test_classify_parallel_intersection(pentagon):
    assert FS.classify_parallel_intersection(pentagon, "a", "a") == "equal"
    assert FS.classify_parallel_intersection(pentagon, "a", "b") == "standard_flat"
    assert FS.classify_parallel_intersection(pentagon, "a", "c") == "small"
    with pytest.raises(GraphError):
        FS.classify_parallel_intersection(pentagon, "a", "zz")


def test_quarter_plane_case(pentagon):
    edge = DefiningGraph(["u", "w"], [("u", "w")])
    assert FS.quarter_plane_case(edge, {"u"}, {"w"}) == "case1"
    assert FS.quarter_plane_case(pentagon, {"a"}, {"b"}) == "case3"
    k13 = star_graph("b", ["a", "c", "d"])
    assert FS.quarter_plane_case(k13, {"a", "c", "d"}, {"b"}) == "case2"
    with pytest.raises(GraphError):
        FS.quarter_plane_case(pentagon, {"a"}, {"c"})  # not a join
    with pytest.raises(GraphError):
        FS.quarter_plane_case(pentagon, set(), {"b"})


def test_interior_flag(pentagon_ball6):
    b = pentagon_ball6
    ints = [i for i in range(b.nvertices) if b.is_interior(i) and b.kind_of(i) != "cone"]
    assert ints
    for i in ints:
        assert len(b.rep_of(i)) == 0
