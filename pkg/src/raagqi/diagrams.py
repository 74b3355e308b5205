"""Dual disk diagrams of full-edge cycles, shell counting, cuts, tautness.

A closed full-edge cycle crosses a sequence of hyperplanes; pulling those
hyperplanes back through a disk filling gives a system of chords on the
boundary circle.  No two chords cross twice, no three pairwise cross, and
the diagram is unique, so it can be built combinatorially: pair up
same-hyperplane boundary crossings without same-class interleaving, cross
two arcs exactly when their positions interleave, and read the regions off
the chord arrangement.  Regions map to vertices of the flat space (blocks);
the core is the set of regions not touching the boundary circle.
"""

from dataclasses import dataclass
from functools import cmp_to_key

from .graphs import GraphError
from .words import (
    CosetKey,
    in_special_subgroup,
    subgroup_product_factors,
)
from .flatspace import (
    same_parallel_set,
    singular_contained_in_flat,
    stabilizers_equal,
)

__all__ = [
    "FullEdgeCycle",
    "lift_cycle",
    "DiskDiagram",
    "build_diagram",
    "ShellReport",
    "shell_report",
    "find_icut",
    "find_quasicut",
    "is_taut",
    "verify_taut_diagram_lemma",
    "DEFAULT_LIFT_RADIUS",
]

DEFAULT_LIFT_RADIUS = 6


class FullEdgeCycle:
    """Closed alternating sequence f_0, s_0, f_1, s_1, ..., s_{n-1}, (f_0).

    Embedded: all flat vertices distinct and all singular vertices distinct.
    """

    def __init__(self, flats, singulars):
        flats = list(flats)
        singulars = list(singulars)
        if len(flats) != len(singulars) or len(flats) < 3:
            raise GraphError("cycle requires equal flat/singular counts, at least 3")
        for k in flats:
            if not isinstance(k, CosetKey) or k.kind != "flat":
                raise GraphError("cycle flats must be flat coset keys")
        for k in singulars:
            if not isinstance(k, CosetKey) or k.kind != "singular":
                raise GraphError("cycle singulars must be singular coset keys")
        n = len(flats)
        for i in range(n):
            if not (
                singular_contained_in_flat(singulars[i], flats[i])
                and singular_contained_in_flat(singulars[i], flats[(i + 1) % n])
            ):
                raise GraphError("cycle cells not incident at position %d" % i)
        if len(set(flats)) != n or len(set(singulars)) != n:
            raise GraphError("cycle required: repeated vertex")
        self.flats = flats
        self.singulars = singulars

    def __len__(self):
        return len(self.flats)

    def turn_legal(self, i):
        """Turn at flat i, between the full edges through s_{i-1} and s_i."""
        n = len(self.flats)
        return not stabilizers_equal(self.singulars[(i - 1) % n], self.singulars[i])

    def arc_coarse_length(self, p, q):
        """Coarse length of the forward cycle arc f_p -> f_q."""
        n = len(self.flats)
        turns = 0
        i = (p + 1) % n
        while i != q:
            if self.turn_legal(i):
                turns += 1
            i = (i + 1) % n
        return turns + 1

    def both_arcs(self, p, q):
        return self.arc_coarse_length(p, q), self.arc_coarse_length(q, p)


def lift_cycle(graph, gamma):
    """Lift an embedded cycle of the defining graph to the full-edge cycle
    through the identity fundamental domain."""
    from .cycles import EmbeddedCycle
    from .words import flat_key, identity, singular_key

    if not isinstance(gamma, EmbeddedCycle):
        gamma = EmbeddedCycle(graph, gamma)
    e = identity(graph)
    vs = gamma.vertices
    n = len(vs)
    flats = [flat_key(e, vs[i], vs[(i + 1) % n]) for i in range(n)]
    sings = [singular_key(e, vs[(i + 1) % n]) for i in range(n)]
    return FullEdgeCycle(flats, sings)


# ---------------------------------------------------------------------------
# diagram construction
# ---------------------------------------------------------------------------

@dataclass
class Region:
    face_id: int
    kind: str = "?"
    vertex: int = -1
    boundary_segment: int = -1
    sides: tuple = ()
    in_core: bool = False


@dataclass
class DiskDiagram:
    cycle: FullEdgeCycle
    arcs: list  # (pos_a, pos_b, hyperplane_root), pos_a < pos_b
    crossings: set  # pairs (arc_i, arc_j)
    regions: list
    core: list  # face ids
    region_adjacency: dict  # face id -> {face id: shared edge count}

    def core_regions(self):
        return [r for r in self.regions if r.in_core]

    def signature(self):
        """Canonical content for uniqueness comparisons."""
        return (
            tuple(self.arcs),
            tuple(sorted(self.crossings)),
            tuple(sorted((r.kind, tuple(sorted(r.sides))) for r in self.regions)),
        )

    def to_json_obj(self):
        return {
            "boundary_length": 2 * len(self.cycle),
            "arcs": [{"from": a, "to": b, "hyperplane": int(h)} for a, b, h in self.arcs],
            "crossings": sorted([list(p) for p in self.crossings]),
            "regions": [
                {"id": r.face_id, "kind": r.kind, "core": r.in_core, "sides": len(r.sides)}
                for r in self.regions
            ],
            "core_size": len(self.core),
        }


def _interleaved(a, b):
    (p1, p2), (q1, q2) = a, b
    return (p1 < q1 < p2) != (p1 < q2 < p2)


def _noncrossing_matchings(positions):
    """Perfect matchings of circle positions with no same-class crossing."""
    positions = sorted(positions)
    if not positions:
        return [[]]
    out = []
    first = positions[0]
    rest = positions[1:]
    for k, q in enumerate(rest):
        inside = rest[:k]
        outside = rest[k + 1 :]
        if len(inside) % 2:
            continue
        for mi in _noncrossing_matchings(inside):
            for mo in _noncrossing_matchings(outside):
                out.append([(first, q)] + mi + mo)
    return out


def build_diagram(ball, cycle, _matching_order=None):
    """The reduced dual disk diagram of an embedded full-edge cycle.

    Raises "insufficient radius" when the cycle's cells or their hyperplane
    data are not contained in the ball.  ``_matching_order`` permutes the
    choice order among valid same-hyperplane pairings; the output must not
    depend on it (the diagram is unique), which the tests exercise.
    """
    n = len(cycle)
    # boundary edge at position 2i: (f_i, s_i); at 2i+1: (s_i, f_{i+1})
    pos_edges = []
    for i in range(n):
        fi = ball.find(cycle.flats[i])
        si = ball.find(cycle.singulars[i])
        fj = ball.find(cycle.flats[(i + 1) % n])
        if fi < 0 or si < 0 or fj < 0:
            raise GraphError("insufficient radius: cycle cell missing from ball")
        try:
            pos_edges.append(ball.edge_id(fi, si))
            pos_edges.append(ball.edge_id(si, fj))
        except GraphError:
            raise GraphError("insufficient radius: cycle edge missing from ball") from None
    root, cross_classes = ball.hyperplanes()
    classes = [int(root[e]) for e in pos_edges]

    by_class = {}
    for p, h in enumerate(classes):
        by_class.setdefault(h, []).append(p)
    for h, ps in by_class.items():
        if len(ps) % 2:
            raise GraphError("insufficient radius: hyperplane crossed an odd number of times")

    choices = []
    for h in sorted(by_class):
        ms = _noncrossing_matchings(by_class[h])
        if not ms:
            raise GraphError("no valid arc pairing for a hyperplane")
        choices.append((h, ms))
    if _matching_order is not None:
        import random

        rng = random.Random(_matching_order)
        rng.shuffle(choices)
        choices = [(h, rng.sample(ms, len(ms))) for h, ms in choices]

    def consistent(arcs):
        for i in range(len(arcs)):
            for j in range(i + 1, len(arcs)):
                if _interleaved(arcs[i][:2], arcs[j][:2]):
                    if arcs[i][2] == arcs[j][2]:
                        return False
                    pair = (min(arcs[i][2], arcs[j][2]), max(arcs[i][2], arcs[j][2]))
                    if pair not in cross_classes:
                        return False
        return True

    def assemble(k, acc):
        if k == len(choices):
            return list(acc)
        h, ms = choices[k]
        for m in ms:
            trial = acc + [(a, b, h) for a, b in m]
            if consistent(trial):
                got = assemble(k + 1, trial)
                if got is not None:
                    return got
        return None

    arcs = assemble(0, [])
    if arcs is None:
        raise GraphError("no consistent dual diagram pairing (insufficient radius?)")
    arcs.sort()
    crossings = set()
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if _interleaved(arcs[i][:2], arcs[j][:2]):
                crossings.add((i, j))
    for i, j in crossings:
        for k in range(len(arcs)):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in crossings and (min(j, k), max(j, k)) in crossings:
                raise GraphError("three pairwise-crossing arcs: not a flat-space diagram")

    faces, face_edges, seg_face, edge_faces, face_nodes = _arrangement_faces(
        2 * n, arcs, crossings
    )
    regions, core, adjacency = _type_regions(
        ball, cycle, arcs, faces, face_edges, seg_face, edge_faces, root
    )
    diagram = DiskDiagram(
        cycle=cycle,
        arcs=arcs,
        crossings=crossings,
        regions=regions,
        core=core,
        region_adjacency=adjacency,
    )
    _check_diagram_observations(ball, diagram, face_nodes)
    return diagram


def _arrangement_faces(nb, arcs, crossings):
    """Faces of the chord arrangement on a circle with nb boundary points.

    Edges are ("seg", k) circle segments or ("arc", arc_id, step) chord
    pieces.  Returns inner face ids, their edge label walks, the segment to
    face map, the edge label to faces map, and the node walks per face.
    """
    per_arc = {i: [] for i in range(len(arcs))}
    for i, j in crossings:
        per_arc[i].append(j)
        per_arc[j].append(i)

    def inside(chord, pos):
        a, b = arcs[chord][:2]
        return a < pos < b

    def order_on(i):
        # chords crossing arc i are pairwise disjoint (no arc triangles), so
        # "y lies beyond x as seen from the start of i" is a total order
        a1 = arcs[i][0]

        def cmp(x, y):
            if x == y:
                return 0
            return -1 if inside(x, arcs[y][0]) != inside(x, a1) else 1

        return sorted(per_arc[i], key=cmp_to_key(cmp))

    arc_nodes = {}
    for i in range(len(arcs)):
        nodes = [("b", arcs[i][0])]
        for j in order_on(i):
            nodes.append(("x", min(i, j), max(i, j)))
        nodes.append(("b", arcs[i][1]))
        arc_nodes[i] = nodes

    adj = {}

    def add_edge(u, v, label):
        adj.setdefault(u, []).append((v, label))
        adj.setdefault(v, []).append((u, label))

    for k in range(nb):
        add_edge(("b", k), ("b", (k + 1) % nb), ("seg", k))
    for i, nodes in arc_nodes.items():
        for t in range(len(nodes) - 1):
            add_edge(nodes[t], nodes[t + 1], ("arc", i, t))

    def anchor(u, v, lab):
        # boundary position that the ray u -> v points toward
        if lab[0] == "seg":
            return v[1]
        i = lab[1]
        nodes = arc_nodes[i]
        ui, vi = nodes.index(u), nodes.index(v)
        return arcs[i][1] if vi > ui else arcs[i][0]

    rotations = {}
    for u, nbrs in adj.items():
        if u[0] == "b":
            k = u[1]
            ordered = []
            for v, lab in nbrs:
                if lab[0] == "seg":
                    rank = 0 if v == ("b", (k + 1) % nb) else 2
                else:
                    rank = 1
                ordered.append((rank, v, lab))
            ordered.sort(key=lambda t: t[0])
            rotations[u] = [(v, lab) for _, v, lab in ordered]
        else:
            ks = sorted(((anchor(u, v, lab), v, lab) for v, lab in nbrs))
            rotations[u] = [(v, lab) for _, v, lab in ks]

    next_he = {}
    for u, nbrs in adj.items():
        for v, lab in nbrs:
            rot = rotations[v]
            idx = rot.index((u, lab))
            w, lab2 = rot[(idx - 1) % len(rot)]
            next_he[(u, v, lab)] = (v, w, lab2)

    faces = []
    face_of_he = {}
    for he in list(next_he):
        if he in face_of_he:
            continue
        fid = len(faces)
        walk = []
        cur = he
        while cur not in face_of_he:
            face_of_he[cur] = fid
            walk.append(cur)
            cur = next_he[cur]
        if cur != he:
            raise GraphError("face tracing failed to close")
        faces.append(walk)

    nverts = len(adj)
    nedges = sum(len(x) for x in adj.values()) // 2
    if nverts - nedges + len(faces) != 2:
        raise GraphError("arrangement failed the Euler check")

    outer = face_of_he[(("b", 1 % nb), ("b", 0), ("seg", 0))]
    seg_face = {}
    edge_faces = {}
    face_edges = {}
    face_nodes = {}
    for fid, walk in enumerate(faces):
        if fid == outer:
            continue
        labs = [lab for _, _, lab in walk]
        face_edges[fid] = labs
        face_nodes[fid] = [u for u, _, _ in walk]
        for lab in labs:
            edge_faces.setdefault(lab, []).append(fid)
            if lab[0] == "seg":
                if lab[1] in seg_face:
                    raise GraphError("cycle required: a region meets the boundary twice")
                seg_face[lab[1]] = fid
    inner = [fid for fid in range(len(faces)) if fid != outer]
    return inner, face_edges, seg_face, edge_faces, face_nodes


def _type_regions(ball, cycle, arcs, faces, face_edges, seg_face, edge_faces, root):
    n = len(cycle)
    nb = 2 * n
    # boundary faces carry the vertex of their boundary segment: between
    # crossings k and k+1 the boundary runs through s_i (k = 2i) or f_{i+1}
    vertex_of = {}
    for k in range(nb):
        fid = seg_face.get(k)
        if fid is None:
            raise GraphError("boundary segment lost its region")
        i, odd = divmod(k, 2)
        key = cycle.singulars[i] if not odd else cycle.flats[(i + 1) % n]
        vi = ball.find(key)
        if fid in vertex_of and vertex_of[fid] != vi:
            raise GraphError("cycle required: boundary region is not a single block")
        vertex_of[fid] = vi

    arc_class = {i: arcs[i][2] for i in range(len(arcs))}

    from collections import deque

    pending = deque(fid for fid in faces if fid in vertex_of)
    while pending:
        fid = pending.popleft()
        x = vertex_of[fid]
        for lab in face_edges[fid]:
            if lab[0] != "arc":
                continue
            both = edge_faces[lab]
            if len(both) != 2:
                continue
            other = both[0] if both[1] == fid else both[1]
            y = _block_across(ball, x, arc_class[lab[1]], root)
            if other in vertex_of:
                if vertex_of[other] != y:
                    raise GraphError("region propagation conflict: diagram is inconsistent")
            else:
                vertex_of[other] = y
                pending.append(other)

    regions = []
    adjacency = {}
    core = []
    for fid in faces:
        if fid not in vertex_of:
            raise GraphError("region not reached by propagation")
        vi = vertex_of[fid]
        segs = [lab[1] for lab in face_edges[fid] if lab[0] == "seg"]
        in_core = not segs
        regions.append(
            Region(
                face_id=fid,
                kind=ball.kind_of(vi),
                vertex=vi,
                boundary_segment=segs[0] if segs else -1,
                sides=tuple(face_edges[fid]),
                in_core=in_core,
            )
        )
        if in_core:
            core.append(fid)
    for lab, fs in edge_faces.items():
        if lab[0] == "arc" and len(fs) == 2:
            a, b = fs
            adjacency.setdefault(a, {}).setdefault(b, 0)
            adjacency.setdefault(b, {}).setdefault(a, 0)
            adjacency[a][b] += 1
            adjacency[b][a] += 1

    if not core:
        raise GraphError("empty core: the boundary is not an embedded cycle")
    return regions, core, adjacency


def _block_across(ball, x, h, root):
    """The unique ball vertex adjacent to x through an edge of hyperplane
    class h."""
    hits = {other for eid, other in ball.incident_edges(x) if int(root[eid]) == h}
    if not hits:
        raise GraphError("insufficient radius: hyperplane missing at a region vertex")
    if len(hits) != 1:
        raise GraphError("hyperplane crosses a block star more than once")
    return hits.pop()


def _check_diagram_observations(ball, diagram, face_nodes):
    """Square-complex structure transported to the diagram: around every arc
    crossing sit one cone, one flat and two singular regions; every corner
    region is flat; cone regions are interior."""
    by_face = {r.face_id: r for r in diagram.regions}
    node_faces = {}
    for fid, nodes in face_nodes.items():
        for u in nodes:
            if u[0] == "x":
                node_faces.setdefault(u, set()).add(fid)
    for u, fs in node_faces.items():
        if len(fs) != 4:
            continue  # a crossing with the outer face around it cannot occur
        kinds = sorted(by_face[f].kind for f in fs)
        if kinds != ["cone", "flat", "singular", "singular"]:
            raise GraphError("crossing regions are not cone+flat+two singulars")
    for r in diagram.regions:
        if r.in_core:
            continue
        nodes = face_nodes[r.face_id]
        ncross = sum(1 for u in nodes if u[0] == "x")
        if len(nodes) == 3 and ncross == 1 and r.kind != "flat":
            raise GraphError("corner region is not a flat region")
        if r.kind == "cone":
            raise GraphError("cone region touches the boundary")


# ---------------------------------------------------------------------------
# shells
# ---------------------------------------------------------------------------

@dataclass
class ShellRecord:
    face_id: int
    sides: int
    boundary_corners: int
    internal_edges: int
    score: int
    shell_class: str


@dataclass
class ShellReport:
    records: list
    total_score: int
    case: str
    ladder: bool

    def to_json_obj(self):
        return {
            "records": [
                {
                    "region": r.face_id,
                    "sides": r.sides,
                    "corners_on_boundary": r.boundary_corners,
                    "internal_edges": r.internal_edges,
                    "score": r.score,
                    "class": r.shell_class,
                }
                for r in self.records
            ],
            "total_score": self.total_score,
            "case": self.case,
            "ladder": self.ladder,
        }


def shell_report(diagram):
    """Per-core-region side and corner counts, the Gauss-Bonnet score
    C_i - n_i + 4, the shells alternative realized, and ladder detection."""
    core = set(diagram.core)
    if not core:
        raise GraphError("empty core")
    edge_users = {}
    for r in diagram.regions:
        if r.in_core:
            for lab in r.sides:
                edge_users.setdefault(lab, []).append(r.face_id)
    shared = {lab for lab, fs in edge_users.items() if len(fs) == 2}
    recs = []
    by_face = {r.face_id: r for r in diagram.regions}
    for fid in sorted(core):
        sides = list(by_face[fid].sides)
        m = len(sides)
        internal = sum(1 for lab in sides if lab in shared)
        corners = 0
        for t in range(m):
            if sides[t] not in shared and sides[(t + 1) % m] not in shared:
                corners += 1
        score = corners - m + 4
        cls = {0: "0-shell", 1: "1-shell", 2: "2-shell"}.get(internal, "none")
        recs.append(
            ShellRecord(
                face_id=fid,
                sides=m,
                boundary_corners=corners,
                internal_edges=internal,
                score=score,
                shell_class=cls,
            )
        )
    total = sum(r.score for r in recs)
    ones = sum(1 for r in recs if r.shell_class == "1-shell")
    twos = sum(1 for r in recs if r.shell_class == "2-shell")
    if len(recs) == 1:
        case = "single_cell"
    elif ones >= 2:
        case = "two_1shells"
    elif ones >= 1 and twos >= 2:
        case = "one_1shell_two_2shells"
    elif twos >= 4:
        case = "four_2shells"
    else:
        case = "other"
    # ladder: the core cells chain up so that P_i and P_j share an edge iff
    # |i-j| <= 1; the two chain ends are then the diagram's 1-shells
    ladder = len(recs) >= 2 and _is_ladder(diagram, core)
    return ShellReport(records=recs, total_score=total, case=case, ladder=ladder)


def _is_ladder(diagram, core):
    adj = {f: set() for f in core}
    for a, nbrs in diagram.region_adjacency.items():
        if a not in core:
            continue
        for b in nbrs:
            if b in core:
                adj[a].add(b)
    degs = sorted(len(v) for v in adj.values())
    if degs != [1, 1] + [2] * (len(core) - 2):
        return False
    start = next(f for f in core if len(adj[f]) == 1)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(core)


# ---------------------------------------------------------------------------
# cuts and tautness
# ---------------------------------------------------------------------------

def _stars(graph):
    return {v: {v} | set(graph.neighbors(v)) for v in graph.vertices}


def find_icut(ball, cycle, i):
    """An i-cut: flat vertices v, w on the cycle joined by a full-edge path
    of coarse length i while both cycle arcs have coarse length > i.

    A coarse-length-m connection between flats f, f' exists iff some walk
    t_1 .. t_m in the defining graph (consecutive entries adjacent and
    distinct, t_1 a generator of f, t_m one of f') satisfies
    rep(f)^-1 rep(f') in C(t_1) ... C(t_m), with C the star subgroups.  For
    i <= 2 the walks are a single shared generator or a single edge, so the
    search below is complete.
    """
    if i not in (1, 2):
        raise GraphError("only 1-cuts and 2-cuts are meaningful")
    if not isinstance(cycle, FullEdgeCycle):
        raise GraphError("expected a FullEdgeCycle")
    n = len(cycle)
    graph = cycle.flats[0].rep.ctx.graph
    stars = _stars(graph)
    from .words import in_subgroup_product

    for p in range(n):
        for q in range(p + 1, n):
            a1, a2 = cycle.both_arcs(p, q)
            if not (a1 > i and a2 > i):
                continue
            fp, fq = cycle.flats[p], cycle.flats[q]
            if i == 1:
                if same_parallel_set(ball, fp, fq):
                    return {
                        "kind": "1-cut",
                        "v": p,
                        "w": q,
                        "coarse_length": 1,
                        "shared_generators": sorted(set(fp.gens) & set(fq.gens)),
                    }
            else:
                w = fp.rep.inverse() * fq.rep
                for x in fp.gens:
                    for z in fq.gens:
                        if x == z or not graph.has_edge(x, z):
                            continue
                        if in_subgroup_product(w, [stars[x], stars[z]]):
                            return {
                                "kind": "2-cut",
                                "v": p,
                                "w": q,
                                "coarse_length": 2,
                                "via_edge": (x, z),
                            }
    return None


def find_quasicut(ball, cycle):
    """A coarse-length-3 connection between non-adjacent cycle flats whose
    interior avoids the cycle's flat vertices.  By the quasi-cut lemma such
    a connection already forces a 1- or 2-cut somewhere, so tautness must
    reject it; it is exactly how 2-shortcuts of the defining graph surface
    in the flat space."""
    if not isinstance(cycle, FullEdgeCycle):
        raise GraphError("expected a FullEdgeCycle")
    n = len(cycle)
    graph = cycle.flats[0].rep.ctx.graph
    stars = _stars(graph)
    cycle_flats = set(cycle.flats)
    for p in range(n):
        for q in range(p + 1, n):
            d = min(q - p, n - (q - p))
            if d < 2:
                continue
            fp, fq = cycle.flats[p], cycle.flats[q]
            w = fp.rep.inverse() * fq.rep
            for x in fp.gens:
                for t in sorted(graph.neighbors(x)):
                    for z in fq.gens:
                        if z == t:
                            continue
                        if not graph.has_edge(t, z):
                            continue
                        wit = _quasicut_witness(graph, stars, cycle_flats, fp, fq, w, x, t, z)
                        if wit is not None:
                            return {
                                "kind": "quasi-cut",
                                "v": p,
                                "w": q,
                                "coarse_length": 3,
                                "via_path": (x, t, z),
                                "interior_flats": [k.label() for k in wit],
                            }
    return None


def _quasicut_witness(graph, stars, cycle_flats, fp, fq, w, x, t, z):
    """Turning flats c1<x,t>, c2<t,z> realizing the chain and avoiding the
    cycle's flats.  The canonical choice comes from the product
    factorization; small centralizer twists are tried when it collides."""
    from .words import flat_key, generator, identity

    base = subgroup_product_factors(w, [stars[x], stars[t], stars[z]])
    if base is None:
        return None
    alphas = [base[0]]
    for g in sorted(stars[x]):
        for s in (1, -1):
            alphas.append(base[0] * generator(graph, g, s))
    for alpha in alphas:
        rest = alpha.inverse() * w
        fac = subgroup_product_factors(rest, [stars[t], stars[z]])
        if fac is None:
            continue
        k1 = flat_key(fp.rep * alpha, x, t)
        if k1 in cycle_flats:
            continue
        betas = [fac[0]]
        for g in sorted(stars[t]):
            for s in (1, -1):
                betas.append(fac[0] * generator(graph, g, s))
        for beta in betas:
            if not in_special_subgroup(beta.inverse() * rest, stars[z]):
                continue
            k2 = flat_key(fp.rep * alpha * beta, t, z)
            if k2 in cycle_flats:
                continue
            return [k1, k2]
    return None


def is_taut(ball, cycle):
    """No 1-cut, no 2-cut, and no quasi-cut."""
    return (
        find_icut(ball, cycle, 1) is None
        and find_icut(ball, cycle, 2) is None
        and find_quasicut(ball, cycle) is None
    )


def verify_taut_diagram_lemma(ball, cycle):
    """For a taut cycle, the diagram core must be a single cell."""
    if not is_taut(ball, cycle):
        raise GraphError("verify_taut_diagram_lemma requires a taut cycle")
    d = build_diagram(ball, cycle)
    return len(d.core) == 1
