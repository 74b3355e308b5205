"""Embedded cycles of a defining graph: shortcuts, tightness, Whitehead graphs.

A cycle is tight when it admits no 1-shortcut (a chord) and no 2-shortcut
(a length-2 path between cycle vertices whose distance along the cycle
exceeds 2).  The Whitehead graph at a vertex v records which pairs of link
directions are joined by some tight cycle through v; scanning all embedded
cycle lengths up to the vertex count makes the computation exact.
"""

from dataclasses import dataclass

from . import _kernels
from .graphs import GraphError, cut_vertices, girth, is_connected

__all__ = [
    "EmbeddedCycle",
    "enumerate_cycles",
    "tight_cycles",
    "find_shortcut",
    "is_tight",
    "WhiteheadGraph",
    "whitehead_graph",
    "check_whitehead_lemma",
    "check_coloring_lemma",
]


class EmbeddedCycle:
    """Embedded cycle stored canonically: starts at its least vertex, in the
    orientation whose second vertex is smaller."""

    __slots__ = ("graph", "vertices")

    def __init__(self, graph, vertices):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise GraphError("cycle revisits a vertex")
        for i, v in enumerate(vs):
            if not graph.has_edge(v, vs[(i + 1) % len(vs)]):
                raise GraphError("consecutive cycle vertices %r,%r not adjacent" % (v, vs[(i + 1) % len(vs)]))
        self.graph = graph
        self.vertices = _canonical(vs)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, EmbeddedCycle) and self.graph == other.graph and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Cycle(%s)" % "-".join(self.vertices)

    def edges(self):
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))]

    def distance_along(self, u, v):
        """Edges along the shorter arc between two cycle vertices."""
        i, j = self.vertices.index(u), self.vertices.index(v)
        d = abs(i - j)
        return min(d, len(self.vertices) - d)


def _canonical(vs):
    n = len(vs)
    best = None
    for rot in range(n):
        for seq in (vs[rot:] + vs[:rot], (vs[rot:] + vs[:rot])[:1] + tuple(reversed((vs[rot:] + vs[:rot])[1:]))):
            if best is None or seq < best:
                best = seq
    return best


def _adj_masks(graph):
    order = graph.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    masks = [0] * len(order)
    for v in order:
        for u in graph.neighbors(v):
            masks[idx[v]] |= 1 << idx[u]
    return order, masks


def enumerate_cycles(graph, max_len):
    """All embedded cycles of length <= max_len, canonical and sorted."""
    if max_len < 3:
        raise GraphError("max_len must be at least 3")
    order, masks = _adj_masks(graph)
    raw = _kernels.enumerate_cycle_lists(masks, max_len, tight_only=False)
    out = [EmbeddedCycle(graph, tuple(order[i] for i in t)) for t in raw]
    out.sort(key=lambda c: (len(c), c.vertices))
    return out


_tight_cache = {}


def tight_cycles(graph, max_len=None):
    """All tight cycles of length <= max_len (default: the vertex count,
    which is exact since embedded cycles cannot be longer)."""
    cap = len(graph.vertices) if max_len is None else min(max_len, len(graph.vertices))
    key = (graph, cap)
    hit = _tight_cache.get(key)
    if hit is not None:
        return hit
    order, masks = _adj_masks(graph)
    raw = _kernels.enumerate_cycle_lists(masks, cap, tight_only=True)
    out = [EmbeddedCycle(graph, tuple(order[i] for i in t)) for t in raw]
    out.sort(key=lambda c: (len(c), c.vertices))
    if len(_tight_cache) < 4096:
        _tight_cache[key] = out
    return out


def find_shortcut(graph, cycle, i):
    """An i-shortcut for the cycle: an edge-path of length exactly i whose
    endpoints lie on the cycle at cycle-distance > i.  Returns the path as a
    vertex list, or None."""
    if i < 1:
        raise GraphError("shortcut length must be >= 1")
    if not isinstance(cycle, EmbeddedCycle):
        cycle = EmbeddedCycle(graph, cycle)
    on_cycle = set(cycle.vertices)

    def extend(path):
        if len(path) == i + 1:
            last = path[-1]
            if last in on_cycle and cycle.distance_along(path[0], last) > i:
                return list(path)
            return None
        for nxt in sorted(graph.neighbors(path[-1])):
            if nxt in path:
                continue
            found = extend(path + [nxt])
            if found:
                return found
        return None

    for start in cycle.vertices:
        found = extend([start])
        if found:
            return found
    return None


def is_tight(graph, cycle):
    """No 1-shortcuts and no 2-shortcuts."""
    if not isinstance(cycle, EmbeddedCycle):
        cycle = EmbeddedCycle(graph, cycle)
    order, masks = _adj_masks(graph)
    idx = {v: k for k, v in enumerate(order)}
    return _kernels.tight_check_ints([idx[v] for v in cycle.vertices], masks)


@dataclass(frozen=True)
class WhiteheadGraph:
    base: str
    vertices: tuple
    edges: frozenset

    def is_connected(self):
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for u in adj[x]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(self.vertices)

    def to_dot(self):
        lines = ['graph "Wh(%s)" {' % self.base]
        for v in self.vertices:
            lines.append('  "%s";' % v)
        for a, b in sorted(self.edges):
            lines.append('  "%s" -- "%s";' % (a, b))
        lines.append("}")
        return "\n".join(lines) + "\n"


def whitehead_graph(graph, v, max_len=None):
    """Graph on the link of v joining directions traversed by a tight cycle."""
    if not graph.has_vertex(v):
        raise GraphError("unknown vertex %r" % (v,))
    link = tuple(sorted(graph.neighbors(v)))
    edges = set()
    for cyc in tight_cycles(graph, max_len):
        vs = cyc.vertices
        if v not in vs:
            continue
        k = vs.index(v)
        a, b = vs[k - 1], vs[(k + 1) % len(vs)]
        edges.add(tuple(sorted((a, b))))
    return WhiteheadGraph(base=v, vertices=link, edges=frozenset(edges))


def check_whitehead_lemma(graph):
    """Per-vertex check that Wh(v) is connected exactly when v is not a cut
    vertex; requires a connected graph of girth >= 5."""
    if not is_connected(graph):
        raise GraphError("whitehead lemma check requires a connected graph")
    if girth(graph) < 5:
        raise GraphError("whitehead lemma check requires girth >= 5")
    cuts = cut_vertices(graph)
    table = {}
    passed = True
    for v in graph.sorted_vertices():
        wh = whitehead_graph(graph, v)
        connected = wh.is_connected()
        is_cut = v in cuts
        agree = connected == (not is_cut)
        table[v] = {"wh_connected": connected, "is_cut_vertex": is_cut, "agree": agree}
        passed = passed and agree
    return {"passed": passed, "vertices": table}


def check_coloring_lemma(graph, coloring):
    """Three-color edge test: with every two gray edges sharing a vertex and
    every tight cycle black-or-gray or white-or-gray, the whole graph must be
    black-or-gray or white-or-gray."""
    from .graphs import check_atomic

    if not check_atomic(graph).is_atomic:
        raise GraphError("coloring lemma applies to atomic graphs")
    colors = {}
    for e in graph.edges:
        c = coloring.get(e, coloring.get((e[1], e[0])))
        if c not in ("black", "white", "gray"):
            raise GraphError("edge %r is missing a black/white/gray color" % (e,))
        colors[e] = c

    grays = [e for e, c in colors.items() if c == "gray"]
    hyp1 = all(set(a) & set(b) for a in grays for b in grays)

    hyp2 = True
    for cyc in tight_cycles(graph):
        seen = {colors[e] for e in cyc.edges()}
        if not (seen <= {"black", "gray"} or seen <= {"white", "gray"}):
            hyp2 = False
            break

    all_colors = set(colors.values())
    conclusion = all_colors <= {"black", "gray"} or all_colors <= {"white", "gray"}
    return {
        "valid_hypotheses": hyp1 and hyp2,
        "hypothesis_gray_pairs": hyp1,
        "hypothesis_tight_cycles": hyp2,
        "conclusion_holds": conclusion,
    }
