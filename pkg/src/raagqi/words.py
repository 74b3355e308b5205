"""RAAG word algebra: canonical normal forms and special-subgroup cosets.

Elements are stored in shortlex normal form over the sorted vertex order of
the defining graph: fully cancelled, and lexicographically least among all
words reachable by swapping adjacent letters whose generators are adjacent in
the graph.  Two elements are equal in the group iff their stored words agree.
"""

from . import _kernels
from .graphs import GraphError

__all__ = [
    "WordContext",
    "GroupElement",
    "CosetKey",
    "context_for",
    "normal_form",
    "identity",
    "generator",
    "multiply",
    "invert",
    "in_special_subgroup",
    "in_subgroup_product",
    "coset_key",
    "cone_key",
    "singular_key",
    "flat_key",
    "parse_word",
    "cayley_ball",
    "syllable_ball",
]

_context_cache = {}


class WordContext:
    """Generator order, letter codes and commutation masks for one graph."""

    def __init__(self, graph):
        self.graph = graph
        self.generators = graph.sorted_vertices()
        self.index = {v: i for i, v in enumerate(self.generators)}
        comm = []
        for v in self.generators:
            m = 0
            for u in graph.neighbors(v):
                m |= 1 << self.index[u]
            comm.append(m)
        self.comm_masks = comm
        self.star_masks = [m | (1 << i) for i, m in enumerate(comm)]
        self._nf_cache = {}
        self._strip_cache = {}

    def gen_mask(self, names):
        m = 0
        for v in names:
            if v not in self.index:
                raise GraphError("unknown generator %r" % (v,))
            m |= 1 << self.index[v]
        return m

    def nf(self, codes):
        codes = tuple(codes)
        hit = self._nf_cache.get(codes)
        if hit is None:
            hit = tuple(_kernels.normal_form_codes(list(codes), self.comm_masks))
            if len(self._nf_cache) < 1 << 20:
                self._nf_cache[codes] = hit
        return hit

    def strip(self, codes, mask):
        key = (codes, mask)
        hit = self._strip_cache.get(key)
        if hit is None:
            hit = tuple(_kernels.strip_coset_codes(list(codes), self.comm_masks, mask))
            if len(self._strip_cache) < 1 << 20:
                self._strip_cache[key] = hit
        return hit


def context_for(graph):
    ctx = _context_cache.get(graph)
    if ctx is None:
        ctx = WordContext(graph)
        _context_cache[graph] = ctx
    return ctx


class GroupElement:
    """A group element held in canonical normal form."""

    __slots__ = ("ctx", "codes")

    def __init__(self, ctx, codes, _canonical=False):
        self.ctx = ctx
        self.codes = tuple(codes) if _canonical else ctx.nf(codes)

    # -- algebra ------------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise GraphError("elements live over different defining graphs")
        return GroupElement(self.ctx, self.codes + other.codes)

    def inverse(self):
        inv = [_kernels.letter_inv(c) for c in reversed(self.codes)]
        return GroupElement(self.ctx, inv)

    def __pow__(self, k):
        if k == 0:
            return GroupElement(self.ctx, (), _canonical=True)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- structure ----------------------------------------------------------

    def __len__(self):
        return len(self.codes)

    @property
    def is_identity(self):
        return not self.codes

    def support(self):
        gens = self.ctx.generators
        return {gens[_kernels.letter_gen(c)] for c in self.codes}

    def letters(self):
        gens = self.ctx.generators
        return [(gens[_kernels.letter_gen(c)], _kernels.letter_sign(c)) for c in self.codes]

    def word_str(self):
        if not self.codes:
            return "1"
        return " ".join(g if s > 0 else g + "^-1" for g, s in self.letters())

    # -- identity axioms ------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.ctx is other.ctx
            and self.codes == other.codes
        )

    def __hash__(self):
        return hash((id(self.ctx), self.codes))

    def __lt__(self, other):
        return (len(self.codes), self.codes) < (len(other.codes), other.codes)

    def __repr__(self):
        return "<%s>" % self.word_str()


def parse_word(graph, text):
    """Parse whitespace-separated letters, e.g. ``"a b^-1 c^3"``."""
    ctx = context_for(graph)
    out = []
    for tok in text.split():
        name, _, exp = tok.partition("^")
        if name not in ctx.index:
            raise GraphError("unknown generator %r" % (name,))
        try:
            k = int(exp) if exp else 1
        except ValueError:
            raise GraphError("bad exponent in token %r" % (tok,)) from None
        code = _kernels.letter(ctx.index[name], 1 if k > 0 else -1)
        out.extend([code] * abs(k))
    return out


def normal_form(graph, word):
    """Canonical element from a raw word.

    ``word`` may be a string (see parse_word), or an iterable of (generator,
    sign) pairs with sign +1/-1.
    """
    ctx = context_for(graph)
    if isinstance(word, str):
        codes = parse_word(graph, word)
    else:
        codes = []
        for gen, sign in word:
            if gen not in ctx.index:
                raise GraphError("unknown generator %r" % (gen,))
            codes.append(_kernels.letter(ctx.index[gen], sign))
    return GroupElement(ctx, codes)


def identity(graph):
    return GroupElement(context_for(graph), (), _canonical=True)


def generator(graph, v, sign=1):
    ctx = context_for(graph)
    if v not in ctx.index:
        raise GraphError("unknown generator %r" % (v,))
    return GroupElement(ctx, (_kernels.letter(ctx.index[v], sign),), _canonical=True)


def multiply(x, y):
    return x * y


def invert(x):
    return x.inverse()


def in_special_subgroup(x, gens):
    """True iff x lies in the special subgroup generated by ``gens``.

    The support of a reduced RAAG word is an invariant of the element, so
    membership is a support check on the normal form.
    """
    gens = set(gens)
    for v in gens:
        if not x.ctx.graph.has_vertex(v):
            raise GraphError("unknown generator %r" % (v,))
    return x.support() <= gens


def subgroup_product_factors(x, gen_sets):
    """Factor x as a1 a2 ... ak with ai in the special subgroup <Ai>, or
    return None.

    Greedy and exact: repeatedly delete a front-movable letter whose
    generator lies in A1 (a left division by <A1>), then recurse.  If w is in
    the product, so is every such quotient, and once no front-movable
    A1-letter remains the <A1> factor must be trivial.
    """
    ctx = x.ctx
    codes = list(x.codes)
    factors = []
    for gens in gen_sets[:-1]:
        mask = ctx.gen_mask(gens)
        taken = []
        while True:
            removed = False
            blocked = 0
            for i, c in enumerate(codes):
                g = _kernels.letter_gen(c)
                if not (blocked >> g) & 1 and (mask >> g) & 1:
                    taken.append(c)
                    del codes[i]
                    codes = list(ctx.nf(tuple(codes)))
                    removed = True
                    break
                blocked |= ~ctx.comm_masks[g] & ~(1 << g)
            if not removed:
                break
        factors.append(GroupElement(ctx, taken))
    last = ctx.gen_mask(gen_sets[-1])
    if not all((last >> _kernels.letter_gen(c)) & 1 for c in codes):
        return None
    factors.append(GroupElement(ctx, tuple(codes), _canonical=True))
    return factors


def in_subgroup_product(x, gen_sets):
    """True iff x is in the product <A1><A2>...<Ak> of special subgroups."""
    return subgroup_product_factors(x, gen_sets) is not None


# ---------------------------------------------------------------------------
# coset keys
# ---------------------------------------------------------------------------

_KIND_RANK = {"cone": 0, "singular": 1, "flat": 2}


class CosetKey:
    """Canonical key of a coset g<S> for S one of: nothing (cone vertex), a
    single generator (singular vertex), an edge pair (flat vertex)."""

    __slots__ = ("kind", "gens", "rep")

    def __init__(self, kind, gens, rep):
        self.kind = kind
        self.gens = gens
        self.rep = rep

    def __eq__(self, other):
        return (
            isinstance(other, CosetKey)
            and self.kind == other.kind
            and self.gens == other.gens
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.kind, self.gens, self.rep))

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.gens, len(self.rep.codes), self.rep.codes)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        inner = ",".join(self.gens)
        return "%s[%s]<%s>" % (self.kind, self.rep.word_str(), inner)

    def label(self):
        return repr(self)


def coset_key(x, kind, gens=()):
    """Canonical key for the coset of x in the special subgroup named by
    ``kind``: "cone" (trivial), "singular" with one generator, or "flat" with
    an edge pair."""
    ctx = x.ctx
    gens = tuple(gens)
    if kind == "cone":
        if gens:
            raise GraphError("cone kind takes no generators")
        return CosetKey("cone", (), x)
    if kind == "singular":
        if len(gens) != 1:
            raise GraphError("singular kind takes exactly one generator")
        if not ctx.graph.has_vertex(gens[0]):
            raise GraphError("unknown generator %r" % (gens[0],))
        rep = ctx.strip(x.codes, ctx.gen_mask(gens))
        return CosetKey("singular", gens, GroupElement(ctx, rep, _canonical=True))
    if kind == "flat":
        if len(gens) != 2:
            raise GraphError("flat kind takes exactly two generators")
        u, w = sorted(gens)
        if not ctx.graph.has_edge(u, w):
            raise GraphError("{%s,%s} is not an edge of the defining graph" % (u, w))
        rep = ctx.strip(x.codes, ctx.gen_mask((u, w)))
        return CosetKey("flat", (u, w), GroupElement(ctx, rep, _canonical=True))
    raise GraphError("unknown coset kind %r" % (kind,))


def cone_key(x):
    return coset_key(x, "cone")


def singular_key(x, u):
    return coset_key(x, "singular", (u,))


def flat_key(x, u, w):
    return coset_key(x, "flat", (u, w))


# ---------------------------------------------------------------------------
# finite element sets
# ---------------------------------------------------------------------------

def cayley_ball(graph, radius):
    """All elements of word length <= radius, BFS order, deduplicated."""
    ctx = context_for(graph)
    letters = [_kernels.letter(i, s) for i in range(len(ctx.generators)) for s in (1, -1)]
    seen = {(): 0}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for codes in frontier:
            for c in letters:
                w = ctx.nf(codes + (c,))
                if w not in seen:
                    seen[w] = len(w)
                    nxt.append(w)
        frontier = nxt
    return [GroupElement(ctx, codes, _canonical=True) for codes in sorted(seen, key=lambda t: (len(t), t))]


def syllable_ball(graph, depth, exp_cap):
    """Canonical forms reachable from the identity by at most ``depth`` right
    multiplications by generator powers u^k with 0 < |k| <= exp_cap."""
    ctx = context_for(graph)
    moves = []
    for i in range(len(ctx.generators)):
        for k in range(1, exp_cap + 1):
            moves.append((_kernels.letter(i, 1),) * k)
            moves.append((_kernels.letter(i, -1),) * k)
    seen = {()}
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for codes in frontier:
            for m in moves:
                w = ctx.nf(codes + m)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return [GroupElement(ctx, codes, _canonical=True) for codes in sorted(seen, key=lambda t: (len(t), t))]
