"""Constructive translations between covers, realizers and representations.

These are the polynomial-time constructions that tie the five dimension
parameters together on split graphs:

* threshold_sandwich / split_interval_sandwich squeeze a structured graph H
  with G `subseteq` H `subseteq` G' out of a threshold or interval supergraph,
  keeping the independent side of G intact.
* realizer_from_threshold_cover turns k threshold graphs intersecting to a
  split graph into a realizer of its characteristic poset (so the poset
  dimension is at most the threshold intersection number).
* two_threshold_cover / box_to_threshold_cover turn interval structure into
  threshold intersections (t of the complement is at most 2 * boxicity).
* poset_to_split_graph / threshold_graphs_from_realizer go the other way:
  a poset P becomes a split graph whose characteristic poset is P and whose
  threshold intersection number is at most dim(P).
* split_to_gprime / interval_reps_from_threshold_cover build, for a split
  graph H, a doubled split graph G' with boxicity(G') = threshold
  dimension(H), together with the interval factors witnessing the upper
  bound.

Every operation validates its preconditions and is deterministic.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalConsistencyError
from .graphs import (
    Graph,
    IntervalRep,
    SplitPartition,
    _bits,
    complement,
    normalize_interval_rep,
    recognize_interval,
    recognize_split,
    recognize_threshold,
)
from .posets import (
    CharPosetResult,
    Poset,
    _lex_min_topological,
    characteristic_poset,
    is_realizer,
)
from .solvers import (
    KIND_INTERVAL,
    KIND_THRESHOLD,
    IntersectionRep,
)

__all__ = [
    "threshold_sandwich",
    "realizer_from_threshold_cover",
    "split_interval_sandwich",
    "two_threshold_cover",
    "box_to_threshold_cover",
    "PosetSplitGraph",
    "poset_to_split_graph",
    "threshold_graphs_from_realizer",
    "GPrime",
    "split_to_gprime",
    "is_complete_split",
    "interval_reps_from_threshold_cover",
    "normalized_threshold_factors",
]


def _require_supergraph(small, big, what):
    if small.n != big.n:
        raise InputError(f"{what}: vertex counts differ")
    for v in range(small.n):
        if small.rows[v] & ~big.rows[v]:
            raise InputError(f"{what}: not a supergraph")


def _require_intersection_to(g, factors, what):
    meet = [(1 << g.n) - 1 & ~(1 << v) for v in range(g.n)]
    for f in factors:
        _require_supergraph(g, f, what)
        for v in range(g.n):
            meet[v] &= f.rows[v]
    if tuple(meet) != g.rows:
        raise InputError(f"{what}: factors do not intersect to the graph")


# ---------------------------------------------------------------------------
# sandwich constructions


def threshold_sandwich(g: Graph, part: SplitPartition, g_sup: Graph) -> Graph:
    """Threshold H with g `subseteq` H `subseteq` g_sup and I(H) = I(g).

    H keeps the clique of g complete and gives each independent vertex u the
    neighborhood N(u, g_sup) intersected with the clique of g. Any induced P4
    in H would lift to one in g_sup, so H is threshold.
    """
    part.validate(g)
    if recognize_threshold(g_sup) is None:
        raise InputError("threshold_sandwich: supergraph is not threshold")
    _require_supergraph(g, g_sup, "threshold_sandwich")
    clique_mask = 0
    for v in part.clique:
        clique_mask |= 1 << v
    edges = [
        (u, v)
        for i, u in enumerate(part.clique)
        for v in part.clique[i + 1 :]
    ]
    for u in part.independent:
        for v in _bits(g_sup.rows[u] & clique_mask):
            edges.append((u, v))
    h = Graph.from_edges(g.n, edges)
    if recognize_threshold(h) is None:
        raise InternalConsistencyError("sandwich output is not threshold")
    return h


def normalized_threshold_factors(g: Graph, part: SplitPartition, factors):
    """Sandwich every threshold factor so its independent side matches g's."""
    return tuple(threshold_sandwich(g, part, f) for f in factors)


def realizer_from_threshold_cover(
    g: Graph, part: SplitPartition, rep: IntersectionRep
):
    """A realizer of the characteristic poset from a threshold intersection.

    Each factor T_i is first sandwiched so that its independent side is that
    of g; its distinct independent neighborhoods then form a chain under
    inclusion. Element X of the characteristic poset is ranked by the
    smallest chain member containing X; ties are ordered by the poset itself
    and then by the sorted-vertex-list tie-break. The result is one linear
    extension per factor, and together they reverse every incomparable pair.
    """
    if rep.kind != KIND_THRESHOLD:
        raise InputError("realizer_from_threshold_cover expects threshold factors")
    part.validate(g)
    for f in rep.factors:
        if recognize_threshold(f) is None:
            raise InputError("realizer_from_threshold_cover: factor not threshold")
    _require_intersection_to(g, rep.factors, "realizer_from_threshold_cover")

    char = characteristic_poset(g, part)
    poset = char.poset
    elements = list(range(poset.n))
    neighborhoods = [frozenset(ns) for ns in char.neighborhoods]

    extensions = []
    for factor in normalized_threshold_factors(g, part, rep.factors):
        chain = sorted(
            {frozenset(factor.neighbors(u)) for u in part.independent}, key=len
        )
        for a, b in zip(chain, chain[1:]):
            if not a <= b:
                raise InternalConsistencyError("factor neighborhoods not a chain")

        def rank(x):
            for pos, member in enumerate(chain):
                if neighborhoods[x] <= member:
                    return pos
            raise InternalConsistencyError("element not below any chain member")

        ranks = {x: rank(x) for x in elements}
        order = []
        for pos in range(len(chain)):
            group = [x for x in elements if ranks[x] == pos]
            order.extend(_group_order(poset, group, char))
        extensions.append(tuple(order))
    realizer = tuple(extensions)
    if poset.n and not is_realizer(poset, realizer):
        raise InternalConsistencyError("constructed extensions are not a realizer")
    return realizer


def _group_order(poset, group, char):
    """Linear order of a group: poset order first, sorted-neighborhood ties."""
    remaining = list(group)
    out = []
    while remaining:
        minimal = [
            x
            for x in remaining
            if not any(y != x and poset.leq(y, x) for y in remaining)
        ]
        pick = min(minimal, key=lambda x: char.neighborhoods[x])
        out.append(pick)
        remaining.remove(pick)
    return out


def split_interval_sandwich(g: Graph, part: SplitPartition, g_sup_rep: IntervalRep):
    """Split interval H with g `subseteq` H `subseteq` graph(g_sup_rep).

    After normalizing the supergraph representation (no point intervals,
    distinct endpoints), each independent vertex v is shrunk to a point in
    the common intersection of the intervals of v and its g-neighbors, which
    is nonempty by the Helly property and has positive length by the
    normalization. Distinct vertices receive distinct points, so the
    independent side stays independent. Returns (H, representation of H).
    """
    part.validate(g)
    if g_sup_rep.n != g.n:
        raise InputError("split_interval_sandwich: representation size mismatch")
    sup = g_sup_rep.graph()
    _require_supergraph(g, sup, "split_interval_sandwich")
    norm = normalize_interval_rep(g_sup_rep)

    intervals = {v: (Fraction(l), Fraction(r)) for v, (l, r) in enumerate(norm.intervals)}
    chosen = {}
    used = set()
    for v in part.independent:
        lo, hi = intervals[v]
        for w in _bits(g.rows[v]):
            wl, wr = intervals[w]
            lo, hi = max(lo, wl), min(hi, wr)
        if lo >= hi:
            raise InternalConsistencyError("Helly intersection degenerate")
        point = None
        denom = 2
        while point is None:
            for num in range(1, denom):
                candidate = lo + (hi - lo) * Fraction(num, denom)
                if candidate not in used:
                    point = candidate
                    break
            denom += 1
        used.add(point)
        chosen[v] = point

    final = []
    for v in range(g.n):
        if v in chosen:
            final.append((chosen[v], chosen[v]))
        else:
            final.append(intervals[v])
    h_rep = _rational_to_interval_rep(final)
    h = h_rep.graph()
    _require_supergraph(g, h, "split_interval_sandwich (output)")
    _require_supergraph(h, sup, "split_interval_sandwich (output)")
    if not h.is_independent(part.independent):
        raise InternalConsistencyError("independent side gained an edge")
    return h, h_rep


def _rational_to_interval_rep(intervals):
    """Integer-endpoint representation of rational intervals, same graph."""
    events = []
    for v, (l, r) in enumerate(intervals):
        events.append((l, 0, v))
        events.append((r, 1, v))
    events.sort()
    out = [[0, 0] for _ in intervals]
    for pos, (_, side, v) in enumerate(events, start=1):
        out[v][side] = pos
    return IntervalRep(tuple((l, r) for l, r in out))


def two_threshold_cover(g: Graph, part: SplitPartition, rep: IntervalRep):
    """Two threshold graphs G1, G2 with G1 `cap` G2 = g, from an interval rep.

    G1 stretches every clique interval left to the global minimum endpoint,
    G2 stretches them right to the global maximum; independent intervals are
    untouched. Both results have nested independent neighborhoods, hence are
    threshold, and a missing pair of g stays missing in one of the two.
    """
    part.validate(g)
    if rep.n != g.n:
        raise InputError("two_threshold_cover: representation size mismatch")
    if rep.graph() != g:
        raise InputError("two_threshold_cover: representation does not realize g")
    lo = min(l for l, _ in rep.intervals)
    hi = max(r for _, r in rep.intervals)
    clique = set(part.clique)
    left = IntervalRep(
        tuple(
            (lo, r) if v in clique else (l, r)
            for v, (l, r) in enumerate(rep.intervals)
        )
    )
    right = IntervalRep(
        tuple(
            (l, hi) if v in clique else (l, r)
            for v, (l, r) in enumerate(rep.intervals)
        )
    )
    g1, g2 = left.graph(), right.graph()
    for factor in (g1, g2):
        if recognize_threshold(factor) is None:
            raise InternalConsistencyError("stretched factor is not threshold")
    from .graphs import intersect_graphs

    if intersect_graphs([g1, g2]) != g:
        raise InternalConsistencyError("two-factor intersection mismatch")
    return g1, g2


def box_to_threshold_cover(
    g: Graph, part: SplitPartition, rep: IntersectionRep
) -> IntersectionRep:
    """2k threshold graphs intersecting to split g, from k interval factors.

    Each interval factor is sandwiched to a split interval graph between g
    and itself, then split into two threshold graphs; the union of all the
    pairs intersects to g.
    """
    if rep.kind != KIND_INTERVAL:
        raise InputError("box_to_threshold_cover expects interval factors")
    part.validate(g)
    _require_intersection_to(g, rep.factors, "box_to_threshold_cover")
    out = []
    for factor in rep.factors:
        factor_rep = recognize_interval(factor)
        if factor_rep is None:
            raise InputError("box_to_threshold_cover: factor is not interval")
        h, h_rep = split_interval_sandwich(g, part, factor_rep)
        g1, g2 = two_threshold_cover(h, part, h_rep)
        out.extend([g1, g2])
    result = IntersectionRep(tuple(out), KIND_THRESHOLD)
    _require_intersection_to(g, result.factors, "box_to_threshold_cover (output)")
    return result


# ---------------------------------------------------------------------------
# posets to split graphs and back


@dataclass(frozen=True)
class PosetSplitGraph:
    """Split graph built from a poset.

    Clique vertex v carries poset element ``clique_element[v]``; independent
    vertex n + j carries element j. The characteristic poset of ``graph`` is
    isomorphic to the source poset via the down-set map.
    """

    graph: Graph
    partition: SplitPartition
    clique_element: tuple
    independent_element: tuple


def poset_to_split_graph(p: Poset) -> PosetSplitGraph:
    """Split graph on 2N vertices whose characteristic poset is p.

    The clique is one vertex per element, the independent set one vertex per
    element, and independent vertex for element j is adjacent to the clique
    vertices of {i : i <= j}. Down-sets are distinct and ordered like p, and
    this is verified before returning.
    """
    if p.n == 0:
        raise InputError("poset_to_split_graph requires a non-empty poset")
    n = p.n
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for j in range(n):
        for i in range(n):
            if p.leq(i, j):
                edges.append((i, n + j))
    graph = Graph.from_edges(2 * n, edges)
    part = SplitPartition(tuple(range(n)), tuple(range(n, 2 * n)))
    part.validate(graph)

    char = characteristic_poset(graph, part)
    if char.poset.n != n:
        raise InternalConsistencyError("down-sets collapsed unexpectedly")
    element_for = {}
    for e, reps in enumerate(char.representatives):
        element_for[e] = reps[0] - n
    for a in range(char.poset.n):
        for b in range(char.poset.n):
            if char.poset.leq(a, b) != p.leq(element_for[a], element_for[b]):
                raise InternalConsistencyError(
                    "characteristic poset is not isomorphic to the source"
                )
    return PosetSplitGraph(
        graph=graph,
        partition=part,
        clique_element=tuple(range(n)),
        independent_element=tuple(range(n)),
    )


def threshold_graphs_from_realizer(p: Poset, realizer) -> IntersectionRep:
    """One threshold graph per extension, intersecting to the poset's split graph.

    Extension L contributes the graph where independent vertex for element j
    is adjacent to clique vertices of elements at most j in L. Every factor's
    characteristic poset is the chain L, and a pair missing from the split
    graph is missing from the factor of an extension that reverses it.
    """
    realizer = tuple(tuple(ext) for ext in realizer)
    if not realizer or not is_realizer(p, realizer):
        raise InputError("threshold_graphs_from_realizer: not a realizer of p")
    n = p.n
    base = poset_to_split_graph(p)
    factors = []
    for ext in realizer:
        pos = {e: i for i, e in enumerate(ext)}
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for j in range(n):
            for i in range(n):
                if pos[i] <= pos[j]:
                    edges.append((i, n + j))
        factor = Graph.from_edges(2 * n, edges)
        if recognize_threshold(factor) is None:
            raise InternalConsistencyError("extension factor is not threshold")
        factors.append(factor)
    rep = IntersectionRep(tuple(factors), KIND_THRESHOLD)
    _require_intersection_to(base.graph, rep.factors, "threshold_graphs_from_realizer")
    return rep


# ---------------------------------------------------------------------------
# the doubled split graph G'


def is_complete_split(g: Graph) -> bool:
    """True iff some split partition of g joins every clique-independent pair.

    Equivalent formulation: the non-universal vertices form an independent
    set (clique vertices of such a partition must be adjacent to everything).
    """
    full = (1 << g.n) - 1
    non_universal = [
        v for v in range(g.n) if g.rows[v] != full ^ (1 << v)
    ]
    return g.is_independent(non_universal)


@dataclass(frozen=True)
class GPrime:
    """Doubled split graph with boxicity equal to the threshold dimension of h.

    ``copy1[v]`` / ``copy2[v]`` give the vertices of the two base-graph copies
    (the base graph is the complement of h). For complete split h the
    construction is the identity and ``trivial_case`` is set.
    """

    graph: Graph
    partition: SplitPartition
    base: Graph
    base_partition: SplitPartition
    copy1: tuple
    copy2: tuple
    trivial_case: bool


def split_to_gprime(h: Graph) -> GPrime:
    """The doubled graph over two copies of complement(h).

    Copies of the base G = complement(h) are joined by all edges between the
    two cliques, and by all edges from each clique to the opposite
    independent set; the two independent sets stay mutually non-adjacent.
    Complete split inputs (threshold dimension at most 1) are returned
    unchanged with ``trivial_case`` set.
    """
    part_h = recognize_split(h)
    if not isinstance(part_h, SplitPartition):
        raise InputError("split_to_gprime requires a split graph")
    if is_complete_split(h):
        return GPrime(
            graph=h,
            partition=part_h,
            base=h,
            base_partition=part_h,
            copy1=tuple(range(h.n)),
            copy2=(),
            trivial_case=True,
        )
    g = complement(h)
    part_g = recognize_split(g)
    if not isinstance(part_g, SplitPartition):
        raise InternalConsistencyError("complement of a split graph must be split")
    n = g.n
    copy1 = tuple(range(n))
    copy2 = tuple(range(n, 2 * n))
    edges = []
    for u, v in g.edges():
        edges.append((u, v))
        edges.append((n + u, n + v))
    k1 = [v for v in part_g.clique]
    i1 = [v for v in part_g.independent]
    k2 = [n + v for v in part_g.clique]
    i2 = [n + v for v in part_g.independent]
    edges.extend((u, v) for u in k1 for v in k2)
    edges.extend((u, v) for u in k1 for v in i2)
    edges.extend((u, v) for u in k2 for v in i1)
    graph = Graph.from_edges(2 * n, edges)
    partition = SplitPartition(tuple(k1 + k2), tuple(i1 + i2))
    partition.validate(graph)
    return GPrime(
        graph=graph,
        partition=partition,
        base=g,
        base_partition=part_g,
        copy1=copy1,
        copy2=copy2,
        trivial_case=False,
    )


def interval_reps_from_threshold_cover(h: Graph, factors):
    """Interval factors over the doubled graph, one per threshold factor.

    ``factors`` must be threshold supergraphs of G = complement(h) whose
    intersection is G and whose independent side is that of G. For each
    factor, independent vertices get points g(u) chosen so that strictly
    larger neighborhoods get strictly smaller points, clique vertices get
    [-n, h(u)] where h(u) is the largest point among their independent
    neighbors (0 when there are none); the second copy is mirrored through 0.
    Returns a list of (graph, representation) pairs intersecting to G'.
    """
    gp = split_to_gprime(h)
    if gp.trivial_case:
        raise InputError(
            "interval_reps_from_threshold_cover: complete split input has the "
            "identity reduction; no factors to build"
        )
    g = gp.base
    part_g = gp.base_partition
    factors = tuple(factors)
    if not factors:
        raise InputError("interval_reps_from_threshold_cover: no factors")
    for f in factors:
        if recognize_threshold(f) is None:
            raise InputError("interval_reps_from_threshold_cover: factor not threshold")
        if not f.is_independent(part_g.independent):
            raise InputError(
                "interval_reps_from_threshold_cover: factor moves the independent set"
            )
    _require_intersection_to(g, factors, "interval_reps_from_threshold_cover")

    n = g.n
    out = []
    for factor in factors:
        point = _independent_points(factor, part_g)
        reach = {}
        for u in part_g.clique:
            ind_neighbors = [v for v in factor.neighbors(u) if v in point]
            reach[u] = max((point[v] for v in ind_neighbors), default=0)
        intervals = [None] * (2 * n)
        for v in part_g.independent:
            intervals[v] = (point[v], point[v])
            intervals[n + v] = (-point[v], -point[v])
        for u in part_g.clique:
            intervals[u] = (-n, reach[u])
            intervals[n + u] = (-reach[u], n)
        rep = IntervalRep(tuple(intervals))
        graph = rep.graph()
        out.append((graph, rep))

    meet = [(1 << 2 * n) - 1 & ~(1 << v) for v in range(2 * n)]
    for graph, _ in out:
        for v in range(2 * n):
            meet[v] &= graph.rows[v]
    if tuple(meet) != gp.graph.rows:
        raise InternalConsistencyError("interval factors do not intersect to G'")
    return out


def _independent_points(factor, part):
    """Distinct positive points, strictly decreasing with neighborhood growth."""
    order = sorted(
        part.independent,
        key=lambda u: (-factor.degree(u), u),
    )
    point = {u: i + 1 for i, u in enumerate(order)}
    for u in part.independent:
        for v in part.independent:
            nu = factor.rows[u]
            nv = factor.rows[v]
            if nu != nv and nu & ~nv == 0 and point[u] <= point[v]:
                raise InternalConsistencyError("point order violates containment")
    return point
