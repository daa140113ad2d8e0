"""Finite simple graphs and certified recognizers.

Vertices are dense 0-based integers. Adjacency is stored as one bitmask per
vertex, which keeps the exhaustive searches elsewhere in the package cheap.
All types are immutable; every operation is a pure function.

Recognizers return a witness on success (a partition, a creation order, an
interval representation) and a certificate or None on failure:

* split graphs       -> SplitPartition | NotSplit (induced 2K2/C4/C5)
* threshold graphs   -> elimination order | None
* interval graphs    -> IntervalRep | None   (consecutive maximal-clique order)
* unit interval      -> UnitIntervalRep | None

The text format for graphs (shared with the CLI) is: first line ``n``, then
one ``u v`` line per edge, ``#`` starts a comment, duplicates are ignored and
self-loops are a parse error.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import InputError, InternalConsistencyError, ParseError

__all__ = [
    "Graph",
    "SplitPartition",
    "NotSplit",
    "IntervalRep",
    "UnitIntervalRep",
    "complement",
    "induced_subgraph",
    "intersect_graphs",
    "union_edges",
    "recognize_split",
    "recognize_threshold",
    "recognize_interval",
    "recognize_unit_interval",
    "normalize_interval_rep",
    "find_induced_p4",
    "parse_graph",
    "format_graph",
]


def _bits(mask):
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    ``rows[v]`` is the neighbour bitmask of v. The relation is symmetric and
    irreflexive by construction.
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n, rows):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        rows = tuple(rows)
        if len(rows) != n:
            raise InputError("adjacency rows do not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise InputError(f"row {v} references vertices outside 0..{n - 1}")
            if row >> v & 1:
                raise InputError(f"self-loop at vertex {v}")
        for v, row in enumerate(rows):
            for u in _bits(row):
                if not rows[u] >> v & 1:
                    raise InputError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", hash((n, rows)))

    def __setattr__(self, *_):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def empty(cls, n):
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n):
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def path(cls, n):
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n):
        edges = [(i, (i + 1) % n) for i in range(n)]
        return cls.from_edges(n, edges)

    @classmethod
    def star(cls, leaves):
        """K_{1,leaves} with the centre at vertex 0."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def has_edge(self, u, v):
        return bool(self.rows[u] >> v & 1)

    def degree(self, v):
        return self.rows[v].bit_count()

    def neighbors(self, v):
        return list(_bits(self.rows[v]))

    def edges(self):
        """Edges as sorted (u, v) pairs with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in _bits(self.rows[u] >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def non_edges(self):
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not self.rows[u] >> v & 1:
                    out.append((u, v))
        return out

    @property
    def edge_count(self):
        return sum(self.degree(v) for v in range(self.n)) // 2

    def with_edges(self, extra):
        """A copy with the given extra edges added (pure)."""
        rows = list(self.rows)
        for u, v in extra:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def is_clique(self, vertices):
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def is_independent(self, vertices):
        vs = list(vertices)
        return not any(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class SplitPartition:
    """A certified (clique, independent set) bipartition of the vertex set."""

    clique: tuple
    independent: tuple

    def __post_init__(self):
        object.__setattr__(self, "clique", tuple(sorted(self.clique)))
        object.__setattr__(self, "independent", tuple(sorted(self.independent)))

    def validate(self, g):
        """Raise InputError unless this is a valid split partition of g."""
        k, i = set(self.clique), set(self.independent)
        if k & i or k | i != set(range(g.n)):
            raise InputError("clique and independent set must partition V")
        if not g.is_clique(k):
            raise InputError("clique part contains a non-adjacent pair")
        if not g.is_independent(i):
            raise InputError("independent part contains an edge")


@dataclass(frozen=True)
class NotSplit:
    """Certificate that a graph is not split: an induced 2K2, C4 or C5."""

    kind: str
    vertices: tuple


@dataclass(frozen=True)
class IntervalRep:
    """Closed integer intervals, one per vertex; adjacency = intersection."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((int(l), int(r)) for l, r in self.intervals)
        for l, r in ivs:
            if l > r:
                raise InputError(f"interval [{l}, {r}] has l > r")
        object.__setattr__(self, "intervals", ivs)

    @property
    def n(self):
        return len(self.intervals)

    def graph(self):
        n = self.n
        edges = []
        for u, v in combinations(range(n), 2):
            lu, ru = self.intervals[u]
            lv, rv = self.intervals[v]
            if lu <= rv and lv <= ru:
                edges.append((u, v))
        return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class UnitIntervalRep:
    """Unit intervals [a, a+1] given by their rational left endpoints."""

    lefts: tuple

    def __post_init__(self):
        object.__setattr__(self, "lefts", tuple(Fraction(a) for a in self.lefts))

    @property
    def n(self):
        return len(self.lefts)

    def graph(self):
        n = self.n
        edges = []
        for u, v in combinations(range(n), 2):
            if abs(self.lefts[u] - self.lefts[v]) <= 1:
                edges.append((u, v))
        return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# set operations


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [(full ^ row) & ~(1 << v) for v, row in enumerate(g.rows)])


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph, relabelled 0..|s|-1 in increasing original order."""
    order = sorted(set(vertices))
    if order and not (0 <= order[0] and order[-1] < g.n):
        raise InputError("vertex set contains an out-of-range vertex")
    index = {v: i for i, v in enumerate(order)}
    edges = [
        (index[u], index[v])
        for u, v in combinations(order, 2)
        if g.has_edge(u, v)
    ]
    return Graph.from_edges(len(order), edges)


def _require_same_n(gs):
    gs = list(gs)
    if not gs:
        raise InputError("need at least one graph")
    n = gs[0].n
    if any(g.n != n for g in gs):
        raise InputError("graphs must share the same vertex count")
    return gs, n


def intersect_graphs(gs) -> Graph:
    """Graph whose edges are present in every input graph."""
    gs, n = _require_same_n(gs)
    rows = []
    for v in range(n):
        row = gs[0].rows[v]
        for g in gs[1:]:
            row &= g.rows[v]
        rows.append(row)
    return Graph(n, rows)


def union_edges(gs) -> Graph:
    """Graph whose edges are present in at least one input graph."""
    gs, n = _require_same_n(gs)
    rows = []
    for v in range(n):
        row = 0
        for g in gs:
            row |= g.rows[v]
        rows.append(row)
    return Graph(n, rows)


# ---------------------------------------------------------------------------
# split graphs


def _reject_empty(g):
    if g.n == 0:
        raise InputError("recognizers reject the graph with no vertices")


def _split_certificate(g):
    """Search <=5-vertex subsets for an induced 2K2, C4 or C5."""
    for quad in combinations(range(g.n), 4):
        sub = [(u, v) for u, v in combinations(quad, 2) if g.has_edge(u, v)]
        degs = sorted(sum(1 for e in sub if w in e) for w in quad)
        if len(sub) == 2 and degs == [1, 1, 1, 1]:
            return NotSplit("2K2", quad)
        if len(sub) == 4 and degs == [2, 2, 2, 2]:
            return NotSplit("C4", quad)
    for quint in combinations(range(g.n), 5):
        sub = [(u, v) for u, v in combinations(quint, 2) if g.has_edge(u, v)]
        degs = [sum(1 for e in sub if w in e) for w in quint]
        if len(sub) == 5 and all(d == 2 for d in degs):
            return NotSplit("C5", quint)
    return None


def recognize_split(g: Graph):
    """Return a canonical SplitPartition, or a NotSplit certificate.

    The candidate clique is the m highest-degree vertices (smaller index wins
    ties) where m is the largest i with d_i >= i - 1 in the sorted degree
    sequence; for split graphs this yields a maximum clique. If the candidate
    fails, the forbidden-subgraph search produces the certificate.
    """
    _reject_empty(g)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    degs = [g.degree(v) for v in order]
    m = max((i + 1 for i in range(g.n) if degs[i] >= i), default=0)
    clique = order[:m]
    independent = order[m:]
    if g.is_clique(clique) and g.is_independent(independent):
        return SplitPartition(tuple(clique), tuple(independent))
    witness = _split_certificate(g)
    if witness is None:
        raise InternalConsistencyError(
            "degree partition failed but no forbidden subgraph found"
        )
    return witness


# ---------------------------------------------------------------------------
# threshold graphs


def recognize_threshold(g: Graph):
    """Elimination order if g is threshold (split with no induced P4), else None.

    Each entry of the returned order is isolated or dominating in the graph
    that remains when it is removed; reversed, it is a creation sequence.
    """
    _reject_empty(g)
    alive = (1 << g.n) - 1
    order = []
    while alive:
        count = alive.bit_count()
        pick = -1
        for v in _bits(alive):
            d = (g.rows[v] & alive).bit_count()
            if d == 0 or d == count - 1:
                pick = v
                break
        if pick < 0:
            return None
        order.append(pick)
        alive ^= 1 << pick
    return order


def find_induced_p4(g: Graph):
    """Vertices (a, b, c, d) of an induced path a-b-c-d, or None."""
    for quad in combinations(range(g.n), 4):
        sub = [(u, v) for u, v in combinations(quad, 2) if g.has_edge(u, v)]
        if len(sub) != 3:
            continue
        deg = {w: sum(1 for e in sub if w in e) for w in quad}
        ends = [w for w in quad if deg[w] == 1]
        if len(ends) != 2:
            continue
        a = min(ends)
        d = max(ends)
        b = next(w for w in quad if deg[w] == 2 and g.has_edge(a, w))
        c = next(w for w in quad if deg[w] == 2 and w != b)
        return (a, b, c, d)
    return None


# ---------------------------------------------------------------------------
# interval graphs


def _maximal_cliques(g):
    """All maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda v: (g.rows[v] & p).bit_count())
        for v in _bits(p & ~g.rows[pivot]):
            bit = 1 << v
            expand(r | bit, p & g.rows[v], x & g.rows[v])
            p ^= bit
            x |= bit

    expand(0, (1 << g.n) - 1, 0)
    return out


def _consecutive_clique_order(g):
    """A maximal-clique order in which each vertex's cliques are contiguous.

    Returns the order as a list of clique bitmasks, or None. Cliques are
    pre-sorted canonically and the search is lexicographic, so the first
    order found is deterministic.
    """
    cliques = sorted(_maximal_cliques(g), key=lambda c: sorted(_bits(c)))
    k = len(cliques)
    all_placed = (1 << k) - 1
    dead = set()

    def search(remaining, open_mask, acc):
        if not remaining:
            return acc
        key = (remaining, open_mask)
        if key in dead:
            return None
        seen = 0
        for i in range(k):
            if not remaining >> i & 1:
                seen |= cliques[i]
        closed = seen & ~open_mask
        for i in _bits(remaining):
            c = cliques[i]
            if c & closed:
                continue
            got = search(remaining ^ (1 << i), c, acc + [c])
            if got is not None:
                return got
        dead.add(key)
        return None

    return search(all_placed, 0, [])


@lru_cache(maxsize=None)
def _interval_rep_cached(g):
    order = _consecutive_clique_order(g)
    if order is None:
        return None
    first = {}
    last = {}
    for pos, c in enumerate(order, start=1):
        for v in _bits(c):
            first.setdefault(v, pos)
            last[v] = pos
    return IntervalRep(tuple((first[v], last[v]) for v in range(g.n)))


def recognize_interval(g: Graph):
    """An IntervalRep realizing g exactly, or None.

    Uses the fact that a graph is interval iff its maximal cliques admit a
    linear order in which the cliques containing each vertex are consecutive;
    vertex v is then mapped to [first, last] position of its cliques.
    """
    _reject_empty(g)
    return _interval_rep_cached(g)


# ---------------------------------------------------------------------------
# unit interval graphs


def _unit_positions(g, order):
    """Left endpoints realizing g with unit intervals laid out along ``order``.

    Solves the difference-constraint system (adjacent within 1, non-adjacent
    strictly beyond 1, positions monotone along the order) by Bellman-Ford
    with a symbolic infinitesimal for the strict constraints. Returns a tuple
    of Fractions indexed by position, or None if infeasible.
    """
    n = len(order)
    # Edge (i, j, units, eps): x_j - x_i <= units + eps * epsilon.
    edges = []
    for j in range(1, n):
        edges.append((j, j - 1, 0, 0))  # monotone: x_{j-1} <= x_j
        for i in range(j):
            if g.has_edge(order[i], order[j]):
                edges.append((i, j, 1, 0))  # x_j <= x_i + 1
            else:
                edges.append((j, i, -1, -1))  # x_i <= x_j - 1 - epsilon
    dist = [(0, 0)] * n
    for it in range(n):
        changed = False
        for i, j, u, e in edges:
            cand = (dist[i][0] + u, dist[i][1] + e)
            if cand < dist[j]:
                dist[j] = cand
                changed = True
        if not changed:
            break
    else:
        for i, j, u, e in edges:
            if (dist[i][0] + u, dist[i][1] + e) < dist[j]:
                return None  # negative cycle: system infeasible
    eps = Fraction(1, 4 * n + 4)
    return tuple(u + e * eps for u, e in dist)


def recognize_unit_interval(g: Graph):
    """A UnitIntervalRep realizing g exactly, or None.

    Searches for a vertex order with the umbrella property (i < j < k and
    v_i ~ v_k force v_i ~ v_j ~ v_k), which characterizes unit interval
    graphs, then solves for endpoint positions along it.
    """
    _reject_empty(g)
    return _unit_rep_cached(g)


@lru_cache(maxsize=None)
def _unit_rep_cached(g):
    n = g.n

    def extend(order, used):
        if len(order) == n:
            positions = _unit_positions(g, order)
            if positions is None:
                return None
            lefts = [None] * n
            for pos, v in enumerate(order):
                lefts[v] = positions[pos]
            rep = UnitIntervalRep(tuple(lefts))
            if rep.graph() != g:
                raise InternalConsistencyError("unit interval layout mismatch")
            return rep
        for v in range(n):
            if used >> v & 1:
                continue
            ok = True
            # umbrella check for triples ending at the new vertex
            for ii, vi in enumerate(order):
                if not g.has_edge(vi, v):
                    continue
                for vj in order[ii + 1 :]:
                    if not (g.has_edge(vi, vj) and g.has_edge(vj, v)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            got = extend(order + [v], used | (1 << v))
            if got is not None:
                return got
        return None

    return extend([], 0)


# ---------------------------------------------------------------------------
# representation normalization


def _normalize_intervals(intervals):
    """Spread endpoints onto 1..2n keeping the intersection graph intact.

    Sorting events by (coordinate, left-before-right, vertex) preserves every
    strict inequality between endpoints and turns touching pairs l(v) = r(u)
    into strict overlap, so intersections are unchanged while all endpoints
    become pairwise distinct and no interval degenerates to a point.
    """
    events = []
    for v, (l, r) in enumerate(intervals):
        events.append((l, 0, v))
        events.append((r, 1, v))
    events.sort()
    out = [[0, 0] for _ in intervals]
    for pos, (_, side, v) in enumerate(events, start=1):
        out[v][side] = pos
    return tuple((l, r) for l, r in out)


def normalize_interval_rep(rep: IntervalRep) -> IntervalRep:
    """Equivalent representation with 2n distinct endpoints and no point intervals."""
    return IntervalRep(_normalize_intervals(rep.intervals))


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected a single vertex count", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[0]!r}", lineno) from None
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad edge {line!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range", lineno)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing vertex count line")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
