"""Exact witness-producing oracles for the four graph dimension parameters.

threshold_dimension       least k with E(G) covered by k threshold subgraphs
threshold_intersection    least k with G the intersection of k threshold graphs
boxicity                  least k with G the intersection of k interval graphs
cubicity                  same with unit interval graphs

All four use iterative deepening over k. Within a level, every edge (for
covers) or non-edge (for intersections) is assigned a nonempty subset of the
k factors in lexicographic order, with factor symmetry broken by introducing
factors in order, so the first assignment found is canonical and runs are
deterministic. Pruning is sound only: a branch is cut when some factor
already contains a finished forbidden configuration (an alternating pair for
threshold factors, a chordless 4-cycle or claw over decided pairs for
interval and unit interval factors) or when a fully decided vertex prefix of
a factor fails its recognizer, so the canonical solution is never skipped.
Minimality of the returned k is certified by the exhausted level below it,
or by a clique of pairwise incompatible edges when that is already decisive.

These searches are exponential by design; the default capacity bound is 10
vertices and calls beyond the time budget raise SolverTimeout carrying a
greedily verified upper bound.
"""

import os
import time
from dataclasses import dataclass

from .errors import CapacityError, InputError, InternalConsistencyError, SolverTimeout
from .graphs import (
    Graph,
    _bits,
    complement,
    recognize_interval,
    recognize_threshold,
    recognize_unit_interval,
)

__all__ = [
    "ThresholdCover",
    "IntersectionRep",
    "DimensionResult",
    "threshold_dimension",
    "threshold_intersection_number",
    "boxicity",
    "cubicity",
    "default_timeout_ms",
    "KIND_INTERVAL",
    "KIND_UNIT_INTERVAL",
    "KIND_THRESHOLD",
]

KIND_INTERVAL = "interval"
KIND_UNIT_INTERVAL = "unit-interval"
KIND_THRESHOLD = "threshold"

DEFAULT_MAX_N = 10
DEFAULT_TIMEOUT_MS = 60_000


def default_timeout_ms():
    """Solver time budget in ms; DIMKIT_TIMEOUT_MS overrides the 60 s default."""
    raw = os.environ.get("DIMKIT_TIMEOUT_MS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InputError(f"DIMKIT_TIMEOUT_MS must be an integer, got {raw!r}")
    return DEFAULT_TIMEOUT_MS


@dataclass(frozen=True)
class ThresholdCover:
    """Threshold spanning subgraphs whose edge union is the covered graph."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class IntersectionRep:
    """Supergraphs of a declared kind whose intersection is the target."""

    factors: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in (KIND_INTERVAL, KIND_UNIT_INTERVAL, KIND_THRESHOLD):
            raise InputError(f"unknown intersection kind {self.kind!r}")
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class DimensionResult:
    k: int
    witness: object


def kind_recognizer(kind):
    return {
        KIND_INTERVAL: recognize_interval,
        KIND_UNIT_INTERVAL: recognize_unit_interval,
        KIND_THRESHOLD: recognize_threshold,
    }[kind]


def _check_capacity(g, max_n, what):
    if g.n == 0:
        raise InputError(f"{what} requires at least one vertex")
    if g.n > max_n:
        raise CapacityError(f"{what}: n={g.n} exceeds the bound {max_n}")


def _deadline(timeout_ms):
    if timeout_ms is None:
        timeout_ms = default_timeout_ms()
    return time.monotonic() + timeout_ms / 1000.0


# ---------------------------------------------------------------------------
# threshold cover search


def _edge_conflicts(g, edges):
    """conf[i] = mask of edges that can never share a threshold factor with i.

    Edges (u,v), (x,y) on four distinct vertices alternate unconditionally
    when one of the two cross pairings consists of non-edges of g; such a
    configuration is an induced 2K2, P4 or C4 in every common factor.
    """
    m = len(edges)
    conf = [0] * m
    for i in range(m):
        u, v = edges[i]
        for j in range(i + 1, m):
            x, y = edges[j]
            if len({u, v, x, y}) < 4:
                continue
            if (not g.has_edge(u, x) and not g.has_edge(v, y)) or (
                not g.has_edge(u, y) and not g.has_edge(v, x)
            ):
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return conf


def _greedy_clique_bound(conf):
    best = 1 if conf else 0
    order = sorted(range(len(conf)), key=lambda i: -conf[i].bit_count())
    for seed in order[:8]:
        clique = [seed]
        common = conf[seed]
        for v in order:
            if common >> v & 1:
                clique.append(v)
                common &= conf[v]
        best = max(best, len(clique))
    return best


def _greedy_cover(g):
    """A valid threshold cover built greedily; used for timeout reporting."""
    remaining = list(g.edges())
    factors = []
    while remaining:
        chosen = []
        graph = Graph.empty(g.n)
        for e in remaining:
            candidate = graph.with_edges([e])
            if recognize_threshold(candidate) is not None:
                graph = candidate
                chosen.append(e)
        factors.append(graph)
        remaining = [e for e in remaining if e not in chosen]
    return ThresholdCover(tuple(factors))


def _cover_search(g, edges, conf, k, deadline):
    """First (canonical) assignment of edges to factor subsets, or None."""
    n = g.n
    m = len(edges)
    full = (1 << n) - 1
    non_edge_rows = [(full ^ row) & ~(1 << v) for v, row in enumerate(g.rows)]
    present = [[0] * n for _ in range(k)]
    excluded = [list(non_edge_rows) for _ in range(k)]
    subset_of = [0] * m
    counter = [0]

    def dead_after_edge(fi, u, v):
        # new present pair (u,v): alternating with some edge (w,y) needs
        # (u,w) and (v,y) excluded
        pi, xi = present[fi], excluded[fi]
        for w in _bits(xi[u]):
            if pi[w] & xi[v]:
                return True
        return False

    def dead_after_exclusion(fi, a, b):
        # new excluded pair (a,b): completes an alternation with edges
        # (a,v), (b,y) when (v,y) is already excluded
        pi, xi = present[fi], excluded[fi]
        for v in _bits(pi[a]):
            if xi[v] & pi[b]:
                return True
        return False

    def search(j, maxused):
        if j == m:
            return list(subset_of)
        counter[0] += 1
        if counter[0] % 2048 == 0 and time.monotonic() > deadline:
            raise SolverTimeout(
                f"threshold cover search timed out at k={k}",
                best_upper_bound=len(_greedy_cover(g)),
            )
        u, v = edges[j]
        bit_u, bit_v = 1 << u, 1 << v
        forbidden = 0
        for i in _bits(conf[j] & ((1 << j) - 1)):
            forbidden |= subset_of[i]
        for subset in range(1, 1 << k):
            if subset & forbidden:
                continue
            fresh = subset >> maxused
            if fresh and fresh & (fresh + 1):
                continue  # new factors must be used in order, without gaps
            ok = True
            touched = []
            for fi in range(k):
                if subset >> fi & 1:
                    present[fi][u] |= bit_v
                    present[fi][v] |= bit_u
                    touched.append(fi)
                    if dead_after_edge(fi, u, v):
                        ok = False
                        break
                else:
                    excluded[fi][u] |= bit_v
                    excluded[fi][v] |= bit_u
                    touched.append(fi)
                    if dead_after_exclusion(fi, u, v):
                        ok = False
                        break
            if ok:
                subset_of[j] = subset
                got = search(j + 1, max(maxused, subset.bit_length()))
                if got is not None:
                    return got
                subset_of[j] = 0
            for fi in touched:
                if subset >> fi & 1:
                    present[fi][u] &= ~bit_v
                    present[fi][v] &= ~bit_u
                else:
                    excluded[fi][u] &= ~bit_v
                    excluded[fi][v] &= ~bit_u
        return None

    return search(0, 0)


def threshold_dimension(g: Graph, max_n=DEFAULT_MAX_N, timeout_ms=None):
    """Least k such that k threshold spanning subgraphs cover E(g), with witness.

    The edgeless graph has an empty cover and k = 0.
    """
    _check_capacity(g, max_n, "threshold_dimension")
    edges = g.edges()
    if not edges:
        return DimensionResult(0, ThresholdCover(()))
    if recognize_threshold(g) is not None:
        return DimensionResult(1, ThresholdCover((g,)))
    deadline = _deadline(timeout_ms)
    conf = _edge_conflicts(g, edges)
    k = max(2, _greedy_clique_bound(conf))
    while True:
        assignment = _cover_search(g, edges, conf, k, deadline)
        if assignment is not None:
            factors = []
            for fi in range(k):
                picked = [e for e, s in zip(edges, assignment) if s >> fi & 1]
                factors.append(Graph.from_edges(g.n, picked))
            cover = ThresholdCover(tuple(factors))
            _validate_cover(g, cover)
            return DimensionResult(k, cover)
        k += 1
        if k > len(edges):
            raise InternalConsistencyError("cover search exceeded trivial bound")


def _validate_cover(g, cover):
    union = [0] * g.n
    for f in cover.factors:
        if f.n != g.n:
            raise InternalConsistencyError("cover factor on wrong vertex set")
        for v in range(g.n):
            if f.rows[v] & ~g.rows[v]:
                raise InternalConsistencyError("cover factor is not a subgraph")
            union[v] |= f.rows[v]
        if recognize_threshold(f) is None:
            raise InternalConsistencyError("cover factor is not threshold")
    if tuple(union) != g.rows:
        raise InternalConsistencyError("cover union does not match the graph")


def threshold_intersection_number(g: Graph, max_n=DEFAULT_MAX_N, timeout_ms=None):
    """Least k with g the intersection of k threshold supergraphs, with witness.

    Computed as the threshold dimension of the complement; the witness factors
    are the complements of the cover factors. A complete graph (whose
    complement is edgeless) is reported as 1 with itself as witness.
    """
    _check_capacity(g, max_n, "threshold_intersection_number")
    inner = threshold_dimension(complement(g), max_n=max_n, timeout_ms=timeout_ms)
    if inner.k == 0:
        return DimensionResult(1, IntersectionRep((g,), KIND_THRESHOLD))
    factors = tuple(complement(f) for f in inner.witness.factors)
    return DimensionResult(inner.k, IntersectionRep(factors, KIND_THRESHOLD))


# ---------------------------------------------------------------------------
# interval / unit interval intersection search


def _non_edge_conflicts(g, non_edges):
    """Pairs of non-edges that no interval factor can omit simultaneously.

    If (a,b) and (x,y) are the diagonals of a 4-cycle of edges of g, a factor
    missing both has an induced C4 and cannot be chordal.
    """
    m = len(non_edges)
    conf = [0] * m
    for i in range(m):
        a, b = non_edges[i]
        for j in range(i + 1, m):
            x, y = non_edges[j]
            if len({a, b, x, y}) < 4:
                continue
            if (
                g.has_edge(a, x)
                and g.has_edge(x, b)
                and g.has_edge(b, y)
                and g.has_edge(y, a)
            ):
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return conf


def _greedy_intersection(g, kind):
    """A valid intersection witness built greedily; used for timeout reporting."""
    recognizer = kind_recognizer(kind)
    remaining = list(g.non_edges())
    factors = []
    while remaining:
        absent = []
        for e in remaining:
            candidate_absent = absent + [e]
            extra = [d for d in g.non_edges() if d not in candidate_absent]
            factor = g.with_edges(extra)
            if recognizer(factor) is not None:
                absent = candidate_absent
        extra = [d for d in g.non_edges() if d not in absent]
        factors.append(g.with_edges(extra))
        remaining = [e for e in remaining if e not in absent]
    return IntersectionRep(tuple(factors), kind)


def _prefix_triggers(n, non_edges):
    """trigger[j] = largest prefix 0..p fully decided once non-edge j is set."""
    last_within = {}
    for j, (u, v) in enumerate(non_edges):
        for p in range(max(u, v), n):
            last_within[p] = max(last_within.get(p, -1), j)
    trigger = {}
    for p, j in last_within.items():
        trigger[j] = max(trigger.get(j, 0), p)
    return trigger


def _intersection_search(g, non_edges, conf, k, kind, deadline):
    n = g.n
    m = len(non_edges)
    recognizer = kind_recognizer(kind)
    claw = kind == KIND_UNIT_INTERVAL
    present = [list(g.rows) for _ in range(k)]
    absent = [[0] * n for _ in range(k)]
    subset_of = [0] * m
    triggers = _prefix_triggers(n, non_edges)
    counter = [0]

    def dead_after_absent(fi, a, b):
        pi, ai = present[fi], absent[fi]
        # (a,b) as diagonal of a decided 4-cycle whose other diagonal is absent
        both = pi[a] & pi[b]
        for x in _bits(both):
            if ai[x] & both:
                return True
        if claw:
            # (a,b) as a leaf pair of a decided claw
            for c in _bits(both):
                if pi[c] & ai[a] & ai[b]:
                    return True
        return False

    def dead_after_present(fi, a, b):
        pi, ai = present[fi], absent[fi]
        for x in _bits(pi[b] & ai[a]):
            if pi[x] & pi[a] & ai[b]:
                return True
        for x in _bits(pi[a] & ai[b]):
            if pi[x] & pi[b] & ai[a]:
                return True
        if claw:
            for centre, other in ((a, b), (b, a)):
                leaves = pi[centre] & ai[other]
                for x in _bits(leaves):
                    if leaves & ai[x]:
                        return True
        return False

    def prefix_ok(p):
        width = p + 1
        mask = (1 << width) - 1
        for fi in range(k):
            rows = [present[fi][v] & mask for v in range(width)]
            if recognizer(Graph(width, rows)) is None:
                return False
        return True

    def search(j, maxused):
        if j == m:
            return list(subset_of)
        counter[0] += 1
        if counter[0] % 1024 == 0 and time.monotonic() > deadline:
            raise SolverTimeout(
                f"{kind} intersection search timed out at k={k}",
                best_upper_bound=len(_greedy_intersection(g, kind)),
            )
        u, v = non_edges[j]
        bit_u, bit_v = 1 << u, 1 << v
        forbidden = 0
        for i in _bits(conf[j] & ((1 << j) - 1)):
            forbidden |= subset_of[i]
        for subset in range(1, 1 << k):
            if subset & forbidden:
                continue
            fresh = subset >> maxused
            if fresh and fresh & (fresh + 1):
                continue
            ok = True
            touched = []
            for fi in range(k):
                if subset >> fi & 1:
                    absent[fi][u] |= bit_v
                    absent[fi][v] |= bit_u
                    touched.append(fi)
                    if dead_after_absent(fi, u, v):
                        ok = False
                        break
                else:
                    present[fi][u] |= bit_v
                    present[fi][v] |= bit_u
                    touched.append(fi)
                    if dead_after_present(fi, u, v):
                        ok = False
                        break
            if ok and j in triggers and not prefix_ok(triggers[j]):
                ok = False
            if ok:
                subset_of[j] = subset
                got = search(j + 1, max(maxused, subset.bit_length()))
                if got is not None:
                    return got
                subset_of[j] = 0
            for fi in touched:
                if subset >> fi & 1:
                    absent[fi][u] &= ~bit_v
                    absent[fi][v] &= ~bit_u
                else:
                    present[fi][u] &= ~bit_v
                    present[fi][v] &= ~bit_u
        return None

    return search(0, 0)


def _intersection_dimension(g, kind, what, max_n, timeout_ms):
    _check_capacity(g, max_n, what)
    recognizer = kind_recognizer(kind)
    if recognizer(g) is not None:
        return DimensionResult(1, IntersectionRep((g,), kind))
    deadline = _deadline(timeout_ms)
    # colex order: every vertex prefix is fully decided as early as possible,
    # which lets the induced-prefix recognizer pruning fire at every column
    non_edges = sorted(g.non_edges(), key=lambda e: (e[1], e[0]))
    conf = _non_edge_conflicts(g, non_edges)
    k = max(2, _greedy_clique_bound(conf))
    while True:
        assignment = _intersection_search(g, non_edges, conf, k, kind, deadline)
        if assignment is not None:
            factors = []
            for fi in range(k):
                extra = [e for e, s in zip(non_edges, assignment) if not s >> fi & 1]
                factors.append(g.with_edges(extra))
            rep = IntersectionRep(tuple(factors), kind)
            _validate_intersection(g, rep)
            return DimensionResult(k, rep)
        k += 1
        if k > max(1, len(non_edges)):
            raise InternalConsistencyError(f"{what} search exceeded trivial bound")


def _validate_intersection(g, rep):
    recognizer = kind_recognizer(rep.kind)
    meet = [(1 << g.n) - 1 & ~(1 << v) for v in range(g.n)]
    for f in rep.factors:
        if f.n != g.n:
            raise InternalConsistencyError("intersection factor on wrong vertex set")
        for v in range(g.n):
            if g.rows[v] & ~f.rows[v]:
                raise InternalConsistencyError("factor is not a supergraph")
            meet[v] &= f.rows[v]
        if recognizer(f) is None:
            raise InternalConsistencyError(f"factor fails the {rep.kind} recognizer")
    if tuple(meet) != g.rows:
        raise InternalConsistencyError("factor intersection does not match the graph")


def boxicity(g: Graph, max_n=DEFAULT_MAX_N, timeout_ms=None):
    """Least k with g the intersection of k interval supergraphs, with witness.

    Complete graphs (and every interval graph) report 1, never 0.
    """
    return _intersection_dimension(g, KIND_INTERVAL, "boxicity", max_n, timeout_ms)


def cubicity(g: Graph, max_n=DEFAULT_MAX_N, timeout_ms=None):
    """Least k with g the intersection of k unit interval supergraphs."""
    return _intersection_dimension(g, KIND_UNIT_INTERVAL, "cubicity", max_n, timeout_ms)
