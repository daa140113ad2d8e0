"""Witness checkers, instance generators and named verification suites.

Each suite sweeps exhaustive small instances plus seeded random ones and
evaluates one of the relationships between poset dimension, threshold
dimension/intersection number, boxicity and cubicity, using the exact
solvers on one side and the constructive reductions on the other. A suite
returns a TheoremReport; zero failures means every instance satisfied the
claim. Reports are reproducible from the seed (timing aside).
"""

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import ceil, log2

from .errors import CapacityError, InputError, InternalConsistencyError, SolverTimeout
from .graphs import (
    Graph,
    IntervalRep,
    SplitPartition,
    complement,
    format_graph,
    induced_subgraph,
    recognize_interval,
    recognize_split,
    recognize_threshold,
)
from .posets import (
    Poset,
    characteristic_poset,
    format_poset,
    is_realizer,
    poset_dimension,
    poset_from_relation,
)
from .reductions import (
    GPrime,
    box_to_threshold_cover,
    interval_reps_from_threshold_cover,
    normalized_threshold_factors,
    poset_to_split_graph,
    realizer_from_threshold_cover,
    split_to_gprime,
    threshold_graphs_from_realizer,
    two_threshold_cover,
)
from .solvers import (
    KIND_INTERVAL,
    KIND_THRESHOLD,
    IntersectionRep,
    ThresholdCover,
    boxicity,
    cubicity,
    kind_recognizer,
    threshold_dimension,
    threshold_intersection_number,
)

__all__ = [
    "TheoremReport",
    "check_intersection",
    "check_cover",
    "cover_no_containment",
    "classify_factor",
    "char_poset_dimension",
    "verify_theorem",
    "theorem_ids",
    "gen_random_split",
    "gen_random_poset",
    "gen_random_graph",
    "all_graphs",
    "all_split_graphs",
    "all_posets",
    "graph_classes",
]


# ---------------------------------------------------------------------------
# witness checkers


def check_intersection(g: Graph, rep: IntersectionRep) -> bool:
    """True iff the factors are supergraphs of the declared kind meeting in g."""
    recognizer = kind_recognizer(rep.kind)
    if any(f.n != g.n for f in rep.factors):
        return False
    meet = [(1 << g.n) - 1 & ~(1 << v) for v in range(g.n)]
    for f in rep.factors:
        for v in range(g.n):
            if g.rows[v] & ~f.rows[v]:
                return False
            meet[v] &= f.rows[v]
        if recognizer(f) is None:
            return False
    return tuple(meet) == g.rows


def check_cover(g: Graph, cover: ThresholdCover) -> bool:
    """True iff the members are threshold spanning subgraphs covering E(g)."""
    union = [0] * g.n
    for f in cover.factors:
        if f.n != g.n:
            return False
        for v in range(g.n):
            if f.rows[v] & ~g.rows[v]:
                return False
            union[v] |= f.rows[v]
        if recognize_threshold(f) is None:
            return False
    return tuple(union) == g.rows


def cover_no_containment(cover: ThresholdCover) -> bool:
    """True iff no member's edge set contains another's (minimality shape)."""
    for a, b in permutations(cover.factors, 2):
        if all(a.rows[v] & ~b.rows[v] == 0 for v in range(a.n)):
            return False
    return True


def char_poset_dimension(char, max_n=8, timeout_ms=None) -> int:
    """Dimension of a characteristic poset; the empty poset counts as 1."""
    if char.empty:
        return 1
    return poset_dimension(char.poset, max_n=max_n, timeout_ms=timeout_ms).k


def classify_factor(gp: GPrime, factor_rep: IntervalRep) -> int:
    """Which copies hold the extreme independent intervals of a doubled-graph factor.

    The factor must be an interval supergraph of the doubled graph that is
    split with the doubled graph's independent set. Returns 0 for the trivial
    construction (nothing to classify), otherwise the case number 1-4 by the
    location of the leftmost/rightmost independent intervals, after asserting
    the structural consequence of that case:

    1, 2: extremes in different copies -> both copy restrictions threshold;
    3: both extremes in copy 1 -> copy-2 restriction is a complete split
       graph and the copy-1 restriction has threshold intersection number
       at most 2;
    4: the mirror image of 3.

    A failed assertion raises InternalConsistencyError; it would contradict
    a proven statement and therefore indicates a bug.
    """
    if gp.trivial_case:
        return 0
    factor = factor_rep.graph()
    if factor.n != gp.graph.n:
        raise InputError("classify_factor: factor on wrong vertex set")
    for v in range(gp.graph.n):
        if gp.graph.rows[v] & ~factor.rows[v]:
            raise InputError("classify_factor: factor is not a supergraph")
    independent = gp.partition.independent
    if not factor.is_independent(independent):
        raise InputError("classify_factor: factor moves the independent set")

    n = gp.base.n
    ind1 = [v for v in independent if v < n]
    ind2 = [v for v in independent if v >= n]
    u_l = min(independent, key=lambda v: factor_rep.intervals[v][0])
    u_r = max(independent, key=lambda v: factor_rep.intervals[v][1])

    part1 = induced_subgraph(factor, gp.copy1)
    part2 = induced_subgraph(factor, gp.copy2)

    if (u_l in ind1) != (u_r in ind1):
        case = 1 if u_l in ind1 else 2
        if recognize_threshold(part1) is None or recognize_threshold(part2) is None:
            raise InternalConsistencyError(
                f"case {case}: a copy restriction is not threshold"
            )
        return case
    if u_l in ind1:
        case = 3
        full_side, bounded_side = part2, part1
    else:
        case = 4
        full_side, bounded_side = part1, part2
    base_part = gp.base_partition
    for u in base_part.clique:
        for v in base_part.independent:
            if not full_side.has_edge(u, v):
                raise InternalConsistencyError(
                    f"case {case}: opposite copy is not a complete split graph"
                )
    t = threshold_dimension(complement(bounded_side), max_n=bounded_side.n).k
    if t > 2:
        raise InternalConsistencyError(
            f"case {case}: same-side restriction needs {t} > 2 threshold graphs"
        )
    return case


# ---------------------------------------------------------------------------
# instance generators


def gen_random_split(n, density, seed):
    """Random split graph: random clique size, each cross edge with ``density``."""
    if n < 1:
        raise InputError("gen_random_split requires n >= 1")
    rng = random.Random(seed)
    k = rng.randint(0, n)
    perm = list(range(n))
    rng.shuffle(perm)
    clique = sorted(perm[:k])
    independent = sorted(perm[k:])
    edges = [(u, v) for u, v in combinations(clique, 2)]
    for u in clique:
        for v in independent:
            if rng.random() < density:
                edges.append((u, v))
    g = Graph.from_edges(n, edges)
    part = SplitPartition(tuple(clique), tuple(independent))
    part.validate(g)
    return g, part


def gen_random_poset(n, density, seed) -> Poset:
    """Random poset: DAG arcs below a random permutation, transitively closed."""
    if n < 1:
        raise InputError("gen_random_poset requires n >= 1")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                pairs.append((perm[i], perm[j]))
    return poset_from_relation(n, pairs)


def gen_random_graph(n, density, seed) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v) for u, v in combinations(range(n), 2) if rng.random() < density
    ]
    return Graph.from_edges(n, edges)


def all_graphs(n):
    """All labeled graphs on n vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(
            n, [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
        )


def all_split_graphs(n):
    for g in all_graphs(n):
        part = recognize_split(g)
        if isinstance(part, SplitPartition):
            yield g, part


def all_posets(n):
    """All labeled posets on n elements (1, 3, 19, 219 for n = 1..4)."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    for mask in range(1 << len(pairs)):
        up = [1 << x for x in range(n)]
        for b, (x, y) in enumerate(pairs):
            if mask >> b & 1:
                up[x] |= 1 << y
        try:
            yield Poset(n, up)
        except InputError:
            continue


def graph_classes(n):
    """One lexicographically least representative per isomorphism class.

    Returns (graphs, orbit_sizes). Uses a vectorized sweep over all edge
    masks: each vertex permutation permutes edge slots, and the orbit
    minimum is the canonical form.
    """
    import numpy as np

    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    index = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << m, dtype=np.int64)
    canon = masks.copy()
    for perm in permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        mapped = np.zeros_like(masks)
        for b, (i, j) in enumerate(pairs):
            a, c = perm[i], perm[j]
            b2 = index[(a, c) if a < c else (c, a)]
            mapped |= ((masks >> b) & 1) << b2
        np.minimum(canon, mapped, out=canon)
    reps, counts = np.unique(canon, return_counts=True)
    graphs = [
        Graph.from_edges(n, [pairs[b] for b in range(m) if int(mask) >> b & 1])
        for mask in reps
    ]
    return graphs, [int(c) for c in counts]


# ---------------------------------------------------------------------------
# theorem suites


@dataclass
class TheoremReport:
    """Outcome of one verification suite.

    ``failures`` holds serialized counterexample instances (replayable via
    the CLI text formats); ``skipped`` counts instances whose oracle call hit
    the capacity or time budget. Everything except ``elapsed_ms`` is a pure
    function of (theorem, parameters, seed).
    """

    theorem: str
    instances: int
    failures: list
    seed: int
    elapsed_ms: int
    skipped: int = 0

    @property
    def passed(self):
        return not self.failures

    def to_json(self, timing=True) -> str:
        payload = {
            "theorem": self.theorem,
            "instances": self.instances,
            "failures": self.failures,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms if timing else 0,
            "skipped": self.skipped,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


class _Suite:
    """Mutable tallies shared by the suite bodies."""

    def __init__(self, rng):
        self.rng = rng
        self.instances = 0
        self.skipped = 0
        self.failures = []

    def fail(self, kind, text, reason):
        self.failures.append({"kind": kind, "instance": text, "reason": reason})

    def run(self, kind, text, body):
        self.instances += 1
        try:
            body()
        except (SolverTimeout, CapacityError):
            self.instances -= 1
            self.skipped += 1
        except InputError as exc:
            self.fail(kind, text, f"input error: {exc}")
        except InternalConsistencyError as exc:
            self.fail(kind, text, f"internal consistency: {exc}")
        except AssertionError as exc:
            self.fail(kind, text, str(exc) or "assertion failed")


def _check(condition, message):
    if not condition:
        raise AssertionError(message)


def _poset_stream(suite, n_max, samples, exhaustive_bound=4):
    for n in range(1, min(exhaustive_bound, n_max) + 1):
        yield from all_posets(n)
    lo = min(exhaustive_bound, n_max) + 1
    if lo > n_max:
        return
    for _ in range(samples):
        n = suite.rng.randint(lo, n_max)
        density = suite.rng.random()
        yield gen_random_poset(n, density, suite.rng.randrange(2**32))


def _split_stream(suite, n_max, samples, exhaustive_bound=5):
    for n in range(1, min(exhaustive_bound, n_max) + 1):
        yield from all_split_graphs(n)
    lo = min(exhaustive_bound, n_max) + 1
    if lo > n_max:
        return
    for _ in range(samples):
        n = suite.rng.randint(lo, n_max)
        density = suite.rng.random()
        yield gen_random_split(n, density, suite.rng.randrange(2**32))


def _suite_cor_dim(suite, n_max, samples):
    """dim(P) equals the threshold intersection number of P's split graph."""
    for p in _poset_stream(suite, n_max, samples):
        text = format_poset(p)

        def body(p=p):
            dim = poset_dimension(p, max_n=max(8, n_max))
            built = poset_to_split_graph(p)
            tin = threshold_intersection_number(built.graph, max_n=2 * p.n)
            _check(
                dim.k == tin.k,
                f"dim={dim.k} but threshold intersection number={tin.k}",
            )

        suite.run("poset", text, body)


def _suite_threshlb(suite, n_max, samples):
    """A minimum realizer yields dim(P) threshold graphs intersecting to G_P."""
    for p in _poset_stream(suite, n_max, samples):
        text = format_poset(p)

        def body(p=p):
            dim = poset_dimension(p, max_n=max(8, n_max))
            built = poset_to_split_graph(p)
            rep = threshold_graphs_from_realizer(p, dim.extensions)
            _check(len(rep) == dim.k, "factor count differs from dimension")
            _check(
                check_intersection(built.graph, rep),
                "realizer factors fail the intersection check",
            )
            tin = threshold_intersection_number(built.graph, max_n=2 * p.n)
            _check(tin.k <= dim.k, f"tint={tin.k} exceeds dim={dim.k}")

        suite.run("poset", text, body)


def _suite_cor_box(suite, n_max, samples):
    """boxicity(G_P) is at most dim(P)."""
    for p in _poset_stream(suite, n_max, samples):
        text = format_poset(p)

        def body(p=p):
            dim = poset_dimension(p, max_n=max(8, n_max))
            built = poset_to_split_graph(p)
            box = boxicity(built.graph, max_n=2 * p.n)
            _check(box.k <= dim.k, f"boxicity={box.k} exceeds dim={dim.k}")

        suite.run("poset", text, body)


def _suite_char_thresh(suite, n_max, samples):
    """dim of the characteristic poset is at most the threshold intersection
    number, witnessed by the constructed realizer."""
    for g, part in _split_stream(suite, n_max, samples):
        text = format_graph(g)

        def body(g=g, part=part):
            tin = threshold_intersection_number(g, max_n=max(10, g.n))
            char = characteristic_poset(g, part)
            dim = char_poset_dimension(char, max_n=max(8, n_max))
            _check(dim <= tin.k, f"char poset dim={dim} exceeds tint={tin.k}")
            realizer = realizer_from_threshold_cover(g, part, tin.witness)
            _check(len(realizer) == tin.k, "realizer size differs from tint")
            if not char.empty:
                _check(
                    is_realizer(char.poset, realizer),
                    "constructed realizer is invalid",
                )

        suite.run("graph", text, body)


def _suite_char_box(suite, n_max, samples):
    """dim(char poset) <= tint <= 2 * boxicity, with the 2k-factor witness."""
    for g, part in _split_stream(suite, n_max, samples):
        text = format_graph(g)

        def body(g=g, part=part):
            tin = threshold_intersection_number(g, max_n=max(10, g.n))
            box = boxicity(g, max_n=max(10, g.n))
            char = characteristic_poset(g, part)
            dim = char_poset_dimension(char, max_n=max(8, n_max))
            _check(dim <= tin.k, f"char poset dim={dim} exceeds tint={tin.k}")
            _check(tin.k <= 2 * box.k, f"tint={tin.k} exceeds 2*box={2 * box.k}")
            doubled = box_to_threshold_cover(g, part, box.witness)
            _check(len(doubled) == 2 * box.k, "doubling produced a wrong count")
            _check(
                check_intersection(g, doubled),
                "doubled threshold factors fail the intersection check",
            )
            realizer = realizer_from_threshold_cover(g, part, doubled)
            if not char.empty:
                _check(
                    is_realizer(char.poset, realizer),
                    "realizer from doubled factors is invalid",
                )

        suite.run("graph", text, body)


def _suite_split_int_thresh(suite, n_max, samples):
    """Split interval graphs have threshold intersection number at most 2."""

    def handle(g, part):
        text = format_graph(g)

        def body():
            rep = recognize_interval(g)
            _check(rep is not None, "instance is not interval")
            tin = threshold_intersection_number(g, max_n=max(10, g.n))
            _check(tin.k <= 2, f"tint={tin.k} exceeds 2 on a split interval graph")
            g1, g2 = two_threshold_cover(g, part, rep)
            _check(
                check_intersection(
                    g, IntersectionRep((g1, g2), KIND_THRESHOLD)
                ),
                "two-factor witness fails the intersection check",
            )

        suite.run("graph", text, body)

    for g, part in _split_stream(suite, min(n_max, 5), 0):
        if recognize_interval(g) is not None:
            handle(g, part)
    produced = 0
    attempts = 0
    while produced < samples and attempts < 100 * samples:
        attempts += 1
        n = suite.rng.randint(3, n_max)
        density = suite.rng.random()
        g, part = gen_random_split(n, density, suite.rng.randrange(2**32))
        if recognize_interval(g) is None:
            continue
        produced += 1
        handle(g, part)


def _suite_gprime_eq(suite, n_max, samples):
    """boxicity of the doubled graph equals the threshold dimension of h.

    Edgeless h is skipped: its threshold dimension is 0 while boxicity is
    at least 1 by definition, so the equality is only claimed for graphs
    with at least one edge.
    """

    def handle(h):
        if h.edge_count == 0:
            return
        text = format_graph(h)

        def body():
            tdim = threshold_dimension(h, max_n=max(10, h.n))
            gp = split_to_gprime(h)
            box = boxicity(gp.graph, max_n=2 * h.n)
            _check(
                box.k == tdim.k,
                f"boxicity(G')={box.k} but threshold dimension={tdim.k}",
            )
            if gp.trivial_case:
                return
            supergraphs = [complement(f) for f in tdim.witness.factors]
            normalized = normalized_threshold_factors(
                gp.base, gp.base_partition, supergraphs
            )
            built = interval_reps_from_threshold_cover(h, normalized)
            _check(len(built) == tdim.k, "pipeline factor count mismatch")
            rep = IntersectionRep(tuple(fg for fg, _ in built), KIND_INTERVAL)
            _check(
                check_intersection(gp.graph, rep),
                "interval factors fail the intersection check",
            )
            for _, factor_rep in built:
                case = classify_factor(gp, factor_rep)
                _check(case in (1, 2), f"pipeline factor classified as case {case}")

        suite.run("graph", text, body)

    for g, _ in _split_stream(suite, min(n_max, 4), 0, exhaustive_bound=4):
        handle(g)
    lo = min(n_max, 4) + 1
    if lo <= n_max:
        for _ in range(samples):
            n = suite.rng.randint(lo, n_max)
            g, _ = gen_random_split(n, suite.rng.random(), suite.rng.randrange(2**32))
            handle(g)


def _suite_cub_bounds(suite, n_max, samples):
    """boxicity <= cubicity <= boxicity * ceil(log2 n) per isomorphism class.

    The bound's log factor is read as 1 for n = 1, where both parameters are
    1. Classes are swept exhaustively up to 6 vertices; the parameters are
    isomorphism invariants, so each class verdict covers its whole orbit.
    """

    def handle(g):
        text = format_graph(g)

        def body():
            box = boxicity(g, max_n=max(10, g.n))
            cub = cubicity(g, max_n=max(10, g.n))
            _check(box.k <= cub.k, f"box={box.k} exceeds cub={cub.k}")
            factor = max(1, ceil(log2(g.n))) if g.n > 1 else 1
            _check(
                cub.k <= box.k * factor,
                f"cub={cub.k} exceeds box*ceil(log2 n)={box.k * factor}",
            )

        suite.run("graph", text, body)

    for n in range(1, min(6, n_max) + 1):
        graphs, _ = graph_classes(n)
        for g in graphs:
            handle(g)
    lo = min(6, n_max) + 1
    if lo <= n_max:
        for _ in range(samples):
            n = suite.rng.randint(lo, n_max)
            handle(gen_random_graph(n, suite.rng.random(), suite.rng.randrange(2**32)))


_THEOREMS = {
    "cor_dim": (_suite_cor_dim, 6, 200, 8),
    "threshLB": (_suite_threshlb, 6, 100, 8),
    "cor_box": (_suite_cor_box, 5, 100, 6),
    "charThresh": (_suite_char_thresh, 8, 300, 10),
    "charBox": (_suite_char_box, 8, 300, 10),
    "splitIntThresh": (_suite_split_int_thresh, 9, 500, 10),
    "gprime_eq": (_suite_gprime_eq, 5, 100, 5),
    "cub_bounds": (_suite_cub_bounds, 6, 0, 8),
}


def theorem_ids():
    return sorted(_THEOREMS)


def verify_theorem(theorem, n_max=None, samples=None, seed=0) -> TheoremReport:
    """Run one named suite and collect a report.

    ``n_max`` bounds instance sizes (suite-specific default and cap),
    ``samples`` is the random instance budget beyond the exhaustive range,
    and the seed fixes the whole instance stream. Oracle timeouts and
    capacity refusals are recorded as skips, not failures.
    """
    if theorem not in _THEOREMS:
        raise InputError(
            f"unknown theorem {theorem!r}; valid ids: {', '.join(theorem_ids())}"
        )
    body, default_n, default_samples, cap = _THEOREMS[theorem]
    n_max = default_n if n_max is None else n_max
    samples = default_samples if samples is None else samples
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    if n_max > cap:
        raise InputError(f"n_max={n_max} exceeds the {theorem} capacity {cap}")
    if samples < 0:
        raise InputError("samples must be non-negative")
    suite = _Suite(random.Random(seed))
    start = time.monotonic()
    body(suite, n_max, samples)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return TheoremReport(
        theorem=theorem,
        instances=suite.instances,
        failures=suite.failures,
        seed=seed,
        elapsed_ms=elapsed_ms,
        skipped=suite.skipped,
    )
