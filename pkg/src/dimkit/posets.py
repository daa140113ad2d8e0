"""Finite posets, linear extensions, realizers and an exact dimension oracle.

A poset on elements 0..n-1 is stored as one bitmask per element holding its
up-set (everything greater or equal). The dimension oracle is exact: it
covers the ordered incomparable pairs with k acyclic reversal sets, which is
equivalent to finding k linear extensions forming a realizer, and it proves
minimality before returning.

Poset text format (shared with the CLI): first line ``n``, then ``u v`` lines
meaning u < v; the reflexive-transitive closure is applied and a closure
cycle is an input error. ``#`` comments as in the graph format.
"""

import time
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    CapacityError,
    InputError,
    InternalConsistencyError,
    ParseError,
    SolverTimeout,
)
from .graphs import Graph, SplitPartition, _bits

__all__ = [
    "Poset",
    "CharPosetResult",
    "PosetDimension",
    "poset_from_relation",
    "characteristic_poset",
    "is_linear_extension",
    "is_realizer",
    "poset_dimension",
    "all_linear_extensions",
    "parse_poset",
    "format_poset",
]


class Poset:
    """Immutable partial order; ``up[x]`` is the bitmask of {y : x <= y}."""

    __slots__ = ("n", "up", "_hash")

    def __init__(self, n, up):
        up = tuple(up)
        if n < 0 or len(up) != n:
            raise InputError("up-set rows do not match element count")
        for x in range(n):
            if not up[x] >> x & 1:
                raise InputError(f"relation not reflexive at {x}")
            for y in _bits(up[x]):
                if y != x and up[y] >> x & 1:
                    raise InputError(f"antisymmetry violated by {x} and {y}")
                if up[y] & ~up[x]:
                    raise InputError(f"transitivity violated at {x} <= {y}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "_hash", hash((n, up)))

    def __setattr__(self, *_):
        raise AttributeError("Poset is immutable")

    def leq(self, x, y):
        return bool(self.up[x] >> y & 1)

    def incomparable(self, x, y):
        return x != y and not self.leq(x, y) and not self.leq(y, x)

    def incomparable_pairs(self):
        """Unordered incomparable pairs (x, y) with x < y."""
        return [
            (x, y)
            for x, y in combinations(range(self.n), 2)
            if self.incomparable(x, y)
        ]

    def is_chain(self):
        return not self.incomparable_pairs()

    def strict_pairs(self):
        return [
            (x, y) for x in range(self.n) for y in _bits(self.up[x]) if y != x
        ]

    def cover_pairs(self):
        """The transitive reduction as (x, y) pairs with x covered by y."""
        out = []
        for x, y in self.strict_pairs():
            if not any(
                z != x and z != y and self.leq(x, z) and self.leq(z, y)
                for z in range(self.n)
            ):
                out.append((x, y))
        return out

    def delete(self, x):
        """Poset on the remaining elements, relabelled preserving order."""
        keep = [e for e in range(self.n) if e != x]
        index = {e: i for i, e in enumerate(keep)}
        up = [0] * len(keep)
        for e in keep:
            for f in _bits(self.up[e]):
                if f != x:
                    up[index[e]] |= 1 << index[f]
        return Poset(len(keep), up)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset(n={self.n}, strict={self.strict_pairs()})"


def poset_from_relation(n, pairs) -> Poset:
    """Reflexive-transitive closure of ``u < v`` pairs; cycles are input errors."""
    if n < 0:
        raise InputError("element count must be non-negative")
    succ = [0] * n
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"pair ({u}, {v}) out of range for n={n}")
        if u != v:
            succ[u] |= 1 << v
    # Warshall closure
    up = list(succ)
    for k in range(n):
        bit = 1 << k
        for x in range(n):
            if up[x] & bit:
                up[x] |= up[k]
    for x in range(n):
        if up[x] >> x & 1:
            cycle = _trace_cycle(succ, x)
            raise InputError(
                "relation has a cycle: " + " -> ".join(map(str, cycle))
            )
        up[x] |= 1 << x
    return Poset(n, up)


def _trace_cycle(succ, start):
    """Recover one directed cycle through ``start`` for the error message."""
    path = [start]
    seen = {start: 0}
    cur = start
    while True:
        nxt = next(
            v for v in _bits(succ[cur]) if _reaches(succ, v, start) or v == start
        )
        if nxt in seen:
            return path[seen[nxt] :] + [nxt]
        seen[nxt] = len(path)
        path.append(nxt)
        cur = nxt


def _reaches(succ, src, dst):
    seen = 1 << src
    stack = [src]
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for w in _bits(succ[v] & ~seen):
            seen |= 1 << w
            stack.append(w)
    return False


# ---------------------------------------------------------------------------
# linear extensions and realizers


def is_linear_extension(p: Poset, order) -> bool:
    order = tuple(order)
    if sorted(order) != list(range(p.n)):
        return False
    pos = {e: i for i, e in enumerate(order)}
    return all(
        pos[x] <= pos[y] for x in range(p.n) for y in _bits(p.up[x])
    )


def is_realizer(p: Poset, extensions) -> bool:
    """True iff every member extends p and every incomparable pair is reversed."""
    extensions = [tuple(ext) for ext in extensions]
    if not all(is_linear_extension(p, ext) for ext in extensions):
        return False
    for x, y in p.incomparable_pairs():
        before = any(ext.index(x) < ext.index(y) for ext in extensions)
        after = any(ext.index(y) < ext.index(x) for ext in extensions)
        if not (before and after):
            return False
    return True


def all_linear_extensions(p: Poset):
    """All linear extensions, generated in lexicographic order."""
    out = []
    down = [0] * p.n
    for x in range(p.n):
        for y in _bits(p.up[x]):
            if y != x:
                down[y] |= 1 << x

    def rec(placed, acc):
        if len(acc) == p.n:
            out.append(tuple(acc))
            return
        for e in range(p.n):
            if placed >> e & 1:
                continue
            if down[e] & ~placed:
                continue
            rec(placed | (1 << e), acc + [e])

    rec(0, [])
    return out


def _lex_min_topological(n, above):
    """Lexicographically least topological order of the arc set ``above``.

    ``above[x]`` is the strict successor mask of x (everything forced after x).
    """
    indeg = [0] * n
    for x in range(n):
        for y in _bits(above[x]):
            indeg[y] += 1
    placed = 0
    order = []
    while len(order) < n:
        e = next(
            v for v in range(n) if not placed >> v & 1 and indeg[v] == 0
        )
        order.append(e)
        placed |= 1 << e
        for y in _bits(above[e]):
            indeg[y] -= 1
    return tuple(order)


# ---------------------------------------------------------------------------
# characteristic poset of a split graph


@dataclass(frozen=True)
class CharPosetResult:
    """Neighborhoods of independent-set vertices ordered by inclusion.

    ``neighborhoods[e]`` is the clique-vertex set of poset element e and
    ``representatives[e]`` the independent vertices sharing it. ``empty`` is
    the warning flag for a split graph with no independent vertices.
    """

    poset: Poset
    neighborhoods: tuple
    representatives: tuple
    empty: bool

    def element_of(self, vertex):
        for e, reps in enumerate(self.representatives):
            if vertex in reps:
                return e
        raise InputError(f"vertex {vertex} is not an independent-set vertex")


def characteristic_poset(g: Graph, part: SplitPartition) -> CharPosetResult:
    """Distinct independent-vertex neighborhoods of a split graph, by inclusion."""
    part.validate(g)
    groups = {}
    for u in part.independent:
        key = frozenset(g.neighbors(u))
        groups.setdefault(key, []).append(u)
    neighborhoods = sorted(groups, key=lambda s: tuple(sorted(s)))
    m = len(neighborhoods)
    up = [1 << e for e in range(m)]
    for a, b in combinations(range(m), 2):
        if neighborhoods[a] <= neighborhoods[b]:
            up[a] |= 1 << b
        elif neighborhoods[b] <= neighborhoods[a]:
            up[b] |= 1 << a
    poset = Poset(m, up)
    return CharPosetResult(
        poset=poset,
        neighborhoods=tuple(tuple(sorted(s)) for s in neighborhoods),
        representatives=tuple(tuple(sorted(groups[s])) for s in neighborhoods),
        empty=(m == 0),
    )


# ---------------------------------------------------------------------------
# exact poset dimension


@dataclass(frozen=True)
class PosetDimension:
    k: int
    extensions: tuple


def _conflicts(p, pairs):
    """Bitmask per ordered pair of the pairs it can never share an extension with.

    Two ordered pairs conflict when adding both as arcs to the order creates a
    directed cycle; a greedy clique over this relation is a sound lower bound
    on the dimension.
    """
    m = len(pairs)
    conf = [0] * m
    for i in range(m):
        xi, yi = pairs[i]
        for j in range(i + 1, m):
            xj, yj = pairs[j]
            # arcs x_i -> y_i and x_j -> y_j close a cycle through p
            cyc = (p.leq(yi, xj) or yi == xj) and (p.leq(yj, xi) or yj == xi)
            if cyc:
                conf[i] |= 1 << j
                conf[j] |= 1 << i
    return conf


def _greedy_clique(conf):
    best = 1 if conf else 0
    m = len(conf)
    order = sorted(range(m), key=lambda i: -conf[i].bit_count())
    for seed in order[:8]:
        clique = [seed]
        common = conf[seed]
        for v in order:
            if common >> v & 1:
                clique.append(v)
                common &= conf[v]
        best = max(best, len(clique))
    return best


def poset_dimension(p: Poset, max_n=8, timeout_ms=None) -> PosetDimension:
    """Exact dimension with a minimum realizer as witness.

    Every ordered incomparable pair (x, y) must appear as x-before-y in some
    extension, and a realizer of size k exists iff the ordered pairs can each
    be assigned to one of k slots whose arc sets stay acyclic over p. The
    search assigns pairs in lexicographic order, breaks slot symmetry by
    introducing slots in order, prunes with pairwise arc conflicts, and turns
    the first (canonical) assignment into lexicographically least topological
    orders. Minimality is certified by the failed level below k, or by a
    clique of pairwise conflicting pairs when that is already decisive.
    """
    if p.n == 0:
        raise InputError("dimension of the empty poset is undefined")
    if p.n > max_n:
        raise CapacityError(f"poset has {p.n} elements, bound is {max_n}")
    deadline = None
    if timeout_ms is not None:
        deadline = time.monotonic() + timeout_ms / 1000.0

    pairs = []
    for x, y in p.incomparable_pairs():
        pairs.append((x, y))
        pairs.append((y, x))
    pairs.sort()
    m = len(pairs)
    if m == 0:
        return PosetDimension(1, (_lex_min_topological(p.n, _strict_masks(p)),))

    conf = _conflicts(p, pairs)
    start_k = max(2, _greedy_clique(conf))

    base = _strict_masks(p)
    k = start_k
    while True:
        got = _dimension_search(p, pairs, conf, base, k, deadline)
        if got is not None:
            return PosetDimension(k, got)
        k += 1


def _strict_masks(p):
    return [p.up[x] & ~(1 << x) for x in range(p.n)]


def _dimension_search(p, pairs, conf, base, k, deadline):
    n = p.n
    m = len(pairs)
    above = [list(base) for _ in range(k)]
    slot_of = [-1] * m
    counter = [0]

    def add_arc(fi, x, y):
        rows = above[fi]
        snapshot = list(rows)
        gain = rows[y] | (1 << y)
        for w in range(n):
            if w == x or rows[w] >> x & 1:
                rows[w] |= gain
        return snapshot

    def search(j, maxused):
        if j == m:
            return tuple(_lex_min_topological(n, above[i]) for i in range(k))
        counter[0] += 1
        if deadline is not None and counter[0] % 1024 == 0:
            if time.monotonic() > deadline:
                raise SolverTimeout("poset dimension search timed out")
        x, y = pairs[j]
        forbidden = 0
        for i in _bits(conf[j] & ((1 << j) - 1)):
            forbidden |= 1 << slot_of[i]
        for fi in range(min(k, maxused + 1)):
            if forbidden >> fi & 1:
                continue
            if above[fi][y] >> x & 1:
                continue  # arc would close a cycle in this slot
            snap = add_arc(fi, x, y)
            slot_of[j] = fi
            got = search(j + 1, max(maxused, fi + 1))
            if got is not None:
                return got
            slot_of[j] = -1
            above[fi] = snap
        return None

    got = search(0, 0)
    if got is not None and not is_realizer(p, got):
        raise InternalConsistencyError("search produced an invalid realizer")
    return got


# ---------------------------------------------------------------------------
# text format


def parse_poset(text: str) -> Poset:
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("expected a single element count", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"bad element count {fields[0]!r}", lineno) from None
            if n < 0:
                raise ParseError("element count must be non-negative", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad pair {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"pair ({u}, {v}) out of range", lineno)
        pairs.append((u, v))
    if n is None:
        raise ParseError("missing element count line")
    return poset_from_relation(n, pairs)


def format_poset(p: Poset) -> str:
    lines = [str(p.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(p.cover_pairs()))
    return "\n".join(lines) + "\n"
