import math
import random

import pytest

from dimkit.errors import CapacityError, InputError, SolverTimeout
from dimkit.graphs import Graph, complement, recognize_interval, recognize_threshold
from dimkit.solvers import (
    KIND_INTERVAL,
    KIND_THRESHOLD,
    KIND_UNIT_INTERVAL,
    IntersectionRep,
    boxicity,
    cubicity,
    default_timeout_ms,
    threshold_dimension,
    threshold_intersection_number,
)
from dimkit.verify import (
    all_split_graphs,
    check_cover,
    check_intersection,
    cover_no_containment,
    gen_random_graph,
    gen_random_split,
)

import oracles


def octahedron():
    missing = {(0, 1), (2, 3), (4, 5)}
    return Graph.from_edges(
        6, [(u, v) for u in range(6) for v in range(u + 1, 6) if (u, v) not in missing]
    )


class TestThresholdDimension:
    def test_threshold_graph_is_one(self):
        assert threshold_dimension(Graph.star(4)).k == 1

    def test_p4_is_two(self):
        result = threshold_dimension(Graph.path(4))
        assert result.k == 2
        assert check_cover(Graph.path(4), result.witness)
        assert cover_no_containment(result.witness)

    def test_c4_is_two(self):
        result = threshold_dimension(Graph.cycle(4))
        assert result.k == 2
        assert check_cover(Graph.cycle(4), result.witness)

    def test_edgeless_is_zero(self):
        result = threshold_dimension(Graph.empty(4))
        assert result.k == 0 and len(result.witness) == 0
        assert check_cover(Graph.empty(4), result.witness)

    def test_matches_bruteforce_exhaustively_n4(self):
        pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
        for mask in range(1 << 6):
            g = Graph.from_edges(4, [pairs[b] for b in range(6) if mask >> b & 1])
            result = threshold_dimension(g)
            expect = oracles.tdim_bf(g)
            assert result.k == expect
            assert check_cover(g, result.witness)

    def test_matches_bruteforce_n5_sample(self):
        rng = random.Random(0)
        for _ in range(15):
            g = gen_random_graph(5, rng.random(), rng.randrange(2**32))
            assert threshold_dimension(g).k == oracles.tdim_bf(g)

    def test_witnesses_have_no_containment(self):
        rng = random.Random(1)
        for _ in range(25):
            g = gen_random_graph(6, rng.random(), rng.randrange(2**32))
            result = threshold_dimension(g)
            assert cover_no_containment(result.witness)

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            threshold_dimension(Graph.empty(11))
        with pytest.raises(InputError):
            threshold_dimension(Graph.empty(0))

    def test_deterministic(self):
        g = gen_random_graph(7, 0.5, 99)
        a = threshold_dimension(g)
        b = threshold_dimension(g)
        assert a.k == b.k and a.witness == b.witness


class TestThresholdIntersection:
    def test_threshold_graph(self):
        g = Graph.star(3)
        result = threshold_intersection_number(g)
        assert result.k == 1
        assert check_intersection(g, result.witness)

    def test_p4(self):
        result = threshold_intersection_number(Graph.path(4))
        assert result.k == 2
        assert check_intersection(Graph.path(4), result.witness)

    def test_complete_graph_convention(self):
        result = threshold_intersection_number(Graph.complete(4))
        assert result.k == 1
        assert result.witness.factors == (Graph.complete(4),)

    def test_equals_tdim_of_complement(self):
        rng = random.Random(2)
        for _ in range(25):
            g = gen_random_graph(6, rng.random(), rng.randrange(2**32))
            tin = threshold_intersection_number(g)
            td = threshold_dimension(complement(g))
            assert tin.k == max(1, td.k)


class TestBoxicity:
    def test_interval_graph_is_one(self):
        assert boxicity(Graph.path(5)).k == 1
        assert boxicity(Graph.complete(4)).k == 1

    def test_c4_is_two(self):
        result = boxicity(Graph.cycle(4))
        assert result.k == 2
        assert check_intersection(Graph.cycle(4), result.witness)

    def test_octahedron_is_three(self):
        result = boxicity(octahedron())
        assert result.k == 3
        assert check_intersection(octahedron(), result.witness)

    def test_matches_bruteforce_exhaustively_n4(self):
        pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
        for mask in range(1 << 6):
            g = Graph.from_edges(4, [pairs[b] for b in range(6) if mask >> b & 1])
            assert boxicity(g).k == oracles.box_bf(g)

    def test_matches_bruteforce_n5_sample(self):
        rng = random.Random(3)
        for _ in range(10):
            g = gen_random_graph(5, rng.random(), rng.randrange(2**32))
            assert boxicity(g).k == oracles.box_bf(g)


class TestCubicity:
    def test_unit_interval_graph_is_one(self):
        assert cubicity(Graph.path(5)).k == 1

    def test_claw_is_two(self):
        result = cubicity(Graph.star(3))
        assert result.k == 2
        assert check_intersection(Graph.star(3), result.witness)

    def test_c4_is_two(self):
        result = cubicity(Graph.cycle(4))
        assert result.k == 2

    def test_star_formula(self):
        for leaves in range(2, 8):
            assert cubicity(Graph.star(leaves)).k == max(1, math.ceil(math.log2(leaves)))

    def test_matches_bruteforce_exhaustively_n4(self):
        pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
        for mask in range(1 << 6):
            g = Graph.from_edges(4, [pairs[b] for b in range(6) if mask >> b & 1])
            assert cubicity(g).k == oracles.cub_bf(g)

    def test_matches_bruteforce_n5_sample(self):
        rng = random.Random(4)
        for _ in range(10):
            g = gen_random_graph(5, rng.random(), rng.randrange(2**32))
            assert cubicity(g).k == oracles.cub_bf(g)


class TestCrossParameterInvariants:
    def test_box_at_most_tint(self):
        rng = random.Random(5)
        for _ in range(30):
            g = gen_random_graph(7, rng.random(), rng.randrange(2**32))
            assert boxicity(g).k <= threshold_intersection_number(g).k

    def test_cub_between_box_and_log_bound(self):
        rng = random.Random(6)
        for _ in range(25):
            n = rng.randint(2, 7)
            g = gen_random_graph(n, rng.random(), rng.randrange(2**32))
            box = boxicity(g).k
            cub = cubicity(g).k
            assert box <= cub <= box * math.ceil(math.log2(n))

    def test_split_tint_at_most_two_box(self):
        rng = random.Random(7)
        for _ in range(40):
            g, _ = gen_random_split(rng.randint(2, 8), rng.random(), rng.randrange(2**32))
            assert threshold_intersection_number(g).k <= 2 * boxicity(g).k

    def test_split_interval_tint_at_most_two(self):
        count = 0
        for g, _ in all_split_graphs(5):
            if recognize_interval(g) is not None:
                assert threshold_intersection_number(g).k <= 2
                count += 1
        assert count > 0


class TestTimeouts:
    def test_timeout_carries_verified_bound(self):
        g = gen_random_graph(9, 0.5, 12345)
        if recognize_interval(g) is not None:  # make sure a search actually runs
            g = complement(g)
        try:
            boxicity(g, timeout_ms=1)
        except SolverTimeout as exc:
            assert exc.best_upper_bound is None or exc.best_upper_bound >= 1
        # no exception means the search won the race; that is fine too

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("DIMKIT_TIMEOUT_MS", "1234")
        assert default_timeout_ms() == 1234
        monkeypatch.setenv("DIMKIT_TIMEOUT_MS", "zap")
        with pytest.raises(InputError):
            default_timeout_ms()

    def test_kind_validation(self):
        with pytest.raises(InputError):
            IntersectionRep((Graph.path(3),), "boxes")
