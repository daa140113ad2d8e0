import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimkit.cli import (
    format_interval_file,
    format_realizer_file,
    format_witness_graphs,
    parse_interval_file,
    parse_realizer_file,
    parse_witness_graphs,
)
from dimkit.errors import ParseError
from dimkit.graphs import Graph, IntervalRep, format_graph, parse_graph
from dimkit.posets import format_poset, parse_poset, poset_from_relation
from dimkit.verify import gen_random_poset


class TestGraphFormat:
    def test_round_trip(self):
        g = Graph.from_edges(5, [(0, 1), (2, 4), (1, 3)])
        assert parse_graph(format_graph(g)) == g

    def test_comments_and_blank_lines(self):
        text = "# a graph\n3\n\n0 1  # inline comment\n# trailing\n"
        assert parse_graph(text) == Graph.from_edges(3, [(0, 1)])

    def test_duplicate_edges_ignored(self):
        assert parse_graph("3\n0 1\n1 0\n0 1\n") == Graph.from_edges(3, [(0, 1)])

    def test_self_loop_rejected(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_graph("3\n1 1\n")

    def test_out_of_range_rejected(self):
        with pytest.raises(ParseError, match="range"):
            parse_graph("3\n0 7\n")

    def test_garbage_rejected_with_line_number(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_graph("3\nnope\n")

    def test_missing_count(self):
        with pytest.raises(ParseError):
            parse_graph("# nothing here\n")

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 7), st.randoms(use_true_random=False))
    def test_round_trip_random(self, n, rng):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.5
        ]
        g = Graph.from_edges(n, edges)
        assert parse_graph(format_graph(g)) == g


class TestPosetFormat:
    def test_round_trip_uses_cover_pairs(self):
        p = poset_from_relation(4, [(0, 1), (1, 2), (0, 3)])
        text = format_poset(p)
        assert "0 2" not in text.splitlines()  # implied pair not written
        assert parse_poset(text) == p

    def test_cycle_rejected(self):
        with pytest.raises(Exception, match="cycle"):
            parse_poset("2\n0 1\n1 0\n")

    def test_round_trip_random(self):
        rng = random.Random(0)
        for _ in range(30):
            p = gen_random_poset(rng.randint(1, 7), rng.random(), rng.randrange(2**32))
            assert parse_poset(format_poset(p)) == p


class TestWitnessFormat:
    def test_round_trip(self):
        graphs = [Graph.path(4), Graph.cycle(4), Graph.empty(4)]
        text = format_witness_graphs(graphs)
        assert parse_witness_graphs(text) == graphs

    def test_single_graph(self):
        assert parse_witness_graphs(format_graph(Graph.path(3))) == [Graph.path(3)]


class TestIntervalFormat:
    def test_round_trip(self):
        rep = IntervalRep(((1, 3), (2, 5), (4, 4)))
        assert parse_interval_file(format_interval_file(rep)) == rep

    def test_missing_vertex_rejected(self):
        with pytest.raises(ParseError):
            parse_interval_file("2\n0 1 2\n")


class TestRealizerFormat:
    def test_round_trip(self):
        exts = [(0, 1, 2), (2, 1, 0)]
        assert parse_realizer_file(format_realizer_file(exts)) == exts

    def test_non_permutation_rejected(self):
        with pytest.raises(ParseError):
            parse_realizer_file("0 1 1\n")

    def test_empty_rejected(self):
        with pytest.raises(ParseError):
            parse_realizer_file("# nothing\n")
