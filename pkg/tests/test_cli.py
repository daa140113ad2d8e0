import json

import pytest

from dimkit.cli import main
from dimkit.graphs import Graph, format_graph, parse_graph
from dimkit.posets import format_poset, poset_from_relation


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.graph"
    path.write_text(format_graph(Graph.path(4)))
    return str(path)


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.graph"
    path.write_text(format_graph(Graph.cycle(4)))
    return str(path)


def standard_example_text():
    pairs = [(i, 3 + j) for i in range(3) for j in range(3) if i != j]
    return format_poset(poset_from_relation(6, pairs))


class TestRecognize:
    def test_split_positive(self, p4_file, capsys):
        assert main(["recognize", "--class", "split", p4_file]) == 0
        out = capsys.readouterr().out
        assert "clique: 1 2" in out

    def test_threshold_negative_names_p4(self, p4_file, capsys):
        assert main(["recognize", "--class", "threshold", p4_file]) == 1
        assert "induced P4: 0 1 2 3" in capsys.readouterr().out

    def test_split_negative_certificate(self, c4_file, capsys):
        assert main(["recognize", "--class", "split", c4_file]) == 1
        assert "C4" in capsys.readouterr().out

    def test_interval_positive(self, p4_file, capsys):
        assert main(["recognize", "--class", "interval", p4_file]) == 0

    def test_interval_negative(self, c4_file):
        assert main(["recognize", "--class", "interval", c4_file]) == 1

    def test_unit_interval(self, tmp_path):
        claw = tmp_path / "claw.graph"
        claw.write_text(format_graph(Graph.star(3)))
        assert main(["recognize", "--class", "unit-interval", str(claw)]) == 1

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.graph"
        bad.write_text("3\n1 1\n")
        assert main(["recognize", "--class", "split", str(bad)]) == 2

    def test_missing_file(self):
        assert main(["recognize", "--class", "split", "/nonexistent.graph"]) == 2


class TestDim:
    def test_tdim_p4(self, p4_file, capsys):
        assert main(["dim", "--param", "tdim", p4_file]) == 0
        assert "tdim = 2" in capsys.readouterr().out

    def test_boxicity_c4(self, c4_file, capsys):
        assert main(["dim", "--param", "boxicity", c4_file]) == 0
        assert "boxicity = 2" in capsys.readouterr().out

    def test_posetdim_standard_example(self, tmp_path, capsys):
        poset = tmp_path / "s3.poset"
        poset.write_text(standard_example_text())
        assert main(["dim", "--param", "posetdim", str(poset)]) == 0
        assert "posetdim = 3" in capsys.readouterr().out

    def test_witness_file_revalidates(self, c4_file, tmp_path, capsys):
        out = tmp_path / "witness.graphs"
        assert main(["dim", "--param", "cubicity", c4_file, "--witness", str(out)]) == 0
        from dimkit.cli import parse_witness_graphs
        from dimkit.solvers import KIND_UNIT_INTERVAL, IntersectionRep
        from dimkit.verify import check_intersection

        factors = parse_witness_graphs(out.read_text())
        rep = IntersectionRep(tuple(factors), KIND_UNIT_INTERVAL)
        assert check_intersection(Graph.cycle(4), rep)

    def test_capacity_exit_code(self, tmp_path):
        big = tmp_path / "big.graph"
        big.write_text(format_graph(Graph.empty(12)))
        assert main(["dim", "--param", "boxicity", str(big)]) == 3

    def test_max_n_flag(self, tmp_path, capsys):
        big = tmp_path / "big.graph"
        big.write_text(format_graph(Graph.complete(12)))
        assert main(["dim", "--param", "boxicity", "--max-n", "12", str(big)]) == 0
        assert "boxicity = 1" in capsys.readouterr().out


class TestReduce:
    def test_poset_to_split(self, tmp_path, capsys):
        poset = tmp_path / "chain2.poset"
        poset.write_text(format_poset(poset_from_relation(2, [(0, 1)])))
        out = tmp_path / "out"
        assert main(["reduce", "poset-to-split", str(poset), "--out", str(out)]) == 0
        g = parse_graph((out / "split.graph").read_text())
        assert g.n == 4 and g.edge_count == 4

    def test_split_to_gprime_p4(self, p4_file, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["reduce", "split-to-gprime", p4_file, "--out", str(out)]) == 0
        assert "trivial_case=false" in capsys.readouterr().out
        g = parse_graph((out / "gprime.graph").read_text())
        assert g.n == 8

    def test_split_to_gprime_trivial(self, tmp_path, capsys):
        star = tmp_path / "star.graph"
        star.write_text(format_graph(Graph.star(3)))
        out = tmp_path / "out"
        assert main(["reduce", "split-to-gprime", str(star), "--out", str(out)]) == 0
        assert "trivial_case=true" in capsys.readouterr().out
        assert parse_graph((out / "gprime.graph").read_text()) == Graph.star(3)

    def test_two_threshold(self, p4_file, tmp_path):
        out = tmp_path / "out"
        assert main(["reduce", "two-threshold", p4_file, "--out", str(out)]) == 0
        from dimkit.cli import parse_witness_graphs
        from dimkit.graphs import intersect_graphs

        factors = parse_witness_graphs((out / "factors.graphs").read_text())
        assert intersect_graphs(factors) == Graph.path(4)

    def test_hi_intervals_pipeline(self, p4_file, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["reduce", "hi-intervals", p4_file, "--out", str(out)]) == 0
        text = capsys.readouterr().out
        assert "factors: 2" in text
        assert (out / "factor_01.graph").exists()
        assert (out / "factor_01.intervals").exists()

    def test_sandwich_threshold(self, p4_file, tmp_path):
        sup = tmp_path / "sup.graph"
        part_edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
        sup.write_text(format_graph(Graph.from_edges(4, part_edges)))
        assert main(["reduce", "sandwich-threshold", p4_file, str(sup)]) == 0

    def test_sandwich_interval(self, p4_file, tmp_path):
        sup = tmp_path / "k4.graph"
        sup.write_text(format_graph(Graph.complete(4)))
        assert main(["reduce", "sandwich-interval", p4_file, str(sup)]) == 0

    def test_realizer_round_trip(self, tmp_path):
        poset = tmp_path / "anti.poset"
        poset.write_text(format_poset(poset_from_relation(2, [])))
        realizer = tmp_path / "realizer.txt"
        realizer.write_text("0 1\n1 0\n")
        out = tmp_path / "out"
        code = main(
            ["reduce", "threshold-from-realizer", str(poset), str(realizer), "--out", str(out)]
        )
        assert code == 0
        g4 = tmp_path / "gp.graph"
        from dimkit.reductions import poset_to_split_graph

        built = poset_to_split_graph(poset_from_relation(2, []))
        g4.write_text(format_graph(built.graph))
        code = main(
            [
                "reduce",
                "realizer-from-cover",
                str(g4),
                str(out / "factors.graphs"),
                "--out",
                str(out),
            ]
        )
        assert code == 0
        assert (out / "realizer.txt").exists()

    def test_precondition_violation_exit_2(self, c4_file, tmp_path):
        assert main(["reduce", "split-to-gprime", c4_file]) == 2


class TestVerify:
    def test_pass_exit_zero(self, capsys):
        code = main(["verify", "cor_dim", "--n-max", "4", "--samples", "0", "--seed", "7"])
        assert code == 0
        assert "pass" in capsys.readouterr().out

    def test_json_format(self, capsys):
        code = main(
            [
                "verify",
                "threshLB",
                "--n-max",
                "3",
                "--samples",
                "0",
                "--seed",
                "1",
                "--format",
                "json",
            ]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theorem"] == "threshLB"
        assert payload["failures"] == []

    def test_unknown_theorem_exit_2(self, capsys):
        assert main(["verify", "bogus"]) == 2
        err = capsys.readouterr().err
        assert "cor_dim" in err and "gprime_eq" in err


class TestRoundTrip:
    def test_written_graphs_reparse_identically(self, tmp_path):
        g = Graph.from_edges(6, [(0, 3), (2, 5), (1, 4), (3, 4)])
        path = tmp_path / "g.graph"
        path.write_text(format_graph(g))
        assert parse_graph(path.read_text()) == g
