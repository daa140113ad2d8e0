import pytest

from dimkit.errors import InputError
from dimkit.graphs import Graph, IntervalRep, complement, recognize_split
from dimkit.posets import poset_from_relation
from dimkit.reductions import (
    interval_reps_from_threshold_cover,
    normalized_threshold_factors,
    split_to_gprime,
    two_threshold_cover,
)
from dimkit.solvers import (
    KIND_INTERVAL,
    KIND_THRESHOLD,
    KIND_UNIT_INTERVAL,
    IntersectionRep,
    ThresholdCover,
    threshold_dimension,
)
from dimkit.verify import (
    all_posets,
    check_cover,
    check_intersection,
    classify_factor,
    cover_no_containment,
    gen_random_poset,
    gen_random_split,
    graph_classes,
    theorem_ids,
    verify_theorem,
)


class TestCheckIntersection:
    def test_two_factor_pair_for_p4(self):
        g = Graph.path(4)
        part = recognize_split(g)
        from dimkit.graphs import recognize_interval

        g1, g2 = two_threshold_cover(g, part, recognize_interval(g))
        assert check_intersection(g, IntersectionRep((g1, g2), KIND_THRESHOLD))

    def test_wrong_kind_tag_fails(self):
        g = Graph.path(4)
        # P4 is not threshold, so the recognizer rejects the only factor
        assert not check_intersection(g, IntersectionRep((g,), KIND_THRESHOLD))

    def test_c4_is_not_its_own_interval_rep(self):
        c4 = Graph.cycle(4)
        assert not check_intersection(c4, IntersectionRep((c4,), KIND_INTERVAL))

    def test_non_supergraph_fails(self):
        g = Graph.path(4)
        rep = IntersectionRep((Graph.empty(4),), KIND_INTERVAL)
        assert not check_intersection(g, rep)

    def test_loose_intersection_fails(self):
        g = Graph.path(4)
        rep = IntersectionRep((Graph.complete(4),), KIND_INTERVAL)
        assert not check_intersection(g, rep)


class TestCheckCover:
    def test_star_plus_edge_covers_p4(self):
        cover = ThresholdCover(
            (Graph.from_edges(4, [(0, 1), (1, 2)]), Graph.from_edges(4, [(2, 3)]))
        )
        assert check_cover(Graph.path(4), cover)
        assert cover_no_containment(cover)

    def test_p4_does_not_cover_itself(self):
        assert not check_cover(Graph.path(4), ThresholdCover((Graph.path(4),)))

    def test_empty_cover_for_edgeless(self):
        assert check_cover(Graph.empty(3), ThresholdCover(()))

    def test_containment_detected(self):
        cover = ThresholdCover(
            (Graph.from_edges(3, [(0, 1)]), Graph.from_edges(3, [(0, 1), (0, 2)]))
        )
        assert not cover_no_containment(cover)


class TestClassifyFactor:
    def pipeline_factors(self, h):
        gp = split_to_gprime(h)
        cover = threshold_dimension(h)
        supers = [complement(f) for f in cover.witness.factors]
        normalized = normalized_threshold_factors(gp.base, gp.base_partition, supers)
        return gp, interval_reps_from_threshold_cover(h, normalized)

    def test_pipeline_factors_are_case_1_or_2(self):
        gp, built = self.pipeline_factors(Graph.path(4))
        for _, rep in built:
            assert classify_factor(gp, rep) in (1, 2)

    def test_mirrored_pipeline_factor_swaps_case(self):
        gp, built = self.pipeline_factors(Graph.path(4))
        _, rep = built[0]
        mirrored = IntervalRep(tuple((-r, -l) for l, r in rep.intervals))
        assert {classify_factor(gp, rep), classify_factor(gp, mirrored)} == {1, 2}

    def test_hand_built_case_3(self):
        # factor over G'(P4) whose extreme independent intervals both sit in
        # copy 1; the lemma then forces copy 2 to be completely joined
        gp = split_to_gprime(Graph.path(4))
        rep = IntervalRep(
            (
                (2, 10),  # clique, copy 1
                (0, 0),  # independent, copy 1, leftmost
                (10, 10),  # independent, copy 1, rightmost
                (0, 6),  # clique, copy 1
                (0, 10),  # clique, copy 2
                (4, 4),  # independent, copy 2
                (5, 5),  # independent, copy 2
                (0, 10),  # clique, copy 2
            )
        )
        assert classify_factor(gp, rep) == 3

    def test_hand_built_case_4(self):
        # the copy-swapped image of the case-3 factor
        gp = split_to_gprime(Graph.path(4))
        rep = IntervalRep(
            (
                (0, 10),
                (4, 4),
                (5, 5),
                (0, 10),
                (2, 10),
                (0, 0),
                (10, 10),
                (0, 6),
            )
        )
        assert classify_factor(gp, rep) == 4

    def test_trivial_case_bypass(self):
        gp = split_to_gprime(Graph.star(3))
        assert gp.trivial_case
        from dimkit.graphs import recognize_interval

        assert classify_factor(gp, recognize_interval(Graph.star(3))) == 0

    def test_rejects_non_supergraph(self):
        gp = split_to_gprime(Graph.path(4))
        with pytest.raises(InputError):
            classify_factor(gp, IntervalRep(tuple((v, v) for v in range(8))))


class TestGenerators:
    def test_split_density_one_is_complete_split(self):
        g, part = gen_random_split(6, 1.0, 3)
        for u in part.clique:
            for v in part.independent:
                assert g.has_edge(u, v)

    def test_split_density_zero_is_clique_plus_isolated(self):
        g, part = gen_random_split(6, 0.0, 3)
        for v in part.independent:
            assert g.degree(v) == 0

    def test_split_deterministic(self):
        assert gen_random_split(7, 0.5, 11) == gen_random_split(7, 0.5, 11)

    def test_poset_density_extremes(self):
        assert gen_random_poset(5, 1.0, 2).is_chain()
        assert not gen_random_poset(5, 0.0, 2).strict_pairs()

    def test_poset_deterministic(self):
        assert gen_random_poset(6, 0.4, 9) == gen_random_poset(6, 0.4, 9)

    def test_rejects_empty(self):
        with pytest.raises(InputError):
            gen_random_split(0, 0.5, 0)
        with pytest.raises(InputError):
            gen_random_poset(0, 0.5, 0)


class TestEnumerators:
    def test_graph_classes_n4(self):
        graphs, orbits = graph_classes(4)
        assert len(graphs) == 11  # unlabeled graphs on 4 vertices
        assert sum(orbits) == 2 ** 6

    def test_poset_count(self):
        assert sum(1 for _ in all_posets(4)) == 219


class TestVerifyTheorem:
    def test_unknown_theorem(self):
        with pytest.raises(InputError, match="cor_dim"):
            verify_theorem("bogus")

    def test_ids_exposed(self):
        assert set(theorem_ids()) == {
            "charThresh",
            "charBox",
            "threshLB",
            "cor_dim",
            "cor_box",
            "splitIntThresh",
            "gprime_eq",
            "cub_bounds",
        }

    def test_cor_dim_small(self):
        report = verify_theorem("cor_dim", n_max=4, samples=0, seed=7)
        assert report.passed and report.instances == 242

    def test_gprime_small(self):
        report = verify_theorem("gprime_eq", n_max=4, samples=0, seed=7)
        assert report.passed

    def test_seeded_reports_identical(self):
        a = verify_theorem("splitIntThresh", n_max=6, samples=20, seed=5)
        b = verify_theorem("splitIntThresh", n_max=6, samples=20, seed=5)
        assert a.to_json(timing=False) == b.to_json(timing=False)

    def test_report_fields(self):
        import json

        report = verify_theorem("threshLB", n_max=3, samples=0, seed=1)
        payload = json.loads(report.to_json())
        assert set(payload) >= {"theorem", "instances", "failures", "seed", "elapsed_ms"}

    def test_n_max_capacity(self):
        with pytest.raises(InputError):
            verify_theorem("cor_dim", n_max=40)
