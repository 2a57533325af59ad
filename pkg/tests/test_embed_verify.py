import pytest
import os
import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from src.drc_audit import DrcParams, verify_goodstep
from src.embed_verify import (
    SetHypergraph,
    ThresholdPredicate,
    count_hyper_homs,
    count_hyper_homs_bruteforce,
    estimate_hyper_hom_fraction,
    link_hypergraph,
    non_edge_tuple_count,
    verify_importantstep,
    verify_main_theorem,
    verify_randomembed,
    verify_tensor_multiplicativity,
)
from src.errors import EmptyGraphError, InvalidArgumentError, InvalidHypothesisError
from src.graph_core import (
    BipartiteApexGraph,
    all_graphs,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    random_graph,
    star_graph,
)
from src.hom_count import enumerate_apex_bipartite
from src.numeric_core import ExactRational


@pytest.fixture
def c4():
    return BipartiteApexGraph.from_graph(cycle_graph(4))


@pytest.fixture
def random_targets():
    """Seeded graphs on 5..8 vertices."""
    return [random_graph(5 + seed % 4, ExactRational(1, 2), 100 + seed) for seed in range(12)]


#test 1: link hypergraphs
def test_link_hypergraph(c4):
    hyp = link_hypergraph(c4)
    assert hyp.vertex_count == 2
    assert hyp.edges == (frozenset({0, 1}),)

    star = link_hypergraph(BipartiteApexGraph.from_graph(star_graph(3)))
    assert star.vertex_count == 3 and star.edges == ()

    with pytest.raises(InvalidArgumentError):
        SetHypergraph(2, (frozenset({0, 2}),))


#test 2: the threshold predicate on a complete graph accepts everything
def test_threshold_predicate():
    pred = ThresholdPredicate.for_anchor(complete_graph(4), 0, 2)
    assert pred.target_vertices == (1, 2, 3)
    assert pred.accepts(())
    assert pred.accepts((1, 2))
    assert pred.accepts((3, 3, 3))
    assert non_edge_tuple_count(pred, 2) == 0


#test 3: tuples sharing a neighbour clear thresholds below one
def test_threshold_predicate_small_thresholds():
    G = star_graph(4)
    pred = ThresholdPredicate(G, 1, DrcParams(1, 5, 4))
    # threshold(1) = 8/20 and |N(0)| = 4
    assert pred.accepts((0,))
    assert non_edge_tuple_count(pred, 1) == 0
    pred = ThresholdPredicate(G, 0, DrcParams(1, 5, 4))
    # leaves share only the centre: 1 >= 64/500
    assert pred.accepts((1, 2))


#test 4: hypergraph counting agrees with brute force
def test_count_hyper_homs_matches_bruteforce(random_targets):
    for H in enumerate_apex_bipartite(5):
        hyp = link_hypergraph(H)
        for G in random_targets:
            params = DrcParams.for_graph(G, H.n)
            for v in range(G.vertex_count):
                pred = ThresholdPredicate(G, v, params)
                if len(pred.target_vertices) ** hyp.vertex_count <= 10**3:
                    assert count_hyper_homs(hyp, pred) == count_hyper_homs_bruteforce(hyp, pred)


#test 5: a hypergraph without edges maps freely
def test_count_hyper_homs_without_edges():
    pred = ThresholdPredicate.for_anchor(complete_graph(5), 0, 2)
    assert count_hyper_homs(SetHypergraph(3, ()), pred) == 4**3
    assert count_hyper_homs(SetHypergraph(2, (frozenset(),)), pred) == 16


#test 6: the embedding lemma on an anchor of a complete graph
def test_verify_randomembed(c4):
    pred = ThresholdPredicate.for_anchor(complete_graph(4), 0, 4)
    report = verify_randomembed(link_hypergraph(c4), pred, 4)
    assert report.which == "randomembed"
    assert report.hypothesis_satisfied and report.conclusion_holds
    assert report.lhs == 9 and report.rhs_num == 9 and report.rhs_den == 2
    with pytest.raises(InvalidArgumentError):
        verify_randomembed(link_hypergraph(c4), pred, 0)


#test 7: the embedding conclusion holds wherever its hypothesis does
def test_randomembed_conclusion_on_good_anchors(random_targets):
    for H in enumerate_apex_bipartite(5):
        hyp = link_hypergraph(H)
        for G in random_targets:
            report = verify_goodstep(G, H.n)
            for v in report.good_vertices:
                sub = verify_randomembed(hyp, ThresholdPredicate(G, v, report.params), H.n)
                if sub.hypothesis_satisfied:
                    assert sub.conclusion_holds


#test 8: the apex lower bound on the K2 / K3 example
def test_verify_importantstep_example():
    report = verify_importantstep(complete_graph(2), complete_graph(3))
    assert report.lhs == 6
    assert report.rhs_num == 54 and report.rhs_den == 2304
    assert report.conclusion_holds and not report.lemma_violation
    assert report.details["anchored_bound_below_count"]
    assert len(report.details["readings"]) == 4


#test 9: the apex lower bound holds on every small pair
def test_verify_importantstep_small_corpus():
    corpus = all_graphs(5)
    for H in enumerate_apex_bipartite(4):
        for G in corpus:
            report = verify_importantstep(H, G)
            assert report.conclusion_holds
            assert not report.lemma_violation


#test 10: hypothesis and target errors
def test_verify_importantstep_errors():
    with pytest.raises(InvalidHypothesisError):
        verify_importantstep(path_graph(6), complete_graph(3))
    with pytest.raises(EmptyGraphError):
        verify_importantstep(complete_graph(2), empty_graph(0))


#test 11: tensor multiplicativity and the density identity
def test_verify_tensor_multiplicativity():
    report = verify_tensor_multiplicativity(cycle_graph(4), complete_graph(3), path_graph(3))
    assert report.conclusion_holds and report.internal_checks_hold
    assert report.details["product_vertices"] == 9
    for seed in range(20):
        F = random_graph(4, ExactRational(1, 2), seed)
        G = random_graph(3 + seed % 2, ExactRational(2, 3), 50 + seed)
        for H in [path_graph(3), star_graph(3), cycle_graph(4)]:
            assert not verify_tensor_multiplicativity(H, F, G).lemma_violation


#test 12: following the inequality through tensor powers
def test_verify_main_theorem(c4):
    report = verify_main_theorem(c4, complete_graph(3), 2)
    assert report.conclusion_holds and report.internal_checks_hold
    assert report.details["slack"] == ExactRational(9, 8)
    assert report.details["contradiction_power"] is None
    second = report.details["powers"][1]
    assert second["vertices"] == 9 and second["count"] == 324
    assert second["slack"] == ExactRational(81, 64)
    with pytest.raises(InvalidArgumentError):
        verify_main_theorem(c4, complete_graph(3), 0)


#test 13: Monte Carlo estimates are reproducible
def test_estimate_hyper_hom_fraction(c4):
    pred = ThresholdPredicate.for_anchor(complete_graph(4), 0, 4)
    first = estimate_hyper_hom_fraction(link_hypergraph(c4), pred, 500, 7)
    second = estimate_hyper_hom_fraction(link_hypergraph(c4), pred, 500, 7)
    assert first == second
    assert first.fraction == 1.0 and first.passes
    with pytest.raises(InvalidArgumentError):
        estimate_hyper_hom_fraction(link_hypergraph(c4), pred, 0, 7)


#test 14: hypergraph counting agrees with brute force up to a million maps
def test_count_hyper_homs_matches_bruteforce_large():
    G = random_graph(30, ExactRational(1, 2), 5)
    params = DrcParams(1, G.vertex_count, G.edge_count)
    hyp = SetHypergraph(5, (frozenset({0}), frozenset({0, 1}), frozenset({1, 2, 3}), frozenset({3, 4})))
    anchors = [v for v in range(G.vertex_count) if 0 < G.degree(v) ** 5 <= 10**6]
    assert anchors
    # the widest anchor within the limit
    pred = ThresholdPredicate(G, max(anchors, key=G.degree), params)
    assert count_hyper_homs(hyp, pred) == count_hyper_homs_bruteforce(hyp, pred)


#test 15: 10,000 samples on an anchor that satisfies the embedding hypothesis
def test_estimate_hyper_hom_fraction_on_random_graph(c4):
    hyp = link_hypergraph(c4)
    G = random_graph(8, ExactRational(1, 2), 3)
    report = verify_goodstep(G, c4.n)
    candidates = [ThresholdPredicate(G, v, report.params) for v in report.good_vertices]
    candidates = [pred for pred in candidates if verify_randomembed(hyp, pred, c4.n).hypothesis_satisfied]
    assert candidates
    pred = candidates[0]
    estimate = estimate_hyper_hom_fraction(hyp, pred, 10_000, 11)
    exact = count_hyper_homs(hyp, pred) / len(pred.target_vertices) ** hyp.vertex_count
    assert estimate.samples == 10_000
    assert estimate.passes
    assert abs(estimate.fraction - exact) <= 6 * estimate.stderr


#test 16: multiplicativity for every pattern on at most four vertices
def test_tensor_multiplicativity_small_patterns():
    pairs = [
        (random_graph(1 + seed % 4, ExactRational(1, 2), seed), random_graph(4 - seed % 3, ExactRational(2, 3), 40 + seed))
        for seed in range(12)
    ]
    triples = 0
    for H in all_graphs(4):
        for F, G in pairs:
            report = verify_tensor_multiplicativity(H, F, G)
            assert report.conclusion_holds and report.internal_checks_hold
            triples += 1
    assert triples >= 200
