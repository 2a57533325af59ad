import pytest
import os
import sys
import numpy as np
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))
from src.errors import EmptyGraphError, InstanceTooLargeError, NotBipartiteError
from src.graph_core import (
    BipartiteApexGraph,
    all_graphs,
    common_neighborhood,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_apex_bipartite,
    path_graph,
    random_graph,
    star_graph,
    tensor_product,
    with_edge,
)
from src.hom_count import (
    contradiction_power,
    count_homs,
    count_homs_bruteforce,
    enumerate_apex_bipartite,
    hom_density,
    search_order,
    sidorenko_check,
)
from src.numeric_core import ExactRational


@pytest.fixture
def random_pairs():
    """100 seeded (H, G) pairs with |H| <= 4 and |G| <= 5."""
    rng = np.random.default_rng(2024)
    pairs = []
    for i in range(100):
        h_size = int(rng.integers(1, 5))
        g_size = int(rng.integers(1, 6))
        pairs.append(
            (random_graph(h_size, ExactRational(1, 2), 2 * i), random_graph(g_size, ExactRational(2, 3), 2 * i + 1))
        )
    return pairs


#test 1: fixed counts
def test_count_homs_examples():
    K2, K3, K4 = complete_graph(2), complete_graph(3), complete_graph(4)
    C4 = cycle_graph(4)
    assert count_homs(K2, K3) == 6
    assert count_homs(path_graph(3), K3) == 12
    assert count_homs(C4, K2) == 2
    assert count_homs(C4, K3) == 18
    assert count_homs(C4, K4) == 84
    assert count_homs(disjoint_union(K2, K2), K3) == 36
    assert count_homs(K3, complete_bipartite_graph(2, 2)) == 0


#test 2: backtracking agrees with brute force on random pairs
def test_count_homs_matches_bruteforce(random_pairs):
    for H, G in random_pairs:
        assert count_homs(H, G) == count_homs_bruteforce(H, G)


#test 3: backtracking agrees with brute force on every small pattern
def test_count_homs_matches_bruteforce_atlas():
    targets = [complete_graph(3), cycle_graph(5), star_graph(3), with_edge(path_graph(4), 0, 3)]
    for H in all_graphs(4):
        for G in targets:
            assert count_homs(H, G) == count_homs_bruteforce(H, G)


#test 4: empty and edgeless edge cases
def test_count_homs_edge_cases():
    assert count_homs(empty_graph(0), complete_graph(3)) == 1
    assert count_homs(complete_graph(2), empty_graph(0)) == 0
    assert count_homs(empty_graph(2), complete_graph(3)) == 9
    assert count_homs(complete_graph(2), empty_graph(4)) == 0


#test 5: stars count degree powers
def test_star_counts_degree_powers():
    for seed in range(10):
        G = random_graph(7, ExactRational(1, 2), seed)
        for k in range(1, 4):
            assert count_homs(star_graph(k), G) == sum(G.degree(v) ** k for v in range(G.vertex_count))


#test 6: counts multiply over disjoint unions
def test_count_homs_multiplicative_over_components():
    G = random_graph(6, ExactRational(1, 2), 11)
    F1, F2 = path_graph(3), cycle_graph(4)
    assert count_homs(disjoint_union(F1, F2), G) == count_homs(F1, G) * count_homs(F2, G)


#test 7: adding an edge to G never loses homomorphisms
def test_count_homs_monotone_in_target():
    G = random_graph(6, ExactRational(1, 3), 5)
    missing = [(a, b) for a in range(6) for b in range(a + 1, 6) if not G.has_edge(a, b)]
    bigger = with_edge(G, *missing[0])
    for H in [path_graph(3), cycle_graph(4), star_graph(3)]:
        assert count_homs(H, bigger) >= count_homs(H, G)


#test 8: resource guards
def test_count_homs_guards():
    with pytest.raises(InstanceTooLargeError):
        count_homs_bruteforce(cycle_graph(4), complete_graph(4), max_evaluations=100)
    with pytest.raises(InstanceTooLargeError):
        count_homs(complete_bipartite_graph(3, 3), complete_graph(6), max_evaluations=10)


#test 9: search order prefers vertices with placed neighbours
def test_search_order():
    assert search_order(path_graph(4), {0, 1, 2, 3}) == [0, 1, 2, 3]
    assert search_order(star_graph(3), {0, 1, 2, 3}) == [0, 1, 2, 3]


#test 10: exact densities
def test_hom_density():
    result = hom_density(complete_graph(2), complete_graph(3))
    assert result.count == 6
    assert result.density == ExactRational(2, 3)
    assert result.density_den == 9
    with pytest.raises(EmptyGraphError):
        hom_density(complete_graph(2), empty_graph(0))


#test 11: Sidorenko verdicts and their slack
def test_sidorenko_check_values():
    verdict = sidorenko_check(path_graph(3), complete_graph(3))
    assert verdict.holds and verdict.lhs == verdict.rhs == 972
    assert str(verdict.slack_ratio) == "1/1"

    verdict = sidorenko_check(cycle_graph(4), complete_graph(3))
    assert verdict.lhs == 118098 and verdict.rhs == 104976
    assert verdict.c == ExactRational(9, 8)
    assert verdict.apex_hypothesis

    verdict = sidorenko_check(path_graph(3), empty_graph(3))
    assert verdict.holds and verdict.slack_ratio is None

    assert not sidorenko_check(path_graph(6), complete_graph(3)).apex_hypothesis
    with pytest.raises(NotBipartiteError):
        sidorenko_check(complete_graph(3), complete_graph(3))
    with pytest.raises(EmptyGraphError):
        sidorenko_check(complete_graph(2), empty_graph(0))


#test 12: stars meet the bound with equality on regular graphs
def test_star_equality_on_regular_graphs():
    for G in [complete_graph(3), complete_graph(4), cycle_graph(5), cycle_graph(6)]:
        for k in (1, 2, 3):
            assert sidorenko_check(star_graph(k), G).slack_ratio == 1


#test 13: apex H satisfy the inequality on every small target
def test_sidorenko_holds_for_small_apex_graphs():
    corpus = all_graphs(5)
    for H in enumerate_apex_bipartite(5):
        for G in corpus:
            assert sidorenko_check(H, G).holds


#test 14: the tensor-power exponent
def test_contradiction_power():
    assert contradiction_power(ExactRational(1, 2), 1) == 2
    assert contradiction_power(ExactRational(1), 2) is None
    assert contradiction_power(None, 2) is None


#test 15: apex enumeration
def test_enumerate_apex_bipartite():
    assert [H.as_graph() for H in enumerate_apex_bipartite(2)] == [complete_graph(2)]
    graphs = list(enumerate_apex_bipartite(4))
    assert len(graphs) == 12
    assert all(isinstance(H, BipartiteApexGraph) and H.apex == 0 for H in graphs)
    assert all(is_apex_bipartite(H.as_graph()) for H in graphs)
    with pytest.raises(InstanceTooLargeError):
        list(enumerate_apex_bipartite(9))


#test 16: isolated vertices on the apex side are part of the class
def test_enumerate_apex_bipartite_isolated_side():
    graphs = list(enumerate_apex_bipartite(3))
    assert len(graphs) == 4
    K2_plus_K1 = BipartiteApexGraph((0, 1), (2,), frozenset({(0, 2)}), 0)
    assert K2_plus_K1 in graphs
    # the isolated vertex contributes a factor N = 4
    verdict = sidorenko_check(K2_plus_K1, complete_graph(4))
    assert verdict.count == 4 * 12
    assert verdict.slack_ratio == 1


#test 17: C4 counts are sums of squared common neighbourhoods
def test_c4_counts_squared_codegrees():
    C4 = cycle_graph(4)
    for G in all_graphs(7):
        codegrees = sum(
            len(common_neighborhood(G, (u, v))) ** 2 for u in range(G.vertex_count) for v in range(G.vertex_count)
        )
        assert count_homs(C4, G) == codegrees


#test 18: the tensor product commutes up to relabelling
def test_tensor_product_commutes_on_edge_counts():
    K2 = complete_graph(2)
    for seed in range(30):
        F = random_graph(2 + seed % 4, ExactRational(1, 2), seed)
        G = random_graph(3 + seed % 3, ExactRational(2, 3), 100 + seed)
        assert count_homs(K2, tensor_product(F, G)) == count_homs(K2, tensor_product(G, F))
