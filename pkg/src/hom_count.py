"""
Homomorphism counts ``h_H(G)``, densities ``t_H(G)`` and the Sidorenko verdict.

Homomorphisms are ordered, labelled vertex maps ``V(H) -> V(G)`` that send
edges to edges; they need not be injective.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import prod

import networkx as nx

from src.config import DEFAULT_MAX_EVALUATIONS, MAX_ENUMERATE_VERTICES
from src.errors import EmptyGraphError, InstanceTooLargeError
from src.graph_core import BipartiteApexGraph, bipartition, is_apex_bipartite
from src.numeric_core import ExactRational


@dataclass(frozen=True)
class HomCountResult:
    count: int
    h_vertices: int
    g_vertices: int

    @property
    def density_num(self):
        return self.count

    @property
    def density_den(self):
        return self.g_vertices**self.h_vertices

    @property
    def density(self):
        return ExactRational(self.density_num, self.density_den)


@dataclass(frozen=True)
class SidorenkoVerdict:
    """
    ``holds`` iff ``lhs = h * N^(2m)`` is at least ``rhs = (2E)^m * N^n``.

    ``slack_ratio`` is ``t_H(G) / p^m`` and is None when ``p = 0``.
    """

    holds: bool
    lhs: int
    rhs: int
    slack_ratio: ExactRational | None
    apex_hypothesis: bool
    count: int
    m: int

    @property
    def c(self):
        """The ratio ``t_H(G) / t_{K2}(G)^m`` used in the tensor-power argument."""
        return self.slack_ratio


def _as_graph(H):
    return H.as_graph() if isinstance(H, BipartiteApexGraph) else H


def count_homs_bruteforce(H, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Count homomorphisms by trying all ``N^|H|`` maps.

    This is the reference oracle for :func:`count_homs`; it never factorises
    over components.

    Raises
    ------
    InstanceTooLargeError
        If ``N^|H|`` exceeds ``max_evaluations``.
    """
    H = _as_graph(H)
    total = G.vertex_count**H.vertex_count
    if total > max_evaluations:
        raise InstanceTooLargeError(f"brute force needs {total} map evaluations, guard is {max_evaluations}.")
    edges = H.edges()
    count = 0
    for images in product(range(G.vertex_count), repeat=H.vertex_count):
        if all(G.has_edge(images[a], images[b]) for a, b in edges):
            count += 1
    return count


def search_order(H, component):
    """
    Order the vertices of one component: each step takes the vertex with the
    most already-placed neighbours, ties going to the smaller id.
    """
    remaining = set(component)
    order = []
    placed = set()
    while remaining:
        best = min(remaining, key=lambda x: (-len(H.adjacency[x] & placed), x))
        order.append(best)
        placed.add(best)
        remaining.remove(best)
    return order


class NodeBudget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise InstanceTooLargeError(f"backtracking exceeded the guard of {self.limit} search nodes.")


def _count_component(H, G, order, budget):
    position = {x: i for i, x in enumerate(order)}
    earlier = [[y for y in H.adjacency[x] if position[y] < i] for i, x in enumerate(order)]
    # From index ``tail_start`` on, no two remaining vertices are adjacent, so
    # the count there is a product of candidate set sizes.
    tail_start = len(order)
    while tail_start > 0 and all(position[y] < tail_start - 1 for y in H.adjacency[order[tail_start - 1]]):
        tail_start -= 1
    all_vertices = frozenset(range(G.vertex_count))
    images = {}

    def candidates(i):
        anchors = earlier[i]
        if not anchors:
            return all_vertices
        return frozenset.intersection(*(G.adjacency[images[y]] for y in anchors))

    def extend(i):
        budget.spend()
        if i >= tail_start:
            return prod(len(candidates(j)) for j in range(i, len(order)))
        x = order[i]
        total = 0
        for image in candidates(i):
            images[x] = image
            total += extend(i + 1)
        images.pop(x, None)
        return total

    return extend(0)


def count_homs(H, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Count homomorphisms from ``H`` to ``G`` exactly.

    The count is the product over the connected components of ``H``; within a
    component the search places vertices in :func:`search_order`, filtering
    candidates by the neighbourhoods of already-placed neighbours.

    Parameters
    ----------
    H : Graph or BipartiteApexGraph
    G : Graph
    max_evaluations : int
        Guard on search nodes visited across all components.

    Returns
    -------
    int

    Raises
    ------
    InstanceTooLargeError
        If the guard is exceeded.
    """
    H = _as_graph(H)
    if H.vertex_count == 0:
        return 1
    if G.vertex_count == 0:
        return 0
    budget = NodeBudget(max_evaluations)
    total = 1
    for component in sorted(nx.connected_components(H.to_networkx()), key=min):
        total *= _count_component(H, G, search_order(H, component), budget)
        if total == 0:
            return 0
    return total


def hom_density(H, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    ``t_H(G) = h_H(G) / N^|H|`` as an exact result.

    Raises
    ------
    EmptyGraphError
        If ``G`` has no vertices.
    """
    H = _as_graph(H)
    if G.vertex_count == 0:
        raise EmptyGraphError("homomorphism density needs a non-empty target graph.")
    return HomCountResult(count_homs(H, G, max_evaluations), H.vertex_count, G.vertex_count)


def sidorenko_check(H, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Decide ``t_H(G) >= t_{K2}(G)^m`` as ``h * N^(2m) >= (2E)^m * N^n``.

    Works for every bipartite ``H``; ``apex_hypothesis`` records whether ``H``
    is covered by the apex theorem.

    Raises
    ------
    NotBipartiteError
        If a plain-graph ``H`` has an odd cycle.
    EmptyGraphError
        If ``G`` has no vertices.
    """
    if isinstance(H, BipartiteApexGraph):
        apex = True
        H = H.as_graph()
    else:
        bipartition(H)
        apex = is_apex_bipartite(H)
    if G.vertex_count == 0:
        raise EmptyGraphError("the Sidorenko inequality needs a non-empty target graph.")
    N, E = G.vertex_count, G.edge_count
    n, m = H.vertex_count, H.edge_count
    count = count_homs(H, G, max_evaluations)
    lhs = count * N ** (2 * m)
    rhs = (2 * E) ** m * N**n
    slack = ExactRational(lhs, rhs) if rhs > 0 else None
    return SidorenkoVerdict(lhs >= rhs, lhs, rhs, slack, apex, count, m)


def contradiction_power(c, n):
    """
    Smallest ``r`` with ``c^r < (2n)^(-n^2)``, or None when ``c >= 1``.

    A finite value would feed the tensor-power contradiction: ``G^r`` would
    then violate the apex lower bound.
    """
    if c is None or c >= 1:
        return None
    bound = ExactRational(1, (2 * n) ** (n * n))
    r, power = 1, c
    while not power < bound:
        r += 1
        power = power * c
    return r


def enumerate_apex_bipartite(max_vertices):
    """
    Yield every apex bipartite graph on at most ``max_vertices`` vertices.

    Canonical labelling: V1 = {0..n1-1} with apex 0, V2 = {n1..n-1}.
    Non-apex vertices of V1 may be isolated. Their neighbourhoods in V2 are
    taken as a multiset (non-decreasing by bitmask), so relabelling V1 \\ {0}
    never yields a repeat.

    Raises
    ------
    InstanceTooLargeError
        If ``max_vertices`` exceeds the enumeration guard.
    """
    if max_vertices > MAX_ENUMERATE_VERTICES:
        raise InstanceTooLargeError(f"apex enumeration is limited to {MAX_ENUMERATE_VERTICES} vertices.")
    for n in range(2, max_vertices + 1):
        for n1 in range(1, n):
            n2 = n - n1
            part1 = tuple(range(n1))
            part2 = tuple(range(n1, n))
            apex_edges = [(0, y) for y in part2]
            for masks in combinations_with_replacement(range(2**n2), n1 - 1):
                edges = list(apex_edges)
                for w, mask in zip(part1[1:], masks):
                    edges.extend((w, part2[b]) for b in range(n2) if mask >> b & 1)
                yield BipartiteApexGraph(part1, part2, frozenset(edges), 0)
