"""
Hypergraph embedding and the apex lower bound.

The link hypergraph of an apex graph H lives on V2 and has one edge N(w) per
non-apex w in V1. For an anchor vertex v of G, the threshold hypergraph on
N(v) accepts a k-tuple R when ``|N(R)| >= (2n)^(-n-1) p^k N``. Each
homomorphism between the two extends, choice by choice, to homomorphisms
H -> G sending the apex to v; summing over good anchors gives the
``(2n)^(-n^2) p^m N^n`` lower bound, and tensor powers lift it to the
Sidorenko inequality.

Reading conventions carried in every report:

- "for each k, 1 <= k <= v" in the apex-bound argument means 1 <= k <= n;
- the non-edge bound there is over the hypergraph's own vertex set, i.e.
  ``|N(v)|^k / (2n)``, consumed by the union bound with ``e = n``;
- the product over "V1 \\ {v}" ranges over V1 \\ {u} (u the apex);
- "|N(V)|" is ``|N(v)|``.
"""

from dataclasses import dataclass, field
from itertools import product
from math import sqrt

import numpy as np

from src.config import DEFAULT_MAX_EVALUATIONS
from src.drc_audit import DrcParams, support_sets, surjection_count, verify_goodstep
from src.errors import EmptyGraphError, InstanceTooLargeError, InvalidArgumentError
from src.graph_core import BipartiteApexGraph, check_vertex, common_neighborhood, edge_density, tensor_product
from src.hom_count import NodeBudget, contradiction_power, count_homs, sidorenko_check
from src.numeric_core import ExactRational, int_ge_rational

READINGS = (
    "tuple lengths k range over 1..n",
    "non-edge bound taken over |N(v)|^k / (2n)",
    "product ranges over V1 minus the apex",
    "|N(V)| read as |N(v)|",
)


@dataclass(frozen=True)
class SetHypergraph:
    """``edges`` is a tuple of frozensets over ``0..vertex_count-1``; repeats allowed."""

    vertex_count: int
    edges: tuple

    def __post_init__(self):
        for edge in self.edges:
            if any(not 0 <= x < self.vertex_count for x in edge):
                raise InvalidArgumentError(f"hyperedge {sorted(edge)} leaves 0..{self.vertex_count - 1}.")


@dataclass(frozen=True)
class ThresholdPredicate:
    """
    Edge relation of the threshold hypergraph on ``N(anchor)``.

    A tuple is an edge when its common neighbourhood in ``host`` has at least
    ``params.tuple_threshold(len(R))`` vertices; the empty tuple always is.
    """

    host: object
    anchor: int
    params: DrcParams
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def for_anchor(cls, G, v, n):
        check_vertex(G, v)
        return cls(G, v, DrcParams.for_graph(G, n))

    @property
    def target_vertices(self):
        return tuple(sorted(self.host.adjacency[self.anchor]))

    def thresholds(self, k):
        return self.params.tuple_threshold(k)

    def accepts(self, R):
        if not R:
            return True
        key = (frozenset(R), len(R))
        if key not in self._cache:
            size = len(common_neighborhood(self.host, key[0]))
            self._cache[key] = int_ge_rational(size, self.thresholds(len(R)))
        return self._cache[key]


@dataclass(frozen=True)
class LemmaReport:
    """
    Outcome of one lemma check.

    The conclusion reads ``lhs >= rhs_num / rhs_den`` (``==`` for the tensor
    identity). ``internal_checks_hold`` covers intermediate steps that must
    hold whenever the code is correct.
    """

    which: str
    hypothesis_satisfied: bool
    conclusion_holds: bool
    lhs: int
    rhs_num: int
    rhs_den: int
    details: dict = field(default_factory=dict)
    internal_checks_hold: bool = True

    @property
    def lemma_violation(self):
        return (self.hypothesis_satisfied and not self.conclusion_holds) or not self.internal_checks_hold


@dataclass(frozen=True)
class MonteCarloEstimate:
    samples: int
    hits: int
    stderr: float

    @property
    def fraction(self):
        return self.hits / self.samples

    @property
    def passes(self):
        """Hit rate at least one half minus three standard errors."""
        return self.fraction >= 0.5 - 3 * self.stderr


def link_hypergraph(H):
    """
    Hypergraph on V2 (re-indexed in V2 order) with edge ``N(w)`` for every
    ``w`` in V1 other than the apex, in V1 order, duplicates kept.
    """
    index = {y: i for i, y in enumerate(H.part2)}
    edges = tuple(
        frozenset(index[y] for y in H.neighbors(w)) for w in H.part1 if w != H.apex
    )
    return SetHypergraph(H.n2, edges)


def _edges_by_last_vertex(hyp):
    closing = [[] for _ in range(hyp.vertex_count)]
    for edge in hyp.edges:
        # empty edges accept every map
        if edge:
            closing[max(edge)].append(tuple(sorted(edge)))
    return closing


def count_hyper_homs(hyp, pred, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Count maps ``V(hyp) -> pred.target_vertices`` under which every edge's
    image tuple (elements in ascending order) is accepted by ``pred``.

    Vertices in no edge contribute a factor of T each.
    """
    targets = pred.target_vertices
    T = len(targets)
    closing = _edges_by_last_vertex(hyp)
    constrained = sorted({x for edge in hyp.edges for x in edge})
    free = hyp.vertex_count - len(constrained)
    budget = NodeBudget(max_evaluations)
    images = {}

    def extend(i):
        budget.spend()
        if i == len(constrained):
            return 1
        x = constrained[i]
        total = 0
        for image in targets:
            images[x] = image
            if all(pred.accepts(tuple(images[y] for y in edge)) for edge in closing[x]):
                total += extend(i + 1)
        images.pop(x, None)
        return total

    return extend(0) * T**free


def count_hyper_homs_bruteforce(hyp, pred, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """Reference count over all ``T^v`` maps."""
    targets = pred.target_vertices
    total_maps = len(targets) ** hyp.vertex_count
    if total_maps > max_evaluations:
        raise InstanceTooLargeError(f"brute force needs {total_maps} maps, guard is {max_evaluations}.")
    edges = [tuple(sorted(edge)) for edge in hyp.edges]
    return sum(
        1
        for g in product(targets, repeat=hyp.vertex_count)
        if all(pred.accepts(tuple(g[x] for x in edge)) for edge in edges)
    )


def non_edge_tuple_count(pred, k):
    """Number of k-tuples over ``N(anchor)`` that are not edges of ``pred``."""
    threshold = pred.thresholds(k)
    total = 0
    for support in support_sets(pred.target_vertices, k):
        if not int_ge_rational(len(common_neighborhood(pred.host, support)), threshold):
            total += surjection_count(k, len(support))
    return total


def estimate_hyper_hom_fraction(hyp, pred, samples, seed):
    """
    Monte Carlo estimate of the fraction of uniform random maps that are
    homomorphisms. Approximate by nature; the exact count is authoritative.
    """
    if samples < 1:
        raise InvalidArgumentError(f"sample count must be positive, got {samples}.")
    targets = pred.target_vertices
    edges = [tuple(sorted(edge)) for edge in hyp.edges]
    if not targets:
        hits = samples if hyp.vertex_count == 0 else 0
        return MonteCarloEstimate(samples, hits, 0.5 / sqrt(samples))
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, len(targets), size=(samples, hyp.vertex_count))
    hits = sum(
        1 for row in draws if all(pred.accepts(tuple(targets[row[x]] for x in edge)) for edge in edges)
    )
    return MonteCarloEstimate(samples, hits, 0.5 / sqrt(samples))


def verify_randomembed(hyp, pred, e_bound, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Check the union-bound embedding lemma on one instance.

    Hypothesis: ``hyp`` has at most ``e_bound`` edges and, for each k in
    1..v, at most ``T^k / (2 e_bound)`` k-tuples over the T targets are
    non-edges. Conclusion: ``2 * count_hyper_homs >= T^v``.

    Raises
    ------
    InvalidArgumentError
        If ``e_bound < 1``.
    """
    if e_bound < 1:
        raise InvalidArgumentError(f"the edge bound must be at least 1, got {e_bound}.")
    T = len(pred.target_vertices)
    v = hyp.vertex_count
    non_edges = {k: non_edge_tuple_count(pred, k) for k in range(1, v + 1)}
    hypothesis = len(hyp.edges) <= e_bound and all(
        2 * e_bound * count <= T**k for k, count in non_edges.items()
    )
    count = count_hyper_homs(hyp, pred, max_evaluations)
    return LemmaReport(
        which="randomembed",
        hypothesis_satisfied=hypothesis,
        conclusion_holds=2 * count >= T**v,
        lhs=count,
        rhs_num=T**v,
        rhs_den=2,
        details={"anchor": pred.anchor, "targets": T, "e_bound": e_bound, "non_edges": non_edges},
    )


def _as_apex(H):
    return H if isinstance(H, BipartiteApexGraph) else BipartiteApexGraph.from_graph(H)


def verify_importantstep(H, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Check ``h_H(G) >= (2n)^(-n^2) p^m N^n`` as
    ``h * (2n)^(n^2) * N^(2m) >= (2E)^m * N^n``.

    Along the way every good anchor v gets its link-hypergraph count and
    embedding sub-report, and the intermediate bound
    ``sum over good v of count_hyper_homs(v) * prod_w tuple_threshold(|N(w)|)``
    is checked to sit between the final bound and h.

    Raises
    ------
    InvalidHypothesisError
        If ``H`` has no apex.
    EmptyGraphError
        If ``G`` has no vertices.
    """
    H = _as_apex(H)
    if G.vertex_count == 0:
        raise EmptyGraphError("the apex lower bound needs a non-empty target graph.")
    N, E, n, m = G.vertex_count, G.edge_count, H.n, H.m
    h = count_homs(H, G, max_evaluations)
    rhs_num = (2 * E) ** m * N**n
    rhs_den = (2 * n) ** (n * n) * N ** (2 * m)
    bound = ExactRational(rhs_num, rhs_den)

    goodstep = verify_goodstep(G, n)
    params = goodstep.params
    hyp = link_hypergraph(H)
    weight = ExactRational(1)
    for w in H.part1:
        if w != H.apex:
            weight = weight * params.tuple_threshold(len(H.neighbors(w)))

    anchors = []
    anchored = ExactRational(0)
    anchors_ok = True
    for v in goodstep.good_vertices:
        pred = ThresholdPredicate(G, v, params)
        sub = verify_randomembed(hyp, pred, n, max_evaluations)
        anchors_ok = anchors_ok and sub.hypothesis_satisfied and sub.conclusion_holds
        anchored = anchored + weight * sub.lhs
        anchors.append(
            {
                "vertex": v,
                "degree": G.degree(v),
                "hyper_homs": sub.lhs,
                "hypothesis_satisfied": sub.hypothesis_satisfied,
                "conclusion_holds": sub.conclusion_holds,
            }
        )

    below_count = int_ge_rational(h, anchored)
    above_bound = not anchored < bound
    return LemmaReport(
        which="importantstep",
        hypothesis_satisfied=True,
        conclusion_holds=h * rhs_den >= rhs_num,
        lhs=h,
        rhs_num=rhs_num,
        rhs_den=rhs_den,
        details={
            "n": n,
            "m": m,
            "n1": H.n1,
            "n2": H.n2,
            "anchors": anchors,
            "anchored_bound": anchored,
            "anchored_bound_below_count": below_count,
            "anchored_bound_above_final": above_bound,
            "goodstep_holds": not goodstep.lemma_violation,
            "readings": list(READINGS),
        },
        internal_checks_hold=anchors_ok and below_count and above_bound and not goodstep.lemma_violation,
    )


def verify_tensor_multiplicativity(H, F, G, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Check ``h_H(F x G) = h_H(F) * h_H(G)``, the count form of
    ``t_H(F x G) = t_H(F) t_H(G)``, and the matching edge-density identity.
    """
    if isinstance(H, BipartiteApexGraph):
        H = H.as_graph()
    product_graph = tensor_product(F, G)
    lhs = count_homs(H, product_graph, max_evaluations)
    rhs = count_homs(H, F, max_evaluations) * count_homs(H, G, max_evaluations)
    details = {"product_vertices": product_graph.vertex_count, "product_edges": product_graph.edge_count}
    density_ok = True
    if F.vertex_count and G.vertex_count:
        density_ok = edge_density(product_graph) == edge_density(F) * edge_density(G)
        details["density_identity"] = density_ok
    return LemmaReport(
        which="tensor",
        hypothesis_satisfied=True,
        conclusion_holds=lhs == rhs,
        lhs=lhs,
        rhs_num=rhs,
        rhs_den=1,
        details=details,
        internal_checks_hold=density_ok,
    )


def verify_main_theorem(H, G, max_power, max_evaluations=DEFAULT_MAX_EVALUATIONS):
    """
    Check the Sidorenko inequality for apex ``H`` on ``G`` and follow it
    through tensor powers ``G^1..G^max_power``: ``t_H(G^r) = t_H(G)^r``, the
    slack of ``G^r`` is ``c^r``, and the apex lower bound holds on ``G^r``.

    Raises
    ------
    InvalidArgumentError
        If ``max_power < 1``.
    InstanceTooLargeError
        If ``(N^r)^n`` exceeds the guard for some power r.
    """
    H = _as_apex(H)
    if max_power < 1:
        raise InvalidArgumentError(f"max_power must be at least 1, got {max_power}.")
    n, m = H.n, H.m
    verdict = sidorenko_check(H, G, max_evaluations)
    c = verdict.slack_ratio
    powers = []
    internal_ok = True
    power_graph = None
    for r in range(1, max_power + 1):
        if (G.vertex_count**r) ** n > max_evaluations:
            raise InstanceTooLargeError(
                f"G^{r} has {G.vertex_count**r} vertices; {n}-vertex H exceeds the guard of {max_evaluations}."
            )
        power_graph = G if power_graph is None else tensor_product(power_graph, G)
        h_r = count_homs(H, power_graph, max_evaluations)
        N_r, E_r = power_graph.vertex_count, power_graph.edge_count
        lhs_r = h_r * N_r ** (2 * m)
        rhs_r = (2 * E_r) ** m * N_r**n
        slack_r = ExactRational(lhs_r, rhs_r) if rhs_r else None
        multiplicative = h_r == verdict.count**r
        slack_ok = slack_r == c**r if c is not None and slack_r is not None else slack_r is None
        lower = verify_importantstep(H, power_graph, max_evaluations)
        internal_ok = internal_ok and multiplicative and slack_ok and lhs_r >= rhs_r and not lower.lemma_violation
        powers.append(
            {
                "r": r,
                "vertices": N_r,
                "count": h_r,
                "slack": slack_r,
                "multiplicative": multiplicative,
                "slack_is_power": slack_ok,
                "lower_bound_holds": lower.conclusion_holds,
            }
        )
    return LemmaReport(
        which="main-theorem",
        hypothesis_satisfied=True,
        conclusion_holds=verdict.holds,
        lhs=verdict.lhs,
        rhs_num=verdict.rhs,
        rhs_den=1,
        details={
            "slack": c,
            "contradiction_power": contradiction_power(c, n),
            "powers": powers,
        },
        internal_checks_hold=internal_ok,
    )
