"""
Deterministic dependent-random-choice bookkeeping.

For a graph G with N vertices and E edges (``p = 2E/N^2``) and a target size
``n``, a k-tuple is *deficient* when its common neighbourhood has at most
``(2n)^(-n-1) p^k N`` vertices, and a vertex is *bad at k* when at least a
``1/(2n)`` fraction of the k-tuples over its neighbourhood are deficient.
Good vertices (bad at no k in 1..n) carry at least half of the degree sum.

Tuples allow repeated entries. Counting is done per support set: a set of
size j is the support of exactly ``surjection_count(k, j)`` k-tuples.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from src.errors import EmptyGraphError, InvalidArgumentError
from src.graph_core import check_vertex, common_neighborhood, neighborhood
from src.numeric_core import ExactRational, int_le_rational


@dataclass(frozen=True)
class DrcParams:
    """Thresholds for target size ``n`` on a graph with the given N and E."""

    n: int
    vertex_count: int
    edge_count: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError(f"n must be at least 1, got {self.n}.")
        if self.vertex_count < 1:
            raise EmptyGraphError("dependent random choice needs at least one vertex.")

    @classmethod
    def for_graph(cls, G, n):
        return cls(n, G.vertex_count, G.edge_count)

    def tuple_threshold(self, k):
        """
        ``(2n)^(-n-1) p^k N = 2^k E^k / ((2n)^(n+1) N^(2k-1))``.

        ``k = 0`` gives ``N / (2n)^(n+1)``, the bound used for a vertex of
        H with no neighbours.
        """
        if k < 0:
            raise InvalidArgumentError(f"tuple length must be non-negative, got {k}.")
        if k == 0:
            return ExactRational(self.vertex_count, (2 * self.n) ** (self.n + 1))
        return ExactRational(
            2**k * self.edge_count**k,
            (2 * self.n) ** (self.n + 1) * self.vertex_count ** (2 * k - 1),
        )

    @property
    def badness_fraction(self):
        return ExactRational(1, 2 * self.n)


@dataclass(frozen=True)
class KAudit:
    k: int
    deficient_count: int
    bad: bool


@dataclass(frozen=True)
class VertexAudit:
    vertex: int
    degree: int
    per_k: tuple

    @property
    def good(self):
        return not any(entry.bad for entry in self.per_k)


@dataclass(frozen=True)
class XkCheck:
    """
    Per-k checks from the proof of the good-vertex lemma.

    ``holds`` is the upper bound ``X_k <= (2n)^(-n-1) p^k N^(k+1)``; the
    remaining flags cover the rest of the chain down to
    ``sum of bad-at-k degrees <= pN^2/(2n)``.
    """

    k: int
    X_k: int
    upper: ExactRational
    holds: bool
    bad_degree_sum: int
    covers_bad_vertices: bool
    bad_power_bound: bool
    bad_fraction_bound: bool
    per_vertex_agrees: bool

    @property
    def all_hold(self):
        return all(
            (self.holds, self.covers_bad_vertices, self.bad_power_bound, self.bad_fraction_bound, self.per_vertex_agrees)
        )


@dataclass(frozen=True)
class GoodstepReport:
    params: DrcParams
    audits: tuple
    good_degree_sum: int
    bound: ExactRational
    holds: bool
    xk_checks: tuple = field(default=())

    @property
    def lemma_violation(self):
        return not self.holds or not all(check.all_hold for check in self.xk_checks)

    @property
    def good_vertices(self):
        return [audit.vertex for audit in self.audits if audit.good]


def surjection_count(k, j):
    """Number of k-tuples over a j-set whose support is the whole set."""
    return sum((-1) ** i * comb(j, i) * (j - i) ** k for i in range(j + 1))


def support_sets(vertices, k):
    for size in range(1, min(k, len(vertices)) + 1):
        for support in combinations(vertices, size):
            yield support


def _check_k(k, params):
    if not isinstance(k, int) or not 1 <= k <= params.n:
        raise InvalidArgumentError(f"k must lie in 1..{params.n}, got {k!r}.")


def deficient_tuple_count(G, v, k, params):
    """
    Count k-tuples over ``N(v)`` whose common neighbourhood has at most
    ``tuple_threshold(k)`` vertices.

    Parameters
    ----------
    G : Graph
    v : int
        Vertex whose neighbourhood supplies the tuple entries.
    k : int
        Tuple length, 1..params.n.
    params : DrcParams

    Returns
    -------
    int

    Raises
    ------
    InvalidVertexError
        If ``v`` is not a vertex of ``G``.
    InvalidArgumentError
        If ``k`` is out of range.
    """
    check_vertex(G, v)
    _check_k(k, params)
    threshold = params.tuple_threshold(k)
    total = 0
    for support in support_sets(sorted(neighborhood(G, v)), k):
        if int_le_rational(len(common_neighborhood(G, support)), threshold):
            total += surjection_count(k, len(support))
    return total


def deficient_tuple_count_naive(G, v, k, params):
    """Same count as :func:`deficient_tuple_count`, enumerating every tuple."""
    check_vertex(G, v)
    _check_k(k, params)
    threshold = params.tuple_threshold(k)
    return sum(
        1
        for S in product(sorted(neighborhood(G, v)), repeat=k)
        if int_le_rational(len(common_neighborhood(G, S)), threshold)
    )


def classify_vertex(G, v, params):
    """
    Audit ``v`` at every k in 1..n.

    ``v`` is bad at k when ``2n * deficient >= degree^k``, so a vertex with
    no neighbours is bad at every k.
    """
    check_vertex(G, v)
    degree = len(neighborhood(G, v))
    per_k = []
    for k in range(1, params.n + 1):
        deficient = deficient_tuple_count(G, v, k, params)
        bad = deficient * params.badness_fraction.den >= degree**k * params.badness_fraction.num
        per_k.append(KAudit(k, deficient, bad))
    return VertexAudit(v, degree, tuple(per_k))


def count_Xk(G, k, params):
    """
    ``X_k``: pairs ``(v, S)`` with S a deficient k-tuple of vertices of G and
    v adjacent to every entry of S, i.e. the sum of ``|N(S)|`` over deficient S.
    """
    _check_k(k, params)
    threshold = params.tuple_threshold(k)
    total = 0
    for support in support_sets(list(range(G.vertex_count)), k):
        size = len(common_neighborhood(G, support))
        if size and int_le_rational(size, threshold):
            total += surjection_count(k, len(support)) * size
    return total


def _xk_check(G, k, params, audits):
    E, N, n = params.edge_count, params.vertex_count, params.n
    threshold = params.tuple_threshold(k)
    X_k = count_Xk(G, k, params)
    upper = threshold * N**k
    bad = [audit for audit in audits if audit.per_k[k - 1].bad]
    bad_degree_sum = sum(audit.degree for audit in bad)
    return XkCheck(
        k=k,
        X_k=X_k,
        upper=upper,
        holds=int_le_rational(X_k, upper),
        bad_degree_sum=bad_degree_sum,
        covers_bad_vertices=2 * n * X_k >= sum(audit.degree**k for audit in bad),
        bad_power_bound=bad_degree_sum**k * (2 * n) ** n <= (2 * E) ** k,
        bad_fraction_bound=n * bad_degree_sum <= E,
        per_vertex_agrees=X_k == sum(audit.per_k[k - 1].deficient_count for audit in audits),
    )


def verify_goodstep(G, n):
    """
    Audit every vertex and check that good vertices carry degree sum >= E.

    Since ``pN^2/2 = E`` the lemma's bound is the integer E. Every proof
    step is recorded in ``xk_checks``; ``lemma_violation`` on the report is
    True only if something failed, which would indicate a bug.

    Parameters
    ----------
    G : Graph
    n : int
        Vertex count of the target H, at least 1.

    Returns
    -------
    GoodstepReport
    """
    params = DrcParams.for_graph(G, n)
    audits = tuple(classify_vertex(G, v, params) for v in range(G.vertex_count))
    good_degree_sum = sum(audit.degree for audit in audits if audit.good)
    xk_checks = tuple(_xk_check(G, k, params, audits) for k in range(1, n + 1))
    return GoodstepReport(
        params=params,
        audits=audits,
        good_degree_sum=good_degree_sum,
        bound=ExactRational(G.edge_count),
        holds=good_degree_sum >= G.edge_count,
        xk_checks=xk_checks,
    )
