"""
Simple undirected graphs, bipartite apex graphs, tensor products and IO.

Vertices are the dense ids ``0..N-1``. A tensor-product vertex ``(a, b)`` is
encoded as ``a * |G| + b``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np

from src.config import ATLAS_MAX_VERTICES, GRAPH6_MAX_VERTICES
from src.errors import (
    EmptyGraphError,
    InvalidArgumentError,
    InvalidHypothesisError,
    InvalidPowerError,
    InvalidProbabilityError,
    InvalidVertexError,
    NotBipartiteError,
    ParseError,
    UnsupportedSizeError,
)
from src.numeric_core import ExactRational

GRAPH6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple graph on vertices ``0..vertex_count-1``.

    ``adjacency[v]`` is the frozenset of neighbours of ``v``. Build graphs with
    :func:`from_edges` or the named constructors, which check the invariants.
    """

    vertex_count: int
    adjacency: tuple

    @property
    def edge_count(self):
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def has_edge(self, a, b):
        return b in self.adjacency[a]

    def edges(self):
        """Unordered edges ``(a, b)`` with ``a < b`` in lexicographic order."""
        return [(a, b) for a in range(self.vertex_count) for b in sorted(self.adjacency[a]) if a < b]

    def degree(self, v):
        check_vertex(self, v)
        return len(self.adjacency[v])

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return graph

    def __repr__(self):
        return f"Graph(N={self.vertex_count}, E={self.edge_count})"


def check_vertex(G, v):
    if not isinstance(v, (int, np.integer)) or not 0 <= v < G.vertex_count:
        raise InvalidVertexError(f"vertex {v!r} is not in 0..{G.vertex_count - 1}.")


def from_edges(vertex_count, edges):
    """
    Build a graph from an edge iterable.

    Raises
    ------
    InvalidVertexError
        If an endpoint is out of range.
    InvalidArgumentError
        If an edge is a self-loop.
    """
    if vertex_count < 0:
        raise InvalidArgumentError(f"vertex count must be non-negative, got {vertex_count}.")
    neighbours = [set() for _ in range(vertex_count)]
    for a, b in edges:
        for v in (a, b):
            if not 0 <= v < vertex_count:
                raise InvalidVertexError(f"edge ({a}, {b}) leaves 0..{vertex_count - 1}.")
        if a == b:
            raise InvalidArgumentError(f"self-loop at vertex {a} is not allowed.")
        neighbours[a].add(b)
        neighbours[b].add(a)
    return Graph(vertex_count, tuple(frozenset(nbrs) for nbrs in neighbours))


def from_networkx(graph):
    """Convert a networkx graph, relabelling nodes densely in sorted order."""
    relabelled = nx.convert_node_labels_to_integers(graph, ordering="sorted")
    return from_edges(relabelled.number_of_nodes(), relabelled.edges())


def empty_graph(n):
    return from_edges(n, [])


def complete_graph(n):
    return from_edges(n, combinations(range(n), 2))


def path_graph(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise InvalidArgumentError(f"a cycle needs at least 3 vertices, got {n}.")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k):
    """K_{1,k}: centre 0, leaves 1..k."""
    return from_edges(k + 1, [(0, leaf) for leaf in range(1, k + 1)])


def complete_bipartite_graph(n1, n2):
    return from_edges(n1 + n2, [(a, n1 + b) for a in range(n1) for b in range(n2)])


def disjoint_union(F, G):
    shift = F.vertex_count
    return from_edges(F.vertex_count + G.vertex_count, F.edges() + [(a + shift, b + shift) for a, b in G.edges()])


def with_edge(G, a, b):
    """A copy of ``G`` with the edge ``{a, b}`` added."""
    return from_edges(G.vertex_count, G.edges() + [(a, b)])


def neighborhood(G, v):
    """
    Vertices adjacent to ``v``; ``v`` itself is never included.

    Raises
    ------
    InvalidVertexError
        If ``v`` is not a vertex of ``G``.
    """
    check_vertex(G, v)
    return G.adjacency[v]


def common_neighborhood(G, S):
    """
    Vertices adjacent to every entry of the vertex tuple ``S``.

    Only the support set of ``S`` matters, so repeats and order are irrelevant.
    The empty tuple yields every vertex.
    """
    support = set(S)
    for v in support:
        check_vertex(G, v)
    if not support:
        return frozenset(range(G.vertex_count))
    return frozenset.intersection(*(G.adjacency[v] for v in support))


def tensor_product(F, G):
    """
    Categorical product: ``(a, b) ~ (c, d)`` iff ``a ~ c`` in F and ``b ~ d`` in G.

    Vertex ``(a, b)`` is encoded as ``a * |G| + b``, which is the position of
    the pair in sorted order.
    """
    return from_networkx(nx.tensor_product(F.to_networkx(), G.to_networkx()))


def tensor_power(G, r):
    """
    ``G^1 = G`` and ``G^r = G^(r-1) x G``.

    Raises
    ------
    InvalidPowerError
        If ``r < 1``.
    """
    if not isinstance(r, int) or r < 1:
        raise InvalidPowerError(f"tensor power must be at least 1, got {r!r}.")
    power = G
    for _ in range(r - 1):
        power = tensor_product(power, G)
    return power


def edge_density(G):
    """
    Exact ``p = 2E / N^2``, which equals ``t_{K2}(G)``.

    Raises
    ------
    EmptyGraphError
        If ``G`` has no vertices.
    """
    if G.vertex_count == 0:
        raise EmptyGraphError("edge density is undefined on the empty graph.")
    return ExactRational(2 * G.edge_count, G.vertex_count**2)


def parse_graph6(text):
    """
    Decode a short-form graph6 string.

    The framing is checked here so that errors carry an offset; the bits
    themselves are decoded by ``networkx.from_graph6_bytes``.

    Parameters
    ----------
    text : str
        The encoding, optionally prefixed by ``>>graph6<<``; surrounding
        whitespace is ignored.

    Returns
    -------
    Graph

    Raises
    ------
    ParseError
        On characters outside 63..126, the long form, a wrong length or
        non-zero padding bits. ``offset`` is the byte position at fault.
    """
    data = text.strip()
    base = 0
    if data.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    if not data:
        raise ParseError("empty graph6 string", base)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"character {ch!r} outside the graph6 range 63..126", base + i)
    n = ord(data[0]) - 63
    if n > GRAPH6_MAX_VERTICES:
        raise ParseError("long-form graph6 (N > 62) is not supported", base)

    bit_count = n * (n - 1) // 2
    expected = 1 + (bit_count + 5) // 6
    if len(data) != expected:
        raise ParseError(f"expected {expected} characters for N={n}, found {len(data)}", base + min(len(data), expected))
    padding = -bit_count % 6
    if padding and (ord(data[-1]) - 63) & ((1 << padding) - 1):
        raise ParseError("non-zero padding bits", base + len(data) - 1)
    return from_networkx(nx.from_graph6_bytes(data.encode("ascii")))


def emit_graph6(G):
    """
    Encode ``G`` as canonical short-form graph6.

    Raises
    ------
    UnsupportedSizeError
        If ``G`` has more than 62 vertices.
    """
    if G.vertex_count > GRAPH6_MAX_VERTICES:
        raise UnsupportedSizeError(
            f"graph6 short form holds at most {GRAPH6_MAX_VERTICES} vertices, got {G.vertex_count}."
        )
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


def read_graph6_stream(text):
    """Parse one graph6 string per line; blank lines are skipped."""
    graphs = []
    for line in text.splitlines():
        if line.strip():
            graphs.append(parse_graph6(line))
    return graphs


def read_edge_list(text):
    """
    Parse the edge-list format: a line ``N`` then lines ``u v`` (0-based).

    Blank lines and ``#`` comments are ignored. ``ParseError.offset`` is the
    1-based line number.
    """
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            numbers = [int(field) for field in fields]
        except ValueError:
            raise ParseError(f"non-integer field in {raw.strip()!r}", lineno) from None
        if vertex_count is None:
            if len(numbers) != 1 or numbers[0] < 0:
                raise ParseError("first line must be the vertex count N", lineno)
            vertex_count = numbers[0]
            continue
        if len(numbers) != 2:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        u, v = numbers
        if not (0 <= u < vertex_count and 0 <= v < vertex_count) or u == v:
            raise ParseError(f"invalid edge ({u}, {v}) for N={vertex_count}", lineno)
        edges.append((u, v))
    if vertex_count is None:
        raise ParseError("missing vertex count line", 1)
    return from_edges(vertex_count, edges)


def emit_edge_list(G):
    lines = [str(G.vertex_count)] + [f"{a} {b}" for a, b in G.edges()]
    return "\n".join(lines) + "\n"


def load_graphs(path):
    """
    Read a graph file: an edge list if the first meaningful line is a bare
    integer, otherwise a graph6 stream.

    Raises
    ------
    ParseError
        If the file holds a non-ASCII byte; ``offset`` is its position.
    """
    with open(path, "rb") as f:
        raw = f.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise ParseError(f"non-ASCII byte {raw[exc.start]:#04x} in {path}", exc.start) from None
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            if stripped.isdigit():
                return [read_edge_list(text)]
            break
    return read_graph6_stream(text)


def random_graph(N, p, seed):
    """
    Seeded G(N, p) with an exact rational edge probability.

    Pairs ``(i, j)``, ``i < j``, are visited in lexicographic order and each
    becomes an edge when the matching draw of
    ``numpy.random.default_rng(seed).integers(0, den)`` is below ``num``
    (``p = num/den`` in lowest terms). The same ``(N, p, seed)`` always
    produces the same graph.

    Raises
    ------
    InvalidProbabilityError
        If ``p`` is outside [0, 1].
    """
    if isinstance(p, ExactRational):
        p = p.to_fraction()
    else:
        p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidProbabilityError(f"edge probability must lie in [0, 1], got {p}.")
    if p.denominator >= 2**63:
        raise InvalidArgumentError("edge probability denominator must be below 2**63.")
    pairs = list(combinations(range(N), 2))
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, p.denominator, size=len(pairs))
    return from_edges(N, [pair for pair, draw in zip(pairs, draws) if draw < p.numerator])


def all_graphs(max_vertices, min_vertices=1):
    """
    Every graph on ``min_vertices..max_vertices`` vertices, one per
    isomorphism class, from the networkx graph atlas.
    """
    if max_vertices > ATLAS_MAX_VERTICES:
        raise InvalidArgumentError(f"the graph atlas stops at {ATLAS_MAX_VERTICES} vertices.")
    return [from_networkx(g) for g in nx.graph_atlas_g() if min_vertices <= g.number_of_nodes() <= max_vertices]


@dataclass(frozen=True)
class BipartiteApexGraph:
    """
    Bipartite H = (V1, V2, E) with an apex ``u`` in V1 adjacent to all of V2.

    ``edges`` holds ``(x, y)`` pairs with ``x`` in V1 and ``y`` in V2.
    """

    part1: tuple
    part2: tuple
    edges: frozenset
    apex: int

    def __post_init__(self):
        V1, V2 = set(self.part1), set(self.part2)
        if V1 & V2:
            raise InvalidHypothesisError("the two parts must be disjoint.")
        if V1 | V2 != set(range(len(V1) + len(V2))):
            raise InvalidHypothesisError("the parts must cover the vertex ids 0..n-1.")
        for x, y in self.edges:
            if x not in V1 or y not in V2:
                raise InvalidHypothesisError(f"edge ({x}, {y}) does not go from V1 to V2.")
        if self.apex not in V1:
            raise InvalidHypothesisError(f"apex {self.apex} is not in V1.")
        missing = [y for y in self.part2 if (self.apex, y) not in self.edges]
        if missing:
            raise InvalidHypothesisError(f"apex {self.apex} is not adjacent to {missing}.")

    @property
    def n1(self):
        return len(self.part1)

    @property
    def n2(self):
        return len(self.part2)

    @property
    def n(self):
        return self.n1 + self.n2

    @property
    def m(self):
        return len(self.edges)

    def neighbors(self, x):
        """Neighbours of ``x`` in V2 order (for x in V1) or V1 order (for x in V2)."""
        if x in self.part1:
            return tuple(y for y in self.part2 if (x, y) in self.edges)
        return tuple(w for w in self.part1 if (w, x) in self.edges)

    def as_graph(self):
        return from_edges(self.n, self.edges)

    @classmethod
    def from_graph(cls, H):
        """
        Find an apex in a plain graph.

        ``u`` is an apex exactly when ``N(u)`` and its complement are both
        independent; the smallest such ``u`` is used.

        Raises
        ------
        NotBipartiteError
            If ``H`` is not bipartite.
        InvalidHypothesisError
            If ``H`` is bipartite but has no apex.
        """
        bipartition(H)
        u = find_apex(H)
        if u is None:
            raise InvalidHypothesisError(f"{emit_graph6(H)} has no vertex complete to the other part.")
        part2 = tuple(sorted(H.adjacency[u]))
        part1 = tuple(v for v in range(H.vertex_count) if v not in H.adjacency[u])
        return cls(part1, part2, frozenset(_orient(H.edges(), set(part1))), u)


def _orient(edges, part1):
    return [(a, b) if a in part1 else (b, a) for a, b in edges]


def find_apex(H):
    """Smallest vertex whose neighbourhood and non-neighbourhood are independent, or None."""
    for u in range(H.vertex_count):
        if not H.adjacency[u]:
            continue
        side2 = H.adjacency[u]
        side1 = set(range(H.vertex_count)) - side2
        if all(not (H.adjacency[x] & side2) for x in side2) and all(not (H.adjacency[x] & side1) for x in side1):
            return u
    return None


def is_apex_bipartite(H):
    return find_apex(H) is not None


def bipartition(H):
    """
    A 2-colouring of ``H`` as two sorted vertex lists.

    Raises
    ------
    NotBipartiteError
        If ``H`` has an odd cycle.
    """
    graph = H.to_networkx()
    if not nx.is_bipartite(graph):
        raise NotBipartiteError(f"{emit_graph6(H) if H.vertex_count <= GRAPH6_MAX_VERTICES else H} is not bipartite.")
    colouring = nx.bipartite.color(graph)
    left = sorted(v for v, colour in colouring.items() if colour == 0)
    right = sorted(v for v, colour in colouring.items() if colour == 1)
    return left, right
