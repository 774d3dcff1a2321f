"""Graph construction and the neighborhood primitives every proof step uses."""

import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from src.models.graph import Graph, RootedLayers, VertexSet

logger = logging.getLogger(__name__)


class GraphError(Exception):
    """Invalid graph input or a query the graph cannot answer."""

    pass


def build_graph(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Build a simple undirected graph.

    Args:
        n: Vertex count; vertices are ``0..n-1``
        edges: Vertex pairs; duplicates (in either orientation) are collapsed

    Returns:
        The immutable graph

    Raises:
        GraphError: On a negative count, an out-of-range endpoint or a self-loop
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")

    neighbor_sets: List[set] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)

    return Graph(n=n, adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets))


def to_networkx(g: Graph) -> nx.Graph:
    """``g`` as a networkx graph on nodes ``0..n-1``."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h: nx.Graph) -> Graph:
    """Relabel the nodes of ``h`` to ``0..n-1`` in sorted order and freeze it."""
    index = {v: k for k, v in enumerate(sorted(h.nodes()))}
    return build_graph(len(index), ((index[u], index[v]) for u, v in h.edges()))


def vertex_set(g: Graph, vertices: Iterable[int]) -> VertexSet:
    """Normalize ``vertices`` into a sorted, duplicate-free VertexSet of ``g``."""
    result = tuple(sorted(set(vertices)))
    if result and not (0 <= result[0] and result[-1] < g.n):
        raise GraphError(f"vertex set {result} not contained in 0..{g.n - 1}")
    return result


def neighbors_in(g: Graph, v: int, within: Iterable[int]) -> VertexSet:
    """N(v) ∩ within, sorted."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    nbrs = g.neighbor_sets[v]
    return tuple(sorted(u for u in set(within) if u in nbrs))


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    members = list(s)
    member_set = set(members)
    return all(not (g.neighbor_sets[u] & member_set) for u in members)


def is_triangle_free(g: Graph) -> bool:
    """True iff no three vertices are mutually adjacent."""
    nbrs = g.neighbor_sets
    for u, v in g.edges():
        if nbrs[u] & nbrs[v]:
            return False
    return True


def find_triangle(g: Graph) -> Optional[Tuple[int, int, int]]:
    """Least triangle ``(u, v, w)`` with ``u < v < w``, or None."""
    nbrs = g.neighbor_sets
    for u, v in g.edges():
        common = [w for w in nbrs[u] & nbrs[v] if w > v]
        if common:
            return u, v, min(common)
    return None


def bfs_distances(
    g: Graph, source: int, within: Optional[Iterable[int]] = None
) -> Dict[int, int]:
    """Distances from ``source`` to every reachable vertex, optionally inside ``within``."""
    h = to_networkx(g)
    if within is not None:
        h = h.subgraph(within)
    if source not in h:
        return {}
    return dict(nx.single_source_shortest_path_length(h, source))


def layers(g: Graph, r: int) -> RootedLayers:
    """
    Distance-one and distance-two layers around ``r``.

    Vertices at distance three or more are absent from both sets; residual
    graphs may be disconnected and the radius premise is checked elsewhere.
    """
    if not 0 <= r < g.n:
        raise GraphError(f"root {r} outside 0..{g.n - 1}")
    s1 = g.adjacency[r]
    s1_set = g.neighbor_sets[r]
    s2 = set()
    for v in s1:
        s2.update(g.neighbor_sets[v])
    s2 -= s1_set
    s2.discard(r)
    return RootedLayers(root=r, s1=s1, s2=tuple(sorted(s2)))


def restrict_layers(rooted: RootedLayers, alive: Iterable[int]) -> RootedLayers:
    """The residual view ``S1 ∩ V(G_i)``, ``S2 ∩ V(G_i)``."""
    alive_set = set(alive)
    return RootedLayers(
        root=rooted.root,
        s1=tuple(v for v in rooted.s1 if v in alive_set),
        s2=tuple(v for v in rooted.s2 if v in alive_set),
    )


def eccentricity(g: Graph, v: int) -> Optional[int]:
    """Largest distance from ``v``; None when some vertex is unreachable."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    dist = bfs_distances(g, v)
    if len(dist) != g.n:
        return None
    return max(dist.values())


def _connected_networkx(g: Graph) -> Tuple[nx.Graph, Dict[int, int]]:
    if g.n == 0:
        raise GraphError("radius of the empty graph is undefined")
    h = to_networkx(g)
    if not nx.is_connected(h):
        raise GraphError("graph is disconnected; radius is infinite")
    return h, nx.eccentricity(h)


def eccentricities(g: Graph) -> Tuple[int, ...]:
    """Eccentricity of every vertex of a connected graph."""
    _, ecc = _connected_networkx(g)
    return tuple(ecc[v] for v in range(g.n))


def eccentricity_and_radius(g: Graph) -> Tuple[int, int]:
    """
    Radius of a connected graph and its least-index center.

    Returns:
        ``(radius, center)``

    Raises:
        GraphError: If the graph is empty or disconnected (infinite radius)
    """
    h, ecc = _connected_networkx(g)
    radius = nx.radius(h, e=ecc)
    return radius, min(v for v, e in ecc.items() if e == radius)


def centers(g: Graph) -> VertexSet:
    """All vertices attaining the radius, in index order."""
    h, ecc = _connected_networkx(g)
    return tuple(sorted(nx.center(h, e=ecc)))


def is_complete_bipartite_between(
    g: Graph, a: Sequence[int], b: Sequence[int]
) -> bool:
    """
    True iff every ``a``-``b`` pair is an edge and both sides are independent.

    Vacuously true when either side is empty.

    Raises:
        GraphError: If the sides overlap
    """
    overlap = set(a) & set(b)
    if overlap:
        raise GraphError(f"bipartition sides overlap on {sorted(overlap)}")
    if not a or not b:
        return True
    if not (is_independent(g, a) and is_independent(g, b)):
        return False
    return all(g.has_edge(x, y) for x in a for y in b)


def first_missing_edge(
    g: Graph, a: Sequence[int], b: Sequence[int]
) -> Optional[Tuple[int, int]]:
    """Least non-adjacent pair ``(x, y)`` with ``x`` in ``a`` and ``y`` in ``b``."""
    for x in sorted(a):
        for y in sorted(b):
            if not g.has_edge(x, y):
                return x, y
    return None


def induced_subgraph(g: Graph, s: Sequence[int]) -> Graph:
    """Subgraph induced on ``s``, with ``s[k]`` relabeled to ``k``."""
    index = {v: k for k, v in enumerate(s)}
    if len(index) != len(s):
        raise GraphError("induced subgraph vertex list has duplicates")
    edges = [
        (index[u], index[w]) for u in s for w in g.adjacency[u] if w in index and u < w
    ]
    return build_graph(len(s), edges)


def degree_histogram(g: Graph) -> Dict[int, int]:
    """Degree -> number of vertices with that degree, sorted by degree."""
    counts = Counter(g.degree(v) for v in range(g.n))
    return dict(sorted(counts.items()))
