"""Deterministic triangle-free test graph families."""

import logging
from itertools import combinations
from typing import List, Tuple

import networkx as nx

from src.models.graph import Graph
from src.services.graph_ops import build_graph, from_networkx, to_networkx
from src.utils.prng import XorShift64Star

logger = logging.getLogger(__name__)


class GeneratorError(Exception):
    """Invalid generator parameters."""

    pass


def cycle(n: int) -> Graph:
    """The cycle C_n (n >= 3); C_3 is K_3."""
    if n < 3:
        raise GeneratorError(f"cycle length must be at least 3, got {n}")
    return from_networkx(nx.cycle_graph(n))


def mycielskian(g: Graph) -> Graph:
    """
    Mycielski construction.

    Vertex layout: originals ``0..n-1``, shadows ``n..2n-1`` (shadow ``n+i``
    is adjacent to N(i)), apex ``2n`` adjacent to every shadow.  The result
    has ``3m + n`` edges, stays triangle-free and has chromatic number one
    higher than ``g``.
    """
    return from_networkx(nx.mycielskian(to_networkx(g)))


def iterated_mycielski(k: int) -> Graph:
    """C5 with the Mycielski construction applied ``k`` times (chromatic number 3+k)."""
    if k < 0:
        raise GeneratorError(f"iteration count must be non-negative, got {k}")
    g = from_networkx(nx.mycielskian(nx.cycle_graph(5), iterations=k))
    logger.debug(f"iterated_mycielski({k}): n={g.n} m={g.edge_count}")
    return g


def kneser(n: int, k: int) -> Graph:
    """
    Kneser graph KG(n, k).

    Vertices are the k-subsets of ``{1..n}`` in lexicographic order; two are
    adjacent when disjoint.  Triangle-free exactly when ``n < 3k``.
    """
    if k < 1:
        raise GeneratorError(f"subset size must be positive, got {k}")
    if n < 2 * k:
        raise GeneratorError(f"kneser graph needs n >= 2k, got n={n}, k={k}")
    h = nx.Graph()
    h.add_nodes_from(combinations(range(1, n + 1), k))
    h.add_edges_from(
        (a, b) for a, b in combinations(list(h.nodes()), 2) if not set(a) & set(b)
    )
    return from_networkx(h)


def random_triangle_free(n: int, target_edges: int, seed: int) -> Graph:
    """
    Seeded triangle-free process.

    Candidate pairs are visited in an xorshift64*-shuffled order; each is
    added unless it closes a triangle, stopping at ``target_edges`` or when
    the candidates run out.  Identical arguments give identical graphs.
    """
    if n < 0:
        raise GeneratorError(f"vertex count must be non-negative, got {n}")
    rng = XorShift64Star(seed)
    nbrs: List[set] = [set() for _ in range(n)]
    edges: List[Tuple[int, int]] = []
    if target_edges > 0:
        for u, v in rng.sample_pairs(n):
            if nbrs[u] & nbrs[v]:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
            edges.append((u, v))
            if len(edges) >= target_edges:
                break
    logger.debug(
        f"random_triangle_free(n={n}, target={target_edges}, seed={seed}): m={len(edges)}"
    )
    return build_graph(n, edges)
