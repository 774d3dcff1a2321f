"""Tree patterns: realization, induced-copy search and certificate checking."""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set

from src.models.graph import Graph
from src.models.tree import Embedding, TreeGraph, TreeSpec
from src.services.graph_ops import build_graph

logger = logging.getLogger(__name__)


def build_tree(spec: TreeSpec) -> TreeGraph:
    """
    Realize ``spec`` as a graph in breadth-first order from root 0.

    Children of one vertex are consecutive, and depth-d vertices precede
    depth-(d+1) vertices, so T(a,b) has ``1 + a + ab`` vertices laid out
    level by level.
    """
    depth_of: List[int] = [0]
    parent_of: List[Optional[int]] = [None]
    edges = []
    frontier = [0]
    for depth, degree in enumerate(spec.level_degrees, start=1):
        next_frontier = []
        for parent in frontier:
            for _ in range(degree):
                child = len(depth_of)
                depth_of.append(depth)
                parent_of.append(parent)
                edges.append((parent, child))
                next_frontier.append(child)
        frontier = next_frontier

    return TreeGraph(
        spec=spec,
        graph=build_graph(len(depth_of), edges),
        root=0,
        depth_of=tuple(depth_of),
        parent_of=tuple(parent_of),
    )


class InducedTreeSearch:
    """
    Backtracking search for an induced copy of a level-uniform tree.

    Tree vertices are placed in breadth-first order.  A host vertex is a
    candidate for tree vertex ``x`` when it is unused, adjacent to the image
    of ``x``'s parent, adjacent to no other placed image, has enough
    neighbors for ``x``'s children, and (for a non-first child) exceeds the
    image of the previous sibling.  Candidates are tried in increasing
    order, so the first embedding found is the lexicographically least one.
    """

    def __init__(
        self,
        host: Graph,
        tree: TreeGraph,
        root_candidates: Optional[Iterable[int]] = None,
        within: Optional[Iterable[int]] = None,
    ):
        self.host = host
        self.tree = tree
        self.allowed: Optional[FrozenSet[int]] = (
            None if within is None else frozenset(within)
        )
        self.root_candidates = (
            None if root_candidates is None else sorted(set(root_candidates))
        )

        n_tree = tree.graph.n
        self.needed_degree = [
            len(tree.children[x]) + (0 if tree.parent_of[x] is None else 1)
            for x in range(n_tree)
        ]
        self.previous_sibling: List[Optional[int]] = [None] * n_tree
        for kids in tree.children:
            for a, b in zip(kids, kids[1:]):
                self.previous_sibling[b] = a

        self._mapping: List[int] = [-1] * n_tree
        self._used: Set[int] = set()
        self.nodes = 0

    def _host_neighbors(self, v: int) -> FrozenSet[int]:
        nbrs = self.host.neighbor_sets[v]
        return nbrs if self.allowed is None else nbrs & self.allowed

    def _degree_ok(self, h: int, x: int) -> bool:
        return len(self._host_neighbors(h)) >= self.needed_degree[x]

    def _root_candidates(self) -> List[int]:
        pool = (
            self.root_candidates
            if self.root_candidates is not None
            else range(self.host.n)
        )
        return [
            h
            for h in pool
            if 0 <= h < self.host.n
            and (self.allowed is None or h in self.allowed)
            and self._degree_ok(h, 0)
        ]

    def _candidates(self, x: int) -> List[int]:
        parent = self.tree.parent_of[x]
        parent_image = self._mapping[parent]
        floor = -1
        sibling = self.previous_sibling[x]
        if sibling is not None:
            floor = self._mapping[sibling]
        result = []
        for h in sorted(self._host_neighbors(parent_image)):
            if h <= floor or h in self._used or not self._degree_ok(h, x):
                continue
            # induced: the only placed neighbor may be the parent's image
            if len(self.host.neighbor_sets[h] & self._used) != 1:
                continue
            result.append(h)
        return result

    def _place(self, x: int) -> bool:
        self.nodes += 1
        if x == self.tree.graph.n:
            return True
        for h in self._candidates(x):
            self._mapping[x] = h
            self._used.add(h)
            if self._place(x + 1):
                return True
            self._used.discard(h)
        self._mapping[x] = -1
        return False

    def run(self) -> Optional[Embedding]:
        for h in self._root_candidates():
            self._mapping[0] = h
            self._used = {h}
            if self._place(1):
                return Embedding(mapping=tuple(self._mapping))
        self._mapping[0] = -1
        return None


def find_induced_copy(
    g: Graph,
    spec: TreeSpec,
    root_candidates: Optional[Iterable[int]] = None,
    within: Optional[Iterable[int]] = None,
) -> Optional[Embedding]:
    """
    Lexicographically least induced embedding of ``spec`` into ``g``.

    Args:
        g: Host graph
        spec: Tree to look for
        root_candidates: If given, the tree root may only map into this set
        within: If given, search only the subgraph induced on this set

    Returns:
        The embedding, or None when no induced copy exists
    """
    tree = build_tree(spec)
    if tree.graph.n > (g.n if within is None else len(set(within))):
        return None
    search = InducedTreeSearch(g, tree, root_candidates=root_candidates, within=within)
    embedding = search.run()
    logger.debug(
        f"induced {spec.label} search: {'found' if embedding else 'absent'} "
        f"after {search.nodes} nodes"
    )
    return embedding


def verify_embedding(g: Graph, spec: TreeSpec, e: Embedding) -> bool:
    """True iff ``e`` is total, injective and induced (edge in tree ⇔ edge in host)."""
    tree = build_tree(spec)
    mapping = e.mapping
    if len(mapping) != tree.graph.n:
        return False
    if any(not 0 <= h < g.n for h in mapping):
        return False
    if len(set(mapping)) != len(mapping):
        return False
    for x in range(tree.graph.n):
        for y in range(x + 1, tree.graph.n):
            if tree.graph.has_edge(x, y) != g.has_edge(mapping[x], mapping[y]):
                return False
    return True


def embedding_from_levels(tree: TreeGraph, images: Dict[int, int]) -> Embedding:
    """Embedding from a ``tree vertex -> host vertex`` dict covering the tree."""
    return Embedding(mapping=tuple(images[x] for x in range(tree.graph.n)))
