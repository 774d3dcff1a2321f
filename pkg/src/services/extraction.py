"""Greedy extraction of T(2,1) pieces around a radius-two center."""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional

from src.models.graph import Graph, RootedLayers
from src.models.hunt import ExtractionPiece, Phase1Result
from src.models.tree import Embedding, TreeSpec
from src.services.graph_ops import (
    eccentricity,
    find_triangle,
    layers,
    restrict_layers,
    vertex_set,
)
from src.services.tree_patterns import build_tree, embedding_from_levels, verify_embedding

logger = logging.getLogger(__name__)


def _s2_neighbors(g: Graph, v: int, s2: FrozenSet[int]) -> List[int]:
    return sorted(g.neighbor_sets[v] & s2)


def _induces_piece(g: Graph, v1: int, wa: int, wb: int, xa: int, xb: int) -> bool:
    """True iff the five vertices induce exactly the edges v1-wa, v1-wb, wa-xa, wb-xb."""
    five = (v1, wa, wb, xa, xb)
    if len(set(five)) != 5:
        return False
    edges = {(v1, wa), (v1, wb), (wa, xa), (wb, xb)}
    for i, x in enumerate(five):
        for y in five[i + 1 :]:
            expected = (x, y) in edges or (y, x) in edges
            if g.has_edge(x, y) != expected:
                return False
    return True


def deletion_set(
    g: Graph,
    rooted: RootedLayers,
    v1: int,
    wa: int,
    wb: int,
    xa: int,
    xb: int,
    alive: Optional[Iterable[int]] = None,
) -> tuple:
    """
    Vertices removed after extracting a piece.

    The five piece vertices, ``N_S2(v1)`` and the full neighborhoods of
    ``wa``, ``wb``, ``xa`` and ``xb``, restricted to the alive vertices.
    """
    removed = {v1, wa, wb, xa, xb}
    removed.update(g.neighbor_sets[v1] & rooted.s2_set)
    for u in (wa, wb, xa, xb):
        removed.update(g.neighbor_sets[u])
    if alive is not None:
        removed &= set(alive)
    return vertex_set(g, removed)


def find_piece(g: Graph, rooted: RootedLayers) -> Optional[ExtractionPiece]:
    """
    Least-index quintuple ``(v1, w1a, w1b, x1a, x1b)`` inducing T(2,1).

    ``v1`` ranges over S1, ``w1a < w1b`` over ``N_S2(v1)``, ``x1a`` over
    ``N_S2(w1a) \\ N(w1b)`` and ``x1b`` over ``N_S2(w1b) \\ N(w1a)`` with
    ``x1a`` and ``x1b`` non-adjacent.  Candidates are scanned in that order
    so the first hit is the lexicographically least one.
    """
    s2 = rooted.s2_set
    alive = set(rooted.s1) | s2 | {rooted.root}
    for v1 in rooted.s1:
        ws = _s2_neighbors(g, v1, s2)
        for ia, wa in enumerate(ws):
            for wb in ws[ia + 1 :]:
                if g.has_edge(wa, wb):
                    continue
                xas = [x for x in _s2_neighbors(g, wa, s2) if not g.has_edge(x, wb)]
                if not xas:
                    continue
                xbs = [x for x in _s2_neighbors(g, wb, s2) if not g.has_edge(x, wa)]
                for xa in xas:
                    for xb in xbs:
                        if not _induces_piece(g, v1, wa, wb, xa, xb):
                            continue
                        return ExtractionPiece(
                            v1=v1,
                            w1a=wa,
                            w1b=wb,
                            x1a=xa,
                            x1b=xb,
                            deletion_set=deletion_set(
                                g, rooted, v1, wa, wb, xa, xb, alive=alive
                            ),
                        )
    return None


def pieces_embedding(r: int, pieces: Iterable[ExtractionPiece]) -> Embedding:
    """Map T(k,2,1) onto ``{r}`` and the pieces, in extraction order."""
    pieces = list(pieces)
    tree = build_tree(TreeSpec.t21(len(pieces)))
    images: Dict[int, int] = {tree.root: r}
    for child, piece in zip(tree.children[tree.root], pieces):
        images[child] = piece.v1
        wa_node, wb_node = tree.children[child]
        images[wa_node] = piece.w1a
        images[wb_node] = piece.w1b
        (xa_node,) = tree.children[wa_node]
        (xb_node,) = tree.children[wb_node]
        images[xa_node] = piece.x1a
        images[xb_node] = piece.x1b
    return embedding_from_levels(tree, images)


def check_center_premises(g: Graph, r: int) -> Optional[str]:
    """Why ``r`` cannot start a hunt on ``g``, or None when it can."""
    triangle = find_triangle(g)
    if triangle is not None:
        return f"graph has triangle {triangle}"
    ecc = eccentricity(g, r)
    if ecc is None:
        return "graph is disconnected"
    if ecc != 2:
        return f"vertex {r} has eccentricity {ecc}, not 2"
    return None


def phase1(
    g: Graph,
    r: int,
    t: int,
    alive: Optional[Iterable[int]] = None,
    check_premises: bool = True,
) -> Phase1Result:
    """
    Extract up to ``t`` pieces around ``r``.

    Each round works on the residual layers ``S1 ∩ alive``, ``S2 ∩ alive``
    of the original graph and removes the piece's deletion set from
    ``alive``.  When ``t`` pieces are found the result carries the
    T(t,2,1) certificate rooted at ``r``; otherwise it is marked stalled.

    Premise violations are reported in the result, not raised.
    """
    alive_set = set(range(g.n)) if alive is None else set(alive)

    if check_premises:
        problem = check_center_premises(g, r)
        if problem is not None:
            logger.info(f"phase1 at {r} skipped: {problem}")
            return Phase1Result(
                root=r,
                residual=vertex_set(g, alive_set),
                stalled=False,
                premise_violation=problem,
            )

    base = layers(g, r)
    pieces: List[ExtractionPiece] = []
    while len(pieces) < t:
        piece = find_piece(g, restrict_layers(base, alive_set))
        if piece is None:
            logger.debug(f"phase1 at {r} stalled after {len(pieces)} pieces")
            return Phase1Result(
                root=r,
                pieces=tuple(pieces),
                residual=vertex_set(g, alive_set),
                stalled=True,
            )
        pieces.append(piece)
        alive_set -= set(piece.deletion_set)
        logger.debug(
            f"phase1 at {r}: piece {len(pieces)} = {piece.vertices}, "
            f"{len(alive_set)} vertices left"
        )

    certificate = pieces_embedding(r, pieces)
    if not verify_embedding(g, TreeSpec.t21(t), certificate):
        # only possible when the host has triangles
        logger.warning(f"phase1 pieces at {r} do not induce {TreeSpec.t21(t).label}")
        certificate = None
    return Phase1Result(
        root=r,
        pieces=tuple(pieces),
        residual=vertex_set(g, alive_set),
        stalled=False,
        certificate=certificate,
    )
