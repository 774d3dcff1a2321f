"""Stall structure, vertex labeling, the H reduction and coloring extension."""

import logging
from itertools import combinations, combinations_with_replacement
from typing import Dict, FrozenSet, List, Optional, Sequence

from src.models.coloring import Coloring
from src.models.graph import Graph, RootedLayers
from src.models.hunt import HReduction, LabelPair, StallCheck, StallReport
from src.services.graph_ops import first_missing_edge, is_complete_bipartite_between

logger = logging.getLogger(__name__)


class ProofStepError(Exception):
    """A proof step could not be carried out; ``report`` says which and why."""

    def __init__(self, report: StallReport):
        self.report = report
        super().__init__(f"{report.phase}/{report.claim}: {report.detail}")


def _ns2(g: Graph, v: int, s2: FrozenSet[int]) -> FrozenSet[int]:
    return g.neighbor_sets[v] & s2


def check_stall_structure(g: Graph, rooted: RootedLayers) -> StallCheck:
    """
    Test the two structural conditions that hold once extraction stalls.

    For every ``v`` in S1:

    * for each pair ``wa < wb`` in ``N_S2(v)``, the symmetric difference
      parts ``N_S2(wa) \\ N_S2(wb)`` and ``N_S2(wb) \\ N_S2(wa)`` are
      complete bipartite to each other;
    * for ``z1, z2`` in ``S2 \\ N_S2(v)`` the traces ``N_S2(v) ∩ N(z1)`` and
      ``N_S2(v) ∩ N(z2)`` are nested or disjoint.

    A violation is returned with a quintuple ``(v, wa, wb, xa, xb)``; in a
    triangle-free graph that quintuple is an extraction piece.
    """
    s2 = rooted.s2_set
    for v in rooted.s1:
        ws = sorted(_ns2(g, v, s2))
        for wa, wb in combinations(ws, 2):
            na, nb = _ns2(g, wa, s2), _ns2(g, wb, s2)
            side_a, side_b = sorted(na - nb), sorted(nb - na)
            if is_complete_bipartite_between(g, side_a, side_b):
                continue
            missing = first_missing_edge(g, side_a, side_b)
            witness = (v, wa, wb) + (missing if missing else ())
            return StallCheck(holds=False, condition="complete_bipartite", witness=witness)

        traces = {}
        for z in sorted(s2 - set(ws)):
            trace = g.neighbor_sets[z] & set(ws)
            if trace:
                traces[z] = trace
        for z1, z2 in combinations(sorted(traces), 2):
            t1, t2 = traces[z1], traces[z2]
            if not (t1 & t2) or t1 <= t2 or t2 <= t1:
                continue
            wa, wb = min(t1 - t2), min(t2 - t1)
            return StallCheck(
                holds=False, condition="laminar", witness=(v, wa, wb, z1, z2)
            )
    return StallCheck(holds=True)


def covers(g: Graph, rooted: RootedLayers, pair: LabelPair) -> bool:
    """True iff every S2 vertex adjacent to ``N_S2(v)`` is adjacent to ``wa`` or ``wb``."""
    s2 = rooted.s2_set
    ws = _ns2(g, pair.v, s2)
    if pair.wa not in ws or pair.wb not in ws:
        return False
    reached = set()
    for w in ws:
        reached |= _ns2(g, w, s2)
    hit = g.neighbor_sets[pair.wa] | g.neighbor_sets[pair.wb]
    return reached <= hit


def label_vertices(g: Graph, rooted: RootedLayers) -> List[LabelPair]:
    """
    Choose ``wa(v) <= wb(v)`` in ``N_S2(v)`` for every S1 vertex with S2 neighbors.

    Pairs are tried in lexicographic order, equal pairs included.

    Raises:
        ProofStepError: When some ``v`` admits no covering pair
    """
    labels: List[LabelPair] = []
    for v in rooted.s1:
        ws = sorted(_ns2(g, v, rooted.s2_set))
        if not ws:
            continue
        for wa, wb in combinations_with_replacement(ws, 2):
            pair = LabelPair(v=v, wa=wa, wb=wb)
            if covers(g, rooted, pair):
                labels.append(pair)
                break
        else:
            raise ProofStepError(
                StallReport(
                    phase="labeling",
                    claim="label_pair",
                    witness=(v,),
                    detail=f"no pair in N_S2({v}) covers its second neighborhood",
                    center=rooted.root,
                )
            )
    logger.debug(f"labeled {len(labels)} S1 vertices around {rooted.root}")
    return labels


def _dominates(big: FrozenSet[int], small: FrozenSet[int]) -> bool:
    return small <= big


def reduce_to_H(g: Graph, labels: Sequence[LabelPair], s2: Sequence[int]) -> HReduction:
    """
    Shrink the labeled vertices to a minimal dominating subset.

    ``h_star`` holds every ``wa``/``wb``.  Vertices are scanned in ascending
    order and deleted while their S2-neighborhood is contained in that of
    another surviving vertex; the scan repeats until nothing changes.  Each
    ``h_star`` vertex is then mapped to the least ``h`` vertex dominating it.
    """
    s2_set = frozenset(s2)
    h_star = sorted({x for p in labels for x in (p.wa, p.wb)})
    nbhd: Dict[int, FrozenSet[int]] = {x: _ns2(g, x, s2_set) for x in h_star}

    survivors = list(h_star)
    changed = True
    while changed:
        changed = False
        for x in list(survivors):
            if any(y != x and _dominates(nbhd[y], nbhd[x]) for y in survivors):
                survivors.remove(x)
                changed = True

    dominator = {
        x: next(h for h in survivors if _dominates(nbhd[h], nbhd[x])) for x in h_star
    }
    logger.debug(f"H reduction: |H*|={len(h_star)} |H|={len(survivors)}")
    return HReduction(h_star=tuple(h_star), h=tuple(survivors), dominator=dominator)


def find_dominator(
    g: Graph, red: HReduction, s2: Sequence[int], z: int
) -> Optional[int]:
    """Least ``h`` vertex whose S2-neighborhood contains ``N_S2(z)``."""
    s2_set = frozenset(s2)
    target = _ns2(g, z, s2_set)
    for h in red.h:
        if _dominates(_ns2(g, h, s2_set), target):
            return h
    return None


def extend_coloring(
    g: Graph, red: HReduction, s2: Sequence[int], h_coloring: Coloring
) -> Coloring:
    """
    Extend a proper coloring of H to all of S2.

    ``h_coloring`` is indexed by position in ``red.h`` and the result by
    position in ``sorted(s2)``.  Each ``z`` outside H copies the color of
    its least dominating H vertex, so no new colors are introduced.

    Raises:
        ProofStepError: When some ``z`` has no dominator in H
    """
    if len(h_coloring.assignment) != len(red.h):
        raise ValueError(
            f"H coloring covers {len(h_coloring.assignment)} vertices, H has {len(red.h)}"
        )
    color_of = dict(zip(red.h, h_coloring.assignment))
    ordered = sorted(s2)
    assignment = []
    for z in ordered:
        if z in color_of:
            assignment.append(color_of[z])
            continue
        h = find_dominator(g, red, ordered, z)
        if h is None:
            raise ProofStepError(
                StallReport(
                    phase="coloring",
                    claim="claim1",
                    witness=(z,),
                    detail=f"no vertex of H dominates the S2-neighborhood of {z}",
                )
            )
        assignment.append(color_of[h])
    return Coloring(assignment=tuple(assignment), color_count=h_coloring.color_count)
