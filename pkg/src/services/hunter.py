"""
Induced T(t,2,1) hunter.

Runs the constructive pipeline around each radius-two center in index
order: greedy extraction, and on a stall the labeling, the H reduction,
the T(2t+1,8) search inside H and the final assembly.  Every certificate is
verified before it is returned; a proof step that cannot proceed is turned
into a structured report instead of an exception.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from tqdm import tqdm

from src.config import get_settings
from src.models.graph import Graph
from src.models.hunt import (
    CenterResult,
    HReduction,
    HuntBranch,
    HuntOutcome,
    HuntStatus,
    StallReport,
    TraceEvent,
)
from src.models.tree import TreeSpec
from src.services.assembly import (
    assemble_main_branch,
    assemble_matching_branch,
    find_gst_tree,
    qualifying_anchor_vertex,
)
from src.services.coloring_solver import chromatic_of_subset, verify_coloring
from src.services.extraction import phase1
from src.services.graph_ops import (
    GraphError,
    centers,
    eccentricity_and_radius,
    find_triangle,
    induced_subgraph,
    layers,
    restrict_layers,
)
from src.services.stall_analysis import (
    ProofStepError,
    check_stall_structure,
    extend_coloring,
    label_vertices,
    reduce_to_H,
)
from src.services.tree_patterns import find_induced_copy, verify_embedding
from src.utils.logging_config import StructuredLogger, log_performance

logger = logging.getLogger(__name__)
events = StructuredLogger("hunter")


class _Trace:
    """Collects trace events for one center and mirrors them to the log."""

    def __init__(self, center: Optional[int]):
        self.center = center
        self.events: List[TraceEvent] = []

    def add(self, step: str, detail: str = "", **fields) -> None:
        self.events.append(TraceEvent(center=self.center, step=step, detail=detail))
        events.log_hunt_event(self.center, step, **fields)


def audit_claim1(g: Graph, red: HReduction, s2: Sequence[int], trace: _Trace) -> None:
    """Compare chi(H) with chi(S2) and check the extended coloring; trace only."""
    h_result = chromatic_of_subset(g, red.h)
    s2_result = chromatic_of_subset(g, s2)
    try:
        extended = extend_coloring(g, red, s2, h_result.witness)
    except ProofStepError as e:
        trace.add("claim1_audit", f"extension failed: {e.report.detail}", ok=False)
        return
    proper = verify_coloring(induced_subgraph(g, sorted(s2)), extended)
    exact = h_result.exact and s2_result.exact
    equal = h_result.value == s2_result.value
    if not proper or (exact and not equal):
        logger.warning(
            f"claim1 audit at {trace.center}: proper={proper} "
            f"chi(H)={h_result.value} chi(S2)={s2_result.value}"
        )
    trace.add(
        "claim1_audit",
        f"chi(H)={h_result.value} chi(S2)={s2_result.value} proper={proper}",
        ok=proper and equal,
    )


def explore_center(
    g: Graph,
    r: int,
    t: int,
    claim1_audit: bool = False,
    claim1_audit_limit: int = 25,
) -> CenterResult:
    """
    Run the constructive pipeline around center ``r``.

    Premises (triangle-free, eccentricity two) are the caller's business.
    """
    trace = _Trace(r)
    try:
        first = phase1(g, r, t, check_premises=False)
        trace.add("phase1", f"{len(first.pieces)} pieces", pieces=len(first.pieces))
        if first.certificate is not None:
            return CenterResult(
                center=r,
                certificate=first.certificate,
                branch=HuntBranch.PHASE1,
                trace=tuple(trace.events),
            )

        rooted = restrict_layers(layers(g, r), first.residual)
        stall = check_stall_structure(g, rooted)
        if not stall.holds:
            raise ProofStepError(
                StallReport(
                    phase="stall",
                    claim=stall.condition or "stall_structure",
                    witness=stall.witness,
                    detail="stalled residual still has an extractable piece",
                )
            )
        trace.add("stall", f"|S1|={len(rooted.s1)} |S2|={len(rooted.s2)}")

        labels = label_vertices(g, rooted)
        red = reduce_to_H(g, labels, rooted.s2)
        trace.add("reduce", f"|H*|={len(red.h_star)} |H|={len(red.h)}", h=len(red.h))

        if claim1_audit and len(rooted.s2) <= claim1_audit_limit:
            audit_claim1(g, red, rooted.s2, trace)

        gst = find_gst_tree(g, red, t)
        if gst is None:
            raise ProofStepError(
                StallReport(
                    phase="gst",
                    claim="claim2",
                    witness=red.h,
                    detail=f"H has no induced T({2 * t + 1},8)",
                )
            )
        trace.add("gst", f"z'={gst.z_prime}", z_prime=gst.z_prime)

        attempts = [
            (HuntBranch.MAIN, lambda: assemble_main_branch(g, rooted, gst, red, t)),
            (HuntBranch.MATCHING, lambda: assemble_matching_branch(g, rooted, gst, t)),
        ]
        if qualifying_anchor_vertex(g, rooted, gst) is None:
            attempts.reverse()

        first_error: Optional[ProofStepError] = None
        for branch, attempt in attempts:
            try:
                certificate = attempt()
            except ProofStepError as e:
                trace.add(branch.value, f"failed: {e.report.claim}", ok=False)
                first_error = first_error or e
                continue
            trace.add(branch.value, f"root={certificate.root_image}", ok=True)
            return CenterResult(
                center=r,
                certificate=certificate,
                branch=branch,
                trace=tuple(trace.events),
            )
        raise first_error

    except ProofStepError as e:
        report = e.report.model_copy(update={"center": r})
        trace.add("step_failed", f"{report.phase}/{report.claim}", claim=report.claim)
        return CenterResult(center=r, report=report, trace=tuple(trace.events))


def _premise_outcome(g: Graph, t: int) -> Optional[HuntOutcome]:
    triangle = find_triangle(g)
    if triangle is not None:
        return HuntOutcome(
            status=HuntStatus.PREMISE_VIOLATED,
            t=t,
            stall_report=StallReport(
                phase="premise",
                claim="triangle_free",
                witness=triangle,
                detail=f"graph has triangle {triangle}",
            ),
        )
    try:
        radius, center = eccentricity_and_radius(g)
    except GraphError as e:
        return HuntOutcome(
            status=HuntStatus.PREMISE_VIOLATED,
            t=t,
            stall_report=StallReport(phase="premise", claim="radius", detail=str(e)),
        )
    if radius != 2:
        return HuntOutcome(
            status=HuntStatus.PREMISE_VIOLATED,
            t=t,
            stall_report=StallReport(
                phase="premise",
                claim="radius",
                witness=(center,),
                detail=f"radius is {radius}, not 2",
            ),
        )
    return None


def _explore_sequential(
    g: Graph, candidates: Sequence[int], t: int, audit: bool, audit_limit: int, progress: bool
) -> List[CenterResult]:
    results = []
    for r in tqdm(candidates, desc="centers", disable=not progress, leave=False):
        result = explore_center(g, r, t, audit, audit_limit)
        results.append(result)
        if result.found:
            break
    return results


def _explore_parallel(
    g: Graph, candidates: Sequence[int], t: int, audit: bool, audit_limit: int, jobs: int
) -> List[CenterResult]:
    from src.workers.center_worker import build_payload, process_center_job

    payloads = [build_payload(g, r, t, audit, audit_limit) for r in candidates]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        raw = list(pool.map(process_center_job, payloads))
    results = [CenterResult.model_validate(item) for item in raw]
    # same prefix the sequential scan would have produced
    for k, result in enumerate(results):
        if result.found:
            return results[: k + 1]
    return results


def hunt(
    g: Graph,
    t: int,
    oracle_fallback: Optional[bool] = None,
    jobs: Optional[int] = None,
    max_centers: Optional[int] = None,
) -> HuntOutcome:
    """
    Look for an induced T(t,2,1) in a triangle-free radius-two graph.

    Args:
        g: Host graph
        t: Number of root children in the target tree
        oracle_fallback: Run the brute-force search when every center fails
            (defaults to ``oracle_fallback`` from settings)
        jobs: Worker processes for center exploration (defaults to ``jobs``)
        max_centers: Explore at most this many centers (defaults to ``max_centers``)

    Returns:
        ``found`` with a verified certificate, ``not_found``,
        ``premise_violated`` or ``step_failed`` with the least center's report
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    settings = get_settings()
    if oracle_fallback is None:
        oracle_fallback = settings.oracle_fallback
    if jobs is None:
        jobs = settings.jobs
    if max_centers is None:
        max_centers = settings.max_centers

    spec = TreeSpec.t21(t)
    premise = _premise_outcome(g, t)
    if premise is not None:
        events.log_hunt_event(None, "premise", claim=premise.stall_report.claim)
        return premise

    if g.n < spec.vertex_count:
        events.log_hunt_event(None, "too_small", n=g.n, needed=spec.vertex_count)
        return HuntOutcome(status=HuntStatus.NOT_FOUND, t=t)

    candidates = list(centers(g))
    if max_centers is not None:
        candidates = candidates[:max_centers]

    with log_performance(f"hunt {spec.label} on n={g.n}"):
        if jobs > 1 and len(candidates) > 1:
            results = _explore_parallel(
                g, candidates, t, settings.claim1_audit, settings.claim1_audit_limit, jobs
            )
        else:
            results = _explore_sequential(
                g,
                candidates,
                t,
                settings.claim1_audit,
                settings.claim1_audit_limit,
                settings.progress,
            )

    trace = tuple(e for result in results for e in result.trace)
    winner = next((result for result in results if result.found), None)
    if winner is not None:
        if verify_embedding(g, spec, winner.certificate):
            return HuntOutcome(
                status=HuntStatus.FOUND,
                t=t,
                certificate=winner.certificate,
                branch=winner.branch,
                trace=trace,
            )
        logger.error(f"certificate from center {winner.center} failed verification")

    report = next((result.report for result in results if result.report), None)
    if oracle_fallback:
        with log_performance(f"oracle {spec.label} on n={g.n}"):
            embedding = find_induced_copy(g, spec)
        oracle_event = TraceEvent(
            center=None, step="oracle", detail="found" if embedding else "absent"
        )
        events.log_hunt_event(None, "oracle", found=embedding is not None)
        if embedding is not None:
            return HuntOutcome(
                status=HuntStatus.FOUND,
                t=t,
                certificate=embedding,
                branch=HuntBranch.ORACLE,
                trace=trace + (oracle_event,),
            )
        return HuntOutcome(
            status=HuntStatus.NOT_FOUND,
            t=t,
            stall_report=report,
            trace=trace + (oracle_event,),
        )

    return HuntOutcome(status=HuntStatus.STEP_FAILED, t=t, stall_report=report, trace=trace)
