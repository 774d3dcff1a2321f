"""Worker entry point for exploring one hunt center in a separate process."""

import logging

from src.models.graph import Graph

logger = logging.getLogger(__name__)


def build_payload(
    g: Graph, center: int, t: int, claim1_audit: bool, claim1_audit_limit: int
) -> dict:
    """Picklable job description for :func:`process_center_job`."""
    return {
        "graph": g.model_dump(),
        "center": center,
        "t": t,
        "claim1_audit": claim1_audit,
        "claim1_audit_limit": claim1_audit_limit,
    }


def process_center_job(job_data: dict) -> dict:
    """
    Explore one center.

    Args:
        job_data: Dictionary produced by :func:`build_payload`

    Returns:
        A dumped :class:`~src.models.hunt.CenterResult`
    """
    from src.services.hunter import explore_center

    center = job_data["center"]
    logger.debug(f"Starting center job: {center}")
    g = Graph.model_validate(job_data["graph"])
    try:
        result = explore_center(
            g,
            center,
            job_data["t"],
            claim1_audit=job_data["claim1_audit"],
            claim1_audit_limit=job_data["claim1_audit_limit"],
        )
    except Exception as e:
        logger.error(f"Unexpected error exploring center {center}: {e}")
        raise
    logger.debug(f"Center job {center} finished: found={result.found}")
    return result.model_dump(mode="json")
