"""Canonical JSON certificates for hunt outcomes (1-based vertices)."""

import json
import logging
from typing import Any, Dict, Union

from pydantic import ValidationError

from src.models.hunt import HuntBranch, HuntOutcome, HuntStatus, StallReport
from src.models.tree import Embedding, TreeSpec

logger = logging.getLogger(__name__)


class CertificateFormatError(Exception):
    """Malformed certificate file."""

    pass


def canonical_json(data: Any) -> bytes:
    """Sorted keys, no insignificant whitespace, trailing newline."""
    return (json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def _stall_to_dict(report: StallReport) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "phase": report.phase,
        "claim": report.claim,
        "witness": [v + 1 for v in report.witness],
        "detail": report.detail,
    }
    if report.center is not None:
        data["center"] = report.center + 1
    return data


def serialize_certificate(outcome: HuntOutcome, t: int) -> bytes:
    """
    Canonical certificate bytes.

    ``mapping`` lists ``[tree_vertex, host_vertex]`` pairs in tree order;
    absent parts (mapping and root unless found, stall, branch) are omitted.
    """
    data: Dict[str, Any] = {
        "pattern": TreeSpec.t21(t).label,
        "t": t,
        "status": outcome.status.value,
    }
    if outcome.certificate is not None:
        data["root"] = outcome.certificate.root_image + 1
        data["mapping"] = [[x + 1, h + 1] for x, h in enumerate(outcome.certificate.mapping)]
    if outcome.branch is not None:
        data["branch"] = outcome.branch.value
    if outcome.stall_report is not None:
        data["stall"] = _stall_to_dict(outcome.stall_report)
    return canonical_json(data)


def parse_certificate(data: Union[bytes, str]) -> HuntOutcome:
    """
    Inverse of :func:`serialize_certificate` (the trace is not stored).

    Raises:
        CertificateFormatError: On invalid JSON or a structurally wrong document
    """
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise CertificateFormatError(f"certificate is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")

    try:
        t = doc["t"]
        if not isinstance(t, int) or isinstance(t, bool):
            raise CertificateFormatError(f"t must be an integer, got {t!r}")
        if doc["pattern"] != TreeSpec.t21(t).label:
            raise CertificateFormatError(
                f"pattern {doc['pattern']!r} does not match t={t}"
            )
        status = HuntStatus(doc["status"])

        certificate = None
        if "mapping" in doc:
            pairs = sorted(doc["mapping"])
            if [p[0] for p in pairs] != list(range(1, len(pairs) + 1)):
                raise CertificateFormatError("mapping must cover tree vertices 1..k once")
            certificate = Embedding(mapping=tuple(p[1] - 1 for p in pairs))
            if "root" in doc and doc["root"] - 1 != certificate.root_image:
                raise CertificateFormatError("root does not match the image of vertex 1")

        branch = HuntBranch(doc["branch"]) if "branch" in doc else None

        stall = None
        if "stall" in doc:
            s = doc["stall"]
            stall = StallReport(
                phase=s["phase"],
                claim=s["claim"],
                witness=tuple(v - 1 for v in s.get("witness", [])),
                detail=s.get("detail", ""),
                center=s["center"] - 1 if "center" in s else None,
            )

        return HuntOutcome(
            status=status,
            t=t,
            certificate=certificate,
            branch=branch,
            stall_report=stall,
        )
    except CertificateFormatError:
        raise
    except (KeyError, TypeError, IndexError, ValueError, ValidationError) as e:
        logger.debug(f"certificate rejected: {e}")
        raise CertificateFormatError(f"malformed certificate: {e}")
