"""Subcommand handlers.  Each returns a process exit status."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Union

from src.config import get_settings
from src.models.graph import Graph
from src.models.hunt import HuntStatus
from src.models.tree import TreeSpec
from src.services import generators
from src.services.certificates import canonical_json, parse_certificate, serialize_certificate
from src.services.coloring_solver import chromatic_number
from src.services.dimacs import parse_graph_file, write_dimacs
from src.services.graph_ops import (
    GraphError,
    degree_histogram,
    eccentricity_and_radius,
    is_triangle_free,
)
from src.services.hunter import hunt
from src.services.tree_patterns import find_induced_copy, verify_embedding
from src.utils.validation import (
    CERTIFICATE_EXTENSIONS,
    GRAPH_EXTENSIONS,
    validate_filename,
    validate_input_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

STATUS_EXIT = {
    HuntStatus.FOUND: EXIT_OK,
    HuntStatus.NOT_FOUND: EXIT_NEGATIVE,
    HuntStatus.STEP_FAILED: EXIT_NEGATIVE,
    HuntStatus.PREMISE_VIOLATED: EXIT_INPUT_ERROR,
}


def load_graph(path: Path) -> Graph:
    return parse_graph_file(validate_input_file(path, GRAPH_EXTENSIONS))


def emit(content: Union[str, bytes], output: Optional[str] = None) -> None:
    """Write command output to ``output`` or stdout."""
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    if output is None:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    target = Path(validate_filename(output))
    target.write_text(content, encoding="utf-8")
    logger.info(f"Wrote {target}")


def cmd_generate(args: argparse.Namespace) -> int:
    family = args.family
    if family == "cycle":
        g = generators.cycle(args.n)
        label = f"cycle n={args.n}"
    elif family == "mycielski":
        g = generators.iterated_mycielski(args.k)
        label = f"mycielski k={args.k}"
    elif family == "kneser":
        g = generators.kneser(args.n, args.k)
        label = f"kneser n={args.n} k={args.k}"
    else:
        g = generators.random_triangle_free(args.n, args.m, args.seed)
        label = f"random n={args.n} m={args.m} seed={args.seed}"
    emit(write_dimacs(g, comments=[label]), args.output)
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    budget = args.budget if args.budget is not None else get_settings().coloring_node_budget
    result = chromatic_number(g, node_budget=budget)
    emit(
        canonical_json(
            {
                "n": g.n,
                "lower": result.lower,
                "upper": result.upper,
                "exact": result.exact,
                "search_nodes": result.search_nodes,
                "colors": [c + 1 for c in result.witness.assignment],
            }
        )
    )
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    spec = TreeSpec.parse(args.spec)
    g = load_graph(args.input)
    embedding = find_induced_copy(g, spec)
    data = {"pattern": spec.label, "found": embedding is not None}
    if embedding is not None:
        data["mapping"] = [[x + 1, h + 1] for x, h in enumerate(embedding.mapping)]
    emit(canonical_json(data))
    return EXIT_OK if embedding is not None else EXIT_NEGATIVE


def cmd_hunt(args: argparse.Namespace) -> int:
    if args.t < 1:
        raise ValueError(f"--t must be positive, got {args.t}")
    g = load_graph(args.input)
    outcome = hunt(
        g,
        args.t,
        oracle_fallback=False if args.no_fallback else None,
        jobs=args.jobs,
    )
    emit(serialize_certificate(outcome, args.t), args.output)
    logger.info(f"hunt T({args.t},2,1): {outcome.status.value}")
    return STATUS_EXIT[outcome.status]


def cmd_verify(args: argparse.Namespace) -> int:
    outcome = parse_certificate(validate_input_file(args.cert, CERTIFICATE_EXTENSIONS))
    g = load_graph(args.input)
    if outcome.status != HuntStatus.FOUND:
        emit(f"invalid: certificate status is {outcome.status.value}\n")
        return EXIT_NEGATIVE
    if verify_embedding(g, TreeSpec.t21(outcome.t), outcome.certificate):
        emit("valid\n")
        return EXIT_OK
    emit(f"invalid: mapping is not an induced {TreeSpec.t21(outcome.t).label}\n")
    return EXIT_NEGATIVE


def cmd_stats(args: argparse.Namespace) -> int:
    g = load_graph(args.input)
    try:
        radius: Optional[int] = eccentricity_and_radius(g)[0]
    except GraphError:
        radius = None
    emit(
        canonical_json(
            {
                "n": g.n,
                "m": g.edge_count,
                "triangle_free": is_triangle_free(g),
                "radius": radius,
                "degree_histogram": [[d, c] for d, c in degree_histogram(g).items()],
            }
        )
    )
    return EXIT_OK
