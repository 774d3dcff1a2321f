"""Building T(t,2,1) out of the T(2t+1,8) found inside H."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from src.models.graph import Graph, RootedLayers
from src.models.hunt import GstTree, HReduction, LeafProfile, StallReport
from src.models.tree import Embedding, TreeSpec
from src.services.stall_analysis import ProofStepError
from src.services.tree_patterns import (
    build_tree,
    embedding_from_levels,
    find_induced_copy,
    verify_embedding,
)

logger = logging.getLogger(__name__)

# Leaves per row of the tree found in H, and how many a row must keep.
LEAVES_PER_ROW = 8
ROW_MAJORITY = 4

# (leaf, S1 partner) pairs hanging off one child of the root.
Branch = Tuple[int, Sequence[Tuple[int, int]]]


def _fail(claim: str, detail: str, witness: Sequence[int] = ()) -> ProofStepError:
    return ProofStepError(
        StallReport(phase="assembly", claim=claim, witness=tuple(witness), detail=detail)
    )


def find_gst_tree(g: Graph, red: HReduction, t: int) -> Optional[GstTree]:
    """Least induced T(2t+1, 8) inside the subgraph induced on H."""
    spec = TreeSpec(level_degrees=(2 * t + 1, LEAVES_PER_ROW))
    if len(red.h) < spec.vertex_count:
        return None
    embedding = find_induced_copy(g, spec, within=red.h)
    if embedding is None:
        return None
    return GstTree(t=t, tree=build_tree(spec), embedding=embedding)


def claim3_filter(g: Graph, tree: GstTree, v: int) -> LeafProfile:
    """
    Tree vertices adjacent to ``v`` and whether they fit the allowed shape.

    An S1 vertex touching a leaf ``z(i,j)`` may touch at most one more leaf
    of the same row, and ``z'``; anything else is reported as a violation.
    """
    profile = tuple(sorted(g.neighbor_sets[v] & tree.vertex_set))
    leaf_rows = {}
    touched_children = []
    for i in range(tree.rows):
        if g.has_edge(v, tree.z(i)):
            touched_children.append(tree.z(i))
        for leaf in tree.leaves(i):
            if g.has_edge(v, leaf):
                leaf_rows.setdefault(i, []).append(leaf)

    violation = None
    if len(leaf_rows) > 1:
        violation = f"adjacent to leaves of rows {sorted(leaf_rows)}"
    elif any(len(ls) > 2 for ls in leaf_rows.values()):
        violation = "adjacent to more than two leaves of one row"
    elif touched_children and leaf_rows:
        violation = f"adjacent to a leaf and to {touched_children}"
    return LeafProfile(vertex=v, profile=profile, violation=violation)


def _leaf_neighbors(g: Graph, rooted: RootedLayers, tree: GstTree) -> List[int]:
    """S1 vertices adjacent to at least one leaf."""
    leaves = set()
    for i in range(tree.rows):
        leaves.update(tree.leaves(i))
    return [v for v in rooted.s1 if g.neighbor_sets[v] & leaves]


def _guard_claim3(g: Graph, rooted: RootedLayers, tree: GstTree) -> Dict[int, LeafProfile]:
    profiles = {}
    for v in _leaf_neighbors(g, rooted, tree):
        p = claim3_filter(g, tree, v)
        if p.violation:
            raise _fail("claim3", p.violation, (v,) + p.profile)
        profiles[v] = p
    return profiles


def _assemble(g: Graph, t: int, root: int, branches: Sequence[Branch]) -> Embedding:
    tree = build_tree(TreeSpec.t21(t))
    images = {tree.root: root}
    for child, (z_i, pairs) in zip(tree.children[tree.root], branches):
        images[child] = z_i
        for grandchild, (leaf, partner) in zip(tree.children[child], pairs):
            images[grandchild] = leaf
            (great,) = tree.children[grandchild]
            images[great] = partner
    embedding = embedding_from_levels(tree, images)
    if not verify_embedding(g, TreeSpec.t21(t), embedding):
        raise _fail(
            "induced_check",
            f"assembled vertices do not induce {TreeSpec.t21(t).label}",
            embedding.mapping,
        )
    return embedding


def qualifying_anchor_vertex(
    g: Graph, rooted: RootedLayers, tree: GstTree
) -> Optional[Tuple[int, int, int]]:
    """Least ``(v1, row, leaf)`` with ``v1`` in S1 adjacent to ``z'`` and to ``leaf``."""
    for v in rooted.s1:
        if not g.has_edge(v, tree.z_prime):
            continue
        for i in range(tree.rows):
            for leaf in tree.leaves(i):
                if g.has_edge(v, leaf):
                    return v, i, leaf
    return None


def assemble_matching_branch(
    g: Graph, rooted: RootedLayers, tree: GstTree, t: int
) -> Embedding:
    """
    T(t,2,1) rooted at ``z'`` from rows whose leaves match into S1.

    A leaf is matchable when some S1 vertex touches it and no other tree
    vertex; the least such vertex is its partner.  A row counts once it has
    four matchable leaves, and the first ``t`` counting rows each give their
    first two leaves.

    Raises:
        ProofStepError: On a leaf-shape violation or too few counting rows
    """
    profiles = _guard_claim3(g, rooted, tree)

    partner_of: Dict[int, int] = {}
    for v in sorted(profiles):
        if len(profiles[v].profile) == 1:
            partner_of.setdefault(profiles[v].profile[0], v)

    branches: List[Branch] = []
    counts = []
    for i in range(tree.rows):
        matched = [(leaf, partner_of[leaf]) for leaf in tree.leaves(i) if leaf in partner_of]
        counts.append(len(matched))
        if len(matched) >= ROW_MAJORITY and len(branches) < t:
            branches.append((tree.z(i), matched[:2]))

    if len(branches) < t:
        raise _fail(
            "claim4_matching",
            f"only {len(branches)} of {t} rows have {ROW_MAJORITY} matched leaves "
            f"(per-row counts {counts})",
            (tree.z_prime,),
        )
    logger.debug(f"matching branch rows {[b[0] for b in branches]} at z'={tree.z_prime}")
    return _assemble(g, t, tree.z_prime, branches)


def assemble_main_branch(
    g: Graph, rooted: RootedLayers, tree: GstTree, red: HReduction, t: int
) -> Embedding:
    """
    T(t,2,1) rooted at ``z'`` or ``z''`` when an S1 vertex sees ``z'`` and a leaf.

    The row of that leaf plays the distinguished row.  ``z''`` is the least
    S2 vertex adjacent to the distinguished leaf but not to ``z'``; it must
    see every other child and none of their leaves.  Every other leaf gets
    its least S1 neighbor as partner, which may not see both anchors nor
    more than two vertices of H.  Rows whose partners avoid an anchor at
    least four times vote for it; ``z'`` is used when at least ``t`` rows
    vote for it, otherwise ``z''``.

    Raises:
        ProofStepError: Naming the step that failed, with witnesses
    """
    found = qualifying_anchor_vertex(g, rooted, tree)
    if found is None:
        raise _fail("claim4", "no S1 vertex sees z' and a leaf", (tree.z_prime,))
    v1, row, leaf = found
    _guard_claim3(g, rooted, tree)

    z_prime = tree.z_prime
    z_double = next(
        (
            z
            for z in rooted.s2
            if g.has_edge(z, leaf) and not g.has_edge(z, z_prime) and z != z_prime
        ),
        None,
    )
    if z_double is None:
        raise _fail(
            "z_double_prime",
            f"every S2 neighbor of leaf {leaf} also sees z'",
            (v1, leaf, z_prime),
        )

    others = [i for i in range(tree.rows) if i != row]
    for i in others:
        if not g.has_edge(z_double, tree.z(i)):
            raise _fail("claim6", f"z'' misses child {tree.z(i)}", (z_double, tree.z(i)))
        for x in tree.leaves(i):
            if g.has_edge(z_double, x):
                raise _fail("claim6", f"z'' sees leaf {x}", (z_double, x))

    h_set = red.h_set
    partners: Dict[int, Optional[int]] = {}
    for i in others:
        for x in tree.leaves(i):
            v = next((u for u in rooted.s1 if g.has_edge(u, x)), None)
            partners[x] = v
            if v is None:
                continue
            if g.has_edge(v, z_prime) and g.has_edge(v, z_double):
                raise _fail("claim5", f"{v} sees z' and z''", (v, x, z_prime, z_double))
            if len(g.neighbor_sets[v] & h_set) > 2:
                raise _fail(
                    "h_degree",
                    f"{v} has {len(g.neighbor_sets[v] & h_set)} neighbors in H",
                    (v,),
                )

    def avoiding(i: int, anchor: int) -> List[Tuple[int, int]]:
        result = []
        for x in tree.leaves(i):
            v = partners[x]
            if v is not None and not g.has_edge(v, anchor):
                result.append((x, v))
        return result

    chosen = None
    for anchor in (z_prime, z_double):
        voting = [i for i in others if len(avoiding(i, anchor)) >= ROW_MAJORITY]
        if len(voting) >= t:
            chosen = anchor, voting[:t]
            break
    if chosen is None:
        raise _fail(
            "row_shortage",
            f"fewer than {t} rows keep {ROW_MAJORITY} partners off one anchor",
            (z_prime, z_double),
        )

    anchor, rows = chosen
    branches: List[Branch] = []
    for i in rows:
        pairs = avoiding(i, anchor)
        first_leaf, first_v = pairs[0]
        second = next(((x, v) for x, v in pairs[1:] if v != first_v), None)
        if second is None:
            raise _fail(
                "distinct_partners",
                f"row {tree.z(i)} has a single partner {first_v}",
                (tree.z(i), first_v),
            )
        branches.append((tree.z(i), [(first_leaf, first_v), second]))

    logger.debug(
        f"main branch: v1={v1} z''={z_double} anchor={anchor} rows={[b[0] for b in branches]}"
    )
    return _assemble(g, t, anchor, branches)
