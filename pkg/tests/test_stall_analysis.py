"""Tests for the stall structure, labeling, H reduction and coloring extension."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.coloring import Coloring
from src.models.hunt import LabelPair
from src.services.coloring_solver import chromatic_of_subset, verify_coloring
from src.services.extraction import _induces_piece, find_piece, phase1
from src.services.graph_ops import build_graph, induced_subgraph, layers, restrict_layers
from src.services.stall_analysis import (
    ProofStepError,
    check_stall_structure,
    covers,
    extend_coloring,
    find_dominator,
    label_vertices,
    reduce_to_H,
)
from tests.strategies import triangle_free_graphs


def stalled_layers(g, r):
    """Layers around ``r`` after extraction has run until it stalls."""
    result = phase1(g, r, t=g.n, check_premises=False)
    return restrict_layers(layers(g, r), result.residual)


def star_in_s2():
    """S2 vertices 1, 2, 3 all adjacent to 4; labels make H = {2, 4}."""
    g = build_graph(5, [(1, 4), (2, 4), (3, 4)])
    labels = [LabelPair(v=0, wa=1, wb=2), LabelPair(v=0, wa=4, wb=4)]
    return g, labels, [1, 2, 3, 4]


class TestStallStructure:
    """Test the two stall conditions."""

    def test_cycle_holds(self, c5):
        assert check_stall_structure(c5, layers(c5, 0)).holds

    def test_grotzsch_apex_holds(self, grotzsch):
        assert check_stall_structure(grotzsch, layers(grotzsch, 10)).holds

    def test_gadget_breaks_bipartite_condition(self):
        """Test r=0, v=1 with S2 children 2, 3 whose private neighbors 4, 5 are apart."""
        g = build_graph(8, [(0, 1), (0, 6), (0, 7), (1, 2), (1, 3), (2, 4), (3, 5), (6, 4), (7, 5)])
        check = check_stall_structure(g, layers(g, 0))
        assert not check.holds
        assert check.condition == "complete_bipartite"
        assert check.witness == (1, 2, 3, 4, 5)

    def test_crossing_traces_are_caught(self):
        """Test z1 = 5, z2 = 6 with crossing traces on N(v) = {2, 3, 4}."""
        edges = [(0, 1), (0, 7), (1, 2), (1, 3), (1, 4), (5, 2), (5, 3), (6, 3), (6, 4)]
        edges += [(7, 5), (7, 6)]
        g = build_graph(8, edges)
        rooted = layers(g, 0)
        assert rooted.s2 == (2, 3, 4, 5, 6)
        check = check_stall_structure(g, rooted)
        # the pair (2, 4) already sees 5 and 6 non-adjacent
        assert check.condition == "complete_bipartite"
        assert check.witness == (1, 2, 4, 5, 6)
        assert _induces_piece(g, *check.witness)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(triangle_free_graphs(max_n=12), st.data())
    def test_equivalent_to_no_piece(self, g, data):
        """Test on triangle-free graphs: no piece exactly when both conditions hold."""
        r = data.draw(st.integers(0, g.n - 1))
        rooted = layers(g, r)
        check = check_stall_structure(g, rooted)
        assert check.holds == (find_piece(g, rooted) is None)
        if not check.holds:
            v, wa, wb, xa, xb = check.witness
            assert v in rooted.s1
            assert {wa, wb, xa, xb} <= set(rooted.s2)
            assert _induces_piece(g, v, wa, wb, xa, xb)


class TestLabeling:
    """Test label pair selection."""

    def test_cycle_labels_repeat_single_neighbor(self, c5):
        labels = label_vertices(c5, layers(c5, 0))
        assert labels == [LabelPair(v=1, wa=2, wb=2), LabelPair(v=4, wa=3, wb=3)]

    def test_grotzsch_shadow_labels(self, grotzsch):
        """Test each shadow of i is labeled by the two cycle neighbors of i."""
        labels = label_vertices(grotzsch, layers(grotzsch, 10))
        assert [(p.v, p.wa, p.wb) for p in labels] == [
            (5, 1, 4),
            (6, 0, 2),
            (7, 1, 3),
            (8, 2, 4),
            (9, 0, 3),
        ]

    def test_vertices_without_s2_neighbors_skipped(self):
        star = build_graph(4, [(0, 1), (0, 2), (1, 3)])
        assert [p.v for p in label_vertices(star, layers(star, 0))] == [1]

    def test_uncoverable_vertex_raises(self):
        """Test three private second neighbors defeat every pair."""
        edges = [(0, 1), (0, 8), (0, 9), (0, 10), (1, 2), (1, 3), (1, 4)]
        edges += [(2, 5), (3, 6), (4, 7), (8, 5), (9, 6), (10, 7)]
        g = build_graph(11, edges)
        with pytest.raises(ProofStepError) as exc:
            label_vertices(g, layers(g, 0))
        report = exc.value.report
        assert (report.phase, report.claim, report.witness, report.center) == (
            "labeling",
            "label_pair",
            (1,),
            0,
        )

    def test_covers_requires_own_neighbors(self, c5):
        rooted = layers(c5, 0)
        assert covers(c5, rooted, LabelPair(v=1, wa=2, wb=2))
        assert not covers(c5, rooted, LabelPair(v=1, wa=3, wb=3))

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(triangle_free_graphs(max_n=14), st.data())
    def test_stalled_residuals_always_label(self, g, data):
        r = data.draw(st.integers(0, g.n - 1))
        rooted = stalled_layers(g, r)
        labels = label_vertices(g, rooted)
        for pair in labels:
            assert pair.wa <= pair.wb
            assert covers(g, rooted, pair)


class TestReduceToH:
    """Test the minimal dominating reduction."""

    def test_cycle_keeps_both(self, c5):
        rooted = layers(c5, 0)
        red = reduce_to_H(c5, label_vertices(c5, rooted), rooted.s2)
        assert red.h_star == (2, 3)
        assert red.h == (2, 3)
        assert red.dominator == {2: 2, 3: 3}

    def test_dominated_vertex_removed(self):
        g = build_graph(5, [(1, 3), (2, 3), (2, 4)])
        red = reduce_to_H(g, [LabelPair(v=0, wa=1, wb=2)], [1, 2, 3, 4])
        assert red.h == (2,)
        assert red.dominator == {1: 2, 2: 2}

    def test_twins_keep_the_later_vertex(self):
        """Test equal neighborhoods: the ascending scan drops the lower index."""
        g = build_graph(4, [(1, 3), (2, 3)])
        red = reduce_to_H(g, [LabelPair(v=0, wa=1, wb=2)], [1, 2, 3])
        assert red.h == (2,)

    def test_find_dominator(self):
        g, labels, s2 = star_in_s2()
        red = reduce_to_H(g, labels, s2)
        assert red.h == (2, 4)
        assert find_dominator(g, red, s2, 3) == 2
        assert find_dominator(g, red, s2, 4) == 4

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(triangle_free_graphs(max_n=14), st.data())
    def test_minimal_and_dominating(self, g, data):
        r = data.draw(st.integers(0, g.n - 1))
        rooted = stalled_layers(g, r)
        red = reduce_to_H(g, label_vertices(g, rooted), rooted.s2)
        s2 = set(rooted.s2)
        nbhd = {x: g.neighbor_sets[x] & s2 for x in red.h_star}
        for x in red.h:
            assert not any(y != x and nbhd[x] <= nbhd[y] for y in red.h)
        for x in red.h_star:
            assert nbhd[x] <= nbhd[red.dominator[x]]


class TestExtendColoring:
    """Test coloring S2 from a coloring of H."""

    def test_dominated_vertices_copy_colors(self):
        g, labels, s2 = star_in_s2()
        red = reduce_to_H(g, labels, s2)
        extended = extend_coloring(g, red, s2, Coloring(assignment=(0, 1), color_count=2))
        assert extended.assignment == (0, 0, 0, 1)
        assert verify_coloring(induced_subgraph(g, s2), extended)

    def test_missing_dominator_raises(self):
        g, _, s2 = star_in_s2()
        red = reduce_to_H(g, [LabelPair(v=0, wa=1, wb=2)], s2)
        with pytest.raises(ProofStepError) as exc:
            extend_coloring(g, red, s2, Coloring(assignment=(0,), color_count=1))
        assert exc.value.report.claim == "claim1"
        assert exc.value.report.witness == (4,)

    def test_length_mismatch(self, c5):
        rooted = layers(c5, 0)
        red = reduce_to_H(c5, label_vertices(c5, rooted), rooted.s2)
        with pytest.raises(ValueError):
            extend_coloring(c5, red, rooted.s2, Coloring(assignment=(0,), color_count=1))

    def test_grotzsch_h_is_whole_cycle(self, grotzsch):
        """Test H is the C5 under the apex, so chi(H) = chi(S2) = 3."""
        rooted = layers(grotzsch, 10)
        red = reduce_to_H(grotzsch, label_vertices(grotzsch, rooted), rooted.s2)
        assert red.h == (0, 1, 2, 3, 4)
        h_result = chromatic_of_subset(grotzsch, red.h)
        extended = extend_coloring(grotzsch, red, rooted.s2, h_result.witness)
        assert h_result.value == 3
        assert verify_coloring(induced_subgraph(grotzsch, rooted.s2), extended)

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(triangle_free_graphs(max_n=13), st.data())
    def test_h_and_s2_have_equal_chromatic_number(self, g, data):
        """Test the extension is proper, or fails only on S2 vertices cut off from S1."""
        r = data.draw(st.integers(0, g.n - 1))
        rooted = stalled_layers(g, r)
        red = reduce_to_H(g, label_vertices(g, rooted), rooted.s2)
        h_result = chromatic_of_subset(g, red.h)
        try:
            extended = extend_coloring(g, red, rooted.s2, h_result.witness)
        except ProofStepError as e:
            (z,) = e.report.witness
            assert not g.neighbor_sets[z] & rooted.s1_set
            return
        assert verify_coloring(induced_subgraph(g, sorted(rooted.s2)), extended)
        assert extended.color_count == h_result.value
        assert chromatic_of_subset(g, rooted.s2).value == h_result.value
