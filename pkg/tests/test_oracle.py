"""Brute-force oracle values and the small-graph corpus."""

from __future__ import annotations

from fractions import Fraction

import pytest

from tattooing.engine import Mode, Policy
from tattooing.graphs import Graph, build_family, parse_family_spec
from tattooing.oracle import connected_graph_corpus, oracle_invariants


def family(text: str) -> Graph:
    return build_family(parse_family_spec(text))


class TestCorpus:
    def test_counts_by_edges(self):
        corpus = connected_graph_corpus(5)
        assert len(corpus) == 22
        histogram: dict[int, int] = {}
        for g in corpus:
            histogram[g.m] = histogram.get(g.m, 0) + 1
        assert histogram == {1: 1, 2: 1, 3: 3, 4: 5, 5: 12}

    def test_small_classes_listed(self):
        corpus = connected_graph_corpus(3)
        assert len(corpus) == 5
        by_size = {(g.n, g.m) for g in corpus}
        # K2; P3; P4, star, triangle
        assert by_size == {(2, 1), (3, 2), (4, 3), (3, 3)}

    def test_deterministic(self):
        assert connected_graph_corpus(4) == connected_graph_corpus(4)

    def test_prefix_property(self):
        four = connected_graph_corpus(4)
        five = connected_graph_corpus(5)
        assert five[: len(four)] == four

    def test_all_connected_and_canonical(self):
        for g in connected_graph_corpus(5):
            assert Graph(g.n, g.edges) == g  # construction revalidates

    def test_bounds(self):
        with pytest.raises(ValueError):
            connected_graph_corpus(0)
        with pytest.raises(ValueError):
            connected_graph_corpus(7)

    def test_pairwise_non_isomorphic(self):
        nx = pytest.importorskip("networkx")
        corpus = [nx.Graph(g.edges) for g in connected_graph_corpus(5)]
        for i in range(len(corpus)):
            for j in range(i + 1, len(corpus)):
                assert not nx.is_isomorphic(corpus[i], corpus[j])

    def test_complete_against_atlas(self):
        nx = pytest.importorskip("networkx")
        from networkx.generators.atlas import graph_atlas_g

        atlas = [
            g
            for g in graph_atlas_g()
            if 1 <= g.number_of_edges() <= 5
            and g.number_of_nodes() >= 1
            and nx.is_connected(g)
        ]
        assert len(atlas) == len(connected_graph_corpus(5))


ORACLE_TABLE = [
    # family, mode, cost, label sum
    ("path:2", Mode.BRUSH, 1, 1),
    ("path:2", Mode.FSG, 1, 1),
    ("path:2", Mode.BLEND, 1, 1),
    ("path:4", Mode.BRUSH, 1, 3),
    ("path:4", Mode.FSG, 1, 3),
    ("path:4", Mode.BLEND, 1, 3),
    ("cycle:3", Mode.BRUSH, 2, 3),
    ("cycle:3", Mode.FSG, 2, 4),
    ("cycle:3", Mode.BLEND, 2, 4),
    ("cycle:4", Mode.BRUSH, 2, 4),
    ("cycle:4", Mode.FSG, 2, 5),
    ("cycle:4", Mode.BLEND, 2, 5),
    ("cycle:5", Mode.BLEND, 2, 6),
    ("star:3", Mode.BRUSH, 2, 3),
    ("star:3", Mode.FSG, 2, 3),
    ("star:3", Mode.BLEND, 2, 3),
    ("star:4", Mode.BRUSH, 2, 4),
    ("star:4", Mode.FSG, 3, 4),
    ("star:4", Mode.BLEND, 2, 7),
    ("star:5", Mode.BRUSH, 3, 5),
    ("star:5", Mode.FSG, 4, 5),
    ("star:5", Mode.BLEND, 3, 8),
]


class TestOracleValues:
    @pytest.mark.parametrize("text,mode,cost,label_sum", ORACLE_TABLE)
    def test_frozen_minima(self, text, mode, cost, label_sum):
        r = oracle_invariants(family(text), mode)
        assert (r.cost, r.label_sum) == (cost, label_sum)
        g = family(text)
        assert r.raw_ratio == Fraction(g.m, label_sum)
        assert r.index == Fraction(g.m, cost * label_sum)

    def test_orientation_count_reported(self):
        r = oracle_invariants(family("cycle:4"), Mode.BLEND)
        assert r.orientations == 14

    def test_six_edge_graphs(self):
        # complete graph on four vertices: blending cannot get below three
        r = oracle_invariants(family("wheel:3"), Mode.BLEND)
        assert (r.cost, r.label_sum) == (3, 10)
        # double triangle: both restricted modes agree with each other
        fsg = oracle_invariants(family("friendship:3,2"), Mode.FSG)
        blend = oracle_invariants(family("friendship:3,2"), Mode.BLEND)
        assert (fsg.cost, fsg.label_sum) == (2, 8)
        assert (blend.cost, blend.label_sum) == (2, 8)
        assert fsg.index == Fraction(3, 8)

    def test_fresh_policy_changes_label_sum(self):
        # without per-vertex index restarts, two allocated leaves cannot
        # send the same name, so the best sum rises from 3 to 4
        small = oracle_invariants(family("star:3"), Mode.FSG, Policy.SMALLEST)
        fresh = oracle_invariants(family("star:3"), Mode.FSG, Policy.FRESH)
        assert (small.cost, small.label_sum) == (2, 3)
        assert (fresh.cost, fresh.label_sum) == (2, 4)

    def test_refuses_large_graphs(self):
        with pytest.raises(ValueError):
            oracle_invariants(family("cycle:7"), Mode.BLEND)

    def test_unreachable_cost_bound(self):
        with pytest.raises(ValueError):
            oracle_invariants(family("cycle:3"), Mode.BLEND, cost_bound=1)

    def test_brush_label_sum_is_edge_count(self):
        for g in connected_graph_corpus(4):
            r = oracle_invariants(g, Mode.BRUSH)
            assert r.label_sum == g.m
            assert r.raw_ratio == 1
