from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings

from sieveforge.algebra import PathMatrix, change_of_order
from sieveforge.graph import Graph, builtin_graph, permute_graph, random_graph
from sieveforge.modg import tr_count
from sieveforge.sieve import (
    SieveCover,
    build_levels,
    coimage,
    image,
    image_by_circ,
    neighborhood_sink,
    symbolic_cosieve,
    symbolic_sieve,
    tr_level,
    two_hop_cover,
    two_hop_transform,
)
from strategies import featured_graphs, graph_and_perm, graphs

LEVELS = (0, 1, 2, 3, -1)


def geodesic_counts(g: Graph, v: int) -> list[list[int]]:
    """Image(v) by its closed form: geodesics a -> b lying on a geodesic a -> v."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    d = dict(nx.all_pairs_shortest_path_length(h))
    out = [[0] * g.n for _ in range(g.n)]
    for a in range(g.n):
        for b in range(g.n):
            if a == b or v not in d[a] or b not in d[a]:
                continue
            if d[a][v] == d[a][b] + d[b][v]:
                out[a][b] = sum(1 for _ in nx.all_shortest_paths(h, a, b))
    return out


class TestLevels:
    def test_path_layers(self):
        g = Graph(4, ((0, 1), (1, 2), (2, 3)))
        lv = build_levels(g, 0)
        assert lv.layers == ((0,), (1,), (2,), (3,))
        assert lv.arcs(2) == ((2, 1),)
        assert lv.k0 == 3
        assert lv.resolve(-1) == 3 and lv.resolve(10) == 3 and lv.resolve(0) == 0

    def test_disconnected_nodes_are_outside(self):
        lv = build_levels(builtin_graph("two_triangles"), 0)
        assert lv.dist[3:] == (-1, -1, -1)
        assert lv.k0 == 1

    def test_level_arcs_not_composable(self):
        g = builtin_graph("k3")
        with pytest.raises(AssertionError):
            tr_level(g, [(0, 1), (1, 2)])

    def test_bad_level(self):
        with pytest.raises(ValueError):
            build_levels(builtin_graph("k3"), 0).resolve(-2)


class TestImage:
    @settings(max_examples=150, deadline=None)
    @given(graphs(1, 7))
    def test_matches_symbolic(self, g):
        cov = SieveCover(g)
        for v in range(g.n):
            for k in LEVELS:
                assert cov.image(v, k) == tr_count(symbolic_sieve(g, v, k))

    @settings(max_examples=150, deadline=None)
    @given(graphs(1, 8))
    def test_backends_and_recurrence_agree(self, g):
        dense, sparse = SieveCover(g, backend="dense"), SieveCover(g, backend="sparse")
        for v in range(g.n):
            for k in LEVELS:
                ref = image_by_circ(g, v, k)
                assert dense.image(v, k) == ref == sparse.image(v, k)

    @settings(max_examples=100, deadline=None)
    @given(graphs(1, 8))
    def test_geodesic_closed_form(self, g):
        cov = SieveCover(g)
        for v in range(g.n):
            assert cov.image(v).to_rows() == geodesic_counts(g, v)

    @settings(max_examples=100, deadline=None)
    @given(graphs(1, 7))
    def test_coimage_is_transpose_and_cosieve(self, g):
        for v in range(g.n):
            for k in LEVELS:
                co = coimage(g, v, k)
                assert co.co and co.matrix == image(g, v, k).matrix.T
                assert co.matrix == tr_count(symbolic_cosieve(g, v, k))

    def test_level_zero_vanishes_and_levels_stabilize(self):
        g = builtin_graph("c6")
        cov = SieveCover(g)
        assert cov.image(0, 0).is_zero()
        assert cov.image(0, 3) == cov.image(0, 4) == cov.image(0, -1)
        assert cov.image(0, 2) != cov.image(0, 3)
        assert image(g, 0, 99).resolved == 3

    def test_gamma_weights_by_length(self):
        g = Graph(3, ((0, 1), (1, 2)))
        m = image(g, 0, -1, gamma=Fraction(1, 2)).matrix
        assert m.kind == "rational"
        assert m.to_rows() == [[0, 0, 0], [Fraction(1, 2), 0, 0], [Fraction(1, 4), Fraction(1, 2), 0]]
        assert image_by_circ(g, 0, -1, gamma=Fraction(1, 2)) == m

    def test_gamma_needs_exact_or_float(self):
        with pytest.raises(ValueError):
            SieveCover(builtin_graph("k3"), gamma=Fraction(1, 2), kind="bigint")
        with pytest.raises(ValueError):
            SieveCover(builtin_graph("k3"), gamma=0)

    @settings(max_examples=60, deadline=None)
    @given(featured_graphs(1, 6))
    def test_featured_backends_agree(self, g):
        if not g.featured:
            return
        dense = SieveCover(g, featured=True, kind="rational", backend="dense")
        sparse = SieveCover(g, featured=True, kind="rational", backend="sparse")
        for v in range(g.n):
            ref = image_by_circ(g, v, -1, featured=True, kind="rational")
            assert dense.image(v) == ref == sparse.image(v)

    @settings(max_examples=100, deadline=None)
    @given(graph_and_perm(1, 8))
    def test_equivariant(self, gp):
        g, p = gp
        pg = permute_graph(g, p)
        for v in range(g.n):
            assert SieveCover(pg).image(p(v)) == change_of_order(SieveCover(g).image(v), p)

    def test_sparse_chosen_for_sparse_graphs(self):
        g = random_graph(60, 0.02, random.Random(3))
        assert SieveCover(g).backend == "sparse"
        assert SieveCover(builtin_graph("k3")).backend == "dense"


class TestCovers:
    def test_neighborhood_sink_is_one_level(self):
        g = builtin_graph("example6_G")
        for v in range(g.n):
            assert neighborhood_sink(g, v) == SieveCover(g).image(v, 1)

    def test_neighborhood_sinks_sum_to_adjacency(self):
        g = builtin_graph("example6_H")
        total = sum((neighborhood_sink(g, v).data for v in range(g.n)), PathMatrix.zeros(g.n).data)
        assert PathMatrix(total) == PathMatrix.from_rows(g.adjacency())

    def test_two_hop_k3(self):
        assert two_hop_transform(builtin_graph("k3")).to_rows() == [[2, 4, 4], [4, 2, 4], [4, 4, 2]]

    @settings(max_examples=100, deadline=None)
    @given(graphs(1, 7))
    def test_two_hop_matches_cover(self, g):
        total = PathMatrix.zeros(g.n)
        for e in two_hop_cover(g):
            total = total + tr_count(e)
        assert two_hop_transform(g) == total
