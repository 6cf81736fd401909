from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import permutations as perms

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sieveforge.algebra import PathMatrix
from sieveforge.graph import NodePermutation, builtin_graph, permute_graph, random_graph
from sieveforge.harness import (
    csl_dataset,
    discriminate,
    embed_stats,
    exact_determinant,
    run_srg,
)
from sieveforge.sieve import SieveCover
from sieveforge.snn import SnnConfig, snn_alpha
from strategies import int_matrices


def leibniz(rows):
    n = len(rows)
    total = 0
    for p in perms(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


class TestDeterminant:
    @settings(max_examples=300)
    @given(st.integers(1, 5).flatmap(lambda n: int_matrices(n, -9, 9)))
    def test_matches_permutation_expansion(self, m):
        assert exact_determinant(m) == leibniz(m.to_rows())

    def test_needs_pivoting(self):
        assert exact_determinant(PathMatrix.from_rows([[0, 1], [1, 0]])) == -1
        assert exact_determinant(PathMatrix.from_rows([[0, 0], [1, 2]])) == 0

    def test_rational(self):
        m = PathMatrix.from_rows([[Fraction(1, 2), 1], [Fraction(1, 3), 1]], "rational")
        assert exact_determinant(m) == Fraction(1, 6)

    def test_big_entries(self):
        b = 10**25
        assert exact_determinant(PathMatrix.from_rows([[b, 1], [1, b]])) == b * b - 1

    def test_refuses_float(self):
        with pytest.raises(ValueError):
            exact_determinant(PathMatrix.from_rows([[1.0]], "float"))


class TestEmbedding:
    def test_ladder_pair(self):
        x = snn_alpha(builtin_graph("example6_G"), 1, 1).matrix
        y = snn_alpha(builtin_graph("example6_H"), 1, 1).matrix
        ex, ey = embed_stats(x, ("sum", "mean", "var")), embed_stats(y, ("sum", "mean", "var"))
        assert ex.values == (62, Fraction(31, 18), Fraction(173, 324))
        assert ey.values == (62, Fraction(31, 18), Fraction(461, 324))

    def test_diagonal_stats(self):
        m = PathMatrix.from_rows([[1, 5], [7, 3]])
        e = embed_stats(m, ("diag_mean", "diag_var", "mean"))
        assert e.values == (2, 1, 4)
        assert e.names == ("diag_mean", "diag_var", "mean")

    def test_featurevec_per_channel(self):
        m = PathMatrix.from_rows([[[1, 2], [0, 0]], [[0, 0], [3, 4]]], "featurevec", "rational")
        e = embed_stats(m, ("sum",))
        assert e.names == ("sum[0]", "sum[1]") and e.values == (4, 6)

    def test_float_values_are_exact(self):
        m = PathMatrix.from_rows([[0.1, 0.2], [0.0, 0.0]], "float")
        assert embed_stats(m, ("sum",)).values == (Fraction(0.1) + Fraction(0.2),)

    @pytest.mark.parametrize("kind", ["float", "featurevec"])
    def test_det_refused_for_inexact(self, kind):
        rows = [[[1.0]]] if kind == "featurevec" else [[1.0]]
        with pytest.raises(ValueError):
            embed_stats(PathMatrix.from_rows(rows, kind, "float"), ("det",))

    def test_unknown_stat(self):
        with pytest.raises(ValueError):
            embed_stats(PathMatrix.from_rows([[1]]), ("median",))


class TestDiscriminate:
    def test_report_conservation(self):
        rng = random.Random(5)
        base = [random_graph(7, 0.4, rng) for _ in range(6)]
        gs = base + [permute_graph(g, NodePermutation.random(7, rng)) for g in base[:3]]
        rep = discriminate(gs, SnnConfig("beta", beta_levels=(-1, -1)), ("sum", "var"))
        within = sum(len(c) * (len(c) - 1) // 2 for c in rep.classes)
        assert rep.total_pairs == 36
        assert rep.distinguished + within == rep.total_pairs
        assert len(rep.duplicates) + len(rep.failures) == within
        assert len(rep.duplicates) >= 3
        assert sum(len(c) for c in rep.classes) == len(gs)
        assert rep.wl_distinguished <= rep.total_pairs

    def test_labels_override_vf2(self):
        g = builtin_graph("c6")
        rep = discriminate([g, builtin_graph("two_triangles")], SnnConfig("beta", beta_levels=(1,)), ("sum",),
                           labels=["a", "b"])
        assert rep.failures == [("0", "1")]
        assert rep.failure_rate == 1

    def test_duplicate_ids_rejected(self):
        g = builtin_graph("k3")
        with pytest.raises(ValueError):
            discriminate([g, g], SnnConfig(), ("sum",), ids=["a", "a"])

    def test_json_is_deterministic_and_timing_optional(self):
        gs = [builtin_graph("k3"), builtin_graph("p3")]
        a = discriminate(gs, SnnConfig(), ("sum", "det"), seed=3)
        b = discriminate(gs, SnnConfig(), ("sum", "det"), seed=3, threads=2)
        assert a.to_json() == b.to_json()
        assert "elapsed_ms" not in json.loads(a.to_json())
        assert "elapsed_ms" in json.loads(a.to_json(include_timing=True))
        assert json.loads(a.to_json())["seed"] == 3
        assert a.to_csv().splitlines()[0] == "id,sum,det"

    def test_csl_dataset_shape(self):
        gs, ids, labels = csl_dataset(seed=0)
        assert len(gs) == 150 and len(set(ids)) == 150
        assert ids[0] == "csl41_s2_r00" and labels.count(16) == 15
        assert csl_dataset(seed=0)[1] == ids and csl_dataset(seed=0)[0] == gs
        assert csl_dataset(seed=1)[0] != gs


class TestStronglyRegular:
    """Node sums of images on a strongly regular graph are spanned by I, A, J."""

    @pytest.mark.parametrize("name", ["shrikhande", "rook4x4"])
    def test_image_sum_in_bose_mesner_algebra(self, name):
        g = builtin_graph(name)
        su = SieveCover(g).image_sum(-1).to_rows()
        adj = g.adjacency()
        for i in range(g.n):
            for j in range(g.n):
                want = 0 if i == j else (4 if adj[i][j] else 2)
                assert su[i][j] == want

    def test_pair_embeddings_coincide(self):
        s, r = builtin_graph("shrikhande"), builtin_graph("rook4x4")
        rep = run_srg([s, r], ids=["shrikhande", "rook4x4"])
        assert rep.embeddings[0] == rep.embeddings[1]

    def test_srg_file_ids(self, tmp_path):
        path = tmp_path / "fam.g6"
        from sieveforge.graph import emit_graph6

        path.write_text(emit_graph6(builtin_graph("shrikhande")) + "\n" + emit_graph6(builtin_graph("k3")) + "\n")
        rep = run_srg(path, SnnConfig("beta", beta_levels=(-1,)), ("sum",))
        assert rep.ids == ["fam#0", "fam#1"]
        assert rep.distinguished == 1
