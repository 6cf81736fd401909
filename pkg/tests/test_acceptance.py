"""Acceptance criteria, one test each.

The terminal summary prints a PASS/FAIL line per criterion (see conftest).
"""

from __future__ import annotations

import random
import time

import pytest

from sieveforge.algebra import PathMatrix, change_of_order, circ, circ_expansion, circ_fold
from sieveforge.cli import main
from sieveforge.graph import Graph, NodePermutation, builtin_graph, permute_graph, random_graph
from sieveforge.harness import SRG_STATS, STATISTICS, embed_stats, run_csl
from sieveforge.modg import SMultElement, bullet, random_directed_subgraph, tr_count
from sieveforge.sieve import SieveCover, symbolic_sieve
from sieveforge.snn import SnnConfig, run_snn, snn_alpha, snn_beta
from sieveforge.wl import wl_distinguish

criterion = pytest.mark.criterion

X = [[0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0], [1, 1, 1, 0, 1, 1], [1, 1, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0]]
Y = [[0, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0]]
X_CIRC_Y = [[0, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1], [1, 2, 0, 0, 0, 2], [2, 3, 1, 0, 1, 4], [1, 2, 1, 0, 0, 3], [0, 0, 0, 0, 0, 0]]
Y_CIRC_X = [[0, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1], [1, 1, 0, 0, 0, 0], [2, 2, 1, 0, 1, 2], [1, 1, 1, 0, 0, 1], [0, 0, 0, 0, 0, 0]]

LADDER_11 = [[2, 2, 1, 2, 2, 0], [2, 3, 2, 2, 2, 2], [1, 2, 2, 0, 2, 2], [2, 2, 0, 2, 2, 1], [2, 2, 2, 2, 3, 2], [0, 2, 2, 1, 2, 2]]
BRIDGED_11 = [[2, 3, 1, 0, 3, 0], [3, 3, 2, 1, 3, 1], [1, 2, 3, 3, 1, 3], [0, 1, 3, 2, 0, 3], [3, 3, 1, 0, 2, 0], [0, 1, 3, 3, 0, 2]]
LADDER_12 = [[2, 4, 2, 4, 4, 3], [5, 3, 5, 4, 6, 4], [2, 4, 2, 3, 4, 4], [4, 4, 3, 2, 4, 2], [4, 6, 4, 5, 3, 5], [3, 4, 4, 2, 4, 2]]
BRIDGED_12 = [[2, 3, 3, 1, 3, 1], [4, 3, 4, 2, 4, 2], [2, 4, 3, 4, 2, 4], [1, 3, 3, 2, 1, 3], [3, 3, 3, 1, 2, 1], [1, 3, 3, 3, 1, 2]]


@criterion(1, "golden circ products of the two six-node trees (exact, < 1 ms)")
def test_golden_circ():
    x, y = PathMatrix.from_rows(X), PathMatrix.from_rows(Y)
    circ(x, y)  # warm-up
    t0 = time.perf_counter()
    xy, yx = circ(x, y), circ(y, x)
    elapsed = time.perf_counter() - t0
    assert xy.to_rows() == X_CIRC_Y
    assert yx.to_rows() == Y_CIRC_X
    assert elapsed < 1e-3


@criterion(2, "levels (0,1) and (1,0) reproduce adjacency on 100 random graphs, n <= 30")
def test_mpnn_reduction():
    rng = random.Random(2)
    for _ in range(100):
        g = random_graph(rng.randint(1, 30), rng.random(), rng)
        adj = PathMatrix.from_rows(g.adjacency())
        assert snn_alpha(g, 0, 1).matrix == adj
        assert snn_alpha(g, 1, 0).matrix == adj


@criterion(3, "ladder vs bridged triangles: X, Y, Z, W exact, sum/mean tie, var differs, WL tie (< 10 ms)")
def test_example_pair():
    g, h = builtin_graph("example6_G"), builtin_graph("example6_H")
    t0 = time.perf_counter()
    x, y = snn_alpha(g, 1, 1).matrix, snn_alpha(h, 1, 1).matrix
    z, w = snn_alpha(g, 1, 2).matrix, snn_alpha(h, 1, 2).matrix
    ex, ey = embed_stats(x, ("sum", "mean", "var")), embed_stats(y, ("sum", "mean", "var"))
    wl_tie = not wl_distinguish(g, h)
    elapsed = time.perf_counter() - t0
    assert x.to_rows() == LADDER_11 and y.to_rows() == BRIDGED_11
    assert z.to_rows() == LADDER_12 and w.to_rows() == BRIDGED_12
    assert ex.values[0] == ey.values[0] == 62
    assert ex.values[1] == ey.values[1]
    assert ex.values[2] != ey.values[2]
    assert wl_tie
    assert elapsed < 1e-2


@criterion(4, "path counting is a homomorphism on 1000 random composites, hosts n <= 8 (< 1 min)")
def test_homomorphism():
    rng = random.Random(4)
    t0 = time.perf_counter()
    for _ in range(1000):
        n = rng.randint(2, 8)
        host = random_graph(n, 0.5, rng)
        if not host.edges:
            host = Graph(n, ((0, 1),))

        def composite():
            parts = [SMultElement.from_subgraph(random_directed_subgraph(host, rng)) for _ in range(rng.randint(1, 3))]
            acc = parts[0]
            for p in parts[1:]:
                acc = bullet(acc, p)
            return acc

        a, b = composite(), composite()
        assert tr_count(bullet(a, b)) == circ(tr_count(a), tr_count(b))
    assert time.perf_counter() - t0 < 60


@criterion(5, "expansion identity equals the circ fold, k = 1..4, 100 integer tuples, n = 5")
def test_expansion():
    rng = random.Random(5)
    for t in range(100):
        k = 1 + t % 4
        ms = [PathMatrix.from_rows([[rng.randint(-10**6, 10**6) for _ in range(5)] for _ in range(5)]) for _ in range(k)]
        assert circ_expansion(ms) == circ_fold(ms)


@criterion(6, "change of order preserves circ, product and hadamard on 200 random cases")
def test_change_of_order():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(1, 8)
        a = PathMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        b = PathMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        p = NodePermutation.random(n, rng)

        def f(m):
            return change_of_order(m, p)

        assert f(circ(a, b)) == circ(f(a), f(b))
        assert f(a @ b) == f(a) @ f(b)
        assert f(a.hadamard(b)) == f(a).hadamard(f(b))


@criterion(7, "both variants are equivariant and all embeddings (incl. det) invariant, 50 pairs")
def test_invariance():
    rng = random.Random(7)
    configs = (SnnConfig("alpha", (1, 2)), SnnConfig("beta", beta_levels=(-1, 1, 2)))
    for _ in range(50):
        n = rng.randint(2, 10)
        g = random_graph(n, rng.random(), rng)
        p = NodePermutation.random(n, rng)
        pg = permute_graph(g, p)
        for cfg in configs:
            out, pout = run_snn(g, cfg).matrix, run_snn(pg, cfg).matrix
            assert pout == change_of_order(out, p)
            assert embed_stats(pout, STATISTICS) == embed_stats(out, STATISTICS)


@criterion(8, "sieve images equal symbolic path counts, all nodes, n <= 7, k <= 3 (< 2 min)")
def test_sieve_oracle():
    rng = random.Random(8)
    t0 = time.perf_counter()
    for _ in range(100):
        g = random_graph(rng.randint(1, 7), rng.uniform(0.2, 0.9), rng)
        cov = SieveCover(g)
        for v in range(g.n):
            for k in (0, 1, 2, 3):
                assert cov.image(v, k) == tr_count(symbolic_sieve(g, v, k))
    assert time.perf_counter() - t0 < 120


@criterion(9, "CSL(41): 150 graphs fall into exactly 10 classes of 15 under beta(-1) + sum (< 5 min)")
def test_csl():
    t0 = time.perf_counter()
    report = run_csl(seed=0, threads=1)
    elapsed = time.perf_counter() - t0
    assert len(report.ids) == 150
    assert sorted(len(c) for c in report.classes) == [15] * 10
    assert report.failures == []
    assert all(len({gid.split("_r")[0] for gid in c}) == 1 for c in report.classes)
    assert elapsed < 300


@criterion(10, "shrikhande vs rook4x4: WL tie, beta(-1,-1,-1) + mean/var/diag stats distinguish")
def test_srg_pair():
    s, r = builtin_graph("shrikhande"), builtin_graph("rook4x4")
    assert not wl_distinguish(s, r)
    es = embed_stats(snn_beta(s, (-1, -1, -1)).matrix, SRG_STATS)
    er = embed_stats(snn_beta(r, (-1, -1, -1)).matrix, SRG_STATS)
    print(f"shrikhande {es.as_strings()}  rook4x4 {er.as_strings()}")
    assert es.values != er.values


@criterion(11, "csl --seed 0 reports are byte-identical for --threads 1 and 8")
def test_determinism(tmp_path, capsys):
    outs = []
    for threads in (1, 8):
        path = tmp_path / f"csl_{threads}.json"
        assert main(["csl", "--seed", "0", "--threads", str(threads), "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]
