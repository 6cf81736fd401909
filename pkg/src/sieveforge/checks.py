"""Self-checks behind ``sieveforge validate``: oracles and golden matrices.

Each check returns a :class:`CheckResult`; nothing here raises on a
mismatch, so the CLI can report every failing check at once.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .algebra import PathMatrix, change_of_order, circ, circ_expansion, circ_fold
from .graph import Graph, NodePermutation, builtin_graph, permute_graph, random_graph
from .harness import embed_stats
from .modg import SMultElement, bullet, random_directed_subgraph, rep, tr_count
from .sieve import SieveCover, symbolic_sieve
from .snn import snn_alpha
from .wl import wl_distinguish

# two oriented trees on six nodes and their products in both orders
TREE_X = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 1, 1],
    [1, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 0, 0],
]
TREE_Y = [
    [0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
]
TREE_X_CIRC_Y = [
    [0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1],
    [1, 2, 0, 0, 0, 2],
    [2, 3, 1, 0, 1, 4],
    [1, 2, 1, 0, 0, 3],
    [0, 0, 0, 0, 0, 0],
]
TREE_Y_CIRC_X = [
    [0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1],
    [1, 1, 0, 0, 0, 0],
    [2, 2, 1, 0, 1, 2],
    [1, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 0, 0],
]

# SNN_o(alpha, (1,1)) and (1,2) on the ladder (G) and bridged triangles (H)
LADDER_11 = [
    [2, 2, 1, 2, 2, 0],
    [2, 3, 2, 2, 2, 2],
    [1, 2, 2, 0, 2, 2],
    [2, 2, 0, 2, 2, 1],
    [2, 2, 2, 2, 3, 2],
    [0, 2, 2, 1, 2, 2],
]
BRIDGED_11 = [
    [2, 3, 1, 0, 3, 0],
    [3, 3, 2, 1, 3, 1],
    [1, 2, 3, 3, 1, 3],
    [0, 1, 3, 2, 0, 3],
    [3, 3, 1, 0, 2, 0],
    [0, 1, 3, 3, 0, 2],
]
LADDER_12 = [
    [2, 4, 2, 4, 4, 3],
    [5, 3, 5, 4, 6, 4],
    [2, 4, 2, 3, 4, 4],
    [4, 4, 3, 2, 4, 2],
    [4, 6, 4, 5, 3, 5],
    [3, 4, 4, 2, 4, 2],
]
BRIDGED_12 = [
    [2, 3, 3, 1, 3, 1],
    [4, 3, 4, 2, 4, 2],
    [2, 4, 3, 4, 2, 4],
    [1, 3, 3, 2, 1, 3],
    [3, 3, 3, 1, 2, 1],
    [1, 3, 3, 3, 1, 2],
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def random_int_matrix(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> PathMatrix:
    return PathMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def check_worked_products() -> CheckResult:
    X, Y = PathMatrix.from_rows(TREE_X), PathMatrix.from_rows(TREE_Y)
    ok_xy = circ(X, Y) == PathMatrix.from_rows(TREE_X_CIRC_Y)
    ok_yx = circ(Y, X) == PathMatrix.from_rows(TREE_Y_CIRC_X)
    return CheckResult("circ of the two six-node trees, both orders", ok_xy and ok_yx)


def check_expansion(rng: random.Random, trials: int = 100, n: int = 5) -> CheckResult:
    bad = 0
    for t in range(trials):
        k = 1 + t % 4
        ms = [random_int_matrix(n, rng, 0, 4) for _ in range(k)]
        bad += circ_expansion(ms) != circ_fold(ms)
    return CheckResult("expansion identity vs circ fold", bad == 0, f"{trials} tuples, {bad} mismatches")


def check_change_of_order(rng: random.Random, trials: int = 200, n: int = 5) -> CheckResult:
    bad = 0
    for _ in range(trials):
        a, b = random_int_matrix(n, rng), random_int_matrix(n, rng)
        p = NodePermutation.random(n, rng)

        def f(m):
            return change_of_order(m, p)

        bad += f(circ(a, b)) != circ(f(a), f(b))
        bad += f(a @ b) != f(a) @ f(b)
        bad += f(a.hadamard(b)) != f(a).hadamard(f(b))
    return CheckResult("change of order preserves circ, product, hadamard", bad == 0, f"{trials} cases, {bad} mismatches")


def check_homomorphism(rng: random.Random, trials: int = 1000, max_n: int = 8) -> CheckResult:
    bad = 0
    for _ in range(trials):
        n = rng.randint(2, max_n)
        host = random_graph(n, 0.5, rng)
        if not host.edges:
            host = Graph(n, ((0, 1),))
        # composites: products of one to three directed subgraphs on each side
        def element():
            parts = [SMultElement.from_subgraph(random_directed_subgraph(host, rng)) for _ in range(rng.randint(1, 3))]
            acc = parts[0]
            for p in parts[1:]:
                acc = bullet(acc, p)
            return acc

        a, b = element(), element()
        bad += tr_count(bullet(a, b)) != circ(tr_count(a), tr_count(b))
    return CheckResult("path counting is a monoid homomorphism", bad == 0, f"{trials} composites, {bad} mismatches")


def check_rep_matches_count(rng: random.Random, trials: int = 200) -> CheckResult:
    bad = 0
    for _ in range(trials):
        n = rng.randint(2, 8)
        host = random_graph(n, 0.6, rng)
        d = random_directed_subgraph(host, rng)
        bad += rep(d) != tr_count(SMultElement.from_subgraph(d))
    return CheckResult("reachability matrix equals path count of a directed tree", bad == 0)


def check_sieve_oracle(rng: random.Random, graphs: int = 30, max_n: int = 7) -> CheckResult:
    bad = 0
    for _ in range(graphs):
        n = rng.randint(1, max_n)
        g = random_graph(n, rng.uniform(0.2, 0.8), rng)
        cov = SieveCover(g)
        for v in range(n):
            for k in range(4):
                bad += cov.image(v, k) != tr_count(symbolic_sieve(g, v, k))
    return CheckResult("sieve images match symbolic path counts", bad == 0, f"{graphs} graphs, {bad} mismatches")


def check_mpnn_reduction(rng: random.Random, graphs: int = 50) -> CheckResult:
    bad = 0
    for _ in range(graphs):
        n = rng.randint(1, 20)
        g = random_graph(n, rng.random(), rng)
        A = PathMatrix.from_rows(g.adjacency())
        bad += snn_alpha(g, 0, 1).matrix != A
        bad += snn_alpha(g, 1, 0).matrix != A
    return CheckResult("levels (0,1) and (1,0) give the adjacency matrix", bad == 0)


def check_ladder_pair() -> CheckResult:
    G, H = builtin_graph("example6_G"), builtin_graph("example6_H")
    ok = (
        snn_alpha(G, 1, 1).matrix == PathMatrix.from_rows(LADDER_11)
        and snn_alpha(H, 1, 1).matrix == PathMatrix.from_rows(BRIDGED_11)
        and snn_alpha(G, 1, 2).matrix == PathMatrix.from_rows(LADDER_12)
        and snn_alpha(H, 1, 2).matrix == PathMatrix.from_rows(BRIDGED_12)
    )
    eg = embed_stats(PathMatrix.from_rows(LADDER_11), ("sum", "mean", "var"))
    eh = embed_stats(PathMatrix.from_rows(BRIDGED_11), ("sum", "mean", "var"))
    ok = ok and eg.values[:2] == eh.values[:2] and eg.values[2] != eh.values[2]
    ok = ok and not wl_distinguish(G, H)
    return CheckResult("ladder vs bridged triangles: golden outputs, stats, WL tie", ok)


def check_invariance(rng: random.Random, graphs: int = 20) -> CheckResult:
    from .snn import snn_beta

    bad = 0
    for _ in range(graphs):
        n = rng.randint(2, 9)
        g = random_graph(n, rng.random(), rng)
        p = NodePermutation.random(n, rng)
        pg = permute_graph(g, p)
        bad += snn_alpha(pg, 1, 2).matrix != change_of_order(snn_alpha(g, 1, 2).matrix, p)
        bad += snn_beta(pg, (-1, 1)).matrix != change_of_order(snn_beta(g, (-1, 1)).matrix, p)
    return CheckResult("outputs follow node relabeling", bad == 0)


def run_all(seed: int = 0, quick: bool = False) -> list[CheckResult]:
    rng = random.Random(seed)
    scale = 5 if quick else 1
    checks: list[Callable[[], CheckResult]] = [
        check_worked_products,
        lambda: check_expansion(rng, 100 // scale),
        lambda: check_change_of_order(rng, 200 // scale),
        lambda: check_homomorphism(rng, 1000 // scale),
        lambda: check_rep_matches_count(rng, 200 // scale),
        lambda: check_sieve_oracle(rng, 30 // scale),
        lambda: check_mpnn_reduction(rng, 50 // scale),
        check_ladder_pair,
        lambda: check_invariance(rng, 20 // scale),
    ]
    return [c() for c in checks]
