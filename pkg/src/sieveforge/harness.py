"""Exact embeddings of SNN outputs and isomorphism-discrimination experiments."""

from __future__ import annotations

import io
import csv
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import networkx as nx

from .algebra import PathMatrix
from .graph import Graph, NodePermutation, generate_csl, permute_graph, read_graph6_file
from .parallel import ordered_map
from .snn import SnnConfig, run_snn
from .wl import wl_hash

STATISTICS = ("sum", "mean", "var", "diag_mean", "diag_var", "det")
SRG_STATS = ("mean", "var", "diag_mean", "diag_var")
CSL_SKIPS = (2, 3, 4, 5, 6, 9, 11, 12, 13, 16)
CSL_NODES = 41
CSL_PER_CLASS = 15


@dataclass(frozen=True)
class Embedding:
    names: tuple[str, ...]
    values: tuple

    def as_strings(self) -> list[str]:
        return [str(v) for v in self.values]


def _exact(x):
    # floats convert to their exact binary value so equality stays exact
    return Fraction(x) if not isinstance(x, int) else x


def _moments(xs: list) -> tuple:
    count = len(xs)
    s = sum(xs, 0)
    mean = Fraction(s, 1) / count
    sq = sum((x * x for x in xs), 0)
    var = Fraction(sq, 1) / count - mean * mean
    return s, mean, var


def exact_determinant(m: PathMatrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Integer matrices stay in the integers: every division is exact.
    """
    if m.kind not in ("bigint", "rational"):
        raise ValueError(f"exact determinant needs bigint or rational entries, got {m.kind}")
    a = [list(row) for row in m.to_rows()]
    n = len(a)
    if n == 0:
        return 1
    integral = m.kind == "bigint"
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = t // prev if integral else t / prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def embed_stats(m: PathMatrix, stats: Sequence[str]) -> Embedding:
    """Exact statistics of ``m`` in the order given by ``stats``.

    Mean and variance are population moments over all n^2 entries (or the n
    diagonal entries for the ``diag_`` variants).  Feature-vector matrices
    yield one value per component, named ``stat[c]``.
    """
    stats = tuple(stats)
    for s in stats:
        if s not in STATISTICS:
            raise ValueError(f"unknown statistic {s!r}; choose from {', '.join(STATISTICS)}")
    if m.kind == "featurevec" and "det" in stats:
        raise ValueError("det is undefined for feature-vector matrices")
    if m.kind == "float" and "det" in stats:
        raise ValueError("det on float matrices is refused: use an exact scalar kind")
    n = m.n
    if m.kind == "featurevec":
        channels = [[[_exact(m.data[i, j, c]) for j in range(n)] for i in range(n)] for c in range(m.m)]
    else:
        channels = [[[_exact(x) for x in row] for row in m.to_rows()]]
    names, values = [], []
    cache = {}
    for s in stats:
        for c, rows in enumerate(channels):
            if s == "det":
                val = exact_determinant(m)
            else:
                if (c, s.startswith("diag")) not in cache:
                    xs = [rows[i][i] for i in range(n)] if s.startswith("diag") else [x for r in rows for x in r]
                    cache[(c, s.startswith("diag"))] = _moments(xs)
                total, mean, var = cache[(c, s.startswith("diag"))]
                val = {"sum": total, "mean": mean, "var": var, "diag_mean": mean, "diag_var": var}[s]
            if isinstance(val, Fraction) and val.denominator == 1:
                val = val.numerator
            names.append(s if len(channels) == 1 else f"{s}[{c}]")
            values.append(val)
    return Embedding(tuple(names), tuple(values))


# --- discrimination -----------------------------------------------------------


def _embed_job(args):
    g, cfg, stats = args
    return embed_stats(run_snn(g, cfg).matrix, stats), wl_hash(g)


def _group(keys: Sequence, ids: Sequence[str]) -> list[list[str]]:
    groups: dict = {}
    for k, gid in zip(keys, ids):
        groups.setdefault(k, []).append(gid)
    return list(groups.values())


def _pairs_within(groups) -> int:
    return sum(len(c) * (len(c) - 1) // 2 for c in groups)


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@dataclass
class DiscriminationReport:
    config: SnnConfig
    statistics: tuple[str, ...]
    ids: list[str]
    embeddings: list[Embedding]
    classes: list[list[str]]
    total_pairs: int
    distinguished: int
    wl_distinguished: int
    duplicates: list[tuple[str, str]] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: int = 0

    @property
    def undistinguished(self) -> int:
        return self.total_pairs - self.distinguished

    @property
    def failure_rate(self) -> Fraction:
        candidates = self.total_pairs - len(self.duplicates)
        return Fraction(len(self.failures), candidates) if candidates else Fraction(0)

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "config": self.config.to_dict(),
            "statistics": list(self.statistics),
            "seed": self.seed,
            "graphs": [{"id": i, "embedding": e.as_strings()} for i, e in zip(self.ids, self.embeddings)],
            "classes": self.classes,
            "pairs": {
                "distinguished": self.distinguished,
                "total": self.total_pairs,
                "wl_distinguished": self.wl_distinguished,
            },
            "duplicates": [list(p) for p in self.duplicates],
            "failures": [list(p) for p in self.failures],
            "failure_rate": str(self.failure_rate),
        }
        if include_timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = self.embeddings[0].names if self.embeddings else self.statistics
        w.writerow(("id",) + tuple(names))
        for gid, e in zip(self.ids, self.embeddings):
            w.writerow([gid] + e.as_strings())
        return buf.getvalue()


def discriminate(
    graphs: Sequence[Graph],
    cfg: SnnConfig,
    stats: Sequence[str],
    ids: Sequence[str] | None = None,
    labels: Sequence | None = None,
    threads: int = 1,
    seed: int | None = None,
) -> DiscriminationReport:
    """Embed every graph and group them by exact embedding equality.

    Undistinguished pairs are split into duplicates (isomorphic graphs) and
    failures.  ``labels`` gives known isomorphism classes; without it,
    undistinguished pairs are tested with networkx's VF2 matcher.
    """
    graphs = list(graphs)
    if len(graphs) < 1:
        raise ValueError("discriminate needs at least one graph")
    ids = list(ids) if ids is not None else [str(i) for i in range(len(graphs))]
    if len(set(ids)) != len(ids):
        raise ValueError("graph ids must be unique")
    t0 = time.perf_counter()
    results = ordered_map(_embed_job, [(g, cfg, tuple(stats)) for g in graphs], threads)
    embeddings = [r[0] for r in results]
    classes = _group([e.values for e in embeddings], ids)
    wl_classes = _group([r[1] for r in results], ids)
    total = len(graphs) * (len(graphs) - 1) // 2
    index = {gid: i for i, gid in enumerate(ids)}
    dups, fails = [], []
    for cls in classes:
        for a, b in combinations(cls, 2):
            ga, gb = graphs[index[a]], graphs[index[b]]
            if labels is not None:
                same = labels[index[a]] == labels[index[b]]
            else:
                same = ga.n == gb.n and nx.is_isomorphic(_to_nx(ga), _to_nx(gb))
            (dups if same else fails).append((a, b))
    return DiscriminationReport(
        config=cfg,
        statistics=tuple(stats),
        ids=ids,
        embeddings=embeddings,
        classes=classes,
        total_pairs=total,
        distinguished=total - _pairs_within(classes),
        wl_distinguished=total - _pairs_within(wl_classes),
        duplicates=dups,
        failures=fails,
        seed=seed,
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def csl_dataset(seed: int = 0, n: int = CSL_NODES, skips=CSL_SKIPS, per_class: int = CSL_PER_CLASS):
    """``per_class`` seeded random relabelings of each CSL(n, s); returns (graphs, ids, labels)."""
    rng = random.Random(seed)
    graphs, ids, labels = [], [], []
    for s in skips:
        base = generate_csl(n, s)
        for r in range(per_class):
            graphs.append(permute_graph(base, NodePermutation.random(n, rng)))
            ids.append(f"csl{n}_s{s}_r{r:02d}")
            labels.append(s)
    return graphs, ids, labels


def run_csl(seed: int = 0, threads: int = 1, cfg: SnnConfig | None = None, stats=("sum",)) -> DiscriminationReport:
    cfg = cfg or SnnConfig("beta", beta_levels=(-1,))
    graphs, ids, labels = csl_dataset(seed)
    return discriminate(graphs, cfg, stats, ids=ids, labels=labels, threads=threads, seed=seed)


def run_srg(
    source: str | Path | Sequence[Graph],
    cfg: SnnConfig | None = None,
    stats=SRG_STATS,
    threads: int = 1,
    ids: Sequence[str] | None = None,
) -> DiscriminationReport:
    """All-pairs discrimination of one strongly regular family."""
    cfg = cfg or SnnConfig("beta", beta_levels=(-1, -1, -1))
    if isinstance(source, (str, Path)):
        graphs = read_graph6_file(source)
        stem = Path(source).stem
        ids = ids or [f"{stem}#{i}" for i in range(len(graphs))]
    else:
        graphs = list(source)
    if not graphs:
        raise ValueError("no graphs to compare")
    return discriminate(graphs, cfg, stats, ids=ids, threads=threads)
