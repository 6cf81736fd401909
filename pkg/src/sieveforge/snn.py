"""Sieve network outputs (alpha and beta variants) and dataset export."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .algebra import PathMatrix, _empty, circ, circ_fold
from .graph import Graph
from .sieve import STABLE, SieveCover, stable_gamma


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SnnConfig:
    variant: str = "alpha"
    alpha_levels: tuple[int, int] = (1, 1)
    beta_levels: tuple[int, ...] = (STABLE,)
    normalize: bool = False
    gamma: object = 1
    featured: bool = False
    scalar_kind: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", stable_gamma(self.gamma))
        object.__setattr__(self, "alpha_levels", tuple(int(x) for x in self.alpha_levels))
        object.__setattr__(self, "beta_levels", tuple(int(x) for x in self.beta_levels))
        self.validate()

    def validate(self):
        if self.variant not in ("alpha", "beta"):
            raise ConfigError(f"variant must be 'alpha' or 'beta', got {self.variant!r}")
        levels = self.alpha_levels if self.variant == "alpha" else self.beta_levels
        if self.variant == "alpha" and len(levels) != 2:
            raise ConfigError("alpha needs exactly two levels (l, k)")
        if self.variant == "beta" and not levels:
            raise ConfigError("beta needs at least one level")
        for x in levels:
            if x < -1:
                raise ConfigError(f"levels must be >= 0 or -1, got {x}")
        if self.normalize and self.variant != "alpha":
            raise ConfigError("normalization applies to the alpha variant only")
        if self.normalize and self.elem_kind() == "bigint":
            raise ConfigError("normalize needs a division-capable scalar kind (rational or float)")
        if not 0 < self.gamma <= 1:
            raise ConfigError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.scalar_kind == "bigint" and self.gamma != 1:
            raise ConfigError("gamma < 1 needs the rational or float scalar kind")

    def elem_kind(self) -> str:
        if self.scalar_kind is not None:
            return self.scalar_kind
        if self.featured:
            return "float"
        return "bigint" if self.gamma == 1 else "rational"

    @property
    def levels(self) -> tuple[int, ...]:
        return self.alpha_levels if self.variant == "alpha" else self.beta_levels

    def label(self) -> str:
        lv = ",".join(str(x) for x in self.levels)
        name = "SNN_o" if self.variant == "alpha" and not self.normalize else "SNN"
        return f"{name}({self.variant},({lv}))"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["gamma"] = str(self.gamma)
        d["alpha_levels"] = list(self.alpha_levels)
        d["beta_levels"] = list(self.beta_levels)
        d["scalar_kind"] = self.elem_kind()
        return d


@dataclass(frozen=True)
class SnnOutput:
    matrix: PathMatrix
    config: SnnConfig
    graph_hash: str = field(default="")


def _cover(g: Graph, gamma, featured: bool, kind: str | None) -> SieveCover:
    return SieveCover(g, gamma, featured, kind)


def _divide(num, den, elem: str):
    if elem == "float":
        return num / den
    return Fraction(num) / den


def snn_alpha(
    g: Graph,
    l: int = 1,
    k: int = 1,
    normalize: bool = False,
    gamma=1,
    featured: bool = False,
    kind: str | None = None,
    cover: SieveCover | None = None,
) -> SnnOutput:
    """Entry (i, j) is entry (i, j) of ``CoImage(v_i, l) ∘ Image(v_j, k)``.

    Only row i of the co-image and column j of the image reach that entry,
    so with ``P[:, i] = Image(v_i, l)[:, i]`` and ``Q[:, j] = Image(v_j, k)[:, j]``
    the whole output is ``P^T ∘ Q``.  With ``normalize`` each entry is divided
    by (row-i sum of the co-image) x (column-j sum of the image), and set to 0
    when that product vanishes.
    """
    gamma = stable_gamma(gamma)
    cfg = SnnConfig("alpha", (l, k), normalize=normalize, gamma=gamma, featured=featured, scalar_kind=kind)
    cov = cover or _cover(g, gamma, featured, kind)
    n = g.n
    shape = cov._shape()
    P = _empty(shape, cov.elem)
    Q = _empty(shape, cov.elem)
    for v in range(n):
        P[:, v] = cov.sink_column(v, l)
        Q[:, v] = cov.sink_column(v, k)
    Pm = PathMatrix(P, cov.kind, cov.elem)
    Qm = PathMatrix(Q, cov.kind, cov.elem)
    out = circ(Pm.T, Qm)
    if normalize:
        rows = P.sum(axis=0)  # row-i sum of CoImage(v_i, l)
        cols = Q.sum(axis=0)  # column-j sum of Image(v_j, k)
        num = out.data
        res = _empty(shape, cov.elem)
        for i in range(n):
            for j in range(n):
                den = rows[i] * cols[j]
                if cov.kind == "featurevec":
                    for c in range(shape[2]):
                        if den[c] != 0:
                            res[i, j, c] = _divide(num[i, j, c], den[c], cov.elem)
                elif den != 0:
                    res[i, j] = _divide(num[i, j], den, cov.elem)
        out = PathMatrix(res, cov.kind, cov.elem)
    return SnnOutput(out, cfg, g.digest())


def snn_beta(
    g: Graph,
    levels: Sequence[int] = (STABLE,),
    gamma=1,
    featured: bool = False,
    kind: str | None = None,
    cover: SieveCover | None = None,
) -> SnnOutput:
    """``Su_1 ∘ Su_2 ∘ ... ∘ Su_t``: odd positions sum co-images, even positions images."""
    levels = tuple(levels)
    gamma = stable_gamma(gamma)
    cfg = SnnConfig("beta", beta_levels=levels, gamma=gamma, featured=featured, scalar_kind=kind)
    cov = cover or _cover(g, gamma, featured, kind)
    sums: dict[int, PathMatrix] = {}
    terms = []
    for pos, lv in enumerate(levels, start=1):
        if lv not in sums:
            sums[lv] = cov.image_sum(lv)
        terms.append(sums[lv].T if pos % 2 == 1 else sums[lv])
    return SnnOutput(circ_fold(terms), cfg, g.digest())


def run_snn(g: Graph, cfg: SnnConfig) -> SnnOutput:
    if cfg.variant == "alpha":
        l, k = cfg.alpha_levels
        return snn_alpha(g, l, k, cfg.normalize, cfg.gamma, cfg.featured, cfg.scalar_kind)
    return snn_beta(g, cfg.beta_levels, cfg.gamma, cfg.featured, cfg.scalar_kind)


# --- export -------------------------------------------------------------------


def _cell(x, elem: str):
    if elem == "float":
        return float(x)
    return str(x)


def output_record(graph_id: str, out: SnnOutput) -> dict:
    m = out.matrix
    rec = {"id": graph_id, "n": m.n}
    if m.kind == "featurevec":
        rec["kind"] = "featurevec"
        rec["m"] = m.m
        rec["entries"] = [[_cell(c, m.elem) for c in m.data[i, j]] for i in range(m.n) for j in range(m.n)]
    else:
        rec["kind"] = m.kind
        rec["entries"] = [_cell(m.data[i, j], m.elem) for i in range(m.n) for j in range(m.n)]
    return rec


def csv_rows(graph_id: str, out: SnnOutput) -> Iterable[tuple]:
    m = out.matrix
    if m.kind == "featurevec":
        raise ConfigError("CSV export supports scalar kinds only; use JSONL for edge features")
    for i in range(m.n):
        for j in range(m.n):
            x = m.data[i, j]
            if x != 0:
                yield (graph_id, i, j, _cell(x, m.elem))


def _transform_one(args):
    g, cfg = args
    return run_snn(g, cfg)


def transform_dataset(
    graphs: Sequence[Graph],
    cfg: SnnConfig,
    sink: IO[str],
    fmt: str = "jsonl",
    ids: Sequence[str] | None = None,
    threads: int = 1,
) -> int:
    """Write one output record per input graph, in input order; return the count."""
    graphs = list(graphs)
    ids = list(ids) if ids is not None else [str(i) for i in range(len(graphs))]
    if len(ids) != len(graphs):
        raise ValueError("ids and graphs differ in length")
    if cfg.featured:
        dims = {g.m for g in graphs}
        if None in dims:
            raise ConfigError("featured transform needs edge features on every graph")
        if len({d for d in dims if d}) > 1:
            raise ConfigError(f"mixed edge feature dimensions {sorted(d for d in dims if d)}")
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown export format {fmt!r}")
    from .parallel import ordered_map

    outputs = ordered_map(_transform_one, [(g, cfg) for g in graphs], threads)
    writer = csv.writer(sink, lineterminator="\n") if fmt == "csv" else None
    if writer:
        writer.writerow(("id", "i", "j", "value"))
    count = 0
    for gid, out in zip(ids, outputs):
        if writer:
            writer.writerows(csv_rows(gid, out))
        else:
            sink.write(json.dumps(output_record(gid, out)) + "\n")
        count += 1
    return count
