"""Per-node BFS sieves, their level matrices and Image/CoImage matrices.

For a node ``v`` the BFS layers ``N_0(v) = {v}, N_1(v), ...`` induce arc sets
``M_k(v)`` pointing from layer k into layer k-1.  ``Image(v, k)`` counts the
paths of the element ``D_k • ... • D_1`` and obeys

    Image(v, k) = Tr(D_k) ∘ Image(v, k-1),   Image(v, 0) = 0.

Only rows of layer-k nodes change at step k, so a single stabilized matrix
plus the layer index of every row encodes every level at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import PathMatrix, _empty, circ, coerce_scalar
from .graph import Graph
from .modg import SMultElement, bullet, bullet_all
from .sparse import SparseMatrix

SPARSE_DENSITY = 0.10
STABLE = -1


@dataclass(frozen=True)
class SieveLevels:
    node: int
    layers: tuple[tuple[int, ...], ...]  # N_0, N_1, ..., N_k0
    levels: tuple[tuple[tuple[int, int], ...], ...]  # M_1, ..., M_k0
    dist: tuple[int, ...]  # BFS layer of every node, -1 outside the component

    @property
    def k0(self) -> int:
        return len(self.levels)

    def arcs(self, k: int) -> tuple[tuple[int, int], ...]:
        """``M_k(v)``; empty for k = 0 and for k > k0."""
        if k <= 0 or k > self.k0:
            return ()
        return self.levels[k - 1]

    def resolve(self, k: int) -> int:
        """Map a requested level (``-1`` = stabilized) to ``0..k0``."""
        if k == STABLE:
            return self.k0
        if k < 0:
            raise ValueError(f"level must be >= 0 or -1, got {k}")
        return min(k, self.k0)


def build_levels(g: Graph, v: int) -> SieveLevels:
    if not 0 <= v < g.n:
        raise ValueError(f"node {v} out of range for n={g.n}")
    dist = [-1] * g.n
    dist[v] = 0
    layers = [[v]]
    q = deque([v])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                if dist[y] == len(layers):
                    layers.append([])
                layers[dist[y]].append(y)
                q.append(y)
    levels = []
    for k in range(1, len(layers)):
        arcs = [(w, u) for w in sorted(layers[k]) for u in g.neighbors(w) if dist[u] == k - 1]
        levels.append(tuple(arcs))
    return SieveLevels(v, tuple(tuple(sorted(L)) for L in layers), tuple(levels), tuple(dist))


def resolve_kind(gamma, featured: bool, kind: str | None) -> tuple[str, str]:
    """Return ``(matrix kind, element kind)`` for a sieve configuration."""
    if kind == "featurevec":
        kind = None
    if kind is None:
        if featured:
            kind = "float"
        else:
            kind = "bigint" if gamma == 1 else "rational"
    if kind not in ("bigint", "rational", "float"):
        raise ValueError(f"unknown scalar kind {kind!r}")
    if kind == "bigint" and gamma != 1:
        raise ValueError("damping gamma < 1 needs the rational or float scalar kind")
    return ("featurevec" if featured else kind), kind


def _check_gamma(gamma):
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")


def _arc_weight(g: Graph, w: int, u: int, gamma, featured: bool, elem: str):
    gam = coerce_scalar(gamma, elem)
    if not featured:
        return gam
    vec = g.feature(w, u)
    if elem == "float":
        return gam * np.asarray(vec, dtype=np.float64)
    out = np.empty(len(vec), dtype=object)
    for c, x in enumerate(vec):
        out[c] = gam * coerce_scalar(x, elem)
    return out


def tr_level(g: Graph, arcs, gamma=1, featured: bool = False, kind: str | None = None) -> PathMatrix:
    """Matrix of one level: entry ``(w, u)`` is the arc weight of ``w -> u``."""
    _check_gamma(gamma)
    mkind, elem = resolve_kind(gamma, featured, kind)
    arcs = list(arcs)
    heads = {u for _, u in arcs}
    tails = {w for w, _ in arcs}
    if heads & tails:
        raise AssertionError(f"level arcs are composable through nodes {sorted(heads & tails)}")
    if featured and not g.featured:
        raise ValueError("featured mode needs a graph with edge features")
    shape = (g.n, g.n, g.m) if featured else (g.n, g.n)
    out = _empty(shape, elem)
    for w, u in arcs:
        out[w, u] = out[w, u] + _arc_weight(g, w, u, gamma, featured, elem)
    return PathMatrix(out, mkind, elem)


@dataclass(frozen=True)
class ImageMatrix:
    node: int
    level: int  # as requested (may be -1)
    resolved: int  # in 0..k0
    matrix: PathMatrix
    co: bool = False


class SieveCover:
    """Image matrices of every node of ``g`` for one (gamma, features, kind) mode.

    Each node's stabilized image is built once and cached; lower levels are
    read off by masking rows.  ``backend`` is ``"dense"``, ``"sparse"`` or
    ``"auto"`` (sparse below 10% adjacency density); all three give identical
    matrices.
    """

    def __init__(self, g: Graph, gamma=1, featured: bool = False, kind: str | None = None, backend: str = "auto"):
        _check_gamma(gamma)
        if featured and not g.featured:
            raise ValueError("featured mode needs a graph with edge features")
        if backend not in ("auto", "dense", "sparse"):
            raise ValueError(f"unknown backend {backend!r}")
        self.g = g
        self.gamma = gamma
        self.featured = featured
        self.kind, self.elem = resolve_kind(gamma, featured, kind)
        density = 2 * len(g.edges) / (g.n * g.n)
        self.backend = backend if backend != "auto" else ("sparse" if density < SPARSE_DENSITY else "dense")
        self._levels: dict[int, SieveLevels] = {}
        self._stable: dict[int, np.ndarray] = {}

    @property
    def n(self) -> int:
        return self.g.n

    def _shape(self):
        return (self.n, self.n, self.g.m) if self.featured else (self.n, self.n)

    def levels(self, v: int) -> SieveLevels:
        if v not in self._levels:
            self._levels[v] = build_levels(self.g, v)
        return self._levels[v]

    def _weight(self, w, u):
        return _arc_weight(self.g, w, u, self.gamma, self.featured, self.elem)

    def _build_dense(self, lv: SieveLevels) -> np.ndarray:
        data = _empty(self._shape(), self.elem)
        for arcs in lv.levels:
            # rows of layer k read only finished rows of layer k-1
            for w, u in arcs:
                x = self._weight(w, u)
                data[w, u] += x
                if self.featured:
                    data[w] += x[None, :] * data[u]
                else:
                    data[w] += x * data[u]
        return data

    def _build_sparse(self, lv: SieveLevels) -> np.ndarray:
        s = SparseMatrix(self.n, self.kind, self.elem, self.g.m if self.featured else None)
        for arcs in lv.levels:
            for w, u in arcs:
                x = self._weight(w, u)
                row = dict(s.rows.get(u, {}))
                s.add_row(w, {u: x})
                s.add_row(w, row, x)
        return s.to_dense().data

    def _stable_data(self, v: int) -> np.ndarray:
        if v not in self._stable:
            lv = self.levels(v)
            build = self._build_sparse if self.backend == "sparse" else self._build_dense
            data = build(lv)
            data.flags.writeable = False
            self._stable[v] = data
        return self._stable[v]

    def image(self, v: int, k: int = STABLE) -> PathMatrix:
        lv = self.levels(v)
        kk = lv.resolve(k)
        data = self._stable_data(v)
        if kk == lv.k0:
            return PathMatrix(data, self.kind, self.elem)
        out = data.copy()
        dist = np.asarray(lv.dist)
        drop = (dist < 0) | (dist > kk)
        out[drop] = _empty(out[drop].shape, self.elem)
        return PathMatrix(out, self.kind, self.elem)

    def coimage(self, v: int, l: int = STABLE) -> PathMatrix:
        return self.image(v, l).T

    def sink_column(self, v: int, k: int = STABLE) -> np.ndarray:
        """Column ``v`` of ``Image(v, k)``: weighted path counts into ``v``."""
        lv = self.levels(v)
        kk = lv.resolve(k)
        col = self._stable_data(v)[:, v].copy()
        dist = np.asarray(lv.dist)
        drop = (dist < 0) | (dist > kk)
        if drop.any():
            col[drop] = _empty(col[drop].shape, self.elem)
        return col

    def image_sum(self, k: int = STABLE) -> PathMatrix:
        """``Σ_v Image(v, k)``."""
        total = _empty(self._shape(), self.elem)
        for v in range(self.n):
            total = total + self.image(v, k).data
        return PathMatrix(total, self.kind, self.elem)


@lru_cache(maxsize=32)
def _cover(g: Graph, gamma, featured: bool, kind: str | None) -> SieveCover:
    return SieveCover(g, gamma, featured, kind)


def image(g: Graph, v: int, k: int = STABLE, gamma=1, featured: bool = False, kind: str | None = None) -> ImageMatrix:
    cov = _cover(g, gamma, featured, kind)
    return ImageMatrix(v, k, cov.levels(v).resolve(k), cov.image(v, k))


def coimage(g: Graph, v: int, l: int = STABLE, gamma=1, featured: bool = False, kind: str | None = None) -> ImageMatrix:
    im = image(g, v, l, gamma, featured, kind)
    return ImageMatrix(v, l, im.resolved, im.matrix.T, co=True)


def image_by_circ(g: Graph, v: int, k: int = STABLE, gamma=1, featured: bool = False, kind: str | None = None) -> PathMatrix:
    """Reference evaluation of the level recurrence with full ``∘`` products."""
    lv = build_levels(g, v)
    kk = lv.resolve(k)
    mkind, elem = resolve_kind(gamma, featured, kind)
    acc = PathMatrix.zeros(g.n, mkind, g.m if featured else None, elem)
    for j in range(1, kk + 1):
        acc = circ(tr_level(g, lv.arcs(j), gamma, featured, kind), acc)
    return acc


# --- symbolic counterparts (oracle side) -------------------------------------


def _level_element(n: int, arcs, reverse: bool = False) -> SMultElement:
    parts = [SMultElement.from_arc(n, u, w) if reverse else SMultElement.from_arc(n, w, u) for w, u in arcs]
    return bullet_all(parts, n)


def symbolic_sieve(g: Graph, v: int, k: int = STABLE) -> SMultElement:
    """``D_k(v) • D_{k-1}(v) • ... • D_1(v)`` with explicit path sets."""
    lv = build_levels(g, v)
    kk = lv.resolve(k)
    acc = SMultElement.identity(g.n)
    for j in range(kk, 0, -1):
        acc = bullet(acc, _level_element(g.n, lv.arcs(j)))
    return acc


def symbolic_cosieve(g: Graph, v: int, l: int = STABLE) -> SMultElement:
    """``D_1^op(v) • ... • D_l^op(v)`` with explicit path sets."""
    lv = build_levels(g, v)
    ll = lv.resolve(l)
    acc = SMultElement.identity(g.n)
    for j in range(1, ll + 1):
        acc = bullet(acc, _level_element(g.n, lv.arcs(j), reverse=True))
    return acc


# --- neighbourhood and 2-hop covers ------------------------------------------


def neighborhood_sink(g: Graph, v: int) -> PathMatrix:
    """Matrix of the sink at ``v``: adjacency column ``v`` in place, zeros elsewhere."""
    rows = [[0] * g.n for _ in range(g.n)]
    for u in g.neighbors(v):
        rows[u][v] = 1
    return PathMatrix.from_rows(rows)


def two_hop_transform(g: Graph) -> PathMatrix:
    """Sum over nodes k and neighbours i of ``T_i ∘ E(i -> k)``.

    ``T_i`` is the neighbourhood sink of ``i`` and ``E(i -> k)`` the single
    arc matrix.  Expanded per term: ``T_i`` adds column i of the adjacency
    matrix in place, ``E`` adds entry (i, k), and ``T_i E`` copies adjacency
    column i into column k.
    """
    n = g.n
    out = _empty((n, n), "bigint")
    for k in range(n):
        for i in g.neighbors(k):
            for a in g.neighbors(i):
                out[a, i] += 1
                out[a, k] += 1
            out[i, k] += 1
    return PathMatrix(out, "bigint")


def two_hop_cover(g: Graph) -> list[SMultElement]:
    """Symbolic elements ``S_i • e`` for every arc ``e: i -> k``."""
    cover = []
    for k in range(g.n):
        for i in g.neighbors(k):
            sink = _level_element(g.n, [(a, i) for a in g.neighbors(i)])
            cover.append(bullet(sink, SMultElement.from_arc(g.n, i, k)))
    return cover


def stable_gamma(gamma):
    """Normalize user-supplied damping to an exact value when possible."""
    if isinstance(gamma, str):
        return Fraction(gamma)
    if isinstance(gamma, float):
        f = Fraction(repr(gamma))
        return 1 if f == 1 else f
    return gamma
