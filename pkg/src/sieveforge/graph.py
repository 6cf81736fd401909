"""Simple undirected graphs with a fixed node order, graph6 I/O and fixtures."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``.  When
    ``edge_features`` is given it is aligned with ``edges``: one vector of a
    common dimension per edge.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    edge_features: tuple[tuple, ...] | None = None
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _feat: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one node, got n={self.n}")
        raw = list(self.edges)
        feats = None if self.edge_features is None else list(self.edge_features)
        if feats is not None and len(feats) != len(raw):
            raise ValueError("edge_features must have exactly one vector per edge")
        pairs = []
        for u, v in raw:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            pairs.append(_norm_edge(u, v))
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate edge")
        order = sorted(range(len(pairs)), key=lambda i: pairs[i])
        object.__setattr__(self, "edges", tuple(pairs[i] for i in order))
        if feats is not None:
            feats = [tuple(feats[i]) for i in order]
            dims = {len(f) for f in feats}
            if len(dims) > 1:
                raise ValueError(f"mixed edge feature dimensions {sorted(dims)}")
            if dims == {0}:
                raise ValueError("edge feature vectors must be non-empty")
            object.__setattr__(self, "edge_features", tuple(feats))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(
            self,
            "_feat",
            {} if feats is None else dict(zip(self.edges, self.edge_features)),
        )

    @property
    def featured(self) -> bool:
        return self.edge_features is not None

    @property
    def m(self) -> int | None:
        """Edge feature dimension, or None for unfeatured graphs."""
        if not self.edge_features:
            return None if self.edge_features is None else 0
        return len(self.edge_features[0])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def feature(self, u: int, v: int) -> tuple:
        return self._feat[_norm_edge(u, v)]

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def digest(self) -> str:
        """Stable content hash (graph6 plus features)."""
        h = hashlib.sha256(emit_graph6(self).encode())
        if self.edge_features is not None:
            h.update(repr(self.edge_features).encode())
        return h.hexdigest()[:16]


@dataclass(frozen=True)
class NodePermutation:
    """Bijection ``i -> mapping[i]`` on ``0..n-1``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError("mapping is not a bijection on 0..n-1")
        object.__setattr__(self, "mapping", m)

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: NodePermutation) -> NodePermutation:
        """``self ∘ other``: apply ``other`` first."""
        if len(other) != len(self):
            raise ValueError("permutation sizes differ")
        return NodePermutation(tuple(self.mapping[other.mapping[i]] for i in range(len(self))))

    def inverse(self) -> NodePermutation:
        inv = [0] * len(self)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return NodePermutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> NodePermutation:
        return cls(tuple(range(n)))

    @classmethod
    def random(cls, n: int, rng) -> NodePermutation:
        m = list(range(n))
        rng.shuffle(m)
        return cls(tuple(m))


def permute_graph(g: Graph, p: NodePermutation) -> Graph:
    if len(p) != g.n:
        raise ValueError(f"permutation of size {len(p)} applied to graph with n={g.n}")
    edges = [(p(u), p(v)) for u, v in g.edges]
    return Graph(g.n, tuple(edges), g.edge_features)


# --- graph6 -----------------------------------------------------------------


def _size_prefix(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        nb = g.neighbors(j)
        for i in range(j):
            bits.append(1 if i in nb else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(chr(63 + val))
    return _size_prefix(g.n) + "".join(body)


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip("\r\n")
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER) :]
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"invalid graph6 byte {ch!r} at offset {pos}")
    if not text:
        raise Graph6Error("empty graph6 record")
    vals = [ord(c) - 63 for c in text]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte graph6 size header")
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte graph6 size header")
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v
    if n < 1:
        raise Graph6Error("graph6 record encodes zero nodes")
    need = n * (n - 1) // 2
    nbytes = -(-need // 6)
    body = vals[pos:]
    if len(body) < nbytes:
        raise Graph6Error(
            f"bit stream too short: need {need} bits ({nbytes} bytes), "
            f"got {len(body)} bytes at offset {pos}"
        )
    if len(body) > nbytes:
        raise Graph6Error(f"trailing data at offset {pos + nbytes}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


def iter_graph6(lines: Iterable[str]) -> Iterator[Graph]:
    for raw in lines:
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER) :]
        if line:
            yield parse_graph6(line)


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, "r", encoding="ascii") as fh:
        return list(iter_graph6(fh))


# --- generators and fixtures -----------------------------------------------


def generate_csl(n: int, s: int) -> Graph:
    """Circular skip-link graph: the ring C_n plus chords ``{i, i+s mod n}``."""
    if n < 5:
        raise ValueError(f"CSL needs n >= 5, got {n}")
    if not 2 <= s <= n - 2:
        raise ValueError(f"skip length must lie in [2, n-2], got s={s} for n={n}")
    edges = set()
    for i in range(n):
        edges.add(_norm_edge(i, (i + 1) % n))
    for i in range(n):
        e = _norm_edge(i, (i + s) % n)
        if e in edges:
            raise ValueError(f"skip length {s} duplicates an edge for n={n} (2s = n?)")
        edges.add(e)
    return Graph(n, tuple(edges))


def _ladder():
    # 2x3 grid, 1-indexed: 1-2-3 on top, 4-5-6 below, rungs 1-4, 2-5, 3-6
    e1 = [(1, 2), (1, 4), (2, 3), (2, 5), (3, 6), (4, 5), (5, 6)]
    return Graph(6, tuple((u - 1, v - 1) for u, v in e1))


def _bridged_triangles():
    # triangles {1,2,5} and {3,4,6} joined by the bridge 2-3 (1-indexed)
    e1 = [(1, 2), (1, 5), (2, 5), (3, 4), (3, 6), (4, 6), (2, 3)]
    return Graph(6, tuple((u - 1, v - 1) for u, v in e1))


def _shrikhande():
    # Cayley graph of Z4 x Z4, connection set {±(1,0), ±(0,1), ±(1,1)}; node 4a+b
    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in ((1, 0), (0, 1), (1, 1)):
                edges.add(_norm_edge(4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4))
    return Graph(16, tuple(edges))


def _rook(k=4):
    edges = []
    for u in range(k * k):
        for v in range(u + 1, k * k):
            if u // k == v // k or u % k == v % k:
                edges.append((u, v))
    return Graph(k * k, tuple(edges))


_BUILTINS = {
    "example6_G": _ladder,
    "example6_H": _bridged_triangles,
    "shrikhande": _shrikhande,
    "rook4x4": _rook,
    "k3": lambda: Graph(3, ((0, 1), (0, 2), (1, 2))),
    "p3": lambda: Graph(3, ((0, 1), (1, 2))),
    "c6": lambda: Graph(6, tuple((i, (i + 1) % 6) for i in range(6))),
    "two_triangles": lambda: Graph(6, ((0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5))),
}

BUILTIN_NAMES: tuple[str, ...] = tuple(_BUILTINS)


def builtin_graph(name: str) -> Graph:
    """Named fixture graph.

    ``example6_G`` is the 2x3 ladder and ``example6_H`` two triangles joined
    by a bridge; both use the node order ``0..5`` documented in the source.
    ``shrikhande`` and ``rook4x4`` are the two strongly regular graphs with
    parameters (16, 6, 2, 2).
    """
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin graph {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None


def random_graph(n: int, p: float, rng) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, tuple(edges))


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees())) <= 1
