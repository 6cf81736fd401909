"""Symbolic monoid of directed subgraphs with explicit allowed-path sets.

This is the brute-force ground truth: every element keeps its multigraph of
uniquely numbered arcs and the literal set of allowed paths, so path counts
can be checked against the matrix shortcuts.  Costs grow with the number of
paths, so ``bullet`` refuses to build more than ``max_paths`` of them.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import PathMatrix
from .graph import Graph, NodePermutation

DEFAULT_MAX_PATHS = 10**6

Arc = tuple[int, int]
# a path is the tuple of arc identifiers it traverses, in order
DirectedPath = tuple[int, ...]

_fresh = itertools.count(1)


def fresh_id() -> int:
    return next(_fresh)


class PathCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DirectedSubgraph:
    """An oriented tree inside ``host`` (possibly empty)."""

    host: Graph
    arcs: frozenset[Arc]

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        seen = set()
        for u, v in arcs:
            if not self.host.has_edge(u, v):
                raise ValueError(f"arc {u}->{v} is not an edge of the host graph")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"edge {e} used in both directions")
            seen.add(e)
        if arcs and not _is_tree(arcs):
            raise ValueError("underlying edges of a directed subgraph must form a tree")

    @property
    def nodes(self) -> set[int]:
        return {x for a in self.arcs for x in a}

    def permuted(self, p: NodePermutation, host: Graph) -> DirectedSubgraph:
        return DirectedSubgraph(host, frozenset((p(u), p(v)) for u, v in self.arcs))


def _is_tree(arcs: Iterable[Arc]) -> bool:
    arcs = list(arcs)
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in arcs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    roots = {find(x) for a in arcs for x in a}
    return len(roots) == 1


def _out_arcs(arcs: Iterable[Arc]) -> dict[int, list[Arc]]:
    out = defaultdict(list)
    for a in sorted(arcs):
        out[a[0]].append(a)
    return out


def paths_of(d: DirectedSubgraph) -> set[tuple[Arc, ...]]:
    """All direction-respecting paths of length >= 1, as arc sequences."""
    out = _out_arcs(d.arcs)
    found: set[tuple[Arc, ...]] = set()

    def walk(prefix):
        found.add(prefix)
        for a in out.get(prefix[-1][1], ()):
            walk(prefix + (a,))

    for a in d.arcs:
        walk((a,))
    return found


def rep(d: DirectedSubgraph) -> PathMatrix:
    """0/1 reachability matrix: entry ``(i, j)`` is 1 iff some path runs i -> j."""
    n = d.host.n
    rows = [[0] * n for _ in range(n)]
    out = _out_arcs(d.arcs)
    for start in d.nodes:
        stack = [start]
        while stack:
            x = stack.pop()
            for _, y in out.get(x, ()):
                if not rows[start][y]:
                    rows[start][y] = 1
                    stack.append(y)
    return PathMatrix.from_rows(rows)


@dataclass(frozen=True)
class SMultElement:
    """A multigraph of identified arcs plus a set of allowed paths through it."""

    n: int
    arcs: Mapping[int, Arc]
    paths: frozenset[DirectedPath]

    def __post_init__(self):
        object.__setattr__(self, "arcs", dict(self.arcs))
        object.__setattr__(self, "paths", frozenset(tuple(p) for p in self.paths))
        for p in self.paths:
            if not p:
                raise ValueError("allowed paths must be nonempty")
            for a, b in zip(p, p[1:]):
                if self.arcs[a][1] != self.arcs[b][0]:
                    raise ValueError(f"path {p} is not head-to-tail")
            for a in p:
                if a not in self.arcs:
                    raise ValueError(f"path {p} uses unknown arc id {a}")

    def __hash__(self):
        return hash((self.n, frozenset(self.arcs.items()), self.paths))

    @classmethod
    def identity(cls, n: int) -> SMultElement:
        return cls(n, {}, frozenset())

    @classmethod
    def from_arc(cls, n: int, u: int, v: int) -> SMultElement:
        i = fresh_id()
        return cls(n, {i: (u, v)}, frozenset({(i,)}))

    @classmethod
    def from_subgraph(cls, d: DirectedSubgraph) -> SMultElement:
        ids = {a: fresh_id() for a in sorted(d.arcs)}
        paths = frozenset(tuple(ids[a] for a in p) for p in paths_of(d))
        return cls(d.host.n, {i: a for a, i in ids.items()}, paths)

    def tail(self, p: DirectedPath) -> int:
        return self.arcs[p[0]][0]

    def head(self, p: DirectedPath) -> int:
        return self.arcs[p[-1]][1]

    def path_nodes(self, p: DirectedPath) -> tuple[int, ...]:
        return (self.tail(p),) + tuple(self.arcs[a][1] for a in p)

    def relabeled(self) -> SMultElement:
        """Copy with fresh arc identifiers."""
        ids = {a: fresh_id() for a in sorted(self.arcs)}
        return SMultElement(
            self.n,
            {ids[a]: arc for a, arc in self.arcs.items()},
            frozenset(tuple(ids[a] for a in p) for p in self.paths),
        )

    def node_paths(self) -> list[tuple[int, ...]]:
        """Allowed paths as node sequences (a multiset, sorted)."""
        return sorted(self.path_nodes(p) for p in self.paths)


def bullet(a: SMultElement, b: SMultElement, max_paths: int = DEFAULT_MAX_PATHS) -> SMultElement:
    """``(M, S) • (N, T) = (M ⊕ N, S ∪ T ∪ {s·t : head(s) = tail(t)})``."""
    if a.n != b.n:
        raise ValueError("operands live on different hosts")
    if a.arcs.keys() & b.arcs.keys():
        b = b.relabeled()
    by_tail: dict[int, list[DirectedPath]] = defaultdict(list)
    for t in b.paths:
        by_tail[b.tail(t)].append(t)
    composed = 0
    for s in a.paths:
        composed += len(by_tail.get(a.head(s), ()))
    total = len(a.paths) + len(b.paths) + composed
    if total > max_paths:
        raise PathCapExceeded(f"bullet would create {total} allowed paths (cap {max_paths})")
    paths = set(a.paths) | set(b.paths)
    for s in a.paths:
        for t in by_tail.get(a.head(s), ()):
            paths.add(s + t)
    arcs = dict(a.arcs)
    arcs.update(b.arcs)
    return SMultElement(a.n, arcs, frozenset(paths))


def bullet_all(elems: Sequence[SMultElement], n: int | None = None, max_paths: int = DEFAULT_MAX_PATHS) -> SMultElement:
    if not elems:
        if n is None:
            raise ValueError("empty product needs the host size")
        return SMultElement.identity(n)
    acc = elems[0]
    for e in elems[1:]:
        acc = bullet(acc, e, max_paths)
    return acc


def tr_count(e: SMultElement) -> PathMatrix:
    """Entry ``(i, j)`` counts allowed paths running from i to j."""
    rows = [[0] * e.n for _ in range(e.n)]
    for p in e.paths:
        rows[e.tail(p)][e.head(p)] += 1
    return PathMatrix.from_rows(rows)


def edge_factorization(d: DirectedSubgraph) -> list[Arc]:
    """Arc order whose left ``bullet`` fold rebuilds ``(d, paths_of(d))``.

    Repeatedly strips an arc entering a maximal node (one with no outgoing
    arc left); the stripped arcs, reversed, are the factorization.
    """
    if not d.arcs:
        raise ValueError("cannot factor the empty subgraph")
    remaining = set(d.arcs)
    stripped: list[Arc] = []
    while remaining:
        tails = {u for u, _ in remaining}
        arc = min(a for a in remaining if a[1] not in tails)
        remaining.remove(arc)
        stripped.append(arc)
    return stripped[::-1]


def from_arc_sequence(n: int, arcs: Sequence[Arc], max_paths: int = DEFAULT_MAX_PATHS) -> SMultElement:
    return bullet_all([SMultElement.from_arc(n, u, v) for u, v in arcs], n, max_paths)


def permute_element(e: SMultElement, p: NodePermutation) -> SMultElement:
    return SMultElement(e.n, {i: (p(u), p(v)) for i, (u, v) in e.arcs.items()}, e.paths)


def random_directed_subgraph(host: Graph, rng, max_arcs: int | None = None) -> DirectedSubgraph:
    """Random oriented tree grown from a random node along host edges."""
    if not host.edges:
        return DirectedSubgraph(host, frozenset())
    u0, v0 = host.edges[rng.randrange(len(host.edges))]
    inside = {u0, v0}
    tree = [(u0, v0)]
    limit = max_arcs if max_arcs is not None else host.n
    target = rng.randint(1, max(1, limit))
    while len(tree) < target:
        frontier = [(x, y) for x in sorted(inside) for y in host.neighbors(x) if y not in inside]
        if not frontier:
            break
        x, y = frontier[rng.randrange(len(frontier))]
        inside.add(y)
        tree.append((x, y))
    arcs = frozenset((x, y) if rng.random() < 0.5 else (y, x) for x, y in tree)
    return DirectedSubgraph(host, arcs)
