"""1-WL colour refinement with deterministic, collision-free colour names.

Each round's colour is the rank of its signature ``(colour, sorted neighbour
colours)`` among the graph's sorted distinct signatures.  The per-round lists
of ``(signature, count)`` form a transcript; two graphs are 1-WL equivalent
exactly when their transcripts agree, because equal transcripts up to round r
mean the ranks denote the same refined colours in both graphs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class WlColoring:
    colors: tuple[int, ...]
    histogram: tuple[tuple[int, int], ...]  # sorted (colour, count)
    rounds: int
    transcript: tuple

    def __eq__(self, other):
        if not isinstance(other, WlColoring):
            return NotImplemented
        return self.transcript == other.transcript

    def __hash__(self):
        return hash(self.transcript)


def _rank(signatures):
    table = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [table[s] for s in signatures], tuple(sorted(Counter(signatures).items()))


def wl_refine(g: Graph) -> WlColoring:
    colors, summary = _rank([g.degree(v) for v in range(g.n)])
    transcript = [summary]
    classes = len(set(colors))
    rounds = 0
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))) for v in range(g.n)]
        new, summary = _rank(sigs)
        transcript.append(summary)
        rounds += 1
        if len(set(new)) == classes:
            colors = new
            break
        colors, classes = new, len(set(new))
    hist = tuple(sorted(Counter(colors).items()))
    return WlColoring(tuple(colors), hist, rounds, tuple(transcript))


def wl_hash(g: Graph) -> tuple:
    """Canonical stable-colouring invariant of ``g`` (its refinement transcript)."""
    return wl_refine(g).transcript


def wl_distinguish(a: Graph, b: Graph) -> bool:
    return wl_hash(a) != wl_hash(b)
