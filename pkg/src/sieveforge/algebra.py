"""Square path-count matrices under ``A ∘ B = A + B + AB``.

Four scalar kinds share one container: ``bigint`` and ``rational`` are exact
(numpy object arrays holding ``int`` / ``Fraction``), ``float`` is float64, and
``featurevec`` stores an ``(n, n, m)`` array whose last axis is added and
multiplied element-wise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import NodePermutation

KINDS = ("bigint", "rational", "float", "featurevec")
EXACT_KINDS = ("bigint", "rational")


class KindError(ValueError):
    """Operands of incompatible dimension or scalar kind."""


def coerce_scalar(x, kind: str):
    """Convert ``x`` to the element type used by ``kind``."""
    if kind == "bigint":
        if isinstance(x, (float, Fraction)) and x != int(x):
            raise KindError(f"value {x!r} is not an integer; bigint kind is exact")
        return int(x)
    if kind == "rational":
        if isinstance(x, float):
            return Fraction(repr(x))
        return Fraction(x)
    if kind == "float":
        return float(x)
    raise KindError(f"no scalar coercion for kind {kind!r}")


def _empty(shape, elem: str):
    if elem == "float":
        return np.zeros(shape, dtype=np.float64)
    a = np.empty(shape, dtype=object)
    a.fill(Fraction(0) if elem == "rational" else 0)
    return a


class PathMatrix:
    """Immutable ``n x n`` matrix of one scalar kind.

    For ``featurevec`` matrices ``elem`` names the component type
    (``bigint``, ``rational`` or ``float``).
    """

    __slots__ = ("data", "kind", "elem")

    def __init__(self, data: np.ndarray, kind: str = "bigint", elem: str | None = None):
        if kind not in KINDS:
            raise KindError(f"unknown scalar kind {kind!r}")
        want = 3 if kind == "featurevec" else 2
        if data.ndim != want or data.shape[0] != data.shape[1]:
            raise KindError(f"{kind} matrix needs a square array of ndim {want}, got shape {data.shape}")
        if kind != "featurevec":
            elem = kind
        elif elem is None:
            elem = "float" if data.dtype != object else "rational"
        data = data.copy()
        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "elem", elem)

    def __setattr__(self, name, value):
        raise AttributeError("PathMatrix is immutable")

    def __reduce__(self):
        # rebuild through __init__ so worker processes can ship results back
        return (PathMatrix, (np.array(self.data), self.kind, self.elem))

    # construction

    @classmethod
    def zeros(cls, n: int, kind: str = "bigint", m: int | None = None, elem: str | None = None) -> PathMatrix:
        if kind == "featurevec":
            if not m:
                raise KindError("featurevec matrices need a feature dimension m >= 1")
            elem = elem or "float"
            return cls(_empty((n, n, m), elem), kind, elem)
        return cls(_empty((n, n), kind), kind)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], kind: str = "bigint", elem: str | None = None) -> PathMatrix:
        n = len(rows)
        if kind == "featurevec":
            elem = elem or "float"
            m = len(rows[0][0]) if n else 0
            out = _empty((n, n, m), elem)
            for i, row in enumerate(rows):
                for j, vec in enumerate(row):
                    for c, x in enumerate(vec):
                        out[i, j, c] = coerce_scalar(x, elem)
            return cls(out, kind, elem)
        out = _empty((n, n), kind)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise KindError(f"row {i} has length {len(row)}, expected {n}")
            for j, x in enumerate(row):
                out[i, j] = coerce_scalar(x, kind)
        return cls(out, kind)

    # shape

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def m(self) -> int | None:
        return self.data.shape[2] if self.kind == "featurevec" else None

    def _check(self, other: PathMatrix):
        if not isinstance(other, PathMatrix):
            raise KindError(f"expected PathMatrix, got {type(other).__name__}")
        if self.kind != other.kind or self.elem != other.elem:
            raise KindError(f"kind mismatch: {self.kind}/{self.elem} vs {other.kind}/{other.elem}")
        if self.data.shape != other.data.shape:
            raise KindError(f"shape mismatch: {self.data.shape} vs {other.data.shape}")

    def _wrap(self, data: np.ndarray) -> PathMatrix:
        return PathMatrix(data, self.kind, self.elem)

    # arithmetic

    def __add__(self, other: PathMatrix) -> PathMatrix:
        self._check(other)
        return self._wrap(self.data + other.data)

    def __matmul__(self, other: PathMatrix) -> PathMatrix:
        self._check(other)
        if self.kind != "featurevec":
            return self._wrap(self.data.dot(other.data))
        out = _empty(self.data.shape, self.elem)
        for c in range(self.data.shape[2]):
            out[:, :, c] = self.data[:, :, c].dot(other.data[:, :, c])
        return self._wrap(out)

    def hadamard(self, other: PathMatrix) -> PathMatrix:
        self._check(other)
        return self._wrap(self.data * other.data)

    def scale(self, c) -> PathMatrix:
        return self._wrap(self.data * coerce_scalar(c, self.elem))

    @property
    def T(self) -> PathMatrix:
        axes = (1, 0, 2) if self.kind == "featurevec" else (1, 0)
        return self._wrap(self.data.transpose(axes))

    def circ(self, other: PathMatrix) -> PathMatrix:
        return circ(self, other)

    # comparison / export

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.data.shape == other.data.shape
            and bool(np.all(self.data == other.data))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not bool(np.any(self.data != 0))

    def is_symmetric(self) -> bool:
        return self == self.T

    def entry(self, i: int, j: int):
        return self.data[i, j]

    def to_rows(self) -> list[list]:
        return self.data.tolist()

    def __repr__(self) -> str:
        return f"PathMatrix(n={self.n}, kind={self.kind!r}, rows={self.to_rows()!r})"


def circ(a: PathMatrix, b: PathMatrix) -> PathMatrix:
    """``a ∘ b = a + b + ab``; the zero matrix is the two-sided identity."""
    a._check(b)
    return a + b + (a @ b)


def circ_fold(ms: Iterable[PathMatrix]) -> PathMatrix:
    ms = list(ms)
    if not ms:
        raise ValueError("circ_fold needs at least one matrix")
    return reduce(circ, ms)


def circ_expansion(ms: Sequence[PathMatrix]) -> PathMatrix:
    """Sum of ``A_s1 A_s2 ... A_sj`` over every strictly increasing index tuple.

    Evaluated term by term (2^k - 1 products), independent of the fold.
    """
    ms = list(ms)
    if not ms:
        raise ValueError("circ_expansion needs a nonempty list")
    for m in ms[1:]:
        ms[0]._check(m)
    total = None
    for j in range(1, len(ms) + 1):
        for sigma in combinations(range(len(ms)), j):
            term = reduce(lambda x, y: x @ y, (ms[s] for s in sigma))
            total = term if total is None else total + term
    return total


def change_of_order(m: PathMatrix, p: NodePermutation) -> PathMatrix:
    """Simultaneous row/column reorder: ``out[p(i), p(j)] = m[i, j]``."""
    if len(p) != m.n:
        raise ValueError(f"permutation of size {len(p)} applied to {m.n}x{m.n} matrix")
    idx = np.asarray(p.mapping, dtype=np.intp)
    out = np.empty_like(m.data)
    out[np.ix_(idx, idx)] = m.data
    return PathMatrix(out, m.kind, m.elem)


def adjacency_matrix(g, kind: str = "bigint") -> PathMatrix:
    return PathMatrix.from_rows(g.adjacency(), kind)


# --- text dump ----------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, float) or isinstance(x, np.floating):
        return repr(float(x))
    return str(x)


def dump_matrix(m: PathMatrix) -> str:
    """Plain-text form: ``"n kind"`` then one line of entries per row."""
    lines = [f"{m.n} {m.kind}"]
    for row in m.data:
        if m.kind == "featurevec":
            lines.append(" ".join(",".join(_fmt(c) for c in vec) for vec in row))
        else:
            lines.append(" ".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _parse_elem(tok: str, elem: str):
    if elem == "float":
        return float(tok)
    if elem == "rational":
        return Fraction(tok)
    if elem == "bigint":
        return int(tok)
    # featurevec components: infer exactness from the token
    if any(ch in tok for ch in ".eE") or tok in ("nan", "inf", "-inf"):
        return float(tok)
    return Fraction(tok)


def load_matrix(text: str) -> PathMatrix:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"bad matrix header {lines[0]!r}")
    n, kind = int(head[0]), head[1]
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    if kind != "featurevec":
        return PathMatrix.from_rows([[_parse_elem(t, kind) for t in r] for r in rows], kind)
    vecs = [[[_parse_elem(c, "featurevec") for c in t.split(",")] for t in r] for r in rows]
    flat = [c for r in vecs for v in r for c in v]
    elem = "float" if any(isinstance(c, float) for c in flat) else "rational"
    return PathMatrix.from_rows(vecs, "featurevec", elem)
