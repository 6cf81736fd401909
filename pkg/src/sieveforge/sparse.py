"""Dict-of-rows sparse backing for path matrices.

Same operation contract as the dense :class:`PathMatrix`; conversion in both
directions is lossless for every scalar kind.
"""

from __future__ import annotations

import numpy as np

from .algebra import KindError, PathMatrix, _empty


def _nonzero(x) -> bool:
    return bool(np.any(x != 0))


class SparseMatrix:
    def __init__(self, n: int, kind: str = "bigint", elem: str | None = None, m: int | None = None):
        self.n = n
        self.kind = kind
        self.elem = kind if kind != "featurevec" else (elem or "float")
        self.m = m
        self.rows: dict[int, dict[int, object]] = {}

    @classmethod
    def from_dense(cls, a: PathMatrix) -> SparseMatrix:
        s = cls(a.n, a.kind, a.elem, a.m)
        for i in range(a.n):
            row = {j: a.data[i, j] for j in range(a.n) if _nonzero(a.data[i, j])}
            if row:
                s.rows[i] = row
        return s

    def to_dense(self) -> PathMatrix:
        shape = (self.n, self.n) if self.kind != "featurevec" else (self.n, self.n, self.m)
        out = _empty(shape, self.elem)
        for i, row in self.rows.items():
            for j, x in row.items():
                out[i, j] = x
        return PathMatrix(out, self.kind, self.elem)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def density(self) -> float:
        return self.nnz() / (self.n * self.n)

    def copy(self) -> SparseMatrix:
        s = SparseMatrix(self.n, self.kind, self.elem, self.m)
        s.rows = {i: dict(r) for i, r in self.rows.items()}
        return s

    def _check(self, other: SparseMatrix):
        if (self.n, self.kind, self.elem, self.m) != (other.n, other.kind, other.elem, other.m):
            raise KindError("sparse operands differ in dimension or kind")

    def add_row(self, i: int, row: dict, weight=None):
        """``self[i, :] += weight * row`` in place (``weight`` None means 1)."""
        if not row:
            return
        dst = self.rows.setdefault(i, {})
        for j, x in row.items():
            y = x if weight is None else weight * x
            if j in dst:
                z = dst[j] + y
                if _nonzero(z):
                    dst[j] = z
                else:
                    del dst[j]
            elif _nonzero(y):
                dst[j] = y
        if not dst:
            del self.rows[i]

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        out = self.copy()
        for i, row in other.rows.items():
            out.add_row(i, row)
        return out

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        self._check(other)
        out = SparseMatrix(self.n, self.kind, self.elem, self.m)
        for i, row in self.rows.items():
            for k, x in row.items():
                if k in other.rows:
                    out.add_row(i, other.rows[k], x)
        return out

    def circ(self, other: SparseMatrix) -> SparseMatrix:
        return self + other + (self @ other)

    @property
    def T(self) -> SparseMatrix:
        out = SparseMatrix(self.n, self.kind, self.elem, self.m)
        for i, row in self.rows.items():
            for j, x in row.items():
                out.rows.setdefault(j, {})[i] = x
        return out
