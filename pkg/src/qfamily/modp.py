"""Dense linear algebra over the prime field Z_p."""

from __future__ import annotations

import numpy as np


def rref(a, p: int):
    """Reduced row echelon form mod ``p``; returns ``(rows, pivot_columns)``."""
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref needs a matrix")
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if len(nzr):
            a[nzr] = (a[nzr] - col[nzr, None] * a[r]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


class RowSpace:
    """Incrementally grown row space mod ``p`` kept in reduced form.

    Rows can be fed in chunks, which keeps memory bounded by the number of
    columns rather than the number of constraint rows.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list = []

    def add(self, rows) -> None:
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.ncols) % self.p
        if len(rows) == 0:
            return
        rows = self._reduce(rows)
        rows = rows[rows.any(axis=1)]
        if len(rows) == 0:
            return
        self.basis, self.pivots = rref(np.vstack([self.basis, rows]), self.p)

    def _reduce(self, rows):
        for r, c in zip(self.basis, self.pivots):
            f = rows[:, c].copy()
            nz = np.flatnonzero(f)
            if len(nz):
                rows[nz] = (rows[nz] - f[nz, None] * r) % self.p
        return rows

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.ncols) % self.p
        return not self._reduce(v).any()

    def nullspace(self) -> np.ndarray:
        """Basis of ``{x : R x = 0}`` for the accumulated rows ``R``."""
        free = [c for c in range(self.ncols) if c not in set(self.pivots)]
        out = np.zeros((len(free), self.ncols), dtype=np.int64)
        for k, c in enumerate(free):
            out[k, c] = 1
            for r, pc in zip(self.basis, self.pivots):
                out[k, pc] = (-r[c]) % self.p
        return out


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    rs = RowSpace(a.shape[1], p)
    rs.add(a)
    return rs.nullspace()


def in_span(vectors, v, p: int) -> bool:
    vectors = np.asarray(vectors, dtype=np.int64)
    rs = RowSpace(len(v), p)
    if vectors.size:
        rs.add(vectors)
    return rs.contains(v)
