"""Small linear algebra kernels over the rationals.

Row reduction works on sparse rows (``dict`` column -> value) because the
constraint systems met here have a handful of nonzeros per row. Float
variants defer to numpy.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .scalars import identity, to_exact


class EchelonForm:
    """Incrementally maintained reduced row echelon form.

    Pivot rows are kept fully reduced against each other, so reducing a new
    row by the existing pivots never reintroduces a pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, mpq]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict[int, mpq]) -> dict[int, mpq]:
        r = dict(row)
        for c in [c for c in r if c in self.pivots]:
            f = r.get(c)
            if not f:
                continue
            for k, v in self.pivots[c].items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, row: dict[int, mpq]) -> bool:
        """Insert a row; returns True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {k: v * inv for k, v in r.items()}
        for prow in self.pivots.values():
            f = prow.get(c)
            if f:
                for k, v in r.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        self.pivots[c] = r
        return True

    def nullspace(self) -> list[dict[int, mpq]]:
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for j in free:
            v = {j: mpq(1)}
            for p, prow in self.pivots.items():
                x = prow.get(j)
                if x:
                    v[p] = -x
            basis.append(v)
        return basis


def sparse_row(values: Iterable) -> dict[int, mpq]:
    return {i: to_exact(v) for i, v in enumerate(values) if v != 0}


def dense(row: dict[int, mpq], ncols: int) -> np.ndarray:
    out = np.empty(ncols, dtype=object)
    out.fill(mpq(0))
    for k, v in row.items():
        out[k] = v
    return out


def rank(rows: Sequence, ncols: int | None = None, tol: float | None = None) -> int:
    """Rank of a list of row vectors; exact unless ``tol`` is given."""
    rows = list(rows)
    if not rows:
        return 0
    if tol is not None:
        return int(np.linalg.matrix_rank(np.asarray(rows, dtype=float), tol=tol))
    ncols = len(rows[0]) if ncols is None else ncols
    ech = EchelonForm(ncols)
    for r in rows:
        ech.add(r if isinstance(r, dict) else sparse_row(r))
    return ech.rank


def nullspace(rows: Sequence, ncols: int) -> list[np.ndarray]:
    """Exact basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    ech = EchelonForm(ncols)
    for r in rows:
        ech.add(r if isinstance(r, dict) else sparse_row(r))
    return [dense(v, ncols) for v in ech.nullspace()]


def inverse(M: np.ndarray) -> np.ndarray | None:
    """Inverse of a square matrix, or None when singular (exact for object arrays)."""
    if M.dtype != object:
        if np.linalg.matrix_rank(M) < M.shape[0]:
            return None
        return np.linalg.inv(M)
    size = M.shape[0]
    A = [[to_exact(x) for x in row] + list(e) for row, e in zip(M, identity(size, True))]
    for col in range(size):
        piv = next((r for r in range(col, size) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(size):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    out = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            out[i, j] = A[i][size + j]
    return out


def det(M: np.ndarray):
    if M.dtype != object:
        return float(np.linalg.det(M))
    size = M.shape[0]
    A = [[to_exact(x) for x in row] for row in M]
    result = mpq(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if A[r][col] != 0), None)
        if piv is None:
            return mpq(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            result = -result
        result *= A[col][col]
        for r in range(col + 1, size):
            if A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return result


def inertia(M: np.ndarray, tol: float | None = None) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix.

    Exact mode diagonalizes by congruence, so no square roots are needed.
    """
    if tol is not None:
        w = np.linalg.eigvalsh(np.asarray(M, dtype=float))
        scale = tol * (1 + float(np.abs(w).max(initial=0)))
        return int((w > scale).sum()), int((w < -scale).sum()), int((np.abs(w) <= scale).sum())
    A = [[to_exact(x) for x in row] for row in M]
    pos = neg = 0
    while A:
        m = len(A)
        i = next((k for k in range(m) if A[k][k] != 0), None)
        if i is None:
            pair = next(((k, l) for k in range(m) for l in range(m) if A[k][l] != 0), None)
            if pair is None:
                return pos, neg, m
            k, l = pair
            # row/col k += row/col l makes the diagonal entry 2*A[k][l] != 0
            A[k] = [x + y for x, y in zip(A[k], A[l])]
            for row in A:
                row[k] = row[k] + row[l]
            continue
        d = A[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [k for k in range(m) if k != i]
        A = [[A[r][c] - A[r][i] * A[i][c] / d for c in rest] for r in rest]
    return pos, neg, 0
