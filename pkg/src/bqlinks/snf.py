"""Smith and Hermite normal forms over the integers.

Matrices are lists of rows of Python ints, so entry growth never overflows.
"""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        o = out[i]
        for k in range(inner):
            v = row[k]
            if v:
                bk = b[k]
                for j in range(cols):
                    o[j] += v * bk[j]
    return out


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*m)]


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    """``D = U * M * V`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries, in divisibility order."""
        return [d for d in self.diagonal if d]


def smith_normal_form(m: Matrix, cols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix.

    ``cols`` gives the width when ``m`` has no rows.  The diagonal is
    nonnegative and each entry divides the next.
    """
    rows = len(m)
    ncols = len(m[0]) if m else (cols or 0)
    a = [list(map(int, r)) for r in m]
    U = identity(rows)
    V = identity(ncols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, k: int) -> None:  # row dst += k * row src
        if k:
            ad, as_ = a[dst], a[src]
            for j in range(ncols):
                ad[j] += k * as_[j]
            ud, us = U[dst], U[src]
            for j in range(rows):
                ud[j] += k * us[j]

    def add_col(dst: int, src: int, k: int) -> None:
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    t = 0
    while t < min(rows, ncols):
        # pivot = smallest nonzero entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # enforce divisibility against the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, ncols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            # move the smallest nonzero entry of row/column t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cand)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return SmithForm(U, a, V)


def hermite_rows(m: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form ``H = T * m`` with ``T`` unimodular.

    ``H`` is upper echelon, pivots positive, entries above a pivot reduced
    into ``[0, pivot)``.  Zero rows sit at the bottom.
    """
    rows = len(m)
    ncols = len(m[0]) if m else 0
    h = [list(r) for r in m]
    T = identity(rows)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if h[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(h[k][c]))
            h[r], h[i] = h[i], h[r]
            T[r], T[i] = T[i], T[r]
            done = True
            for k in range(r + 1, rows):
                if h[k][c]:
                    q = h[k][c] // h[r][c]
                    h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                    T[k] = [x - q * y for x, y in zip(T[k], T[r])]
                    if h[k][c]:
                        done = False
            if done:
                break
        if not any(h[i][c] for i in range(r, rows)):
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            T[r] = [-x for x in T[r]]
        for k in range(r):
            q = h[k][c] // h[r][c]
            if q:
                h[k] = [x - q * y for x, y in zip(h[k], h[r])]
                T[k] = [x - q * y for x, y in zip(T[k], T[r])]
        r += 1
    return h, T
