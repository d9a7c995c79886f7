"""Exact integer Smith normal form.

:func:`smith_normal_form` works on sparse matrices: it first eliminates
unit pivots in order of increasing column length (cheap, little fill-in on
boundary matrices), then reduces what is left by pivoting on entries of
minimal magnitude.  The diagonal it collects is normalized into a divisibility
chain at the end.

:func:`smith_decomposition` is a dense routine that also returns the
unimodular transforms; it backs ``verify=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class SparseIntMatrix:
    """Integer matrix stored as one {row: value} dict per column."""

    def __init__(self, nrows: int, ncols: int, columns: Sequence[dict] | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.columns = [dict(c) for c in columns] if columns is not None else [{} for _ in range(ncols)]
        if len(self.columns) != ncols:
            raise ValueError(f"expected {ncols} columns, got {len(self.columns)}")
        for col in self.columns:
            for r, v in list(col.items()):
                if not 0 <= r < nrows:
                    raise ValueError(f"row index {r} out of range")
                if v == 0:
                    del col[r]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "SparseIntMatrix":
        rows = [list(map(int, r)) for r in rows]
        n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        cols = [{i: r[j] for i, r in enumerate(rows) if r[j]} for j in range(n)]
        return cls(len(rows), n, cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, v in col.items():
                for i, w in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            cols.append({i: v for i, v in acc.items() if v})
        return SparseIntMatrix(self.nrows, other.ncols, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseIntMatrix":
        """Row i moves to row_perm[i]; column j moves to col_perm[j]."""
        cols = [None] * self.ncols
        for j, col in enumerate(self.columns):
            cols[col_perm[j]] = {row_perm[i]: v for i, v in col.items()}
        return SparseIntMatrix(self.nrows, self.ncols, cols)


@dataclass(frozen=True)
class SmithResult:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _as_sparse(A) -> SparseIntMatrix:
    if isinstance(A, SparseIntMatrix):
        return A
    rows = [list(r) for r in A]
    if rows and not rows[0] and hasattr(A, "shape"):
        return SparseIntMatrix(A.shape[0], A.shape[1])
    ncols = getattr(A, "shape", (None, len(rows[0]) if rows else 0))[1]
    return SparseIntMatrix.from_dense(rows, ncols)


def divisibility_chain(diagonal: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of a diagonal matrix (entries nonzero)."""
    ones = 0
    rest = []
    for v in diagonal:
        v = abs(v)
        if v == 0:
            raise ValueError("zero on the diagonal")
        if v == 1:
            ones += 1
        else:
            rest.append(v)
    rest.sort()
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = math.gcd(rest[i], rest[j])
            rest[i], rest[j] = g, rest[i] * rest[j] // g
    ones += sum(1 for v in rest if v == 1)
    return (1,) * ones + tuple(v for v in rest if v != 1)


class _Eliminator:
    def __init__(self, A: SparseIntMatrix):
        self.cols: dict[int, dict[int, int]] = {}
        self.rows: dict[int, dict[int, int]] = {}
        for j, col in enumerate(A.columns):
            if col:
                self.cols[j] = dict(col)
                for i, v in col.items():
                    self.rows.setdefault(i, {})[j] = v
        self.diagonal: list[int] = []

    def _set(self, i, j, v):
        if v:
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, {})[i] = v
        else:
            row, col = self.rows.get(i), self.cols.get(j)
            if row is not None:
                row.pop(j, None)
                if not row:
                    del self.rows[i]
            if col is not None:
                col.pop(i, None)
                if not col:
                    del self.cols[j]

    def row_op(self, target, source, q):
        """row target -= q * row source."""
        for j, v in list(self.rows[source].items()):
            self._set(target, j, self.rows.get(target, {}).get(j, 0) - q * v)

    def col_op(self, target, source, q):
        """col target -= q * col source."""
        for i, v in list(self.cols[source].items()):
            self._set(i, target, self.cols.get(target, {}).get(i, 0) - q * v)

    def drop(self, i, j):
        """Remove pivot row i and column j (column j must be clear apart from i)."""
        for jj in list(self.rows.get(i, {})):
            self._set(i, jj, 0)
        for ii in list(self.cols.get(j, {})):
            self._set(ii, j, 0)

    def unit_phase(self):
        progress = True
        while progress:
            progress = False
            for j in sorted(self.cols, key=lambda c: (len(self.cols[c]), c)):
                col = self.cols.get(j)
                if not col:
                    continue
                units = [i for i, v in col.items() if v in (1, -1)]
                if not units:
                    continue
                i = min(units, key=lambda r: (len(self.rows[r]), r))
                p = col[i]
                for r, v in list(col.items()):
                    if r != i:
                        self.row_op(r, i, v * p)
                self.drop(i, j)
                self.diagonal.append(1)
                progress = True

    def general_phase(self):
        while self.cols:
            _, _, i, j = min(
                (abs(v), len(self.rows[i]) + len(col), i, j)
                for j, col in self.cols.items() for i, v in col.items()
            )
            p = self.cols[j][i]
            reduced = False
            for r, v in list(self.cols[j].items()):
                if r != i and v % p:
                    self.row_op(r, i, v // p)
                    reduced = True
                    break
            if not reduced:
                for c, v in list(self.rows[i].items()):
                    if c != j and v % p:
                        self.col_op(c, j, v // p)
                        reduced = True
                        break
            if reduced:
                continue
            for r, v in list(self.cols[j].items()):
                if r != i:
                    self.row_op(r, i, v // p)
            self.drop(i, j)
            self.diagonal.append(abs(p))


def smith_normal_form(A, verify: bool = False) -> SmithResult:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix; r is its rank."""
    M = _as_sparse(A)
    elim = _Eliminator(M)
    elim.unit_phase()
    elim.general_phase()
    result = SmithResult(divisibility_chain(elim.diagonal))
    if verify:
        dense_A = M.to_dense()
        S, D, T = smith_decomposition(dense_A, ncols=M.ncols)
        check_decomposition(dense_A, S, D, T)
        dense = tuple(D[i][i] for i in range(min(M.nrows, M.ncols)) if D[i][i])
        if dense != result.invariant_factors:
            raise AssertionError(f"sparse {result.invariant_factors} != dense {dense}")
    return result


# -- dense route with transforms -------------------------------------------------


def _matmul(A, B, ncols: int):
    """A (m x k) times B (k x ncols); shapes passed explicitly so k or m may be 0."""
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(ncols)] for row in A]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (S, D, T) with S A T = D, S and T unimodular, D in Smith form."""
    D = [list(map(int, r)) for r in A]
    m = len(D)
    n = ncols if ncols is not None else (len(D[0]) if D else 0)
    S, T = _identity(m), _identity(n)

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        S[a], S[b] = S[b], S[a]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in T:
            row[a], row[b] = row[b], row[a]

    def add_row(target, source, q):
        """row target += q * row source."""
        D[target] = [x + q * y for x, y in zip(D[target], D[source])]
        S[target] = [x + q * y for x, y in zip(S[target], S[source])]

    def add_col(target, source, q):
        for row in D:
            row[target] += q * row[source]
        for row in T:
            row[target] += q * row[source]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                return S, D, T
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            if p < 0:
                D[t] = [-x for x in D[t]]
                S[t] = [-x for x in S[t]]
            break
    return S, D, T


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    M = [list(r) for r in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def check_decomposition(A, S, D, T) -> None:
    n = len(T)
    if _matmul(_matmul(S, A, n), T, n) != D:
        raise AssertionError("S A T != D")
    if abs(determinant(S)) != 1 or abs(determinant(T)) != 1:
        raise AssertionError("transform is not unimodular")
    diag = []
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if v and i != j:
                raise AssertionError("D is not diagonal")
        if i < len(row) and row[i]:
            diag.append(row[i])
    if any(v < 0 for v in diag) or any(b % a for a, b in zip(diag, diag[1:])):
        raise AssertionError("diagonal is not a divisibility chain")
