"""Exact linear algebra over the integers.

Everything here runs on Python's arbitrary-precision ints: no floats, no
modular shortcuts, no overflow.  These routines are the substrate for all
hom-group computations in the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None,
                 cols: int | None = None):
        tup = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(tup)
        if cols is None:
            cols = len(tup[0]) if tup else 0
        if len(tup) != rows or any(len(r) != cols for r in tup):
            raise ValueError("ragged or mis-sized matrix data (expected %dx%d)" % (rows, cols))
        self.rows = rows
        self.cols = cols
        self.data = tup

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], nrows, len(columns))

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.data[i]
            row = []
            for j in range(other.cols):
                row.append(sum(ri[k] * other.data[k][j] for k in range(self.cols)))
            out.append(row)
        return IntMatrix(out, self.rows, other.cols)

    def apply(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self.data)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.data, other.data)], self.rows, self.cols)

    def neg(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix([r1 + r2 for r1, r2 in zip(self.data, other.data)],
                         self.rows, self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.data)

    def is_diagonal(self) -> bool:
        return all(self.data[i][j] == 0
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%r)" % (list(map(list, self.data)),)


@dataclass(frozen=True)
class SnfDecomposition:
    """U*A*V = D with U, V unimodular and D a divisor-chain diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> tuple:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.data[i][i] for i in range(n) if self.D.data[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.divisors)


def _swap_rows(M: list, i: int, j: int) -> None:
    M[i], M[j] = M[j], M[i]


def _swap_cols(M: list, i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _addmul_row(M: list, dst: int, src: int, c: int) -> None:
    if c:
        row_s = M[src]
        row_d = M[dst]
        for k in range(len(row_d)):
            row_d[k] += c * row_s[k]


def _addmul_col(M: list, dst: int, src: int, c: int) -> None:
    if c:
        for row in M:
            row[dst] += c * row[src]


def _scale_row(M: list, i: int, c: int) -> None:
    M[i] = [c * x for x in M[i]]


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transforms.

    Pivots are chosen by least absolute value over the working submatrix,
    which keeps coefficient growth tame at the matrix sizes we care about.
    The result is deterministic for a fixed input.
    """
    m, n = A.rows, A.cols
    M = [list(r) for r in A.data]
    U = [list(r) for r in IntMatrix.identity(m).data]
    V = [list(r) for r in IntMatrix.identity(n).data]

    t = 0
    while t < min(m, n):
        # least-absolute-value pivot in M[t:, t:]
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            _swap_rows(M, t, pi)
            _swap_rows(U, t, pi)
        if pj != t:
            _swap_cols(M, t, pj)
            _swap_cols(V, t, pj)
        while True:
            if M[t][t] < 0:
                _scale_row(M, t, -1)
                _scale_row(U, t, -1)
            # clear below the pivot; a nonzero remainder becomes the new pivot
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    _addmul_row(M, i, t, -q)
                    _addmul_row(U, i, t, -q)
                    if M[i][t]:
                        _swap_rows(M, t, i)
                        _swap_rows(U, t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    _addmul_col(M, j, t, -q)
                    _addmul_col(V, j, t, -q)
                    if M[t][j]:
                        _swap_cols(M, t, j)
                        _swap_cols(V, t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # column ops may have refilled the pivot column
            if any(M[i][t] for i in range(t + 1, m)):
                continue
            break
        t += 1

    r = min(m, n)
    for i in range(r):
        if M[i][i] < 0:
            _scale_row(M, i, -1)
            _scale_row(U, i, -1)

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if a == 0 and b != 0:
                _swap_rows(M, i, i + 1)
                _swap_rows(U, i, i + 1)
                _swap_cols(M, i, i + 1)
                _swap_cols(V, i, i + 1)
                changed = True
                continue
            if a and b and b % a:
                changed = True
                _addmul_col(M, i, i + 1, 1)
                _addmul_col(V, i, i + 1, 1)
                g, s, tt = _xgcd(a, b)
                # rows (i, i+1) <- [[s, tt], [-b//g, a//g]] . rows
                ra, rb = M[i], M[i + 1]
                M[i] = [s * x + tt * y for x, y in zip(ra, rb)]
                M[i + 1] = [-(b // g) * x + (a // g) * y for x, y in zip(ra, rb)]
                ua, ub = U[i], U[i + 1]
                U[i] = [s * x + tt * y for x, y in zip(ua, ub)]
                U[i + 1] = [-(b // g) * x + (a // g) * y for x, y in zip(ua, ub)]
                q = M[i][i + 1] // g
                _addmul_col(M, i + 1, i, -q)
                _addmul_col(V, i + 1, i, -q)

    return SnfDecomposition(IntMatrix(U, m, m), IntMatrix(M, m, n), IntMatrix(V, n, n))


def _xgcd(a: int, b: int) -> tuple:
    """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, rr = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rr:
        q = old_r // rr
        old_r, rr = rr, old_r - q * rr
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [list(r) for r in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple:
    """Row-style Hermite form of the lattice spanned by ``rows``.

    Returns (hrows, pivots): echelon rows with positive pivots, entries above
    each pivot reduced into [0, pivot).  This is the canonical basis used for
    element reduction and for deterministic kernel generator ordering.
    """
    rem = [list(r) for r in rows if any(r)]
    hrows: list = []
    pivots: list = []
    for col in range(ncols):
        sel = [r for r in rem if r[col] != 0]
        if not sel:
            continue
        rest = [r for r in rem if r[col] == 0]
        while len(sel) > 1:
            sel.sort(key=lambda r: abs(r[col]))
            p = sel[0]
            nxt = [p]
            for r in sel[1:]:
                q = r[col] // p[col]
                rr = [x - q * y for x, y in zip(r, p)]
                if rr[col]:
                    nxt.append(rr)
                elif any(rr):
                    rest.append(rr)
            sel = nxt
        p = sel[0]
        if p[col] < 0:
            p = [-x for x in p]
        hrows.append(p)
        pivots.append(col)
        rem = rest
    # reduce entries above each pivot
    for k in range(len(hrows)):
        c = pivots[k]
        p = hrows[k][c]
        for j in range(k):
            q = hrows[j][c] // p
            if q:
                hrows[j] = [x - q * y for x, y in zip(hrows[j], hrows[k])]
    return [tuple(r) for r in hrows], pivots


def reduce_mod_rows(vec: Sequence[int], hrows: Sequence[Sequence[int]],
                    pivots: Sequence[int]) -> tuple:
    """Canonical representative of ``vec`` modulo the Hermite-form lattice."""
    v = list(int(x) for x in vec)
    for row, c in zip(hrows, pivots):
        q = v[c] // row[c]
        if q:
            for k in range(len(v)):
                v[k] -= q * row[k]
    return tuple(v)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Basis of the integer null space, as Hermite-ordered rows."""
    dec = snf(A)
    n = A.cols
    cols = []
    for j in range(n):
        d = dec.D.data[j][j] if j < min(A.rows, n) else 0
        if d == 0:
            cols.append(dec.V.column(j))
    hrows, _ = hermite_rows(cols, n)
    return IntMatrix(hrows, len(hrows), n)


def solve_z(A: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """One integer solution of A x = b, or None when none exists."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has wrong length")
    dec = snf(A)
    c = dec.U.apply(b)
    m, n = A.rows, A.cols
    y = [0] * n
    for i in range(m):
        d = dec.D.data[i][i] if i < min(m, n) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return dec.V.apply(y)


def preimage_lattice(M: IntMatrix, rel_rows: IntMatrix) -> IntMatrix:
    """Hermite rows spanning {x : M x lies in the row lattice of rel_rows}."""
    if rel_rows.rows:
        combined = M.hstack(rel_rows.transpose().neg())
    else:
        combined = M
    ker = kernel_basis(combined)
    proj = [row[:M.cols] for row in ker.data]
    hrows, _ = hermite_rows(proj, M.cols)
    return IntMatrix(hrows, len(hrows), M.cols)
