"""Exact integer linear algebra.

Matrices are plain lists of rows holding Python ints, so entries never
overflow. Every function returns fresh lists and leaves its inputs alone.
Empty shapes are legal: a matrix with zero rows still carries its column
count through the helpers that take explicit shapes.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

IntMatrix = List[List[int]]
Vector = List[int]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def shape(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> Tuple[int, int]:
    """Rows and columns of M; `cols` disambiguates the 0-row case."""
    if len(M) == 0:
        return 0, (cols or 0)
    return len(M), len(M[0])


def copy(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(map(int, row)) for row in M]


def transpose(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    r, c = shape(M, cols)
    return [[M[i][j] for i in range(r)] for j in range(c)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           inner: Optional[int] = None, cols: Optional[int] = None) -> IntMatrix:
    """Product A·B. `inner` and `cols` are only needed when a factor is empty."""
    ra = len(A)
    k = len(A[0]) if ra else (inner if inner is not None else len(B))
    cb = len(B[0]) if len(B) else (cols or 0)
    if len(B) != k:
        raise ValueError(f"shape mismatch: {ra}x{k} times {len(B)}x{cb}")
    Bt = [[B[i][j] for i in range(k)] for j in range(cb)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def hstack(*blocks: Sequence[Sequence[int]], rows: Optional[int] = None) -> IntMatrix:
    if rows is None:
        rows = max((len(b) for b in blocks), default=0)
    out = [[] for _ in range(rows)]
    for b in blocks:
        if len(b) == 0:
            continue
        if len(b) != rows:
            raise ValueError("hstack: row counts differ")
        for i in range(rows):
            out[i].extend(b[i])
    return out


def vstack(*blocks: Sequence[Sequence[int]]) -> IntMatrix:
    out: IntMatrix = []
    for b in blocks:
        out.extend(list(row) for row in b)
    return out


def block_diag(*blocks: Tuple[Sequence[Sequence[int]], int, int]) -> IntMatrix:
    """Block diagonal from (matrix, rows, cols) triples."""
    R = sum(b[1] for b in blocks)
    C = sum(b[2] for b in blocks)
    out = zeros(R, C)
    r0 = c0 = 0
    for M, r, c in blocks:
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = M[i][j]
        r0 += r
        c0 += c
    return out


def columns(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[Vector]:
    return transpose(M, cols)


def from_columns(cols: Sequence[Sequence[int]], rows: int) -> IntMatrix:
    out = zeros(rows, len(cols))
    for j, c in enumerate(cols):
        for i in range(rows):
            out[i][j] = c[i]
    return out


def is_zero(M: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in M for x in row)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def _snf(M: Sequence[Sequence[int]], rows: int, cols: int, want_uinv: bool):
    A = copy(M) if rows else []
    U = identity(rows)
    Ui = identity(rows) if want_uinv else None
    V = identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        ra, rs = A[dst], A[src]
        for k in range(cols):
            if rs[k]:
                ra[k] += q * rs[k]
        ua, us = U[dst], U[src]
        for k in range(rows):
            if us[k]:
                ua[k] += q * us[k]
        if Ui is not None:
            # inverse op on the right: col_src -= q * col_dst
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        if q == 0:
            return
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        if Ui is not None:
            for row in Ui:
                row[i] = -row[i]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            row = A[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t + 1, rows):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, 0)
                for j in range(t + 1, cols):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), 0, j)
                _, i, j = best
                if i:
                    swap_rows(i, t)
                else:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, rows):
                row = A[i]
                for j in range(t + 1, cols):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return A, U, V, Ui


def smith_normal_form(M: Sequence[Sequence[int]], cols: Optional[int] = None
                      ) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U·M·V = D, U and V unimodular.

    D is diagonal with d1 | d2 | ... | dr > 0 followed by zeros. Pivoting
    always picks the smallest nonzero absolute value in the active block.
    """
    r, c = shape(M, cols)
    D, U, V, _ = _snf(M, r, c, False)
    return U, D, V


def smith_decomposition(M: Sequence[Sequence[int]], cols: Optional[int] = None):
    """Like smith_normal_form but also returns U^{-1}: (U, D, V, Uinv)."""
    r, c = shape(M, cols)
    D, U, V, Ui = _snf(M, r, c, True)
    return U, D, V, Ui


def invariant_factors(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    r, c = shape(M, cols)
    D, _, _, _ = _snf(M, r, c, False)
    return [D[i][i] for i in range(min(r, c)) if D[i][i]]


# ---------------------------------------------------------------------------
# Column echelon form, kernels and solving


class Echelon:
    """Column echelon form E = M·V of an integer matrix.

    Pivot k sits at (pivot_rows[k], k); columns past the last pivot are zero,
    so the matching columns of V span ker(M).
    """

    def __init__(self, M: Sequence[Sequence[int]], rows: int, cols: int):
        self.rows, self.cols = rows, cols
        E = copy(M) if rows else []
        V = identity(cols)
        c = 0
        pivots: List[int] = []
        for i in range(rows):
            if c >= cols:
                break
            row = E[i]
            # Euclid on the row: smallest entry becomes the pivot, the rest are
            # reduced by nearest-integer quotients; this keeps entries small.
            while True:
                nz = [j for j in range(c, cols) if row[j]]
                if not nz:
                    break
                p = min(nz, key=lambda j: abs(row[j]))
                if p != c:
                    _swap_cols(E, V, c, p)
                a = row[c]
                rest = False
                for j in range(c + 1, cols):
                    b = row[j]
                    if not b:
                        continue
                    q = _nearest_quotient(b, a)
                    if q:
                        for R in (E, V):
                            for rr in R:
                                x = rr[c]
                                if x:
                                    rr[j] -= q * x
                    if row[j]:
                        rest = True
                if not rest:
                    break
            if row[c] != 0:
                if row[c] < 0:
                    for R in (E, V):
                        for rr in R:
                            rr[c] = -rr[c]
                pivots.append(i)
                c += 1
        self.E, self.V, self.pivot_rows, self.rank = E, V, pivots, c

    def kernel(self) -> List[Vector]:
        return [[self.V[i][j] for i in range(self.cols)] for j in range(self.rank, self.cols)]

    def solve(self, b: Sequence[int]) -> Optional[Vector]:
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        E = self.E
        y = [0] * self.cols
        for k, i in enumerate(self.pivot_rows):
            acc = b[i] - sum(E[i][l] * y[l] for l in range(k))
            q, r = divmod(acc, E[i][k])
            if r:
                return None
            y[k] = q
        for i in range(self.rows):
            if sum(E[i][l] * y[l] for l in range(self.rank)) != b[i]:
                return None
        return matvec(self.V, y)


def _nearest_quotient(b: int, a: int) -> int:
    q, r = divmod(b, a)
    if 2 * abs(r) > abs(a):
        q += 1 if (r > 0) == (a > 0) else -1
    return q


def _swap_cols(E, V, i, j):
    for R in (E, V):
        for rr in R:
            rr[i], rr[j] = rr[j], rr[i]


def kernel_basis(M: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[Vector]:
    """A Z-basis of {x : M x = 0}."""
    r, c = shape(M, cols)
    return Echelon(M, r, c).kernel()


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """A Z-basis of the lattice spanned by the vectors `gens` in Z^dim."""
    if not gens:
        return []
    ech = Echelon(from_columns(gens, dim), dim, len(gens))
    return [[ech.E[i][j] for i in range(dim)] for j in range(ech.rank)]


def solve_linear(M: Sequence[Sequence[int]], b: Sequence[int], cols: Optional[int] = None
                 ) -> Optional[Tuple[Vector, List[Vector]]]:
    """Integer solution of M x = b plus a basis of ker(M), or None."""
    r, c = shape(M, cols)
    ech = Echelon(M, r, c)
    x = ech.solve(b)
    if x is None:
        return None
    return x, ech.kernel()


def solve_mod_subgroup(M: Sequence[Sequence[int]], b: Sequence[int], R: Sequence[Sequence[int]],
                       cols: Optional[int] = None, rcols: Optional[int] = None
                       ) -> Optional[Tuple[Vector, List[Vector]]]:
    """Solve M x = b + R y over the integers.

    Returns a particular x and a basis of the lattice of all x solving the
    homogeneous version, or None when no solution exists.
    """
    r, c = shape(M, cols)
    rr, rc = shape(R, rcols)
    if rr and rr != r:
        raise ValueError("R must have the same row count as M")
    A = hstack(M, [[-v for v in row] for row in R], rows=r) if r else []
    ech = Echelon(A, r, c + rc)
    z = ech.solve(b)
    if z is None:
        return None
    lat = lattice_basis([v[:c] for v in ech.kernel()], c)
    return reduce_by_lattice(z[:c], lat), lat


def reduce_by_lattice(x: Sequence[int], basis: Sequence[Sequence[int]]) -> Vector:
    """Shift x by an echelon lattice basis so each pivot entry lands in [0, pivot)."""
    x = list(x)
    for v in basis:
        i = next(k for k, a in enumerate(v) if a)
        q = x[i] // v[i]
        if q:
            x = [a - q * b for a, b in zip(x, v)]
    return x
