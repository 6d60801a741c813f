"""Exact rational scalars, vectors and dense linear algebra.

Every verified quantity in this package is computed here, over Q.  No
floating point enters any trusted path.  Scalars are `fractions.Fraction`;
vectors and matrix rows are tuples.  The elimination routines clear
denominators and run fraction-free (Bareiss) over the integers, which keeps
intermediate coefficient growth polynomial at the sizes we care about
(matrices up to roughly 20 x 20).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Q = Fraction

Vector = tuple[Q, ...]
IntVector = tuple[int, ...]


def as_q(x) -> Q:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec_q(v: Iterable) -> Vector:
    return tuple(as_q(x) for x in v)


def q_str(x: Q) -> str:
    """Serialize a rational as "p" or "p/q"."""
    x = as_q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q_parse(s) -> Q:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix over Q, row-major."""

    rows: int
    cols: int
    entries: tuple[Q, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [vec_q(r) for r in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        cols = len(rows[0]) if rows else 0
        return ExactMatrix(len(rows), cols, tuple(x for r in rows for x in r))

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[self.entries[i * self.cols + j] for i in range(self.rows)]
             for j in range(self.cols)]
        )

    def mat_vec(self, v: Sequence) -> Vector:
        v = vec_q(v)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum((r[j] * v[j] for j in range(self.cols)), Q(0))
                     for r in self.row_list())

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        return ExactMatrix.from_rows(
            [[dot(r, c) for c in ot.row_list()] for r in self.row_list()]
        )


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# integer (fraction-free) kernels


def _clear_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row (sign preserved)."""
    row = [as_q(x) for x in row]
    l = 1
    for x in row:
        l = l * x.denominator // gcd(l, x.denominator)
    ints = [int(x * l) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def int_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Row-wise integer scaling; preserves rank and right kernel."""
    return [_clear_row(r) for r in rows]


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, Bareiss elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            arow, krow = a[i], a[k]
            for j in range(k + 1, n):
                arow[j] = (arow[j] * pivot - aik * krow[j]) // prev
            arow[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _row_reduce_content(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix, exact integer elimination.

    Cross-multiplication row operations with gcd reduction: no divisions
    whose exactness would depend on pivot bookkeeping.
    """
    a = [_row_reduce_content(list(r)) for r in rows if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(n):
        piv = None
        best = None
        for i in range(row, m):
            x = a[i][col]
            if x != 0 and (best is None or abs(x) < best):
                piv, best = i, abs(x)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pivot = a[row][col]
        prow = a[row]
        for i in range(row + 1, m):
            aic = a[i][col]
            if aic == 0:
                continue
            arow = a[i]
            g = gcd(pivot, aic)
            fp, fa = pivot // g, aic // g
            newrow = [fp * arow[j] - fa * prow[j] for j in range(n)]
            a[i] = _row_reduce_content(newrow)
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def _coerce_rows(m) -> list[list[Q]]:
    if isinstance(m, ExactMatrix):
        return [list(r) for r in m.row_list()]
    return [[as_q(x) for x in r] for r in m]


# ---------------------------------------------------------------------------
# public operations


def rank(m) -> int:
    """Row rank over Q."""
    rows = _coerce_rows(m)
    return int_rank(int_rows(rows)) if rows else 0


def det(m) -> Q:
    """Exact determinant of a square matrix."""
    rows = _coerce_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = Q(1)
    irows = []
    for r in rows:
        l = 1
        for x in r:
            l = l * x.denominator // gcd(l, x.denominator)
        irows.append([int(x * l) for x in r])
        scale *= l
    return Q(int_det(irows), 1) / scale


def _rref(rows: list[list[Q]]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns).

    Pivot choice: smallest nonzero height in the column, which keeps the
    rational entries short on the dense systems seen here.
    """
    a = [r[:] for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    row = 0
    for col in range(n):
        best = None
        best_h = None
        for i in range(row, m):
            x = a[i][col]
            if x != 0:
                h = max(abs(x.numerator), x.denominator)
                if best is None or h < best_h:
                    best, best_h = i, h
        if best is None:
            continue
        a[row], a[best] = a[best], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(m):
            if i != row and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return a, pivots


def solve(m, rhs: Sequence) -> Optional[Vector]:
    """Some exact solution x of m x = rhs, or None if inconsistent."""
    rows = _coerce_rows(m)
    b = vec_q(rhs)
    if len(b) != len(rows):
        raise ValueError("shape mismatch")
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b[i]] for i, r in enumerate(rows)]
    red, pivots = _rref(aug)
    if n in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [Q(0)] * n
    for r, col in zip(red, pivots):
        x[col] = r[n]
    return tuple(x)


def nullspace(m) -> list[Vector]:
    """Basis of the right kernel of m."""
    rows = _coerce_rows(m)
    if not rows:
        return []
    n = len(rows[0])
    red, pivots = _rref(rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for r, col in zip(red, pivots):
            v[col] = -r[f]
        basis.append(tuple(v))
    return basis


def affine_dim(points: Sequence[Sequence]) -> int:
    """Dimension of the affine span of a nonempty list of points."""
    pts = [vec_q(p) for p in points]
    if not pts:
        raise ValueError("affine_dim of an empty point list")
    if any(len(p) != len(pts[0]) for p in pts):
        raise ValueError("points of mixed ambient dimension")
    if len(pts) == 1:
        return 0
    diffs = [[x - y for x, y in zip(p, pts[0])] for p in pts[1:]]
    return int_rank(int_rows(diffs))


def primitive_normalize(v: Sequence) -> IntVector:
    """Canonical representative of the line through v.

    Returns the integer vector with content 1 and positive leading nonzero
    entry that is a rational multiple of v.
    """
    vq = vec_q(v)
    if all(x == 0 for x in vq):
        raise ValueError("primitive_normalize of the zero vector")
    ints = _clear_row(vq)
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


# ---------------------------------------------------------------------------
# symmetric-matrix vectorization (coordinates on the space of quadratic
# forms: upper triangle, row-major)


def sym_index(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def rank1_vec(v: Sequence[int]) -> IntVector:
    """Upper-triangle coordinates of the rank-1 form v v^t."""
    n = len(v)
    return tuple(v[i] * v[j] for i in range(n) for j in range(i, n))


def sym_vec(rows: Sequence[Sequence]) -> Vector:
    n = len(rows)
    return tuple(as_q(rows[i][j]) for i in range(n) for j in range(i, n))


def vec_sym(vec: Sequence, n: int) -> list[list[Q]]:
    """Inverse of sym_vec: symmetric n x n matrix rows from coordinates."""
    m = [[Q(0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = as_q(vec[k])
            k += 1
    return m


def vec_trace(vec: Sequence, n: int) -> Q:
    t = Q(0)
    k = 0
    for i in range(n):
        t += as_q(vec[k])
        k += n - i
    return t


def pairing_row(v: Sequence[int]) -> IntVector:
    """Row a(v) with a(v) . y_uppertri = v^t Y v for symmetric Y.

    Off-diagonal coordinates are doubled so the standard dot product
    against upper-triangle coordinates computes the trace pairing.
    """
    n = len(v)
    return tuple(
        v[i] * v[j] if i == j else 2 * v[i] * v[j]
        for i in range(n)
        for j in range(i, n)
    )


def quad_value(yvec: Sequence, v: Sequence[int], n: int):
    """v^t Y v for Y given by upper-triangle coordinates yvec."""
    val = 0
    k = 0
    for i in range(n):
        for j in range(i, n):
            c = yvec[k]
            k += 1
            val += c * v[i] * v[j] if i == j else 2 * c * v[i] * v[j]
    return val


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a)


def mat_vec_int(a: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(r, v)) for r in a)


def int_matrix_inverse(a: Sequence[Sequence[int]]) -> tuple:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(a)
    d = int_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    aug = [[Q(x) for x in row] + [Q(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(int(x) for x in row[n:]) for row in red)
