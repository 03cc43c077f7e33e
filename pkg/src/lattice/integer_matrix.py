"""Exact integer and rational matrix routines.

Matrices are plain lists of rows holding Python ints or Fractions, so every
result is exact. The Smith form keeps both transforms (and the inverse of the
column transform), which is what kernels, saturations and discriminant groups
are read off from.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from ..errors import LatticeError

Matrix = List[List[int]]
RationalMatrix = List[List[Fraction]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(m: Sequence[Sequence]) -> list:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence]) -> list:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    """Product a·b; a is r×k, b is k×c (k may be 0)."""
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = transpose(b) if b else [[] for _ in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0]))]


def bilinear(u: Sequence, gram: Sequence[Sequence], v: Sequence):
    """u · gram · vᵀ."""
    total = 0
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            total += ui * sum(row[j] * v[j] for j in range(len(v)) if v[j])
    return total


def is_symmetric(m: Sequence[Sequence]) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    return len(_row_echelon(rows))


def _row_echelon(rows: Sequence[Sequence]) -> RationalMatrix:
    reduced: RationalMatrix = []
    pivots: List[int] = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for r, p in zip(reduced, pivots):
            if v[p]:
                f = v[p] / r[p]
                v = [a - f * b for a, b in zip(v, r)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is not None:
            reduced.append(v)
            pivots.append(lead)
    return reduced


def rational_inverse(m: Sequence[Sequence]) -> RationalMatrix:
    """Inverse over the rationals by Gauss-Jordan elimination.

    Raises:
        LatticeError: If the matrix is singular
    """
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise LatticeError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_left(basis: Sequence[Sequence], target: Sequence) -> List[Fraction]:
    """Coefficients c with c · basis = target for linearly independent rows.

    Raises:
        LatticeError: If target is outside the rational span of basis
    """
    k = len(basis)
    if k == 0:
        if any(target):
            raise LatticeError("vector outside the span of an empty basis")
        return []
    n = len(target)
    # Solve basisᵀ · cᵀ = targetᵀ by elimination on the augmented system.
    a = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        pivot = next((r for r in range(row, n) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    if any(a[r][k] != 0 for r in range(row, n)):
        raise LatticeError("vector outside the rational span of the basis")
    solution = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        solution[col] = a[r][k]
    return solution


@dataclass(frozen=True)
class SmithForm:
    """Smith normal form U·A·V = D of an r×c integer matrix.

    Attributes:
        diagonal: Nonzero diagonal entries d1 | d2 | ... (all positive)
        u: Unimodular r×r row transform
        v: Unimodular c×c column transform
        v_inverse: Inverse of v
    """
    diagonal: Tuple[int, ...]
    u: Tuple[Tuple[int, ...], ...]
    v: Tuple[Tuple[int, ...], ...]
    v_inverse: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Diagonal entries larger than one."""
        return tuple(d for d in self.diagonal if d > 1)


def smith_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Compute the Smith normal form with transforms.

    Pivoting on the entry of least absolute value and reducing by Euclid
    steps keeps entries small; a row addition repairs divisibility.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = copy_matrix(a)
    u = identity(rows)
    v = identity(cols)
    v_inv = identity(cols)
    diagonal = []

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return _finish(diagonal, u, v, v_inv)
            i, j = pivot
            if i != t:
                m[t], m[i] = m[i], m[t]
                u[t], u[i] = u[i], u[t]
            if j != t:
                for row in m:
                    row[t], row[j] = row[j], row[t]
                for row in v:
                    row[t], row[j] = row[j], row[t]
                v_inv[t], v_inv[j] = v_inv[j], v_inv[t]

            p = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                    if m[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for row in m:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                    v_inv[t] = [x + q * y for x, y in zip(v_inv[t], v_inv[j])]
                    if m[t][j]:
                        clean = False
            if not clean:
                continue

            offender = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % p),
                None,
            )
            if offender is None:
                break
            m[t] = [x + y for x, y in zip(m[t], m[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]

        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        diagonal.append(m[t][t])

    return _finish(diagonal, u, v, v_inv)


def _finish(diagonal, u, v, v_inv) -> SmithForm:
    return SmithForm(
        diagonal=tuple(diagonal),
        u=tuple(tuple(r) for r in u),
        v=tuple(tuple(r) for r in v),
        v_inverse=tuple(tuple(r) for r in v_inv),
    )


def left_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Lattice basis of {x ∈ Zʳ : x·A = 0} for an r×c integer matrix A."""
    rows = len(a)
    if rows == 0:
        return []
    if not a[0]:
        return identity(rows)
    snf = smith_form(a)
    return [list(r) for r in snf.u[snf.rank:]]


def saturate_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of (ℚ-span of rows) ∩ ℤⁿ for linearly independent integer rows."""
    if not rows:
        return []
    snf = smith_form(rows)
    if snf.rank != len(rows):
        raise LatticeError("saturation needs linearly independent rows")
    return [list(r) for r in snf.v_inverse[:snf.rank]]


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form: a basis of the ℤ-span of rows.

    Zero rows are dropped; pivots are positive and entries above a pivot are
    reduced into [0, pivot).
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    cols = len(work[0])
    basis: Matrix = []
    for col in range(cols):
        active = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            reduced = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [x - q * y for x, y in zip(r, head)]
                if r[col] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            active = reduced
        if active:
            pivot = active[0]
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            for i, b in enumerate(basis):
                q = b[col] // pivot[col]
                if q:
                    basis[i] = [x - q * y for x, y in zip(b, pivot)]
            basis.append(pivot)
        work = rest
    return basis


def signature(gram: Sequence[Sequence]) -> Tuple[int, int]:
    """Inertia (positive, negative) of a symmetric matrix.

    Symmetric Gaussian elimination over the rationals; a zero diagonal is
    repaired with the congruence row_i += row_j, col_i += col_j.
    """
    a = [[Fraction(x) for x in row] for row in gram]
    positive = negative = 0
    while a:
        n = len(a)
        pivot = next((i for i in range(n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            positive += 1
        else:
            negative += 1
        others = [k for k in range(n) if k != pivot]
        a = [[a[r][c] - a[r][pivot] * a[pivot][c] / p for c in others] for r in others]
    return positive, negative


def common_denominator(values) -> int:
    d = 1
    for x in values:
        den = Fraction(x).denominator
        d = d * den // gcd(d, den)
    return d
