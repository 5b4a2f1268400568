"""Exact linear algebra over any field-like scalars (Fraction, GaussRat, Cyc)
plus integer-matrix helpers.

Matrices are lists of row lists.  Scalars need +, -, *, /, == and truthiness.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(a: list[list], b: list[list]) -> list[list]:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            acc = None
            for k in range(m):
                if ai[k]:
                    term = ai[k] * b[k][j]
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else ai[0] * 0)
        out.append(row)
    return out


def mat_vec(a: list[list], v: list) -> list:
    return [r[0] for r in mat_mul(a, [[x] for x in v])]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []

def identity(n: int, one) -> list[list]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_trace(a):
    t = a[0][0]
    for i in range(1, len(a)):
        t = t + a[i][i]
    return t


def rref(mat: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot column indices)."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def kernel_basis(mat: list[list], one) -> list[list]:
    """Basis of the right kernel {v : mat v = 0}."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(mat)
    zero = one - one
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve(mat: list[list], rhs: list):
    """One solution x of mat x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    zero = rhs[0] - rhs[0] if rows else Fraction(0)
    x = [zero] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return x


def mat_inverse(mat: list[list], one) -> list[list]:
    n = len(mat)
    aug = [list(mat[i]) + identity(n, one)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


class EchelonSpan:
    """Incrementally maintained echelon basis of a subspace of coordinate space."""

    def __init__(self) -> None:
        self.rows: list[list] = []
        self.pivot_of_row: list[int] = []

    def _reduce(self, v: list) -> list:
        v = list(v)
        for row, p in zip(self.rows, self.pivot_of_row):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def insert(self, v: list) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = self._reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p]
        v = [x / inv for x in v]
        for i, row in enumerate(self.rows):
            if row[p]:
                f = row[p]
                self.rows[i] = [x - f * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivot_of_row.append(p)
        return True

    def contains(self, v: list) -> bool:
        return all(not x for x in self._reduce(v))

    @property
    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# integer matrices

def int_mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)]
            for i in range(n)]


def int_identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_det(mat) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def int_mat_inverse(mat) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, exact and integral."""
    n = len(mat)
    frac = [[Fraction(x) for x in row] for row in mat]
    inv = mat_inverse(frac, Fraction(1))
    out = []
    for row in inv:
        out_row = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out_row.append(x.numerator)
        out.append(out_row)
    return out


def principal_minor_trace(mat: list[list[int]], n: int) -> int:
    """Trace of the n-th exterior power: the sum of principal n x n minors."""
    from itertools import combinations

    d = len(mat)
    if n < 0 or n > d:
        return 0
    if n == 0:
        return 1
    total = 0
    for rows in combinations(range(d), n):
        sub = [[mat[i][j] for j in rows] for i in rows]
        total += int_det(sub)
    return total
