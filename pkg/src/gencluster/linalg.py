"""Exact dense linear algebra over rationals and GradScalars.

Matrices are lists of row lists.  The :class:`ExactMatrix` wrapper exists
mainly to fix the submatrix convention used throughout: ``sub(a, b, c, d)``
keeps rows ``a..b`` and columns ``c..d``, 1-indexed and inclusive (subscript
ranges are rows, superscript ranges are columns).

Determinants over rationals use fraction-free Bareiss elimination;
determinants over GradScalars use Gaussian elimination with unit pivots,
pivoting only on entries whose value part is nonzero.  A cofactor-expansion
determinant is kept as an independent oracle for small sizes.
"""

from __future__ import annotations

from .dual import GradScalar
from .rationals import Q, ZERO, ONE


class NonSquareError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class NeedsRerandomization(RuntimeError):
    """GradScalar elimination hit a column whose value parts all vanish."""


def _check_square(rows):
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise NonSquareError("matrix is not square")
    return m


def det_rational(rows) -> "Q":
    """Fraction-free Bareiss determinant of a rational matrix."""
    m = _check_square(rows)
    if m == 0:
        return ONE
    a = [[Q(x) for x in row] for row in rows]
    sign = 1
    prev = ONE
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, m):
            row_i = a[i]
            row_k = a[k]
            aik = row_i[k]
            for j in range(k + 1, m):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) / prev
            row_i[k] = ZERO
        prev = pivot
    return sign * a[m - 1][m - 1]


def det_cofactor(rows) -> "Q":
    """Cofactor-expansion determinant; independent oracle for small sizes."""
    m = _check_square(rows)
    if m == 0:
        return ONE
    if m == 1:
        return Q(rows[0][0])
    if m == 2:
        return Q(rows[0][0]) * Q(rows[1][1]) - Q(rows[0][1]) * Q(rows[1][0])
    total = ZERO
    rest = rows[1:]
    sign = 1
    for j in range(m):
        if rows[0][j] != 0:
            minor = [r[:j] + r[j + 1 :] for r in rest]
            total += sign * Q(rows[0][j]) * det_cofactor(minor)
        sign = -sign
    return total


def det_gradscalar(rows) -> GradScalar:
    """Determinant of a GradScalar matrix by elimination with unit pivots.

    Pivots are chosen among entries whose value part is nonzero.  If some
    column offers no such pivot but still carries nonzero gradients, the
    evaluation point is degenerate for this elimination and the caller must
    re-randomize (:class:`NeedsRerandomization`).
    """
    m = _check_square(rows)
    if m == 0:
        return GradScalar.constant(1)
    a = [list(row) for row in rows]
    det = GradScalar.constant(1)
    sign = 1
    for k in range(m):
        pivot_row = None
        for i in range(k, m):
            if a[i][k].value != 0:
                pivot_row = i
                break
        if pivot_row is None:
            if all(a[i][k].is_zero() for i in range(k, m)):
                return GradScalar.constant(0)
            raise NeedsRerandomization(
                f"no value-nonzero pivot in column {k + 1}"
            )
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        det = det * pivot
        inv_rows = a[k]
        for i in range(k + 1, m):
            if a[i][k].is_zero():
                continue
            factor = a[i][k] / pivot
            row_i = a[i]
            for j in range(k + 1, m):
                row_i[j] = row_i[j] - factor * inv_rows[j]
            row_i[k] = GradScalar.constant(0)
    if sign < 0:
        det = -det
    return det


def identity(m: int):
    return [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(rows):
        arow = a[i]
        orow = []
        for j in range(cols):
            s = ZERO
            for t in range(inner):
                if arow[t]:
                    s += arow[t] * b[t][j]
            orow.append(s)
        out.append(orow)
    return out


def mat_vec(a, v):
    return [sum((row[t] * v[t] for t in range(len(v))), ZERO) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def inverse(rows):
    """Exact inverse by Gauss-Jordan elimination with partial pivoting."""
    m = _check_square(rows)
    a = [[Q(x) for x in row] + [ONE if i == j else ZERO for j in range(m)] for i, row in enumerate(rows)]
    for k in range(m):
        pivot_row = None
        for i in range(k, m):
            if a[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
        pivot = a[k][k]
        a[k] = [x / pivot for x in a[k]]
        for i in range(m):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[m:] for row in a]


def solve(a, b):
    """Solve ``a x = b`` for a vector b; exact, raises if singular."""
    inv = inverse(a)
    return mat_vec(inv, [Q(x) for x in b])


def solve_left(a, b):
    """Solve ``x a = b`` (row-vector system)."""
    return solve(transpose(a), b)


def adjugate(rows):
    """Adjugate matrix: ``adj(A)[i][j]`` is the (j, i) cofactor of A.

    Uses ``det * inverse`` when A is nonsingular and falls back to direct
    cofactor computation otherwise (the adjugate is defined regardless).
    """
    m = _check_square(rows)
    if m == 0:
        return []
    if m == 1:
        return [[ONE]]
    d = det_rational(rows)
    if d != 0:
        inv = inverse(rows)
        return [[x * d for x in row] for row in inv]
    adj = [[ZERO] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [row[:j] + row[j + 1 :] for r, row in enumerate(rows) if r != i]
            c = det_rational(minor)
            if (i + j) % 2:
                c = -c
            adj[j][i] = c
    return adj


class ExactMatrix:
    """Dense matrix of ring elements with 1-indexed inclusive submatrices."""

    __slots__ = ("rows_data",)

    def __init__(self, rows_data):
        self.rows_data = [list(r) for r in rows_data]

    @property
    def rows(self) -> int:
        return len(self.rows_data)

    @property
    def cols(self) -> int:
        return len(self.rows_data[0]) if self.rows_data else 0

    def entry(self, i: int, j: int):
        """1-indexed entry access."""
        return self.rows_data[i - 1][j - 1]

    def sub(self, a: int, b: int, c: int, d: int) -> "ExactMatrix":
        """Submatrix with row range [a, b] and column range [c, d], 1-indexed
        inclusive.  Empty ranges yield the 0x0 matrix (whose det is 1)."""
        if b < a or d < c:
            return ExactMatrix([])
        return ExactMatrix([row[c - 1 : d] for row in self.rows_data[a - 1 : b]])

    def to_lists(self):
        return [list(r) for r in self.rows_data]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows_data == other.rows_data

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"ExactMatrix({self.rows_data!r})"


def det(matrix) -> "Q":
    """Determinant of an ExactMatrix or row-list matrix of ring elements.

    Dispatches on the entry type: GradScalar matrices go through unit-pivot
    elimination, everything else through fraction-free Bareiss.
    """
    rows = matrix.to_lists() if isinstance(matrix, ExactMatrix) else matrix
    if not rows:
        return ONE
    first = rows[0][0] if rows[0] else None
    if isinstance(first, GradScalar):
        return det_gradscalar(rows)
    return det_rational(rows)
