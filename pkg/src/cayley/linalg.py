"""Dense exact linear algebra over a :class:`~cayley.fields.Field`.

Matrices are lists (or tuples) of rows of field elements.  Everything here is
plain Gaussian elimination with exact inverses; the matrices involved are at
most a few hundred rows by 20 columns.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import SingularMatrix
from .fields import Field, FieldElement

Matrix = Sequence[Sequence[FieldElement]]


def identity(field: Field, n: int = 4) -> tuple[tuple[FieldElement, ...], ...]:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def as_matrix(field: Field, rows) -> tuple[tuple[FieldElement, ...], ...]:
    return tuple(tuple(field(x) for x in row) for row in rows)


def mat_mul(A: Matrix, B: Matrix) -> tuple[tuple[FieldElement, ...], ...]:
    cols = list(zip(*B))
    return tuple(tuple(_dot(row, col) for col in cols) for row in A)


def mat_vec(A: Matrix, v: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    return tuple(_dot(row, v) for row in A)


def vec_mat(v: Sequence[FieldElement], A: Matrix) -> tuple[FieldElement, ...]:
    return tuple(_dot(v, col) for col in zip(*A))


def _dot(u, v) -> FieldElement:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def rref(
    rows: Matrix, pivot_order: Sequence[int] | None = None
) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row-echelon form.

    ``pivot_order`` lists the columns in the order they are tried as pivot
    columns; the default is left to right.  A different order yields a
    different (but equivalent) reduced basis.
    """
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    order = range(ncols) if pivot_order is None else pivot_order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == len(R):
            break
        src = next((i for i in range(r, len(R)) if R[i][c]), None)
        if src is None:
            continue
        R[r], R[src] = R[src], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def kernel(
    rows: Matrix, ncols: int, field: Field, pivot_order: Sequence[int] | None = None
) -> list[tuple[FieldElement, ...]]:
    """Basis of ``{x : A x = 0}``."""
    R, pivots = rref(rows, pivot_order)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def det(A: Matrix) -> FieldElement:
    M = [list(r) for r in A]
    n = len(M)
    F = M[0][0].field
    result = F.one
    for c in range(n):
        src = next((i for i in range(c, n) if M[i][c]), None)
        if src is None:
            return F.zero
        if src != c:
            M[c], M[src] = M[src], M[c]
            result = -result
        piv = M[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def inverse(A: Matrix) -> tuple[tuple[FieldElement, ...], ...]:
    n = len(A)
    F = A[0][0].field
    aug = [list(row) + list(e) for row, e in zip(A, identity(F, n))]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in R)
