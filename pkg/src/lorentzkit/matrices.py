"""Dense exact matrices over a field descriptor.

Just enough linear algebra for Gram matrices and group elements: multiply,
transpose, determinant, inverse.  Rows are tuples, so matrices hash and
compare like values.
"""

from __future__ import annotations

from .errors import DimMismatchError, FieldMismatchError, SingularFormError
from .numberfield import FieldDescriptor, QuadFieldElem, one, zero

Matrix = tuple[tuple[QuadFieldElem, ...], ...]
Vector = tuple[QuadFieldElem, ...]


def from_rows(rows, field: FieldDescriptor | None = None) -> Matrix:
    """Freeze a list-of-lists into a rectangular Matrix, checking field tags."""
    out = tuple(tuple(row) for row in rows)
    if not out or any(len(r) != len(out[0]) for r in out):
        raise DimMismatchError("matrix rows must be nonempty and of equal length")
    for row in out:
        for entry in row:
            if not isinstance(entry, QuadFieldElem):
                raise FieldMismatchError(
                    f"matrix entries must be field elements, got {type(entry).__name__}"
                )
            if field is not None and entry.field != field:
                raise FieldMismatchError(
                    f"matrix entry over {entry.field}, expected {field}"
                )
    return out


def identity(field: FieldDescriptor, n: int) -> Matrix:
    o, z = one(field), zero(field)
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimMismatchError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(
        tuple(dot(row, col) for col in bt)
        for row in a
    )


def mat_vec(m: Matrix, v: Vector) -> Vector:
    if len(m[0]) != len(v):
        raise DimMismatchError(f"cannot apply {len(m)}x{len(m[0])} to a vector of length {len(v)}")
    return tuple(dot(row, v) for row in m)


def dot(x: Vector, y: Vector) -> QuadFieldElem:
    if len(x) != len(y):
        raise DimMismatchError(f"vector lengths differ: {len(x)} vs {len(y)}")
    acc = x[0] * y[0]
    for xi, yi in zip(x[1:], y[1:]):
        acc = acc + xi * yi
    return acc


def scale(m: Matrix, c: QuadFieldElem) -> Matrix:
    return tuple(tuple(c * e for e in row) for row in m)


def neg(m: Matrix) -> Matrix:
    return tuple(tuple(-e for e in row) for row in m)


def trace(m: Matrix) -> QuadFieldElem:
    acc = m[0][0]
    for i in range(1, len(m)):
        acc = acc + m[i][i]
    return acc


def determinant(m: Matrix) -> QuadFieldElem:
    """Fraction-free is unnecessary here; plain elimination with exact division."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimMismatchError("determinant requires a square matrix")
    field = m[0][0].field
    a = [list(row) for row in m]
    det = one(field)
    for k in range(n):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return zero(field)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv_p = a[k][k].inverse()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            f = a[i][k] * inv_p
            for j in range(k, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return det


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimMismatchError("inverse requires a square matrix")
    field = m[0][0].field
    a = [list(row) + list(identity(field, n)[i]) for i, row in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            raise SingularFormError("matrix is not invertible")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        inv_p = a[k][k].inverse()
        a[k] = [e * inv_p for e in a[k]]
        for i in range(n):
            if i == k or a[i][k].is_zero():
                continue
            f = a[i][k]
            a[i] = [e - f * p for e, p in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)
