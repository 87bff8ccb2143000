"""Exact integer linear algebra on Z^d.

Vectors are tuples of Python ints and matrices are sequences of rows, so
every entry is arbitrary precision.  Nothing in here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateInputError, DimensionError, SingularMatrixError

Vector = tuple[int, ...]
Matrix = Sequence[Sequence[int]]


def vec(values) -> Vector:
    return tuple(int(v) for v in values)


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"cannot add vectors of length {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"cannot subtract vectors of length {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, v: Vector) -> Vector:
    return tuple(k * a for a in v)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionError(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def is_zero(v: Vector) -> bool:
    return not any(v)


def common_dimension(vectors: Sequence[Vector]) -> int:
    """Return the shared length of `vectors`, raising on mixed lengths."""
    if not vectors:
        raise DegenerateInputError("empty list of vectors")
    d = len(vectors[0])
    for v in vectors:
        if len(v) != d:
            raise DimensionError(f"mixed dimensions {d} and {len(v)}")
    return d


def transpose(m: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def from_columns(cols: Sequence[Vector]) -> list[list[int]]:
    """Build the row-major matrix whose columns are `cols`."""
    common_dimension(cols)
    return transpose(cols)


def columns(m: Matrix) -> list[Vector]:
    return [tuple(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    if a and len(a[0]) != len(b):
        raise DimensionError(f"shape mismatch: {len(a[0])} columns vs {len(b)} rows")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(m: Matrix, v: Sequence[int]) -> Vector:
    return tuple(dot(row, v) for row in m)


def identity(d: int) -> list[list[int]]:
    return [[int(i == j) for j in range(d)] for i in range(d)]


def _check_rectangular(m: Matrix) -> None:
    if m and any(len(row) != len(m[0]) for row in m):
        raise DimensionError("rows have unequal length")


def _check_square(m: Matrix) -> int:
    _check_rectangular(m)
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError(f"matrix is not square ({n} rows, {len(m[0])} columns)")
    return n


def det(m: Matrix) -> int:
    """Determinant by Bareiss fraction-free elimination.

    >>> det([[1, -2, 2], [0, -1, -2], [0, 2, 1]])
    3
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
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
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_columns(cols: Sequence[Vector]) -> int:
    """Determinant of the square matrix with the given columns."""
    return det(cols)  # det(M^T) == det(M)


def is_unimodular(m: Matrix) -> bool:
    return det(m) in (1, -1)


def hermite_basis(gens: Sequence[Vector]) -> list[Vector]:
    """Return a triangular basis of the lattice spanned by `gens`.

    Column operations (swap, negate, add integer multiples) keep the integer
    span fixed; the result has one nonzero vector per pivot row.
    """
    d = common_dimension(gens)
    cols = [list(g) for g in gens if any(g)]
    basis: list[Vector] = []
    row = 0
    while cols and row < d:
        live = [c for c in cols if c[row] != 0]
        if not live:
            row += 1
            continue
        rest = [c for c in cols if c[row] == 0]
        # Euclid on the entries of this row until a single column survives.
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[row]))
            p = live[0]
            nxt = [p]
            for c in live[1:]:
                q = c[row] // p[row]
                c = [x - q * y for x, y in zip(c, p)]
                if c[row] != 0:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            live = nxt
        pivot = live[0]
        if pivot[row] < 0:
            pivot = [-x for x in pivot]
        basis.append(tuple(pivot))
        cols = rest
        row += 1
    return basis


def lattice_index(gens: Sequence[Vector]) -> int:
    """Index of the integer span of `gens` in Z^d, or 0 if it has lower rank."""
    d = common_dimension(gens)
    basis = hermite_basis(gens)
    if len(basis) < d:
        return 0
    return abs(det_columns(basis))


def spans_full_lattice(gens: Sequence[Vector]) -> bool:
    """True iff the integer span of `gens` is all of Z^d."""
    return lattice_index(gens) == 1


def solve_rational(basis_cols: Sequence[Vector], target: Sequence[int]) -> list[Fraction]:
    """Solve ``sum x_i * basis_cols[i] == target`` exactly over Q."""
    n = len(basis_cols)
    if n != len(target) or any(len(c) != n for c in basis_cols):
        raise DimensionError("basis must be square and match the target length")
    a = [[Fraction(basis_cols[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularMatrixError("basis columns are linearly dependent")
        a[k], a[p] = a[p], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] / a[i][i] for i in range(n)]


def solve_integer_columns(basis_cols: Sequence[Vector], target: Sequence[int]) -> Optional[Vector]:
    """Integer coefficients expressing `target` in `basis_cols`, if they exist."""
    x = solve_rational(basis_cols, target)
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def inverse_rational(m: Matrix) -> list[list[Fraction]]:
    n = _check_square(m)
    cols = columns(m)
    inv_cols = [solve_rational(cols, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(inv_cols)
