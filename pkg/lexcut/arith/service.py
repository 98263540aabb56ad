import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from lexcut.arith.views import LatticeBasis, NotPrimitiveError, ZeroVectorError, as_int_matrix, identity
from lexcut.views import DimensionMismatchError, IntMatrix, IntVector, LexcutError

logger = logging.getLogger(__name__)


def gcd_normalize(v: Sequence[int]) -> tuple[IntVector, int]:
    """Divide v by the gcd of its entries. Signs are kept."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVectorError('cannot normalize the zero vector')
    return tuple(x // g for x in v), g


def det_integer(M: Sequence[Sequence[int]]) -> int:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    Every intermediate entry stays an integer: after step k the pivot block
    entries are k x k minors of M, so the division by the previous pivot is exact.
    """
    a = [list(row) for row in as_int_matrix(M)]
    n = len(a)
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


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    return abs(det_integer(M)) == 1


def complete_basis(c: Sequence[int]) -> LatticeBasis:
    """
    Extend a primitive vector c to a lattice basis whose first row is c.

    Runs the Euclidean algorithm on the entries of c through unimodular column
    operations until c becomes e1 (up to a final column swap and sign flip).
    Only the inverse of the operation product is tracked: if c K = e1 then the
    first row of K^-1 is c. Pivot choice: the nonzero entry of smallest absolute
    value, leftmost on ties.
    """
    c = [int(x) for x in c]
    if not any(c):
        raise ZeroVectorError('cannot complete the zero vector')
    _, g = gcd_normalize(c)
    if g != 1:
        raise NotPrimitiveError(f'entries of {tuple(c)} have common divisor {g}')

    n = len(c)
    work = list(c)
    inverse = [list(row) for row in identity(n)]
    while sum(1 for x in work if x != 0) > 1:
        pivot = min((j for j in range(n) if work[j] != 0), key=lambda j: (abs(work[j]), j))
        for col in range(n):
            if col == pivot or work[col] == 0:
                continue
            q = work[col] // work[pivot]
            # column op: col -= q * pivot, inverse gets row op: row[pivot] += q * row[col]
            work[col] -= q * work[pivot]
            inverse[pivot] = [a + q * b for a, b in zip(inverse[pivot], inverse[col])]

    lead = next(j for j in range(n) if work[j] != 0)
    if lead != 0:
        work[0], work[lead] = work[lead], work[0]
        inverse[0], inverse[lead] = inverse[lead], inverse[0]
    if work[0] == -1:
        work[0] = 1
        inverse[0] = [-a for a in inverse[0]]

    basis = LatticeBasis(tuple(tuple(row) for row in inverse))
    if basis.rows[0] != tuple(c):
        raise LexcutError(f'basis completion produced first row {basis.rows[0]} for {tuple(c)}')
    logger.debug(f'Completed {tuple(c)} to basis {basis.rows}')
    return basis


def _solve_rational(rows: IntMatrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    n = len(rows)
    if len(rhs) != n:
        raise DimensionMismatchError(f'right-hand side of length {len(rhs)} for dimension {n}')
    a = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(rows, rhs)]
    for k in range(n):
        pivot = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[pivot] = a[pivot], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] / a[i][i] for i in range(n)]


def solve_unimodular(C: LatticeBasis, rhs: Sequence[int]) -> IntVector:
    """The unique x with Cx = rhs. Integer because C^-1 is an integer matrix."""
    rhs = [Fraction(r) for r in rhs]
    if any(r.denominator != 1 for r in rhs):
        raise ValueError(f'right-hand side {rhs} is not integer')
    x = _solve_rational(C.rows, rhs)
    return tuple(int(v) for v in x)


@lru_cache(maxsize=128)
def unimodular_inverse(C: LatticeBasis) -> IntMatrix:
    """C^-1, column by column"""
    n = C.n
    columns = [solve_unimodular(C, identity(n)[j]) for j in range(n)]
    return tuple(tuple(columns[j][i] for j in range(n)) for i in range(n))
