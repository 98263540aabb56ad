from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from lexcut.views import DimensionMismatchError, IntMatrix, IntVector, LexcutError, Point


class ArithmeticLatticeError(LexcutError):
    """Base class for lattice arithmetic errors"""
    pass


class ZeroVectorError(ArithmeticLatticeError):
    """Error raised when a nonzero vector is required"""
    pass


class NotPrimitiveError(ArithmeticLatticeError):
    """Error raised when a vector's entries are not relatively prime"""
    pass


class NotUnimodularError(ArithmeticLatticeError):
    """Error raised when a basis matrix does not have determinant 1 or -1"""
    pass


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    matrix = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DimensionMismatchError(f'expected a nonempty square matrix, got {len(matrix)} rows')
    return matrix


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class LatticeBasis:
    """
    Rows c^1..c^n of a unimodular integer matrix C.

    The basis fixes the lexicographic order (compare c^1 x first, then c^2 x, ...)
    and the cone K = {x : c^i x >= 0 for all i}.
    """

    rows: IntMatrix

    def __post_init__(self):
        from lexcut.arith.service import is_unimodular

        object.__setattr__(self, 'rows', as_int_matrix(self.rows))
        if not is_unimodular(self.rows):
            raise NotUnimodularError('basis not unimodular')

    @classmethod
    def standard(cls, n: int) -> LatticeBasis:
        return cls(identity(n))

    @property
    def n(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> IntVector:
        """Row c^i, 1-based as in c^1..c^n"""
        return self.rows[i - 1]

    def products(self, x: Sequence) -> Point:
        """The vector Cx = (c^1 x, ..., c^n x)"""
        if len(x) != self.n:
            raise DimensionMismatchError(f'point of length {len(x)} in dimension {self.n}')
        return tuple(sum((c * Fraction(v) for c, v in zip(row, x)), Fraction(0)) for row in self.rows)

    def in_cone(self, x: Sequence) -> bool:
        return all(p >= 0 for p in self.products(x))
