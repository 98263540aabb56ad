from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Sequence

from lexcut.utils import format_rational
from lexcut.views import LexcutError, Point, as_point, dot


class LexOrder(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class LexCoreError(LexcutError):
    """Base class for lexicographic-order errors"""
    pass


class ZeroPointError(LexCoreError):
    """Error raised when an operation needs a nonzero point"""
    pass


class OutsideConeError(LexCoreError):
    """Error raised when a point has c^i x < 0 for some basis row"""
    pass


class NonIntegerProductsError(LexCoreError):
    """Error raised when products c^i x expected to be integer are not"""
    pass


class IndexOutOfRangeError(LexCoreError):
    """Error raised when a cut index is outside 1..n"""
    pass


@dataclass(frozen=True)
class LinearInequality:
    """coeffs . x >= rhs"""

    coeffs: Point
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', as_point(self.coeffs))
        object.__setattr__(self, 'rhs', Fraction(self.rhs))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def lhs(self, x: Sequence) -> Fraction:
        return dot(self.coeffs, x)

    def slack(self, x: Sequence) -> Fraction:
        return self.lhs(x) - self.rhs

    def is_satisfied(self, x: Sequence, tol: Fraction = Fraction(0)) -> bool:
        return self.slack(x) >= -tol

    def translated(self, t: Sequence) -> LinearInequality:
        """The same halfspace written in the coordinates x' = x - t"""
        return LinearInequality(self.coeffs, self.rhs - dot(self.coeffs, t))

    def scaled(self, factor: Fraction) -> LinearInequality:
        if factor <= 0:
            raise ValueError('only positive scaling keeps the halfspace')
        return LinearInequality(tuple(a * factor for a in self.coeffs), self.rhs * factor)

    def same_halfspace(self, other: LinearInequality) -> bool:
        """True iff both inequalities are positive multiples of each other"""
        if self.n != other.n or self.is_trivial or other.is_trivial:
            return self == other
        i = next(j for j, a in enumerate(self.coeffs) if a != 0)
        if other.coeffs[i] == 0 or (other.coeffs[i] > 0) != (self.coeffs[i] > 0):
            return False
        factor = other.coeffs[i] / self.coeffs[i]
        return self.scaled(factor) == other

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs, start=1):
            if a == 0:
                continue
            sign = '-' if a < 0 else '+'
            term = f'x{i}' if abs(a) == 1 else f'{format_rational(abs(a))} x{i}'
            if terms:
                terms.append(f'{sign} {term}')
            else:
                terms.append(term if a > 0 else f'-{term}')
        lhs = ' '.join(terms) if terms else '0'
        return f'{lhs} >= {format_rational(self.rhs)}'


@dataclass(frozen=True)
class LexCut:
    """The k-th lex-cut: sum_{i<=k} d_i c^i x >= rhs"""

    k: int
    d: Point
    inequality: LinearInequality

    def translated(self, t: Sequence) -> LexCut:
        return LexCut(self.k, self.d, self.inequality.translated(t))

    def __str__(self) -> str:
        return str(self.inequality)
