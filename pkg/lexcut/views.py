from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, ...]
IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class LexcutError(Exception):
    """Base class for all lexcut errors"""
    pass


class DimensionMismatchError(LexcutError):
    """Error raised when vectors or matrices of different dimension are combined"""
    pass


class IterationLimitError(LexcutError):
    """Error raised when an iterative procedure exceeds its configured cap"""
    pass


class BoxTooLargeError(LexcutError):
    """Error raised when a brute-force enumeration box exceeds the cell cap"""
    pass


def as_point(values: Sequence) -> Point:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError(f'cannot multiply vectors of length {len(a)} and {len(b)}')
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1
