import logging
from fractions import Fraction
from functools import cmp_to_key
from math import ceil
from typing import Iterable, Optional, Sequence

from lexcut.arith.service import solve_unimodular
from lexcut.arith.views import LatticeBasis
from lexcut.lex.views import (
    IndexOutOfRangeError,
    LexCut,
    LexOrder,
    LinearInequality,
    NonIntegerProductsError,
    OutsideConeError,
    ZeroPointError,
)
from lexcut.views import DimensionMismatchError, IntVector, Point, as_point

logger = logging.getLogger(__name__)


def snap_value(value: Fraction, snap: Optional[Fraction] = None) -> Fraction:
    """Replace value by the nearest integer when it lies within snap of it"""
    if snap is None or value.denominator == 1:
        return value
    nearest = round(value)
    if abs(value - nearest) <= snap:
        return Fraction(nearest)
    return value


def products(B: LatticeBasis, x: Sequence, snap: Optional[Fraction] = None) -> Point:
    return tuple(snap_value(p, snap) for p in B.products(x))


def lex_cmp(B: LatticeBasis, x: Sequence, y: Sequence) -> LexOrder:
    if len(x) != len(y):
        raise DimensionMismatchError(f'cannot compare points of length {len(x)} and {len(y)}')
    for a, b in zip(B.products(x), B.products(y)):
        if a < b:
            return LexOrder.LESS
        if a > b:
            return LexOrder.GREATER
    return LexOrder.EQUAL


def lex_sorted(B: LatticeBasis, points: Iterable[Sequence]) -> list[Point]:
    return sorted((as_point(p) for p in points), key=cmp_to_key(lambda x, y: int(lex_cmp(B, x, y))))


def _require_cone(B: LatticeBasis, p: Point) -> None:
    negative = [i for i, v in enumerate(p, start=1) if v < 0]
    if negative:
        raise OutsideConeError(f'c^{negative[0]} x = {p[negative[0] - 1]} < 0')


def _require_integer(p: Point, upto: int) -> None:
    for i, v in enumerate(p[:upto], start=1):
        if v.denominator != 1:
            raise NonIntegerProductsError(f'c^{i} x = {v} is not integer')


def _require_index(B: LatticeBasis, k: int) -> None:
    if not 1 <= k <= B.n:
        raise IndexOutOfRangeError(f'cut index {k} outside 1..{B.n}')


def leading_index(B: LatticeBasis, x: Sequence) -> int:
    """l(x): the largest index i with c^i x > 0"""
    p = B.products(x)
    _require_cone(B, p)
    positive = [i for i, v in enumerate(p, start=1) if v > 0]
    if not positive:
        raise ZeroPointError('the zero point has no leading index')
    return positive[-1]


def first_fractional_index(B: LatticeBasis, x: Sequence, snap: Optional[Fraction] = None) -> Optional[int]:
    """Smallest k with c^k x not integer, None when x is integer"""
    for i, v in enumerate(products(B, x, snap), start=1):
        if v.denominator != 1:
            return i
    return None


def round_up_lex(B: LatticeBasis, x: Sequence, snap: Optional[Fraction] = None) -> IntVector:
    """
    x-up: the lex-min integer point of K that is lex-greater or equal to x.

    Keeps the integer prefix c^1 x..c^{k-1} x, rounds c^k x up and zeroes the rest,
    where k is the first fractional product.
    """
    p = products(B, x, snap)
    _require_cone(B, p)
    k = next((i for i, v in enumerate(p, start=1) if v.denominator != 1), None)
    if k is None:
        return solve_unimodular(B, p)
    rhs = list(p[:k - 1]) + [Fraction(ceil(p[k - 1]))] + [Fraction(0)] * (B.n - k)
    _require_integer(tuple(rhs), B.n)
    return solve_unimodular(B, rhs)


def _d_from_products(q: Point, k: int) -> Point:
    # d_k = 1, d_{k-1} = q_k, d_{i-1} = d_i (q_i + 1)
    d = [Fraction(0)] * k
    d[k - 1] = Fraction(1)
    if k >= 2:
        d[k - 2] = q[k - 1]
    for i in range(k - 2, 0, -1):
        d[i - 1] = d[i] * (q[i] + 1)
    return tuple(d)


def _cut_from_products(B: LatticeBasis, q: Point, k: int) -> LexCut:
    d = _d_from_products(q, k)
    coeffs = [Fraction(0)] * B.n
    for i in range(k):
        for j, c in enumerate(B.rows[i]):
            coeffs[j] += d[i] * c
    rhs = sum((d[i] * q[i] for i in range(k)), Fraction(0))
    return LexCut(k=k, d=d, inequality=LinearInequality(tuple(coeffs), rhs))


def lexcut_coeffs(B: LatticeBasis, xbar: Sequence, k: int) -> Point:
    _require_index(B, k)
    p = B.products(xbar)
    _require_integer(p, B.n)
    _require_cone(B, p)
    return _d_from_products(p, k)


def lexcut(B: LatticeBasis, xbar: Sequence, k: int) -> LexCut:
    """The k-th lex-cut of an integer point xbar of K"""
    _require_index(B, k)
    p = B.products(xbar)
    _require_integer(p, B.n)
    _require_cone(B, p)
    return _cut_from_products(B, p, k)


def lexcut_frac(B: LatticeBasis, xbar: Sequence, k: int, snap: Optional[Fraction] = None) -> LexCut:
    """
    The cut emitted by the cutting-plane loop for a fractional lex-min point.

    c^1 xbar..c^{k-1} xbar must be integer; c^k xbar enters only through its
    ceiling. The result is the k-th lex-cut of round_up_lex(xbar).
    """
    _require_index(B, k)
    p = products(B, xbar, snap)
    _require_integer(p, k - 1)
    q = p[:k - 1] + (Fraction(ceil(p[k - 1])),) + (Fraction(0),) * (B.n - k)
    if k >= 2:
        _require_cone(B, q)
    return _cut_from_products(B, q, k)


def extreme_points(B: LatticeBasis, xbar: Sequence) -> list[IntVector]:
    """Vertices v^1..v^l of Q(xbar), l = leading_index(xbar), with v^l = xbar"""
    p = B.products(xbar)
    _require_integer(p, B.n)
    ell = leading_index(B, xbar)
    vertices = []
    for k in range(1, ell):
        rhs = list(p[:k - 1]) + [p[k - 1] + 1] + [Fraction(0)] * (B.n - k)
        vertices.append(solve_unimodular(B, rhs))
    vertices.append(solve_unimodular(B, p))
    return vertices


def cone_inequalities(B: LatticeBasis) -> list[LinearInequality]:
    return [LinearInequality(row, 0) for row in B.rows]


def q_description(B: LatticeBasis, xbar: Sequence, trim: bool = False) -> list[LinearInequality]:
    """
    The n lex-cuts of xbar followed by the n cone inequalities c^i x >= 0.

    With trim, drops the k-th lex-cut when c^k xbar = 0 (it coincides with
    c^k x >= 0) and drops c^1 x >= 0 when c^1 xbar > 0 (dominated by the first
    lex-cut). The zero point gets the cone alone.
    """
    p = B.products(xbar)
    _require_integer(p, B.n)
    _require_cone(B, p)
    cone = cone_inequalities(B)
    if not any(p):
        return cone
    cuts = [lexcut(B, xbar, k).inequality for k in range(1, B.n + 1)]
    if not trim:
        return cuts + cone
    kept = [cut for k, cut in enumerate(cuts, start=1) if p[k - 1] != 0]
    logger.debug(f'trimmed {len(cuts) - len(kept)} lex-cuts of {tuple(p)}')
    if p[0] > 0:
        cone = cone[1:]
    return kept + cone
