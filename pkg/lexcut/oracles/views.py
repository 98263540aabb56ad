from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

from lexcut.lex.views import LinearInequality
from lexcut.views import DimensionMismatchError, LexcutError, Point, as_point, dot


class OracleError(LexcutError):
    """Base class for oracle errors"""
    pass


class UnboundedQueryError(OracleError):
    """Error raised when a linear program over a supposedly bounded set is unbounded"""
    pass


class UnboundedSetError(OracleError):
    """Error raised when a polytope fails the boundedness check"""
    pass


@dataclass(frozen=True)
class LinearEquation:
    """coeffs . x == rhs"""

    coeffs: Point
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', as_point(self.coeffs))
        object.__setattr__(self, 'rhs', Fraction(self.rhs))

    def residual(self, x: Sequence) -> Fraction:
        return dot(self.coeffs, x) - self.rhs

    def as_inequalities(self) -> tuple[LinearInequality, LinearInequality]:
        return (
            LinearInequality(self.coeffs, self.rhs),
            LinearInequality(tuple(-a for a in self.coeffs), -self.rhs),
        )


@dataclass(frozen=True)
class LinearQuery:
    """minimize objective . x subject to the equalities and inequalities, over the set"""

    objective: Point
    equalities: tuple[LinearEquation, ...] = ()
    inequalities: tuple[LinearInequality, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'objective', as_point(self.objective))
        object.__setattr__(self, 'equalities', tuple(self.equalities))
        object.__setattr__(self, 'inequalities', tuple(self.inequalities))
        n = len(self.objective)
        for row in [e.coeffs for e in self.equalities] + [i.coeffs for i in self.inequalities]:
            if len(row) != n:
                raise DimensionMismatchError(f'constraint of length {len(row)} in a query of dimension {n}')

    @property
    def n(self) -> int:
        return len(self.objective)

    def is_satisfied(self, x: Sequence, tol: Fraction = Fraction(0)) -> bool:
        return all(abs(e.residual(x)) <= tol for e in self.equalities) and all(
            i.is_satisfied(x, tol) for i in self.inequalities
        )


@dataclass(frozen=True)
class OracleResult:
    status: Literal['optimal', 'infeasible']
    point: Optional[Point] = None
    value: Optional[Fraction] = None

    @classmethod
    def infeasible(cls) -> OracleResult:
        return cls('infeasible')

    @classmethod
    def optimal(cls, point: Sequence, value: Fraction) -> OracleResult:
        return cls('optimal', as_point(point), Fraction(value))

    @property
    def is_feasible(self) -> bool:
        return self.status == 'optimal'


@dataclass(frozen=True)
class Polytope:
    """{x : a x >= b for every stored row}, assumed bounded"""

    dimension: int
    inequalities: tuple[LinearInequality, ...]

    @classmethod
    def from_matrix(cls, A: Sequence[Sequence], b: Sequence) -> Polytope:
        if len(A) != len(b) or not A:
            raise DimensionMismatchError(f'{len(A)} rows against {len(b)} right-hand sides')
        return cls(len(A[0]), tuple(LinearInequality(row, rhs) for row, rhs in zip(A, b)))

    def contains(self, x: Sequence) -> bool:
        return all(i.is_satisfied(x) for i in self.inequalities)


@dataclass(frozen=True)
class PointCloud:
    dimension: int
    points: tuple[Point, ...]

    @classmethod
    def of(cls, points: Sequence[Sequence], dimension: Optional[int] = None) -> PointCloud:
        points = tuple(as_point(p) for p in points)
        if dimension is None:
            if not points:
                raise DimensionMismatchError('an empty point cloud needs an explicit dimension')
            dimension = len(points[0])
        if any(len(p) != dimension for p in points):
            raise DimensionMismatchError(f'point cloud mixes dimensions, expected {dimension}')
        return cls(dimension, points)

    def contains(self, x: Sequence) -> bool:
        return as_point(x) in self.points


@dataclass(frozen=True)
class BallBox:
    """
    {x : ||x - center||^2 <= radius_sq, lower <= x <= upper} cut by extra halfspaces.

    Default values:
        halfspaces: ()
    """

    center: Point
    radius_sq: Fraction
    lower: Point
    upper: Point
    halfspaces: tuple[LinearInequality, ...] = field(default=())

    def __post_init__(self):
        for name in ('center', 'lower', 'upper'):
            object.__setattr__(self, name, as_point(getattr(self, name)))
        object.__setattr__(self, 'radius_sq', Fraction(self.radius_sq))
        if self.radius_sq <= 0:
            raise ValueError('radius_sq must be positive')
        if not len(self.center) == len(self.lower) == len(self.upper):
            raise DimensionMismatchError('center and box bounds differ in length')

    @classmethod
    def hard_instance(cls, n: int) -> BallBox:
        """Ball around (1/2,..,1/2) with radius_sq n/4 - 3/16 inside [0,1]^n: no integer point, 2^n - 1 cuts"""
        half = Fraction(1, 2)
        return cls((half,) * n, Fraction(n, 4) - Fraction(3, 16), (0,) * n, (1,) * n)

    @property
    def dimension(self) -> int:
        return len(self.center)

    def ball_excess(self, x: Sequence) -> Fraction:
        return sum(((Fraction(v) - c) ** 2 for v, c in zip(x, self.center)), Fraction(0)) - self.radius_sq

    def contains(self, x: Sequence) -> bool:
        return (
            self.ball_excess(x) <= 0
            and all(lo <= v <= up for v, lo, up in zip(x, self.lower, self.upper))
            and all(h.is_satisfied(x) for h in self.halfspaces)
        )


FeasibleSet = Union[Polytope, PointCloud, BallBox]
