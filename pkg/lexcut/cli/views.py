from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

from lexcut.arith.service import gcd_normalize, is_unimodular
from lexcut.arith.views import LatticeBasis
from lexcut.lex.views import LinearInequality
from lexcut.oracles.service import validate_bounded
from lexcut.oracles.views import BallBox, FeasibleSet, PointCloud, Polytope, UnboundedSetError
from lexcut.solver.views import CutIteration, EnumState, SolveOutcome, SolverSettings
from lexcut.utils import format_decimal, format_rational, parse_rational
from lexcut.views import LexcutError

RationalValue = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


class InstanceError(LexcutError):
    """Error raised for malformed instance files or command arguments"""
    pass


# ----------------------------------------------------------------------
# instance files
# ----------------------------------------------------------------------


class PolytopeSchema(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    A: list[list[RationalValue]]
    b: list[RationalValue]


class PointCloudSchema(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: list[list[RationalValue]]


class BallBoxSchema(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    center: list[RationalValue]
    radius_sq: RationalValue
    lower: list[RationalValue]
    upper: list[RationalValue]


class SetSchema(BaseModel):
    """Exactly one of the three set representations"""

    polytope: Optional[PolytopeSchema] = None
    pointcloud: Optional[PointCloudSchema] = None
    ball_box: Optional[BallBoxSchema] = None

    @model_validator(mode='after')
    def exactly_one(self) -> SetSchema:
        given = [name for name in ('polytope', 'pointcloud', 'ball_box') if getattr(self, name) is not None]
        if len(given) != 1:
            raise ValueError(f'set needs exactly one of polytope, pointcloud, ball_box; got {given or "none"}')
        return self

    def build(self, n: int) -> FeasibleSet:
        if self.polytope is not None:
            rows = [tuple(r) for r in self.polytope.A]
            return Polytope(n, tuple(LinearInequality(r, b) for r, b in zip(rows, self.polytope.b)))
        if self.pointcloud is not None:
            return PointCloud.of(self.pointcloud.points, dimension=n)
        ball = self.ball_box
        return BallBox(tuple(ball.center), ball.radius_sq, tuple(ball.lower), tuple(ball.upper))


class InstanceFile(BaseModel):
    """
    A solver input: dimension, objective, optional basis and one feasible set.

    Rationals are integers or "p/q" strings. The basis, when present, must be
    unimodular with the normalized objective as first row.
    """

    model_config = ConfigDict(populate_by_name=True)

    n: int = Field(ge=1)
    objective: list[int]
    basis: Optional[list[list[int]]] = None
    feasible_set: SetSchema = Field(alias='set')

    @model_validator(mode='after')
    def check_shapes(self) -> InstanceFile:
        n = self.n
        if len(self.objective) != n:
            raise ValueError(f'objective has length {len(self.objective)}, expected {n}')
        if not any(self.objective):
            raise ValueError('objective vector is zero')
        if self.basis is not None:
            if len(self.basis) != n or any(len(row) != n for row in self.basis):
                raise ValueError(f'basis must be a {n}x{n} matrix')
            if not is_unimodular(self.basis):
                raise ValueError('basis not unimodular')
            primitive, _ = gcd_normalize(self.objective)
            if tuple(self.basis[0]) != primitive:
                raise ValueError(f'basis first row {self.basis[0]} differs from normalized objective {list(primitive)}')

        S = self.feasible_set
        if S.polytope is not None:
            if len(S.polytope.A) != len(S.polytope.b) or not S.polytope.A:
                raise ValueError('polytope needs as many rows in A as entries in b')
            if any(len(row) != n for row in S.polytope.A):
                raise ValueError(f'polytope rows must have length {n}')
            try:
                validate_bounded(S.build(n))
            except UnboundedSetError as err:
                raise ValueError(str(err)) from err
        elif S.pointcloud is not None:
            if any(len(p) != n for p in S.pointcloud.points):
                raise ValueError(f'points must have length {n}')
        else:
            ball = S.ball_box
            if not len(ball.center) == len(ball.lower) == len(ball.upper) == n:
                raise ValueError(f'ball_box vectors must have length {n}')
            if ball.radius_sq <= 0:
                raise ValueError('radius_sq must be positive')
        return self

    def to_set(self) -> FeasibleSet:
        return self.feasible_set.build(self.n)

    def lattice_basis(self) -> Optional[LatticeBasis]:
        if self.basis is None:
            return None
        return LatticeBasis(tuple(tuple(row) for row in self.basis))

    def save_to_file(self, filepath: str | Path) -> None:
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.model_dump(by_alias=True, exclude_none=True), f, indent=2)

    @classmethod
    def load_from_file(cls, filepath: str | Path) -> InstanceFile:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
        return cls.model_validate(data)


# ----------------------------------------------------------------------
# trace files
# ----------------------------------------------------------------------


class CutRecord(BaseModel):
    k: int
    d: list[str]
    coeffs: list[str]
    rhs: str


class IterationRecord(BaseModel):
    """One cutting-plane iteration or one enumeration step"""

    status: Literal['cut', 'optimal', 'infeasible', 'visited', 'empty']
    xbar: Optional[list[str]] = None
    xbar_up: Optional[list[int]] = None
    k: Optional[int] = None
    cut: Optional[CutRecord] = None
    alpha: Optional[list[int]] = None
    i_star: Optional[int] = None


class TraceFile(BaseModel):
    """
    Run metadata and iterations of one solve.

    Exact runs write rationals as "p/q"; numeric runs write decimal strings and
    record the eps and snap they ran with.
    """

    algorithm: Literal['cut', 'enum', 'brute']
    status: Literal['optimal', 'infeasible']
    exact: bool
    eps: Optional[str] = None
    snap: Optional[str] = None
    basis: list[list[int]]
    translation: list[int]
    ell: list[int]
    point: Optional[list[int]] = None
    value: Optional[str] = None
    cuts: int = 0
    enumerations: int = 0
    oracle_calls: int = 0
    iterations: list[IterationRecord] = Field(default_factory=list)

    @classmethod
    def from_outcome(cls, outcome: SolveOutcome, settings: SolverSettings) -> TraceFile:
        fmt = format_rational if outcome.exact else format_decimal

        def point(values) -> Optional[list[str]]:
            return None if values is None else [fmt(v) for v in values]

        iterations = []
        for entry in outcome.trace:
            if isinstance(entry, CutIteration):
                cut = None
                if entry.cut is not None:
                    cut = CutRecord(
                        k=entry.cut.k,
                        d=[fmt(v) for v in entry.cut.d],
                        coeffs=[format_rational(v) for v in entry.cut.inequality.coeffs],
                        rhs=format_rational(entry.cut.inequality.rhs),
                    )
                record = IterationRecord(
                    status=entry.status,
                    xbar=point(entry.xbar),
                    xbar_up=None if entry.xbar_up is None else list(entry.xbar_up),
                    k=entry.k,
                    cut=cut,
                )
            elif isinstance(entry, EnumState):
                record = IterationRecord(
                    status='empty' if entry.sstar_empty else 'visited',
                    xbar=point(entry.xbar),
                    xbar_up=None if entry.xbar_up is None else list(entry.xbar_up),
                    alpha=list(entry.alpha),
                    i_star=entry.i_star,
                )
            else:
                continue
            iterations.append(record)

        return cls(
            algorithm=outcome.algorithm,
            status=outcome.status,
            exact=outcome.exact,
            eps=None if outcome.exact else format_decimal(settings.eps),
            snap=None if outcome.exact else format_decimal(settings.snap),
            basis=[list(row) for row in outcome.basis.rows] if outcome.basis else [],
            translation=list(outcome.translation),
            ell=list(outcome.ell),
            point=None if outcome.point is None else list(outcome.point),
            value=None if outcome.value is None else format_rational(outcome.value),
            cuts=outcome.cuts,
            enumerations=outcome.enumerations,
            oracle_calls=outcome.oracle_calls,
            iterations=iterations,
        )

    def cut_inequalities(self) -> list[LinearInequality]:
        return [
            LinearInequality(tuple(parse_rational(v) for v in it.cut.coeffs), parse_rational(it.cut.rhs))
            for it in self.iterations
            if it.cut is not None
        ]

    def save_to_file(self, filepath: str | Path) -> None:
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.model_dump(exclude_none=True), f, indent=2)

    @classmethod
    def load_from_file(cls, filepath: str | Path) -> TraceFile:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
        return cls.model_validate(data)
