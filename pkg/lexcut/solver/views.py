from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from lexcut.arith.views import LatticeBasis
from lexcut.lex.views import LexCut
from lexcut.oracles.views import FeasibleSet
from lexcut.views import IntVector, LexcutError, Point

ITER_LIMIT_ENV = 'LEXCUT_ITER_LIMIT'


class SolverError(LexcutError):
    """Base class for solver errors"""
    pass


class EmptyInputError(SolverError):
    """Error raised when the input set is empty before any cut"""
    pass


class ZeroObjectiveError(SolverError):
    """Error raised when the objective vector is zero"""
    pass


class BasisMismatchError(SolverError):
    """Error raised when a supplied basis does not start with the normalized objective"""
    pass


class SolverSettings(BaseModel):
    """Options for the lex solvers"""

    eps: float = Field(default=1e-9, gt=0)
    snap: float = Field(default=1e-6, gt=0, lt=0.5)
    fix_tol: float = Field(default=1e-7, ge=0)
    refresh_bounds: bool = False
    strengthen_alpha: bool = False
    record_trace: bool = True
    max_iterations: int = Field(default=1_000_000, ge=1)
    max_tangents: int = Field(default=10_000, ge=1)
    max_box_cells: int = Field(default=10_000_000, ge=1)

    @classmethod
    def from_env(cls, **overrides) -> SolverSettings:
        limit = os.getenv(ITER_LIMIT_ENV)
        if limit:
            overrides.setdefault('max_iterations', int(limit))
            overrides.setdefault('max_tangents', int(limit))
        return cls(**overrides)

    @property
    def eps_exact(self) -> Fraction:
        return Fraction(repr(self.eps))

    @property
    def snap_exact(self) -> Fraction:
        return Fraction(repr(self.snap))

    @property
    def fix_tol_exact(self) -> Fraction:
        return Fraction(repr(self.fix_tol))


@dataclass(frozen=True)
class Preprocessed:
    """A set translated so that every c^i x has lower bound in [0, 1), then cut down to the cone K"""

    basis: LatticeBasis
    ell_star: Point
    ell: IntVector
    translation: IntVector
    set: FeasibleSet


@dataclass(frozen=True)
class CutIteration:
    """One pass of the cutting-plane loop, in original coordinates"""

    xbar: Optional[Point]
    xbar_up: Optional[IntVector]
    k: Optional[int]
    cut: Optional[LexCut]
    status: Literal['cut', 'optimal', 'infeasible']


@dataclass(frozen=True)
class EnumState:
    """One execution of the enumeration's restriction step; alpha is in translated coordinates"""

    alpha: IntVector
    i_star: int
    sstar_empty: bool
    xbar: Optional[Point] = None
    xbar_up: Optional[IntVector] = None


TraceEntry = Union[CutIteration, EnumState]


@dataclass
class SolveOutcome:
    status: Literal['optimal', 'infeasible']
    algorithm: Literal['cut', 'enum', 'brute']
    point: Optional[IntVector] = None
    value: Optional[Fraction] = None
    trace: list[TraceEntry] = field(default_factory=list)
    basis: Optional[LatticeBasis] = None
    translation: IntVector = ()
    ell: IntVector = ()
    exact: bool = True
    cuts: int = 0
    enumerations: int = 0
    oracle_calls: int = 0

    @property
    def is_optimal(self) -> bool:
        return self.status == 'optimal'

    def x_up_sequence(self) -> list[IntVector]:
        return [it.xbar_up for it in self.trace if isinstance(it, CutIteration) and it.xbar_up is not None]

    def alpha_sequence(self) -> list[IntVector]:
        return [it.alpha for it in self.trace if isinstance(it, EnumState)]
