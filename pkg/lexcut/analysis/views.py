from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from lexcut.views import IntVector, LexcutError


class AnalysisError(LexcutError):
    """Base class for cut-analysis errors"""
    pass


class NotProperError(AnalysisError):
    """Error raised when a rounded inequality is already valid for the set"""
    pass


class NotApplicableError(AnalysisError):
    """Error raised when gamma is not the exact minimum of g x over the set"""
    pass


class NonIntegerGError(AnalysisError):
    """Error raised when a Chvatal-Gomory normal vector is not integer"""
    pass


@dataclass(frozen=True)
class SplitDisjunction:
    """pi x <= pi0  or  pi x >= pi0 + 1"""

    pi: IntVector
    pi0: int

    def __post_init__(self):
        object.__setattr__(self, 'pi', tuple(int(v) for v in self.pi))
        object.__setattr__(self, 'pi0', int(self.pi0))
        if not any(self.pi):
            raise ValueError('split disjunction needs a nonzero pi')

    def __str__(self) -> str:
        return f'pi=({",".join(str(v) for v in self.pi)}) pi0={self.pi0}'


@dataclass(frozen=True)
class CGInequality:
    """g x >= ceil(gamma), derived from the valid inequality g x >= gamma"""

    g: tuple[Fraction, ...]
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'g', tuple(Fraction(v) for v in self.g))
        object.__setattr__(self, 'gamma', Fraction(self.gamma))

    @property
    def rounded_rhs(self) -> int:
        return ceil(self.gamma)


@dataclass
class HullCheckReport:
    points_checked: int = 0
    mismatches: int = 0
    examples: list[IntVector] = field(default_factory=list)
    vertex_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and not self.vertex_failures
