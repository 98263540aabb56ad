import logging
from fractions import Fraction
from typing import Optional, Sequence

from lexcut.lex.views import LinearInequality
from lexcut.oracles.kelley import KelleyOracle
from lexcut.oracles.simplex import minimize_lp
from lexcut.oracles.views import (
    BallBox,
    FeasibleSet,
    LinearEquation,
    LinearQuery,
    OracleResult,
    PointCloud,
    Polytope,
    UnboundedQueryError,
    UnboundedSetError,
)
from lexcut.views import DimensionMismatchError, as_point, dot

logger = logging.getLogger(__name__)


def polytope_oracle(P: Polytope, q: LinearQuery) -> OracleResult:
    return minimize_lp(q.objective, list(P.inequalities) + list(q.inequalities), q.equalities)


def pointcloud_oracle(S: PointCloud, q: LinearQuery) -> OracleResult:
    """Exact scan; ties on the objective go to the lex-smallest point"""
    feasible = [p for p in S.points if q.is_satisfied(p)]
    if not feasible:
        return OracleResult.infeasible()
    best = min(feasible, key=lambda p: (dot(q.objective, p), p))
    return OracleResult.optimal(best, dot(q.objective, best))


def ballbox_oracle(S: BallBox, q: LinearQuery, eps: Fraction, max_tangents: int = 10_000) -> OracleResult:
    return KelleyOracle(eps=eps, max_tangents=max_tangents).minimize(S, q)


def is_exact(S: FeasibleSet) -> bool:
    return not isinstance(S, BallBox)


def restrict(S: FeasibleSet, H: LinearInequality) -> FeasibleSet:
    """S intersected with the halfspace H"""
    if H.n != S.dimension:
        raise DimensionMismatchError(f'halfspace of length {H.n} for a set of dimension {S.dimension}')
    if isinstance(S, Polytope):
        return Polytope(S.dimension, S.inequalities + (H,))
    if isinstance(S, PointCloud):
        return PointCloud(S.dimension, tuple(p for p in S.points if H.is_satisfied(p)))
    return BallBox(S.center, S.radius_sq, S.lower, S.upper, S.halfspaces + (H,))


def translate(S: FeasibleSet, t: Sequence[int]) -> FeasibleSet:
    """The set {x - t : x in S}"""
    t = as_point(t)
    if isinstance(S, Polytope):
        return Polytope(S.dimension, tuple(h.translated(t) for h in S.inequalities))
    if isinstance(S, PointCloud):
        return PointCloud(S.dimension, tuple(tuple(v - s for v, s in zip(p, t)) for p in S.points))

    def shift(v):
        return tuple(a - s for a, s in zip(v, t))

    return BallBox(shift(S.center), S.radius_sq, shift(S.lower), shift(S.upper), tuple(h.translated(t) for h in S.halfspaces))


def contains(S: FeasibleSet, x: Sequence) -> bool:
    """Exact membership test"""
    return S.contains(as_point(x))


class LinearOracle:
    """
    Dispatches linear queries to the oracle matching the set representation and
    counts the calls.

    Default values:
        eps: 1e-9
        max_tangents: 10_000
    """

    def __init__(self, eps: Fraction = Fraction(1, 10**9), max_tangents: int = 10_000):
        self.eps = Fraction(eps)
        self.max_tangents = max_tangents
        self.calls = 0

    def minimize(
        self,
        S: FeasibleSet,
        objective: Sequence,
        inequalities: Sequence[LinearInequality] = (),
        equalities: Sequence[LinearEquation] = (),
    ) -> OracleResult:
        return self.query(S, LinearQuery(as_point(objective), tuple(equalities), tuple(inequalities)))

    def query(self, S: FeasibleSet, q: LinearQuery) -> OracleResult:
        if q.n != S.dimension:
            raise DimensionMismatchError(f'query of dimension {q.n} for a set of dimension {S.dimension}')
        self.calls += 1
        if isinstance(S, Polytope):
            return polytope_oracle(S, q)
        if isinstance(S, PointCloud):
            return pointcloud_oracle(S, q)
        return ballbox_oracle(S, q, self.eps, self.max_tangents)

    def bounds(self, S: FeasibleSet, direction: Sequence) -> Optional[tuple[Fraction, Fraction]]:
        """(min, max) of direction.x over S, None when S is empty"""
        low = self.minimize(S, direction)
        if not low.is_feasible:
            return None
        high = self.minimize(S, tuple(-Fraction(v) for v in direction))
        return low.value, -high.value


def validate_bounded(P: Polytope) -> None:
    """Minimize and maximize every coordinate; raises UnboundedSetError otherwise"""
    oracle = LinearOracle()
    for j in range(P.dimension):
        e = tuple(1 if i == j else 0 for i in range(P.dimension))
        try:
            oracle.bounds(P, e)
        except UnboundedQueryError as err:
            raise UnboundedSetError(f'polytope is unbounded along x{j + 1}') from err
    logger.debug(f'polytope with {len(P.inequalities)} rows is bounded')
