import logging
from fractions import Fraction
from math import floor, isqrt
from typing import Sequence

from lexcut.lex.views import LinearInequality
from lexcut.oracles.simplex import SimplexTableau
from lexcut.oracles.views import BallBox, LinearQuery, OracleResult
from lexcut.views import IterationLimitError, dot

logger = logging.getLogger(__name__)

TANGENT_DENOMINATOR = 2**40


def round_down(value: Fraction, denominator: int = TANGENT_DENOMINATOR) -> Fraction:
    return Fraction(floor(value * denominator), denominator)


def sqrt_upper(value: Fraction, denominator: int = TANGENT_DENOMINATOR) -> Fraction:
    """Smallest s/denominator with (s/denominator)^2 >= value"""
    target = value.numerator * denominator * denominator
    s = isqrt(target // value.denominator)
    while s * s * value.denominator < target:
        s += 1
    return Fraction(s, denominator)


def tangent_cut(S: BallBox, x: Sequence[Fraction]) -> LinearInequality:
    """
    Supporting halfspace a.(y - center) <= rho of the ball, with a close to x - center.

    a is rounded to multiples of 2^-40 and rho is rounded up from r ||a||, so the
    whole ball satisfies the cut whatever the rounding did to a.
    """
    a = [round_down(v - c) for v, c in zip(x, S.center)]
    rho = sqrt_upper(S.radius_sq * sum(v * v for v in a))
    return LinearInequality(tuple(-v for v in a), -rho - dot(a, S.center))


class KelleyOracle:
    """
    Outer-approximation oracle for a BallBox.

    Solves the box LP, then adds the constraints of the query and the set and
    reoptimizes with the dual simplex. While the LP optimum leaves the ball by
    more than eps in squared norm, a tangent cut is appended and the dual
    simplex resumes from the current basis. Infeasibility of the outer LP is a
    certificate because every tangent is valid for the ball.

    Default values:
        eps: 1e-9
        max_tangents: 10_000
    """

    def __init__(self, eps: Fraction = Fraction(1, 10**9), max_tangents: int = 10_000):
        self.eps = Fraction(eps)
        self.max_tangents = max_tangents

    def minimize(self, S: BallBox, q: LinearQuery) -> OracleResult:
        n = S.dimension
        widths = [u - lo for u, lo in zip(S.upper, S.lower)]
        if any(w < 0 for w in widths):
            return OracleResult.infeasible()

        # y = x - lower, rows y_j + w_j = width_j
        rows = [[Fraction(1 if j in (i, n + i) else 0) for j in range(2 * n)] for i in range(n)]
        tableau = SimplexTableau(rows, list(widths), [n + i for i in range(n)], list(q.objective) + [Fraction(0)] * n)
        tableau.bland_primal()

        def add(ineq: LinearInequality) -> int:
            # a.x >= b  becomes  -a.y <= a.lower - b
            tableau.add_row_le([-a for a in ineq.coeffs], dot(ineq.coeffs, S.lower) - ineq.rhs)
            return tableau.basis[-1]

        constraints = list(S.halfspaces) + list(q.inequalities)
        for eq in q.equalities:
            constraints.extend(eq.as_inequalities())
        for ineq in constraints:
            add(ineq)

        tangent_columns: set[int] = set()
        for tangents in range(self.max_tangents + 1):
            if tableau.bland_dual() == 'infeasible':
                logger.debug(f'Outer LP infeasible after {tangents} tangents')
                return OracleResult.infeasible()
            y = tableau.values()
            x = tuple(lo + y[j] for j, lo in enumerate(S.lower))
            excess = S.ball_excess(x)
            if excess <= self.eps:
                logger.debug(f'Kelley converged after {tangents} tangents, excess {float(excess):.3g}')
                return OracleResult.optimal(x, dot(q.objective, x))
            if tangents == self.max_tangents:
                break
            cut = tangent_cut(S, x)
            if cut.is_satisfied(x):
                raise IterationLimitError(f'tangent cut no longer separates {tuple(map(float, x))}')
            self._drop_slack_tangents(tableau, tangent_columns)
            tangent_columns.add(add(cut))
        raise IterationLimitError(f'Kelley oracle did not reach eps={float(self.eps)} within {self.max_tangents} tangents')

    @staticmethod
    def _drop_slack_tangents(tableau: SimplexTableau, tangent_columns: set[int]) -> None:
        # inactive tangents (basic slack, strictly positive) do not support the current optimum
        for i in reversed(range(len(tableau.rows))):
            col = tableau.basis[i]
            if col in tangent_columns and tableau.rhs[i] > 0:
                tableau.remove_basic_row(i)
                tangent_columns.discard(col)
                shifted = {c - 1 if c > col else c for c in tangent_columns}
                tangent_columns.clear()
                tangent_columns.update(shifted)
