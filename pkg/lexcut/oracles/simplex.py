import logging
from fractions import Fraction
from typing import Literal, Sequence

from lexcut.lex.views import LinearInequality
from lexcut.oracles.views import LinearEquation, OracleResult, UnboundedQueryError
from lexcut.views import dot

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


class SimplexTableau:
    """
    Dense exact tableau for min cost.y, rows.y = rhs, y >= 0.

    Each row is solved for its basic column (a unit column). `c` holds the
    reduced costs and `z` the objective value of the current basic solution.
    Pivoting follows Bland's smallest-index rule in both the primal and the
    dual method, so neither can cycle.
    """

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int], cost: list[Fraction]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.blocked: set[int] = set()
        self.pivots = 0
        self.set_cost(cost)

    @property
    def num_columns(self) -> int:
        return len(self.cost)

    def set_cost(self, cost: Sequence[Fraction]) -> None:
        self.cost = [Fraction(v) for v in cost]
        self.c = list(self.cost)
        self.z = ZERO
        for i, b in enumerate(self.basis):
            f = self.cost[b]
            if f:
                self.c = [cj - f * t for cj, t in zip(self.c, self.rows[i])]
                self.z += f * self.rhs[i]

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        row = [v / piv for v in self.rows[i]]
        self.rows[i] = row
        self.rhs[i] /= piv
        for k in range(len(self.rows)):
            if k != i:
                f = self.rows[k][j]
                if f:
                    self.rows[k] = [a - f * b for a, b in zip(self.rows[k], row)]
                    self.rhs[k] -= f * self.rhs[i]
        f = self.c[j]
        if f:
            self.c = [a - f * b for a, b in zip(self.c, row)]
            self.z += f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def bland_primal(self) -> Literal['optimal', 'unbounded']:
        while True:
            entering = next(
                (j for j in range(self.num_columns) if self.c[j] < 0 and j not in self.blocked), None
            )
            if entering is None:
                return 'optimal'
            candidates = [
                (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
                for i in range(len(self.rows))
                if self.rows[i][entering] > 0
            ]
            if not candidates:
                return 'unbounded'
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def bland_dual(self) -> Literal['optimal', 'infeasible']:
        while True:
            negative = [(self.basis[i], i) for i in range(len(self.rows)) if self.rhs[i] < 0]
            if not negative:
                return 'optimal'
            _, leaving = min(negative)
            candidates = [
                (self.c[j] / -self.rows[leaving][j], j)
                for j in range(self.num_columns)
                if self.rows[leaving][j] < 0 and j not in self.blocked
            ]
            if not candidates:
                return 'infeasible'
            _, entering = min(candidates)
            self.pivot(leaving, entering)

    def add_column(self, cost: Fraction = ZERO) -> int:
        for row in self.rows:
            row.append(ZERO)
        self.cost.append(Fraction(cost))
        self.c.append(Fraction(cost))
        return len(self.cost) - 1

    def add_row_le(self, coeffs: Sequence[Fraction], rhs: Fraction) -> None:
        """Append coeffs.y <= rhs with a fresh basic slack; the row may start primal infeasible"""
        slack = self.add_column()
        row = [Fraction(v) for v in coeffs] + [ZERO] * (self.num_columns - len(coeffs))
        row[slack] = Fraction(1)
        r = Fraction(rhs)
        for i, b in enumerate(self.basis):
            f = row[b]
            if f:
                row = [a - f * t for a, t in zip(row, self.rows[i])]
                r -= f * self.rhs[i]
        self.rows.append(row)
        self.rhs.append(r)
        self.basis.append(slack)

    def drop_row(self, i: int) -> None:
        del self.rows[i]
        del self.rhs[i]
        del self.basis[i]

    def remove_basic_row(self, i: int) -> int:
        """Delete row i together with its basic column; returns the removed column index"""
        col = self.basis[i]
        self.drop_row(i)
        for row in self.rows:
            del row[col]
        del self.cost[col]
        del self.c[col]
        self.basis = [b - 1 if b > col else b for b in self.basis]
        self.blocked = {b - 1 if b > col else b for b in self.blocked if b != col}
        return col

    def values(self) -> list[Fraction]:
        y = [ZERO] * self.num_columns
        for i, b in enumerate(self.basis):
            y[b] = self.rhs[i]
        return y


def minimize_lp(
    objective: Sequence[Fraction],
    inequalities: Sequence[LinearInequality] = (),
    equalities: Sequence[LinearEquation] = (),
) -> OracleResult:
    """
    Exact two-phase simplex for min objective.x s.t. a x >= b, e x = f, x free.

    Free variables are split as x = u - v. Phase one minimizes the sum of one
    artificial per row; artificials left in the basis at level zero are pivoted
    out or their rows dropped as redundant.
    """
    n = len(objective)
    m_ineq = len(inequalities)
    row_data = [(ineq.coeffs, ineq.rhs, idx) for idx, ineq in enumerate(inequalities)]
    row_data += [(eq.coeffs, eq.rhs, None) for eq in equalities]
    m = len(row_data)

    num_structural = 2 * n + m_ineq
    num_columns = num_structural + m
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r, (coeffs, b, slack_idx) in enumerate(row_data):
        row = [ZERO] * num_columns
        for j, a in enumerate(coeffs):
            row[j] = Fraction(a)
            row[n + j] = -Fraction(a)
        if slack_idx is not None:
            row[2 * n + slack_idx] = Fraction(-1)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        row[num_structural + r] = Fraction(1)
        rows.append(row)
        rhs.append(b)

    artificials = set(range(num_structural, num_columns))
    phase_one = [ZERO] * num_structural + [Fraction(1)] * m
    tableau = SimplexTableau(rows, rhs, list(range(num_structural, num_columns)), phase_one)
    tableau.bland_primal()
    if tableau.z > 0:
        return OracleResult.infeasible()

    for i in reversed(range(len(tableau.rows))):
        if tableau.basis[i] not in artificials:
            continue
        j = next((j for j in range(num_structural) if tableau.rows[i][j] != 0), None)
        if j is None:
            tableau.drop_row(i)
        else:
            tableau.pivot(i, j)
    tableau.blocked = artificials

    cost = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective]
    tableau.set_cost(cost + [ZERO] * (num_columns - 2 * n))
    if tableau.bland_primal() == 'unbounded':
        raise UnboundedQueryError(f'objective {tuple(objective)} is unbounded below')

    y = tableau.values()
    x = tuple(y[j] - y[n + j] for j in range(n))
    logger.debug(f'LP solved with {tableau.pivots} pivots, value {tableau.z}')
    return OracleResult.optimal(x, dot(objective, x))
