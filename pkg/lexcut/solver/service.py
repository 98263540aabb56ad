import logging
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from lexcut.arith.service import complete_basis, gcd_normalize, solve_unimodular
from lexcut.arith.views import LatticeBasis
from lexcut.lex.service import first_fractional_index, lexcut_frac, round_up_lex, snap_value
from lexcut.lex.views import LinearInequality
from lexcut.oracles.service import LinearOracle, is_exact, restrict, translate
from lexcut.oracles.views import FeasibleSet, LinearEquation, OracleResult
from lexcut.solver.views import (
    BasisMismatchError,
    CutIteration,
    EmptyInputError,
    EnumState,
    Preprocessed,
    SolveOutcome,
    SolverSettings,
    ZeroObjectiveError,
)
from lexcut.utils import format_point, time_execution_sync
from lexcut.views import DimensionMismatchError, IntVector, IterationLimitError, dot

logger = logging.getLogger(__name__)


def shift_point(x: Sequence, t: Sequence[int]) -> tuple:
    return tuple(a + b for a, b in zip(x, t))


def resolve_basis(c: Sequence[int], B: Optional[LatticeBasis] = None) -> LatticeBasis:
    """B itself when its first row is the normalized objective, otherwise a completion of it"""
    if not any(c):
        raise ZeroObjectiveError('objective vector is zero')
    primitive, _ = gcd_normalize(c)
    if B is None:
        return complete_basis(primitive)
    if B.n != len(primitive):
        raise DimensionMismatchError(f'basis of dimension {B.n} for an objective of length {len(primitive)}')
    if B.rows[0] != primitive:
        raise BasisMismatchError(f'basis first row {B.rows[0]} differs from normalized objective {primitive}')
    return B


def intersect_cone(S: FeasibleSet, B: LatticeBasis) -> FeasibleSet:
    for row in B.rows:
        S = restrict(S, LinearInequality(row, 0))
    return S


class LexSolver:
    """
    Lexicographic cutting-plane and lex-enumeration methods over an oracle.

    Both methods start from `preprocess`: the set is translated by an integer
    vector so that each c^i x has lower bound in [0, 1), then intersected with
    the cone K. Lex-min points are computed by n nested oracle calls. Outcomes
    and traces are reported in the original coordinates.
    """

    def __init__(self, settings: Optional[SolverSettings] = None, oracle: Optional[LinearOracle] = None):
        self.settings = settings or SolverSettings.from_env()
        self.oracle = oracle or LinearOracle(eps=self.settings.eps_exact, max_tangents=self.settings.max_tangents)

    def _snap(self, S: FeasibleSet) -> Optional[Fraction]:
        return None if is_exact(S) else self.settings.snap_exact

    def _lower_bounds(self, S: FeasibleSet, B: LatticeBasis) -> Optional[list[Fraction]]:
        lower = []
        for row in B.rows:
            result = self.oracle.minimize(S, row)
            if not result.is_feasible:
                return None
            lower.append(result.value)
        return lower

    # ------------------------------------------------------------------
    # preprocessing and lex-min
    # ------------------------------------------------------------------

    def preprocess(self, S: FeasibleSet, c: Sequence[int], B: Optional[LatticeBasis] = None) -> Preprocessed:
        B = resolve_basis(c, B)
        if B.n != S.dimension:
            raise DimensionMismatchError(f'objective of length {B.n} for a set of dimension {S.dimension}')
        snap = self._snap(S)
        lower = []
        for row in B.rows:
            bounds = self.oracle.bounds(S, row)
            if bounds is None:
                raise EmptyInputError('the input set is empty')
            lower.append(bounds[0])
        ell = tuple(ceil(snap_value(v, snap)) for v in lower)
        t = solve_unimodular(B, ell)
        translated = intersect_cone(translate(S, t), B)
        logger.debug(f'Preprocessed: ell={ell}, translation={t}')
        return Preprocessed(B, tuple(lower), ell, t, translated)

    def lex_min_over(self, S: FeasibleSet, B: LatticeBasis, extra: Sequence[LinearInequality] = ()) -> OracleResult:
        """
        Minimize c^1 x, then c^2 x with c^1 x fixed, and so on.

        Exact sets fix each value with an equation. Numeric sets fix c^i x <= value + fix_tol,
        since the outer approximation may undershoot the true minimum.
        """
        inequalities = list(extra)
        equalities: list[LinearEquation] = []
        exact = is_exact(S)
        result = OracleResult.infeasible()
        for i, row in enumerate(B.rows, start=1):
            result = self.oracle.minimize(S, row, inequalities, equalities)
            if not result.is_feasible:
                if i > 1:
                    logger.warning(f'lex-min lost feasibility at c^{i}; treating the set as empty')
                return result
            if exact:
                equalities.append(LinearEquation(row, result.value))
            else:
                bound = result.value + self.settings.fix_tol_exact
                inequalities.append(LinearInequality(tuple(-v for v in row), -bound))
        return OracleResult.optimal(result.point, dot(B.rows[0], result.point))

    def lex_min(self, P: Preprocessed, extra: Sequence[LinearInequality] = ()) -> OracleResult:
        return self.lex_min_over(P.set, P.basis, extra)

    # ------------------------------------------------------------------
    # cutting-plane method
    # ------------------------------------------------------------------

    def _refresh(self, S: FeasibleSet, B: LatticeBasis) -> tuple[FeasibleSet, IntVector]:
        lower = self._lower_bounds(S, B)
        zero = (0,) * B.n
        if lower is None:
            return S, zero
        snap = self._snap(S)
        ell = tuple(ceil(snap_value(v, snap)) for v in lower)
        if not any(ell):
            return S, zero
        shift = solve_unimodular(B, ell)
        logger.debug(f'Refreshed bounds {ell}, shifting by {shift}')
        return intersect_cone(translate(S, shift), B), shift

    @time_execution_sync('--algorithm1_solve')
    def algorithm1_solve(self, S: FeasibleSet, c: Sequence[int], B: Optional[LatticeBasis] = None) -> SolveOutcome:
        calls_before = self.oracle.calls
        P = self.preprocess(S, c, B)
        B = P.basis
        t = P.translation
        current = P.set
        snap = self._snap(current)
        outcome = SolveOutcome(
            status='infeasible', algorithm='cut', basis=B, ell=P.ell, exact=is_exact(S), translation=t
        )

        def record(entry: CutIteration) -> None:
            if self.settings.record_trace:
                outcome.trace.append(entry)

        for iteration in range(self.settings.max_iterations):
            if self.settings.refresh_bounds and iteration > 0:
                current, shift = self._refresh(current, B)
                t = shift_point(t, shift)

            result = self.lex_min_over(current, B)
            if not result.is_feasible:
                record(CutIteration(None, None, None, None, 'infeasible'))
                break

            xbar = result.point
            xup = round_up_lex(B, xbar, snap)
            k = first_fractional_index(B, xbar, snap)
            if k is None:
                record(CutIteration(shift_point(xbar, t), shift_point(xup, t), None, None, 'optimal'))
                outcome.status = 'optimal'
                outcome.point = shift_point(xup, t)
                outcome.value = dot(c, outcome.point)
                break

            cut = lexcut_frac(B, xbar, k, snap)
            record(CutIteration(shift_point(xbar, t), shift_point(xup, t), k, cut.translated(tuple(-v for v in t)), 'cut'))
            current = restrict(current, cut.inequality)
            outcome.cuts += 1
            logger.debug(f'Cut {outcome.cuts}: k={k}, x-up={format_point(shift_point(xup, t))}, {cut.translated(tuple(-v for v in t))}')
        else:
            raise IterationLimitError(f'cutting-plane loop exceeded {self.settings.max_iterations} iterations')

        outcome.translation = t
        outcome.oracle_calls = self.oracle.calls - calls_before
        self._log_outcome(outcome)
        return outcome

    # ------------------------------------------------------------------
    # lex-enumeration
    # ------------------------------------------------------------------

    @staticmethod
    def sstar_constraints(B: LatticeBasis, alpha: Sequence[int], i_star: int) -> list[LinearInequality]:
        """c^i x = alpha_i for i < i_star, c^i x >= alpha_i for i >= i_star"""
        constraints = []
        for i, (row, a) in enumerate(zip(B.rows, alpha), start=1):
            if i < i_star:
                constraints.extend(LinearEquation(row, a).as_inequalities())
            else:
                constraints.append(LinearInequality(row, a))
        return constraints

    def _contains_point(self, S: FeasibleSet, B: LatticeBasis, xup: Sequence[int], constraints: Sequence[LinearInequality]) -> bool:
        fixings = [LinearEquation(row, v) for row, v in zip(B.rows, B.products(xup))]
        return self.oracle.minimize(S, (0,) * B.n, constraints, fixings).is_feasible

    def membership_x_up(self, P: Preprocessed, xup: Sequence[int], alpha_constraints: Sequence[LinearInequality] = ()) -> bool:
        """One oracle call: is the integer point xup in S* (P's set under the alpha constraints)?"""
        return self._contains_point(P.set, P.basis, xup, alpha_constraints)

    @time_execution_sync('--algorithm2_solve')
    def algorithm2_solve(self, S: FeasibleSet, c: Sequence[int], B: Optional[LatticeBasis] = None) -> SolveOutcome:
        calls_before = self.oracle.calls
        P = self.preprocess(S, c, B)
        B = P.basis
        t = P.translation
        n = B.n
        snap = self._snap(P.set)
        outcome = SolveOutcome(
            status='infeasible', algorithm='enum', basis=B, ell=P.ell, exact=is_exact(S), translation=t
        )

        def record(entry: EnumState) -> None:
            if self.settings.record_trace:
                outcome.trace.append(entry)

        alpha = [0] * n
        i_star = 1
        for _ in range(self.settings.max_iterations):
            constraints = self.sstar_constraints(B, alpha, i_star)
            outcome.enumerations += 1
            result = self.lex_min_over(P.set, B, constraints)
            if not result.is_feasible:
                record(EnumState(tuple(alpha), i_star, True))
                if i_star == 1:
                    break
                i_star -= 1
                alpha[i_star - 1] += 1
                alpha[i_star:] = [0] * (n - i_star)
                logger.debug(f'S* empty, backtracking to i*={i_star}, alpha={tuple(alpha)}')
                continue

            xbar = result.point
            xup = round_up_lex(B, xbar, snap)
            record(EnumState(tuple(alpha), i_star, False, shift_point(xbar, t), shift_point(xup, t)))
            if self.membership_x_up(P, xup, constraints):
                outcome.status = 'optimal'
                outcome.point = shift_point(xup, t)
                outcome.value = dot(c, outcome.point)
                break
            i_star = n
            alpha = [int(v) for v in B.products(xup)]
            if self.settings.strengthen_alpha:
                alpha[-1] += 1
            logger.debug(f'x-up {format_point(xup)} outside S*, advancing to alpha={tuple(alpha)}')
        else:
            raise IterationLimitError(f'lex-enumeration exceeded {self.settings.max_iterations} steps')

        outcome.oracle_calls = self.oracle.calls - calls_before
        self._log_outcome(outcome)
        return outcome

    @staticmethod
    def _log_outcome(outcome: SolveOutcome) -> None:
        steps = f'{outcome.cuts} cuts' if outcome.algorithm == 'cut' else f'{outcome.enumerations} enumerations'
        if outcome.is_optimal:
            logger.result(f'✅ Optimal {format_point(outcome.point)} value {outcome.value} after {steps}')
        else:
            logger.result(f'❌ No integer point after {steps}')


def lex_min(P: Preprocessed, extra: Sequence[LinearInequality] = (), settings: Optional[SolverSettings] = None) -> OracleResult:
    return LexSolver(settings).lex_min(P, extra)


def algorithm1_solve(S: FeasibleSet, c: Sequence[int], B: Optional[LatticeBasis] = None, settings: Optional[SolverSettings] = None) -> SolveOutcome:
    return LexSolver(settings).algorithm1_solve(S, c, B)


def algorithm2_solve(S: FeasibleSet, c: Sequence[int], B: Optional[LatticeBasis] = None, settings: Optional[SolverSettings] = None) -> SolveOutcome:
    return LexSolver(settings).algorithm2_solve(S, c, B)
