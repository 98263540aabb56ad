import logging
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd, prod
from typing import Optional, Sequence

from lexcut.analysis.views import (
    CGInequality,
    HullCheckReport,
    NonIntegerGError,
    NotApplicableError,
    NotProperError,
    SplitDisjunction,
)
from lexcut.arith.service import complete_basis, gcd_normalize, unimodular_inverse
from lexcut.arith.views import LatticeBasis
from lexcut.lex.service import (
    extreme_points,
    first_fractional_index,
    leading_index,
    lex_cmp,
    lex_sorted,
    lexcut,
    lexcut_frac,
    q_description,
    round_up_lex,
    snap_value,
)
from lexcut.lex.views import LexCut, LexOrder, LinearInequality
from lexcut.oracles.service import LinearOracle, is_exact, restrict
from lexcut.oracles.views import BallBox, FeasibleSet, PointCloud
from lexcut.solver.service import LexSolver, resolve_basis
from lexcut.solver.views import SolveOutcome, SolverSettings
from lexcut.utils import format_point, time_execution_sync
from lexcut.views import BoxTooLargeError, IntVector, LexcutError, dot, is_integral

logger = logging.getLogger(__name__)


def _tolerance(S: FeasibleSet, oracle: LinearOracle) -> Fraction:
    return Fraction(0) if is_exact(S) else oracle.eps


# ----------------------------------------------------------------------
# Chvatal-Gomory inequalities
# ----------------------------------------------------------------------


def cg_to_lexcut(
    S: FeasibleSet, cg: CGInequality, settings: Optional[SolverSettings] = None
) -> tuple[LatticeBasis, LexCut]:
    """
    Reproduce the CG cut g x >= ceil(gamma) as the first cut of the cutting-plane loop.

    g is normalized to a primitive vector, B is completed from it, and the lex-min x of S
    under B has g x = gamma fractional, so the emitted cut is g x >= ceil(g x).
    """
    if not all(is_integral(v) for v in cg.g):
        raise NonIntegerGError(f'g = {format_point(cg.g)} is not integer')
    primitive, factor = gcd_normalize([int(v) for v in cg.g])
    gamma = cg.gamma / factor
    target = LinearInequality(primitive, ceil(gamma))

    solver = LexSolver(settings)
    tol = _tolerance(S, solver.oracle)
    low = solver.oracle.minimize(S, primitive)
    if not low.is_feasible or low.value >= target.rhs - tol:
        raise NotProperError(f'{target} is already valid for the set')
    if abs(low.value - gamma) > tol:
        raise NotApplicableError(f'gamma = {gamma} differs from min g x = {low.value}')

    B = complete_basis(primitive)
    snap = None if is_exact(S) else solver.settings.snap_exact
    xbar = solver.lex_min_over(S, B).point
    k = first_fractional_index(B, xbar, snap)
    if k != 1:
        raise NotApplicableError(f'lex-min {format_point(xbar)} has g x integer')
    cut = lexcut_frac(B, xbar, 1, snap)
    if not cut.inequality.same_halfspace(target):
        raise LexcutError(f'emitted cut {cut} differs from {target}')
    logger.debug(f'CG cut {target} reproduced with basis {B.rows}')
    return B, cut


# ----------------------------------------------------------------------
# split cuts
# ----------------------------------------------------------------------


def is_valid_split_cut(
    S: FeasibleSet, cut: LinearInequality, d: SplitDisjunction, oracle: Optional[LinearOracle] = None
) -> bool:
    """True when the cut holds on both sides pi x <= pi0 and pi x >= pi0 + 1 of S"""
    oracle = oracle or LinearOracle()
    tol = _tolerance(S, oracle)
    sides = (
        LinearInequality(tuple(-v for v in d.pi), -d.pi0),
        LinearInequality(d.pi, d.pi0 + 1),
    )
    for side in sides:
        result = oracle.minimize(restrict(S, side), cut.coeffs)
        if result.is_feasible and result.value < cut.rhs - tol:
            return False
    return True


def _is_lex_positive(v: Sequence[int]) -> bool:
    return next(x for x in v if x != 0) > 0


def candidate_disjunctions(
    S: FeasibleSet, norm_bound: int, oracle: Optional[LinearOracle] = None
) -> list[SplitDisjunction]:
    """Primitive lex-positive pi with |pi|_inf <= norm_bound and pi0 in [floor(min pi x), ceil(max pi x)]"""
    if norm_bound < 1:
        raise ValueError('norm_bound must be at least 1')
    oracle = oracle or LinearOracle()
    snap = None if is_exact(S) else SolverSettings().snap_exact
    candidates = []
    for pi in product(range(-norm_bound, norm_bound + 1), repeat=S.dimension):
        if not any(pi) or not _is_lex_positive(pi) or gcd(*pi) != 1:
            continue
        bounds = oracle.bounds(S, pi)
        if bounds is None:
            return []
        low = floor(snap_value(bounds[0], snap))
        high = ceil(snap_value(bounds[1], snap))
        candidates.extend(SplitDisjunction(pi, pi0) for pi0 in range(low, high + 1))
    return candidates


@time_execution_sync('--enumerate_splits')
def enumerate_splits(
    S: FeasibleSet, cut: LinearInequality, norm_bound: int, oracle: Optional[LinearOracle] = None
) -> list[SplitDisjunction]:
    oracle = oracle or LinearOracle()
    candidates = candidate_disjunctions(S, norm_bound, oracle)
    valid = [d for d in candidates if is_valid_split_cut(S, cut, d, oracle)]
    logger.debug(f'{len(valid)} of {len(candidates)} disjunctions validate {cut}')
    return valid


# ----------------------------------------------------------------------
# S-up and V(S)
# ----------------------------------------------------------------------


def s_up_pointcloud(S: PointCloud, B: LatticeBasis) -> list[IntVector]:
    rounded = {round_up_lex(B, p) for p in S.points}
    return [tuple(int(v) for v in p) for p in lex_sorted(B, rounded)]


def v_set(B: LatticeBasis, s_up: Sequence[Sequence[int]]) -> list[IntVector]:
    """
    Union of V(x) over x in s_up: C x itself, and for k < n the vector keeping
    c^1 x..c^{k-1} x, raising c^k x by one and zeroing the rest.
    """
    alphas: set[IntVector] = set()
    for x in s_up:
        p = tuple(int(v) for v in B.products(x))
        alphas.add(p)
        for k in range(1, B.n):
            alphas.add(p[:k - 1] + (p[k - 1] + 1,) + (0,) * (B.n - k))
    return sorted(alphas)


# ----------------------------------------------------------------------
# brute force
# ----------------------------------------------------------------------


def _coordinate_ranges(S: FeasibleSet, oracle: LinearOracle) -> Optional[list[range]]:
    n = S.dimension
    if isinstance(S, PointCloud):
        if not S.points:
            return None
        lows = [min(p[j] for p in S.points) for j in range(n)]
        highs = [max(p[j] for p in S.points) for j in range(n)]
    elif isinstance(S, BallBox):
        lows, highs = list(S.lower), list(S.upper)
    else:
        lows, highs = [], []
        for j in range(n):
            bounds = oracle.bounds(S, tuple(1 if i == j else 0 for i in range(n)))
            if bounds is None:
                return None
            lows.append(bounds[0])
            highs.append(bounds[1])
    return [range(ceil(lo), floor(hi) + 1) for lo, hi in zip(lows, highs)]


@time_execution_sync('--brute_force_integer_opt')
def brute_force_integer_opt(
    S: FeasibleSet,
    c: Sequence[int],
    B: Optional[LatticeBasis] = None,
    settings: Optional[SolverSettings] = None,
    oracle: Optional[LinearOracle] = None,
) -> SolveOutcome:
    """
    Scan every integer point of the bounding box with exact membership.

    The winner is the lex-min member under B (default: a completion of the
    normalized objective), which minimizes c x first.
    """
    settings = settings or SolverSettings.from_env()
    oracle = oracle or LinearOracle(eps=settings.eps_exact, max_tangents=settings.max_tangents)
    B = resolve_basis(c, B)
    outcome = SolveOutcome(status='infeasible', algorithm='brute', basis=B, exact=is_exact(S))

    ranges = _coordinate_ranges(S, oracle)
    if ranges is None or any(len(r) == 0 for r in ranges):
        return outcome
    cells = prod(len(r) for r in ranges)
    if cells > settings.max_box_cells:
        raise BoxTooLargeError(f'bounding box has {cells} cells, cap is {settings.max_box_cells}')

    best: Optional[IntVector] = None
    for x in product(*ranges):
        if S.contains(x) and (best is None or lex_cmp(B, x, best) == LexOrder.LESS):
            best = x
    if best is not None:
        outcome.status = 'optimal'
        outcome.point = best
        outcome.value = dot(c, best)
    logger.debug(f'Brute force scanned {cells} cells: {outcome.status}')
    return outcome


# ----------------------------------------------------------------------
# hull check
# ----------------------------------------------------------------------


def _vertex_failures(B: LatticeBasis, xbar: Sequence[int], description: Sequence[LinearInequality]) -> list[str]:
    failures = []
    ell = leading_index(B, xbar)
    cuts = [lexcut(B, xbar, j).inequality for j in range(1, ell + 1)]
    for k, v in enumerate(extreme_points(B, xbar), start=1):
        if not all(h.is_satisfied(v) for h in description):
            failures.append(f'vertex v^{k} = {format_point(v)} violates the description')
        for j, cut in enumerate(cuts, start=1):
            if j == k and k < ell:
                continue
            if cut.slack(v) != 0:
                failures.append(f'vertex v^{k} = {format_point(v)} is not tight on lex-cut {j}')
    return failures


@time_execution_sync('--check_hull')
def check_hull(
    B: LatticeBasis,
    xbar: Sequence[int],
    box: int,
    perturb_rhs: bool = False,
    trim: bool = False,
    max_cells: int = 10_000_000,
    max_examples: int = 10,
) -> HullCheckReport:
    """
    Compare the inequality description of Q(xbar) with lex order by brute force.

    Every integer point with 0 <= c^i x <= box must satisfy the description exactly
    when it is lex-greater or equal to xbar. The extreme points must be feasible and
    tight on the lex-cuts through them. perturb_rhs raises the first right-hand side
    by one, which the check must notice.
    """
    n = B.n
    cells = (box + 1) ** n
    if cells > max_cells:
        raise BoxTooLargeError(f'hull check box has {cells} points, cap is {max_cells}')
    xbar = tuple(int(v) for v in xbar)
    description = q_description(B, xbar, trim)
    if perturb_rhs:
        first = description[0]
        description[0] = LinearInequality(first.coeffs, first.rhs + 1)

    inverse = unimodular_inverse(B)
    report = HullCheckReport()
    for y in product(range(box + 1), repeat=n):
        x = tuple(sum(row[j] * y[j] for j in range(n)) for row in inverse)
        member = all(h.is_satisfied(x) for h in description)
        above = lex_cmp(B, x, xbar) != LexOrder.LESS
        report.points_checked += 1
        if member != above:
            report.mismatches += 1
            if len(report.examples) < max_examples:
                report.examples.append(x)
    if any(xbar):
        report.vertex_failures = _vertex_failures(B, xbar, description)

    status = 'PASS' if report.passed else 'FAIL'
    logger.debug(f'Hull check {status}: {report.points_checked} points, {report.mismatches} mismatches')
    return report
