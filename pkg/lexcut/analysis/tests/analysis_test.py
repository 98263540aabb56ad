from fractions import Fraction
from itertools import product
from math import ceil, gcd

import numpy as np
import pytest

from lexcut.analysis.service import (
    brute_force_integer_opt,
    candidate_disjunctions,
    cg_to_lexcut,
    check_hull,
    enumerate_splits,
    is_valid_split_cut,
    s_up_pointcloud,
    v_set,
)
from lexcut.analysis.views import (
    CGInequality,
    NonIntegerGError,
    NotApplicableError,
    NotProperError,
    SplitDisjunction,
)
from lexcut.arith.service import solve_unimodular
from lexcut.arith.views import LatticeBasis
from lexcut.lex.views import LinearInequality, OutsideConeError
from lexcut.oracles.service import LinearOracle, restrict
from lexcut.oracles.views import BallBox, PointCloud, Polytope
from lexcut.solver.service import LexSolver, algorithm1_solve
from lexcut.solver.views import SolverSettings
from lexcut.views import BoxTooLargeError

F = Fraction
STANDARD2 = LatticeBasis.standard(2)


def random_polytope(rng: np.random.Generator, n: int) -> Polytope:
    rows, rhs = [], []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        rows += [tuple(e), tuple(-v for v in e)]
        rhs += [F(int(rng.integers(-9, 1)), int(rng.integers(1, 4))), F(int(rng.integers(-9, 1)), int(rng.integers(1, 4)))]
    for _ in range(int(rng.integers(1, 4))):
        rows.append(tuple(int(v) for v in rng.integers(-3, 4, size=n)))
        rhs.append(F(int(rng.integers(-6, 3)), int(rng.integers(1, 5))))
    return Polytope.from_matrix(rows, rhs)


def random_primitive(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    while True:
        g = tuple(int(v) for v in rng.integers(-3, 4, size=n))
        if any(g) and gcd(*g) == 1:
            return g


# -------------------------------------------------------------------
# Chvatal-Gomory inequalities as lex-cuts
# -------------------------------------------------------------------


def test_cg_to_lexcut_triangle_two(triangle_two):
    B, cut = cg_to_lexcut(triangle_two, CGInequality((2, 1), F(1, 2)))
    assert B.rows[0] == (2, 1)
    assert cut.k == 1
    assert cut.inequality.same_halfspace(LinearInequality((2, 1), 1))


def test_cg_to_lexcut_normalizes_g(triangle_two):
    B, cut = cg_to_lexcut(triangle_two, CGInequality((4, 2), 1))
    assert B.rows[0] == (2, 1)
    assert cut.inequality.same_halfspace(LinearInequality((2, 1), 1))


def test_cg_to_lexcut_errors(triangle_two):
    with pytest.raises(NotApplicableError):
        cg_to_lexcut(triangle_two, CGInequality((1, 0), F(1, 4)))
    with pytest.raises(NotProperError):
        cg_to_lexcut(triangle_two, CGInequality((1, 0), 0))
    with pytest.raises(NonIntegerGError):
        cg_to_lexcut(triangle_two, CGInequality((F(1, 2), 0), 0))


def test_cg_inequality_rounded_rhs():
    assert CGInequality((2, 1), F(1, 2)).rounded_rhs == 1
    assert CGInequality((2, 1), F(-3, 2)).rounded_rhs == -1
    assert CGInequality((1, 0), 2).rounded_rhs == 2


def test_cg_to_lexcut_random_polytopes():
    rng = np.random.default_rng(12)
    oracle = LinearOracle()
    checked = 0
    while checked < 50:
        n = int(rng.integers(2, 4))
        S = random_polytope(rng, n)
        g = random_primitive(rng, n)
        low = oracle.minimize(S, g)
        if not low.is_feasible or low.value.denominator == 1:
            continue
        B, cut = cg_to_lexcut(S, CGInequality(g, low.value))
        assert B.rows[0] == g
        assert cut.inequality.same_halfspace(LinearInequality(g, ceil(low.value)))
        checked += 1


# -------------------------------------------------------------------
# split cuts
# -------------------------------------------------------------------


def test_is_valid_split_cut_examples(triangle_one, triangle_two):
    assert is_valid_split_cut(triangle_one, LinearInequality((0, 1), 0), SplitDisjunction((1, 0), 0))
    assert not is_valid_split_cut(triangle_two, LinearInequality((2, 1), 2), SplitDisjunction((1, 0), 0))
    tautology = LinearInequality((0, 0), -1)
    assert is_valid_split_cut(triangle_two, tautology, SplitDisjunction((1, 0), 0))
    assert is_valid_split_cut(triangle_two, tautology, SplitDisjunction((1, -1), 5))


def test_split_disjunction_rejects_zero_pi():
    with pytest.raises(ValueError):
        SplitDisjunction((0, 0), 1)


def test_enumerate_splits_examples(triangle_one, triangle_two, unit_square):
    assert enumerate_splits(triangle_two, LinearInequality((2, 1), 2), 1) == []
    assert SplitDisjunction((1, 0), 0) in enumerate_splits(triangle_one, LinearInequality((0, 1), 0), 1)

    valid = enumerate_splits(unit_square, LinearInequality((1, 0), 0), 1)
    assert valid == candidate_disjunctions(unit_square, 1)
    assert valid


def test_candidate_disjunctions_are_primitive_and_lex_positive(unit_square):
    candidates = candidate_disjunctions(unit_square, 2)
    pis = {d.pi for d in candidates}
    assert (1, 0) in pis and (0, 1) in pis and (1, -2) in pis
    assert (2, 0) not in pis
    assert (-1, 0) not in pis
    assert all(d.pi[next(i for i, v in enumerate(d.pi) if v)] > 0 for d in candidates)
    with pytest.raises(ValueError):
        candidate_disjunctions(unit_square, 0)


def test_split_validity_is_monotone_under_restriction():
    rng = np.random.default_rng(40)
    for _ in range(60):
        S = random_polytope(rng, 2)
        cut = LinearInequality(tuple(int(v) for v in rng.integers(-2, 3, size=2)), int(rng.integers(-4, 3)))
        d = SplitDisjunction(random_primitive(rng, 2), int(rng.integers(-3, 4)))
        H = LinearInequality(tuple(int(v) for v in rng.integers(-2, 3, size=2)), int(rng.integers(-3, 2)))
        if is_valid_split_cut(S, cut, d):
            assert is_valid_split_cut(restrict(S, H), cut, d)


# -------------------------------------------------------------------
# S-up and V(S)
# -------------------------------------------------------------------


def test_s_up_pointcloud_examples():
    assert s_up_pointcloud(PointCloud.of([(F(1, 2), 0), (1, 1)]), STANDARD2) == [(1, 0), (1, 1)]
    assert s_up_pointcloud(PointCloud.of([(0, F(1, 4)), (0, F(3, 4))]), STANDARD2) == [(0, 1)]
    assert s_up_pointcloud(PointCloud.of([(2, 0), (0, 3), (1, 1)]), STANDARD2) == [(0, 3), (1, 1), (2, 0)]
    with pytest.raises(OutsideConeError):
        s_up_pointcloud(PointCloud.of([(-1, 0)]), STANDARD2)


def test_v_set_examples():
    assert v_set(STANDARD2, [(0, 1)]) == [(0, 1), (1, 0)]
    assert v_set(STANDARD2, []) == []


@pytest.mark.parametrize('n', [2, 3, 4])
def test_v_set_size_on_cube(n):
    cube = [p for p in product((0, 1), repeat=n) if any(p)]
    assert len(v_set(LatticeBasis.standard(n), cube)) == 2**n + 2 ** (n - 1) - 2


def test_cut_count_bounded_by_s_up():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(2, 4))
        points = [tuple(F(int(rng.integers(-12, 13)), int(rng.integers(1, 4))) for _ in range(n)) for _ in range(5)]
        S = PointCloud.of(points)
        c = random_primitive(rng, n)
        P = LexSolver().preprocess(S, c)
        outcome = algorithm1_solve(S, c)
        assert outcome.cuts <= len(s_up_pointcloud(P.set, P.basis))


# -------------------------------------------------------------------
# brute force
# -------------------------------------------------------------------


def test_brute_force_examples(triangle_two):
    outcome = brute_force_integer_opt(triangle_two, (1, 0))
    assert outcome.point == (1, 0)
    assert outcome.value == 1

    outcome = brute_force_integer_opt(PointCloud.of([(2, 2)]), (1, 1))
    assert outcome.point == (2, 2)
    assert outcome.value == 4

    assert brute_force_integer_opt(PointCloud.of([], dimension=2), (1, 0)).status == 'infeasible'


@pytest.mark.parametrize('n', [2, 3, 4])
def test_brute_force_ball_has_no_integer_point(n):
    assert brute_force_integer_opt(BallBox.hard_instance(n), (1,) + (0,) * (n - 1)).status == 'infeasible'


def test_brute_force_lex_tie_break(unit_square):
    outcome = brute_force_integer_opt(unit_square, (1, 0), STANDARD2)
    assert outcome.point == (0, 0)
    outcome = brute_force_integer_opt(unit_square, (1, 0), LatticeBasis(((1, 0), (0, -1))))
    assert outcome.point == (0, 1)


def test_brute_force_box_cap(unit_square):
    with pytest.raises(BoxTooLargeError):
        brute_force_integer_opt(unit_square, (1, 0), settings=SolverSettings(max_box_cells=3))


# -------------------------------------------------------------------
# hull check
# -------------------------------------------------------------------


def test_check_hull_examples():
    report = check_hull(LatticeBasis.standard(3), (1, 2, 1), 6)
    assert report.passed
    assert report.points_checked == 343

    assert check_hull(LatticeBasis.standard(3), (0, 0, 0), 4).passed

    report = check_hull(LatticeBasis.standard(3), (1, 2, 1), 6, perturb_rhs=True)
    assert not report.passed
    assert report.mismatches > 0
    assert report.examples


def test_check_hull_box_cap():
    with pytest.raises(BoxTooLargeError):
        check_hull(LatticeBasis.standard(3), (1, 2, 1), 9, max_cells=999)


def test_check_hull_random(random_unimodular):
    """Q(xbar) matches lex order on every point of the box, for standard and random bases"""
    rng = np.random.default_rng(23)
    bases = {n: [LatticeBasis.standard(n)] for n in (2, 3, 4)}
    for _ in range(10):
        n = int(rng.integers(2, 5))
        bases[n].append(LatticeBasis(random_unimodular(rng, n)))
    for case in range(50):
        n = int(rng.integers(2, 5))
        B = bases[n][int(rng.integers(0, len(bases[n])))]
        y = tuple(int(v) for v in rng.integers(0, 5, size=n))
        xbar = solve_unimodular(B, y)
        report = check_hull(B, xbar, 8, trim=case % 2 == 1)
        assert report.passed, (B.rows, xbar, report.examples, report.vertex_failures)
