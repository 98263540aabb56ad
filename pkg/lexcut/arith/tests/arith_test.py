import numpy as np
import pytest

from lexcut.arith.service import (
    complete_basis,
    det_integer,
    gcd_normalize,
    is_unimodular,
    solve_unimodular,
    unimodular_inverse,
)
from lexcut.arith.views import LatticeBasis, NotPrimitiveError, NotUnimodularError, ZeroVectorError, identity


def naive_det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * naive_det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


# -------------------------------------------------------------------
# gcd_normalize
# -------------------------------------------------------------------


@pytest.mark.parametrize(
    'v, expected',
    [
        ((2, 4, 6), ((1, 2, 3), 2)),
        ((1, 0, 0), ((1, 0, 0), 1)),
        ((-3, 6), ((-1, 2), 3)),
    ],
)
def test_gcd_normalize(v, expected):
    assert gcd_normalize(v) == expected


def test_gcd_normalize_rejects_zero():
    with pytest.raises(ZeroVectorError):
        gcd_normalize((0, 0))


# -------------------------------------------------------------------
# determinants
# -------------------------------------------------------------------


def test_det_examples():
    assert det_integer(identity(3)) == 1
    assert det_integer(((2, 3), (1, 2))) == 1
    assert det_integer(((2, 0), (0, 1))) == 2
    assert det_integer(((0, 1), (1, 0))) == -1


def test_det_matches_cofactor_expansion():
    """Bareiss agrees with cofactor expansion on small random matrices"""
    rng = np.random.default_rng(7)
    for _ in range(500):
        n = int(rng.integers(1, 5))
        M = [[int(v) for v in rng.integers(-5, 6, size=n)] for _ in range(n)]
        assert det_integer(M) == naive_det(M)


def test_is_unimodular():
    assert is_unimodular(identity(4))
    assert is_unimodular(((2, 3), (1, 2)))
    assert not is_unimodular(((2, 0), (0, 1)))


def test_lattice_basis_rejects_non_unimodular():
    with pytest.raises(NotUnimodularError, match='basis not unimodular'):
        LatticeBasis(((2, 0), (0, 1)))


# -------------------------------------------------------------------
# basis completion
# -------------------------------------------------------------------


def test_complete_basis_examples():
    assert complete_basis((1, 0, 0)).rows == identity(3)
    B = complete_basis((2, 3))
    assert B.rows[0] == (2, 3)
    assert is_unimodular(B.rows)
    B = complete_basis((0, 1))
    assert B.rows[0] == (0, 1)
    assert is_unimodular(B.rows)


def test_complete_basis_rejects_non_primitive():
    with pytest.raises(NotPrimitiveError):
        complete_basis((2, 4))
    with pytest.raises(ZeroVectorError):
        complete_basis((0, 0, 0))


def test_complete_basis_random_primitive_vectors():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 200:
        n = int(rng.integers(1, 7))
        c = tuple(int(v) for v in rng.integers(-20, 21, size=n))
        if not any(c):
            continue
        c, _ = gcd_normalize(c)
        B = complete_basis(c)
        assert B.rows[0] == c
        assert is_unimodular(B.rows)
        checked += 1


def test_complete_basis_is_deterministic():
    assert complete_basis((6, 10, 15)) == complete_basis((6, 10, 15))


# -------------------------------------------------------------------
# unimodular systems
# -------------------------------------------------------------------


def test_solve_unimodular_examples():
    assert solve_unimodular(LatticeBasis.standard(3), (5, -1, 2)) == (5, -1, 2)
    B = LatticeBasis(((2, 3), (1, 2)))
    assert solve_unimodular(B, (1, 0)) == (2, -1)
    assert solve_unimodular(B, (0, 0)) == (0, 0)


def test_solve_unimodular_random(random_unimodular):
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        B = LatticeBasis(random_unimodular(rng, n))
        rhs = tuple(int(v) for v in rng.integers(-9, 10, size=n))
        x = solve_unimodular(B, rhs)
        assert all(isinstance(v, int) for v in x)
        assert B.products(x) == rhs


def test_unimodular_inverse():
    B = LatticeBasis(((2, 3), (1, 2)))
    inverse = unimodular_inverse(B)
    product = tuple(
        tuple(sum(B.rows[i][k] * inverse[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )
    assert product == identity(2)
