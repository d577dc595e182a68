import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from gmpy2 import mpq

from paracontact import linalg
from paracontact.linalg import sparse_row
from paracontact.scalars import as_array, fmt, is_zero_array, rational_sqrt, to_exact


@pytest.mark.parametrize("raw, expected", [
    (3, mpq(3)), ("-2/6", mpq(-1, 3)), ("5", mpq(5)), (Fraction(7, 4), mpq(7, 4)),
    (0.5, mpq(1, 2)), (mpq(2, 9), mpq(2, 9)),
])
def test_to_exact(raw, expected):
    assert to_exact(raw) == expected


@pytest.mark.parametrize("bad", [True, "1/0", "x", None])
def test_to_exact_rejects(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        to_exact(bad)


def test_fmt_reduced_rationals():
    assert fmt(mpq(4, -6)) == "-2/3"
    assert fmt(mpq(8)) == "8"
    assert fmt(mpq(0)) == "0"


def test_rational_sqrt():
    assert rational_sqrt(mpq(9, 4)) == mpq(3, 2)
    assert rational_sqrt(mpq(2)) is None


def test_is_zero_modes():
    assert is_zero_array(as_array([0, 0], True), None)
    assert not is_zero_array(as_array([0, mpq(1, 10 ** 12)], True), None)
    assert is_zero_array(np.array([0.0, 1e-12]), 1e-9)


def _random_matrix(rng, rows, cols, rank_cap):
    left = [[rng.randint(-3, 3) for _ in range(rank_cap)] for _ in range(rows)]
    right = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rank_cap)]
    return np.array(left, dtype=object) @ np.array(right, dtype=object)


@pytest.mark.parametrize("seed", range(8))
def test_rank_and_nullspace_match_sympy(seed):
    rng = random.Random(seed)
    M = _random_matrix(rng, 6, 7, rng.randint(1, 5))
    ref = sympy.Matrix(M.tolist())
    rows = [sparse_row(as_array(r, True)) for r in M]
    assert linalg.rank(rows, 7) == ref.rank()
    kernel = linalg.nullspace(rows, 7)
    assert len(kernel) == len(ref.nullspace())
    for v in kernel:
        assert all(x == 0 for x in as_array(M, True) @ v)


@pytest.mark.parametrize("seed", range(8))
def test_inverse_and_det_match_sympy(seed):
    rng = random.Random(100 + seed)
    M = as_array([[rng.randint(-4, 4) for _ in range(5)] for _ in range(5)], True)
    ref = sympy.Matrix([[int(x) for x in row] for row in M])
    assert linalg.det(M) == ref.det()
    inv = linalg.inverse(M)
    if ref.det() == 0:
        assert inv is None
    else:
        assert np.array_equal(M @ inv, as_array(np.eye(5, dtype=int), True))


def test_inverse_singular():
    assert linalg.inverse(as_array([[1, 2], [2, 4]], True)) is None


@pytest.mark.parametrize("seed", range(8))
def test_inertia_matches_eigenvalue_signs(seed):
    rng = random.Random(200 + seed)
    B = np.array([[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)])
    D = np.diag([rng.choice([-1, 0, 1, 2]) for _ in range(5)])
    M = B.T @ D @ B
    eig = np.linalg.eigvalsh(M.astype(float))
    expected = (int((eig > 1e-8).sum()), int((eig < -1e-8).sum()), int((abs(eig) <= 1e-8).sum()))
    assert linalg.inertia(as_array(M, True)) == expected


def test_inertia_zero_diagonal():
    assert linalg.inertia(as_array([[0, 1], [1, 0]], True)) == (1, 1, 0)
