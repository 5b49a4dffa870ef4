import numpy as np
import pytest

from front_fixing.tridiagonal import (
    banded_lu,
    is_diagonally_dominant,
    solve_tridiagonal,
    thomas,
)


def dense(sub, diag, sup, size):
    return (
        np.diag(np.full(size, diag))
        + np.diag(np.full(size - 1, sub), -1)
        + np.diag(np.full(size - 1, sup), 1)
    )


@pytest.fixture
def rhs():
    return np.random.default_rng(5).uniform(-1, 1, 12)


def test_thomas_matches_dense_solve(rhs):
    x = thomas(-0.32, 1.82, -0.48, rhs)
    np.testing.assert_allclose(dense(-0.32, 1.82, -0.48, rhs.size) @ x, rhs, atol=1e-14)


def test_banded_lu_matches_dense_solve(rhs):
    x = banded_lu(-3.0, 1.5, 2.0, rhs)
    np.testing.assert_allclose(dense(-3.0, 1.5, 2.0, rhs.size) @ x, rhs, atol=1e-12)


def test_dominance_decides_the_path(rhs):
    assert is_diagonally_dominant(-0.32, 1.82, -0.48)
    assert not is_diagonally_dominant(-3.0, 1.5, 2.0)

    _, used_fallback = solve_tridiagonal(-0.32, 1.82, -0.48, rhs)
    assert not used_fallback
    x, used_fallback = solve_tridiagonal(-3.0, 1.5, 2.0, rhs)
    assert used_fallback
    np.testing.assert_allclose(dense(-3.0, 1.5, 2.0, rhs.size) @ x, rhs, atol=1e-12)


def test_single_unknown():
    x, used_fallback = solve_tridiagonal(0.5, 2.0, 0.7, np.array([3.0]))
    assert x[0] == 1.5
    assert not used_fallback
