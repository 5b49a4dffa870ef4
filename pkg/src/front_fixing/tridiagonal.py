import logging

import numpy as np
from scipy.linalg import solve_banded

logger = logging.getLogger(__name__)


def is_diagonally_dominant(sub: float, diag: float, sup: float) -> bool:
    return abs(diag) >= abs(sub) + abs(sup)


def thomas(sub: float, diag: float, sup: float, rhs: np.ndarray) -> np.ndarray:
    """Thomas elimination for a tridiagonal matrix with constant diagonals, no pivoting.

    Row 0 has no sub-diagonal entry and the last row has no super-diagonal entry.
    """
    d = rhs.tolist()
    size = len(d)
    modified_sup = [0.0] * size
    modified_rhs = [0.0] * size

    modified_sup[0] = sup / diag
    modified_rhs[0] = d[0] / diag
    for i in range(1, size):
        pivot = diag - sub * modified_sup[i - 1]
        modified_sup[i] = sup / pivot
        modified_rhs[i] = (d[i] - sub * modified_rhs[i - 1]) / pivot

    for i in range(size - 2, -1, -1):
        modified_rhs[i] -= modified_sup[i] * modified_rhs[i + 1]
    return np.array(modified_rhs)


def banded_lu(sub: float, diag: float, sup: float, rhs: np.ndarray) -> np.ndarray:
    """Banded LU with partial pivoting, used when Thomas elimination is not safe."""
    size = rhs.size
    ab = np.zeros((3, size))
    ab[0, 1:] = sup
    ab[1, :] = diag
    ab[2, :-1] = sub
    return solve_banded((1, 1), ab, rhs)


def solve_tridiagonal(
    sub: float, diag: float, sup: float, rhs: np.ndarray
) -> tuple[np.ndarray, bool]:
    """Solve the constant-diagonal system. The flag tells whether the LU fallback ran."""
    if is_diagonally_dominant(sub, diag, sup):
        return thomas(sub, diag, sup, rhs), False

    logger.debug(
        f"Diagonal dominance lost (a={sub:.4g}, b={diag:.4g}, c={sup:.4g}); using banded LU."
    )
    return banded_lu(sub, diag, sup, rhs), True
