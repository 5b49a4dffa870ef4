"""Richardson extrapolation and the a posteriori error estimators built on it.

Approximations U_g computed on grids refined by a ratio s are assumed to follow

    U_g = u + C_0 h_g^{q_0} + C_1 h_g^{q_1} + ...,   q_k = q_0 + k (q_1 - q_0),

so every column of the tableau cancels one more term of the expansion.
"""

import logging
import math

import numpy as np
from pandas import DataFrame
from pydantic import BaseModel, Field

from front_fixing.errors import DegenerateOrderError, InvalidArgumentError

logger = logging.getLogger(__name__)


def _check_ratio(s: float):
    if not s > 1:
        raise InvalidArgumentError(f"The refinement ratio must exceed 1, got {s}.")


def extrapolate_once(u_coarse, u_fine, s: float = 4, q0: float = 1):
    """u_fine + (u_fine - u_coarse) / (s^q0 - 1). Works elementwise on arrays."""
    _check_ratio(s)
    if not q0 > 0:
        raise InvalidArgumentError(f"The order must be positive, got {q0}.")
    return u_fine + (u_fine - u_coarse) / (s**q0 - 1)


def estimate_error_r(u_coarse, u_fine, s: float = 4, q0: float = 1):
    _check_ratio(s)
    return (u_fine - u_coarse) / (s**q0 - 1)


def estimate_error_s(u_coarse, u_fine):
    """The plain difference, an upper bound of e_r when the asymptotic regime is not reached."""
    return u_fine - u_coarse


def observed_order(u_coarse: float, u_fine: float, u_ref: float, s: float = 4) -> float:
    _check_ratio(s)
    coarse_gap = abs(u_coarse - u_ref)
    fine_gap = abs(u_fine - u_ref)
    if coarse_gap == 0 or fine_gap == 0:
        raise DegenerateOrderError(
            "An approximation coincides with the reference; the order is undefined."
        )
    return (math.log(coarse_gap) - math.log(fine_gap)) / math.log(s)


def observed_orders(values: list[float], reference: float, s: float = 4) -> list[float | None]:
    """Observed order of every consecutive pair. Pairs touching the reference give None."""
    orders = []
    for coarse, fine in zip(values, values[1:]):
        try:
            orders.append(observed_order(coarse, fine, reference, s))
        except DegenerateOrderError:
            logger.debug(f"No observed order for the pair ({coarse}, {fine}).")
            orders.append(None)
    return orders


class ExtrapolationTableau(BaseModel):
    """Triangular array U[g][k], 0 <= k <= g, with the orders q_k used per column."""

    s: float
    q0: float
    q_step: float
    entries: list[list[float]] = Field(description="Row g holds U_{g,0}..U_{g,g}")

    @property
    def levels(self) -> int:
        return len(self.entries)

    def order(self, k: int) -> float:
        return self.q0 + k * self.q_step

    def value(self, g: int, k: int) -> float:
        if not 0 <= k <= g < self.levels:
            raise InvalidArgumentError(f"No tableau entry at (g={g}, k={k}).")
        return self.entries[g][k]

    @property
    def final(self) -> float:
        return self.entries[-1][-1]

    def to_frame(self, steps: list[int]) -> DataFrame:
        """Columns N, U0..UG; undefined cells are NaN (written as blanks)."""
        frame = DataFrame(
            [row + [np.nan] * (self.levels - len(row)) for row in self.entries],
            columns=[f"U{k}" for k in range(self.levels)],
        )
        frame.insert(0, "N", steps)
        return frame


def build_tableau(
    values: list[float], s: float = 4, q0: float = 1, q1_minus_q0: float = 1
) -> ExtrapolationTableau:
    if len(values) < 2:
        raise InvalidArgumentError("The tableau needs at least two approximations.")
    _check_ratio(s)
    orders = [q0 + k * q1_minus_q0 for k in range(len(values) - 1)]
    if not all(order > 0 for order in orders):
        raise InvalidArgumentError(
            f"Every column order must be positive, got q0={q0} and step {q1_minus_q0}."
        )

    entries = [[float(values[0])]]
    for g in range(1, len(values)):
        row = [float(values[g])]
        for k in range(g):
            factor = s ** (q0 + k * q1_minus_q0)
            row.append(row[k] + (row[k] - entries[g - 1][k]) / (factor - 1))
        entries.append(row)
    return ExtrapolationTableau(s=s, q0=q0, q_step=q1_minus_q0, entries=entries)
