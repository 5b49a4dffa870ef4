"""Physical prices P(S, tau) from a front-fixed state.

The nodes (E * S_f * e^{x_j}, E * p_j) are joined by a not-a-knot cubic spline; below the
exercise boundary the payoff E - S is returned exactly.
"""

import numpy as np
from scipy.interpolate import CubicSpline

from front_fixing.errors import ExtrapolationOutOfDomainError, InvalidArgumentError
from front_fixing.model import (
    FrontFixedSolution,
    FrontFixedState,
    GridSpec,
    ModelParams,
    asset_from_x,
)

# Relative slack on the right edge so that S = E * S_f * e^{x_inf} itself is accepted.
DOMAIN_SLACK = 1e-12


def physical_nodes(
    state: FrontFixedState, grid: GridSpec, params: ModelParams
) -> tuple[np.ndarray, np.ndarray]:
    assets = asset_from_x(grid.nodes(), state.S_f, params.E)
    return assets, params.E * state.p


def spline_prices(
    state: FrontFixedState,
    grid: GridSpec,
    params: ModelParams,
    assets,
) -> np.ndarray:
    if state.J != grid.J:
        raise InvalidArgumentError(
            f"State has {state.J} intervals but the grid has {grid.J}."
        )

    requested = np.atleast_1d(np.asarray(assets, dtype=float))
    if np.any(requested <= 0):
        raise InvalidArgumentError("Asset prices must be positive.")

    node_assets, node_prices = physical_nodes(state, grid, params)
    right_edge = node_assets[-1] * (1 + DOMAIN_SLACK)
    beyond = requested[requested > right_edge]
    if beyond.size:
        raise ExtrapolationOutOfDomainError(
            f"Asset price {beyond[0]} exceeds the truncated boundary {node_assets[-1]:.6g}; "
            "enlarge x_inf."
        )

    spline = CubicSpline(node_assets, node_prices, bc_type="not-a-knot")
    boundary = params.E * state.S_f
    exercised = requested < boundary
    prices = np.empty_like(requested)
    prices[exercised] = params.E - requested[exercised]
    # The right edge may sit one rounding above the last node.
    held = np.minimum(requested[~exercised], node_assets[-1])
    prices[~exercised] = spline(held)
    return prices


def to_physical(solution: FrontFixedSolution, S: float, n: int = -1) -> float:
    """Option price in currency at asset price S and time level n (default: maturity)."""
    return float(
        spline_prices(solution.states[n], solution.grid, solution.params, [S])[0]
    )
