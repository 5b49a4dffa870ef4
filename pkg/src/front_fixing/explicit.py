"""Explicit front-fixing scheme, the comparison baseline of the implicit method.

Diffusion, drift and reaction are taken at level n. The front-motion convection term
(S_f^{n+1} - S_f^n) / S_f^n is linear in the unknown front, so the j = 1 update together
with the boundary closure for p_1 gives S_f^{n+1} in closed form; every other node then
follows explicitly. Stable only while 2 mu sigma^2 + r dtau stays below 2.
"""

from typing import override

import numpy as np

from front_fixing.errors import InstabilityError, OverflowDetectedError
from front_fixing.implicit import boundary_pair
from front_fixing.model import (
    FrontFixedSolution,
    FrontFixedState,
    GridSpec,
    ModelParams,
    Scheme,
)
from front_fixing.schemes import TimeSteppingScheme

# Prices are bounded by 1; anything beyond this is a blown-up mode.
PRICE_GUARD = 10.0
FRONT_SLACK = 1e-12


def explicit_step(
    state_n: FrontFixedState, grid: GridSpec, params: ModelParams
) -> FrontFixedState:
    dx, dtau, mu = grid.dx, grid.dtau, grid.mu
    sigma2 = params.sigma**2
    sf_prev = state_n.S_f

    extended = np.append(state_n.p, 0.0)
    central = extended[2:] - extended[:-2]
    second = extended[2:] - 2 * extended[1:-1] + extended[:-2]
    frozen = (
        state_n.p[1:]
        + mu * sigma2 / 2 * second
        + mu * dx / 2 * (params.r - sigma2 / 2) * central
        - params.r * dtau * state_n.p[1:]
    )

    # p_1^{n+1} = frozen_1 + kappa (S' - S) must equal alpha - beta S' from the closure.
    alpha = 1 + params.r * dx**2 / sigma2
    beta = 1 + dx + dx**2 / 2
    kappa = central[0] / (sf_prev * 2 * dx)
    denominator = beta + kappa
    if not np.isfinite(denominator) or denominator == 0:
        raise OverflowDetectedError(
            f"Front equation degenerated at level {state_n.n} (denominator {denominator})."
        )
    sf_next = (alpha - frozen[0] + kappa * sf_prev) / denominator

    if not np.isfinite(sf_next):
        raise OverflowDetectedError(f"Front value overflowed at level {state_n.n}.")
    if not 0 < sf_next <= sf_prev + FRONT_SLACK:
        raise InstabilityError(
            f"Front value {sf_next:.6g} left (0, {sf_prev:.6g}] at level {state_n.n}."
        )
    sf_next = min(sf_next, sf_prev)

    interior = frozen + (sf_next - sf_prev) / (sf_prev * 2 * dx) * central
    p0, p1 = boundary_pair(sf_next, grid, params)
    prices = np.concatenate(([p0, p1], interior[1:]))

    if not np.all(np.isfinite(prices)):
        raise OverflowDetectedError(f"Prices overflowed at level {state_n.n}.")
    if np.max(np.abs(prices)) > PRICE_GUARD:
        raise InstabilityError(
            f"Price magnitude {np.max(np.abs(prices)):.3g} exceeds {PRICE_GUARD} "
            f"at level {state_n.n}."
        )
    return FrontFixedState(p=prices, S_f=sf_next, n=state_n.n + 1)


class ExplicitScheme(TimeSteppingScheme):
    scheme = Scheme.EXPLICIT

    @override
    def advance(self, state: FrontFixedState) -> FrontFixedState:
        return explicit_step(state, self.grid, self.params)


def explicit_solve(params: ModelParams, grid: GridSpec) -> FrontFixedSolution:
    return ExplicitScheme(params, grid).march()
