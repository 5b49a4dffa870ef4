"""Implicit front-fixing scheme.

Each step solves J equations in the J unknowns p_2..p_J and S_f:

    a p_{j-1} + b p_j + c p_{j+1} = p_j^n,   j = 1..J,

with p_0, p_1 given by the boundary closure in S_f and a zero ghost value beyond x_J.
For a trial S_f rows 2..J are a tridiagonal linear system in p_2..p_J, so the step
reduces to a scalar root search on the row-1 residual.

The level-n value on the right of row 1 is the closure value p_1(S_f^n). It equals the
stored p_1^n from the first step on; at maturity the payoff p_1^0 = 0 is off the closure,
and loading it pins the front to a spurious stationary value after one step.
"""

import logging
from dataclasses import dataclass
from typing import override

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from front_fixing.errors import (
    BracketingError,
    InvalidArgumentError,
    SingularFrontError,
    StepNonConvergenceError,
)
from front_fixing.model import (
    FrontFixedSolution,
    FrontFixedState,
    GridSpec,
    ModelParams,
    Scheme,
    SolverStatistics,
)
from front_fixing.schemes import TimeSteppingScheme
from front_fixing.tridiagonal import solve_tridiagonal

logger = logging.getLogger(__name__)

# First bracket width, relative to the current front, when no previous decrement is known.
INITIAL_BRACKET = 1e-3


class StepSolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    residual_tol: float = Field(default=1e-12, gt=0)
    sf_tol: float = Field(default=1e-14, gt=0)
    max_iters: int = Field(default=100, ge=1)
    bracket_floor: float = Field(default=1e-6, gt=0, lt=1)


@dataclass(frozen=True, slots=True)
class SchemeCoefficients:
    a_bar: float
    b_bar: float
    c_bar: float


def coefficients(
    params: ModelParams, grid: GridSpec, sf_prev: float, sf_next: float
) -> SchemeCoefficients:
    if sf_next <= 0:
        raise SingularFrontError(f"Front value must stay positive, got {sf_next}.")

    mu, dx = grid.mu, grid.dx
    drift = params.r - params.sigma**2 / 2
    front = (sf_next - sf_prev) / (sf_next * 2 * dx)
    return SchemeCoefficients(
        a_bar=mu / 2 * (-params.sigma**2 + drift * dx) + front,
        b_bar=1 + mu * params.sigma**2 + params.r * grid.dtau,
        c_bar=mu / 2 * (-params.sigma**2 - drift * dx) - front,
    )


def boundary_pair(
    sf_next: float, grid: GridSpec, params: ModelParams
) -> tuple[float, float]:
    """p_0 and p_1 implied by the front value through the discrete boundary closure."""
    dx = grid.dx
    p0 = 1 - sf_next
    p1 = 1 + params.r * dx**2 / params.sigma**2 - (1 + dx + dx**2 / 2) * sf_next
    return p0, p1


def row_one_load(state_n: FrontFixedState, grid: GridSpec, params: ModelParams) -> float:
    """Level-n value on the right-hand side of row 1."""
    return boundary_pair(state_n.S_f, grid, params)[1]


def _check_candidate(state_n: FrontFixedState, candidate_p, grid: GridSpec) -> np.ndarray:
    if state_n.J != grid.J:
        raise InvalidArgumentError(
            f"State has {state_n.J} intervals but the grid has {grid.J}."
        )
    candidate = np.asarray(candidate_p, dtype=float)
    if candidate.shape != (grid.J - 1,):
        raise InvalidArgumentError(
            f"Expected {grid.J - 1} unknowns p_2..p_J, got shape {candidate.shape}."
        )
    return candidate


def assemble_residual(
    state_n: FrontFixedState,
    candidate_p,
    candidate_sf: float,
    grid: GridSpec,
    params: ModelParams,
) -> np.ndarray:
    """F(p, S_f) = A(S_f) p - f(S_f) for the unknowns p_2..p_J, one entry per row j = 1..J."""
    candidate = _check_candidate(state_n, candidate_p, grid)
    coeffs = coefficients(params, grid, state_n.S_f, candidate_sf)
    p0, p1 = boundary_pair(candidate_sf, grid, params)

    extended = np.concatenate(([p0, p1], candidate, [0.0]))
    load = np.array(state_n.p[1:], dtype=float)
    load[0] = row_one_load(state_n, grid, params)
    return (
        coeffs.a_bar * extended[:-2]
        + coeffs.b_bar * extended[1:-1]
        + coeffs.c_bar * extended[2:]
        - load
    )


def system_matrix(
    state_n: FrontFixedState, sf: float, grid: GridSpec, params: ModelParams
) -> tuple[np.ndarray, np.ndarray]:
    """The J x (J-1) matrix A(S_f) and load vector f(S_f) of the compact form."""
    J = grid.J
    coeffs = coefficients(params, grid, state_n.S_f, sf)
    p0, p1 = boundary_pair(sf, grid, params)

    A = np.zeros((J, J - 1))
    A[0, 0] = coeffs.c_bar
    for row in range(1, J):
        A[row, row - 1] = coeffs.b_bar
        if row >= 2:
            A[row, row - 2] = coeffs.a_bar
        if row < J - 1:
            A[row, row] = coeffs.c_bar

    f = np.array(state_n.p[1:], dtype=float)
    f[0] = row_one_load(state_n, grid, params)
    f[0] -= coeffs.a_bar * p0 + coeffs.b_bar * p1
    f[1] -= coeffs.a_bar * p1
    return A, f


def _interior_prices(
    state_n: FrontFixedState, sf: float, grid: GridSpec, params: ModelParams
) -> tuple[SchemeCoefficients, np.ndarray, bool]:
    """Solve rows 2..J for p_2..p_J at a trial front value."""
    coeffs = coefficients(params, grid, state_n.S_f, sf)
    _, p1 = boundary_pair(sf, grid, params)
    rhs = np.array(state_n.p[2:], dtype=float)
    rhs[0] -= coeffs.a_bar * p1
    prices, used_fallback = solve_tridiagonal(
        coeffs.a_bar, coeffs.b_bar, coeffs.c_bar, rhs
    )
    return coeffs, prices, used_fallback


def _front_residual(
    state_n: FrontFixedState, sf: float, grid: GridSpec, params: ModelParams
) -> tuple[float, np.ndarray, bool]:
    coeffs, prices, used_fallback = _interior_prices(state_n, sf, grid, params)
    p0, p1 = boundary_pair(sf, grid, params)
    residual = (
        coeffs.a_bar * p0
        + coeffs.b_bar * p1
        + coeffs.c_bar * prices[0]
        - row_one_load(state_n, grid, params)
    )
    return residual, prices, used_fallback


def step(
    state_n: FrontFixedState,
    grid: GridSpec,
    params: ModelParams,
    cfg: StepSolverConfig = StepSolverConfig(),
    drop_hint: float | None = None,
    stats: SolverStatistics | None = None,
) -> FrontFixedState:
    """Advance one level. The new front is searched in [bracket_floor, S_f^n]."""
    if stats is None:
        stats = SolverStatistics()
    if state_n.J != grid.J:
        raise InvalidArgumentError(
            f"State has {state_n.J} intervals but the grid has {grid.J}."
        )

    def front_residual(sf: float) -> float:
        stats.residual_evaluations += 1
        residual, _, used_fallback = _front_residual(state_n, sf, grid, params)
        stats.dense_fallbacks += used_fallback
        return residual

    sf_prev = state_n.S_f
    upper, upper_residual = sf_prev, front_residual(sf_prev)
    sf_next = upper if upper_residual == 0 else None

    width = drop_hint if drop_hint else INITIAL_BRACKET * sf_prev
    while sf_next is None:
        lower = max(sf_prev - width, cfg.bracket_floor)
        lower_residual = front_residual(lower)
        if lower_residual == 0:
            sf_next = lower
        elif np.sign(lower_residual) != np.sign(upper_residual):
            sf_next, info = brentq(
                front_residual,
                lower,
                upper,
                xtol=cfg.sf_tol,
                maxiter=cfg.max_iters,
                full_output=True,
                disp=False,
            )
            stats.root_iterations += info.iterations
            stats.max_root_iterations = max(stats.max_root_iterations, info.iterations)
            if not info.converged:
                raise StepNonConvergenceError(
                    f"Front search did not converge in {cfg.max_iters} iterations: {info.flag}",
                    last_iterate=sf_next,
                    residual_norm=abs(front_residual(sf_next)),
                )
        elif lower <= cfg.bracket_floor:
            raise BracketingError(
                f"The front residual keeps its sign on [{cfg.bracket_floor}, {sf_prev}]."
            )
        else:
            upper, upper_residual = lower, lower_residual
            width *= 2
            stats.bracket_expansions += 1
            logger.debug(f"Widening the front bracket to {width:.3e} at level {state_n.n}.")

    _, prices, _ = _interior_prices(state_n, sf_next, grid, params)
    residual_norm = float(
        np.max(np.abs(assemble_residual(state_n, prices, sf_next, grid, params)))
    )
    if residual_norm > cfg.residual_tol:
        raise StepNonConvergenceError(
            f"Residual {residual_norm:.3e} above tolerance {cfg.residual_tol:.1e}",
            last_iterate=sf_next,
            residual_norm=residual_norm,
        )

    p0, p1 = boundary_pair(sf_next, grid, params)
    return FrontFixedState(
        p=np.concatenate(([p0, p1], prices)), S_f=sf_next, n=state_n.n + 1
    )


class ImplicitScheme(TimeSteppingScheme):
    scheme = Scheme.IMPLICIT

    def __init__(
        self, params: ModelParams, grid: GridSpec, cfg: StepSolverConfig | None = None
    ):
        super().__init__(params, grid)
        self.cfg = StepSolverConfig() if cfg is None else cfg
        self._last_drop: float | None = None

    @override
    def advance(self, state: FrontFixedState) -> FrontFixedState:
        next_state = step(
            state,
            self.grid,
            self.params,
            self.cfg,
            drop_hint=self._last_drop,
            stats=self.stats,
        )
        self._last_drop = state.S_f - next_state.S_f
        return next_state


def solve(
    params: ModelParams, grid: GridSpec, cfg: StepSolverConfig | None = None
) -> FrontFixedSolution:
    return ImplicitScheme(params, grid, cfg).march()
