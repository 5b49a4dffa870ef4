"""Domain types of the front-fixed American put problem.

In the transformed variables

    x = ln(S / S*(tau)),  S_f(tau) = S*(tau) / E,  p(x, tau) = P(S, tau) / E

the early exercise boundary sits on the fixed line x = 0 and becomes an explicit
unknown S_f. The semi-infinite domain is truncated at x_inf where p = 0 is imposed.
"""

import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from front_fixing.errors import InvalidArgumentError

# Relative distance to an integer under which T/dtau is snapped instead of ceiled.
STEP_COUNT_SNAP = 1e-9
# Allowed mismatch between p_0 and 1 - S_f in a stored level.
BOUNDARY_TOLERANCE = 1e-12


class Scheme(StrEnum):
    IMPLICIT = "implicit"
    EXPLICIT = "explicit"


class ModelParams(BaseModel):
    """Market and contract constants of the Black-Scholes put."""

    model_config = ConfigDict(frozen=True)

    r: float = Field(gt=0, description="Interest rate per unit time")
    sigma: float = Field(gt=0, description="Volatility per sqrt(unit time)")
    T: float = Field(gt=0, description="Maturity")
    E: float = Field(gt=0, description="Exercise price")


class GridSpec(BaseModel):
    """Uniform mesh on [0, x_inf] x [0, N * dtau]. Build it with `build_grid`."""

    model_config = ConfigDict(frozen=True)

    x_inf: float
    J: int
    mu: float
    T: float
    dx: float
    dtau: float
    N: int

    def nodes(self) -> np.ndarray:
        return np.arange(self.J + 1) * self.dx

    def tau(self, n: int) -> float:
        return n * self.dtau


def time_steps(T: float, dtau: float) -> int:
    """Smallest N with N * dtau >= T, tolerant to last-bit rounding of dtau."""
    ratio = T / dtau
    nearest = round(ratio)
    if nearest >= 1 and abs(ratio - nearest) <= STEP_COUNT_SNAP * ratio:
        return int(nearest)
    return math.ceil(ratio)


def build_grid(x_inf: float, J: int, mu: float, T: float) -> GridSpec:
    if not (x_inf > 0 and mu > 0 and T > 0):
        raise InvalidArgumentError(
            f"Grid inputs must be positive, got x_inf={x_inf}, mu={mu}, T={T}."
        )
    if int(J) != J or J < 3:
        raise InvalidArgumentError(
            f"The scheme needs at least 3 space intervals, got J={J}."
        )

    J = int(J)
    dx = x_inf / J
    dtau = mu * dx**2
    return GridSpec(
        x_inf=x_inf, J=J, mu=mu, T=T, dx=dx, dtau=dtau, N=time_steps(T, dtau)
    )


@dataclass(frozen=True)
class FrontFixedState:
    """One time level: prices p_0..p_J at x_j = j * dx and the front value S_f."""

    p: np.ndarray
    S_f: float
    n: int = 0

    def __post_init__(self):
        if not 0.0 < self.S_f <= 1.0:
            raise InvalidArgumentError(
                f"Front value must lie in (0, 1], got {self.S_f} at level {self.n}."
            )
        prices = np.array(self.p, dtype=float)
        if prices.ndim != 1 or prices.size < 4:
            raise InvalidArgumentError(
                f"Expected a price vector with at least 4 nodes, got shape {prices.shape}."
            )
        if abs(prices[0] - (1.0 - self.S_f)) > BOUNDARY_TOLERANCE:
            raise InvalidArgumentError(
                f"p_0 = {prices[0]} does not match 1 - S_f = {1.0 - self.S_f} "
                f"at level {self.n}."
            )
        prices.setflags(write=False)
        object.__setattr__(self, "p", prices)
        object.__setattr__(self, "S_f", float(self.S_f))

    @property
    def J(self) -> int:
        return self.p.size - 1


class SolverStatistics(BaseModel):
    """Counters collected while marching, reported in the run summary."""

    steps: int = 0
    residual_evaluations: int = 0
    root_iterations: int = 0
    max_root_iterations: int = 0
    bracket_expansions: int = 0
    dense_fallbacks: int = 0


@dataclass(frozen=True)
class FrontFixedSolution:
    states: tuple[FrontFixedState, ...]
    grid: GridSpec
    params: ModelParams
    scheme: Scheme = Scheme.IMPLICIT
    stats: SolverStatistics = field(default_factory=SolverStatistics)

    @property
    def final(self) -> FrontFixedState:
        return self.states[-1]

    def fronts(self) -> np.ndarray:
        return np.array([state.S_f for state in self.states])

    def taus(self) -> np.ndarray:
        return np.arange(len(self.states)) * self.grid.dtau

    def surface(self) -> np.ndarray:
        """Prices as an (N+1) x (J+1) array, one row per time level."""
        return np.vstack([state.p for state in self.states])


def initial_state(grid: GridSpec) -> FrontFixedState:
    # At maturity the put is worth nothing on x >= 0 and the front sits at the strike.
    return FrontFixedState(p=np.zeros(grid.J + 1), S_f=1.0, n=0)


def _check_front_inputs(S_f: float, E: float):
    if not 0.0 < S_f <= 1.0:
        raise InvalidArgumentError(f"Front value must lie in (0, 1], got {S_f}.")
    if E <= 0:
        raise InvalidArgumentError(f"Exercise price must be positive, got {E}.")


def transform_asset(S: float, S_f: float, E: float) -> float:
    """x = ln(S / (E * S_f)). Negative values belong to the exercised region."""
    if S <= 0:
        raise InvalidArgumentError(f"Asset price must be positive, got {S}.")
    _check_front_inputs(S_f, E)
    return math.log(S / (E * S_f))


def asset_from_x(x, S_f: float, E: float):
    """Inverse of `transform_asset`, vectorised over x."""
    _check_front_inputs(S_f, E)
    return E * S_f * np.exp(x)
