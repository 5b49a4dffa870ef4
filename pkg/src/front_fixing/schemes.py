import logging
from abc import ABC, abstractmethod

from front_fixing.errors import SolverError
from front_fixing.model import (
    FrontFixedSolution,
    FrontFixedState,
    GridSpec,
    ModelParams,
    Scheme,
    SolverStatistics,
    initial_state,
)


class TimeSteppingScheme(ABC):
    """Marches a front-fixed problem from the payoff to tau = N * dtau.

    Subclasses only know how to take one step; the marching loop, statistics and error
    annotation are shared.
    """

    scheme: Scheme

    def __init__(self, params: ModelParams, grid: GridSpec):
        self.params = params
        self.grid = grid
        self.stats = SolverStatistics()
        self.logger = logging.getLogger(f"{__name__}.{self.scheme}")

    @abstractmethod
    def advance(self, state: FrontFixedState) -> FrontFixedState:
        pass

    def march(self) -> FrontFixedSolution:
        states = [initial_state(self.grid)]
        self.logger.info(
            f"Marching {self.grid.N} steps on J={self.grid.J}, mu={self.grid.mu}, "
            f"dx={self.grid.dx:.6g}, dtau={self.grid.dtau:.6g}."
        )
        for n in range(self.grid.N):
            try:
                states.append(self.advance(states[-1]))
            except SolverError as err:
                err.time_index = n + 1
                raise
            self.stats.steps += 1

        self.logger.info(f"Front at the last level: S_f={states[-1].S_f:.10f}.")
        return FrontFixedSolution(
            states=tuple(states),
            grid=self.grid,
            params=self.params,
            scheme=self.scheme,
            stats=self.stats,
        )
