import time

import numpy as np
from pandas import DataFrame
from pydantic import Field

from front_fixing.errors import InvalidArgumentError
from front_fixing.explicit import explicit_solve
from front_fixing.implicit import solve
from front_fixing.model import FrontFixedSolution, GridSpec, Scheme, build_grid
from pricing_operators import metadata
from pricing_operators.config import RunConfig
from runtime.operator_definition import (
    DataframeSlot,
    DocumentSlot,
    IoType,
    Operator,
    OperatorTags,
    SlotData,
    SlotDefinition,
)

# J must come out integral when x_inf changes at fixed dx.
INTERVAL_SNAP = 1e-9


def run_scheme(config: RunConfig, grid: GridSpec | None = None) -> FrontFixedSolution:
    """March the configured scheme on `grid`, the config grid by default."""
    grid = config.grid() if grid is None else grid
    if config.scheme == Scheme.EXPLICIT:
        return explicit_solve(config.model_params(), grid)
    return solve(config.model_params(), grid, config.solver_config())


def surface_frame(solution: FrontFixedSolution) -> DataFrame:
    grid = solution.grid
    levels, nodes = np.meshgrid(
        np.arange(len(solution.states)), np.arange(grid.J + 1), indexing="ij"
    )
    return DataFrame(
        {
            "n": levels.ravel(),
            "tau": levels.ravel() * grid.dtau,
            "j": nodes.ravel(),
            "x": nodes.ravel() * grid.dx,
            "p": solution.surface().ravel(),
        },
        columns=metadata.SURFACE_COLUMNS,
    )


def front_frame(solution: FrontFixedSolution) -> DataFrame:
    return DataFrame(
        {
            "n": np.arange(len(solution.states)),
            "tau": solution.taus(),
            "S_f": solution.fronts(),
        },
        columns=metadata.FRONT_COLUMNS,
    )


class SolveOperator(Operator):
    meta_name = "solve"
    meta_description = "Solve the front-fixed problem and write the surface, the front and a summary."
    meta_labels = {OperatorTags.SIMULATOR, OperatorTags.SURFACE}
    meta_output_slots = (
        SlotDefinition(name=metadata.SURFACE_FILE, tags={OperatorTags.SURFACE}),
        SlotDefinition(name=metadata.FRONT_FILE, tags={OperatorTags.TIMESERIES}),
        SlotDefinition(
            name=metadata.SUMMARY_FILE, tags={OperatorTags.REPORT}, type=IoType.DOCUMENT
        ),
    )

    class Options(RunConfig):
        pass

    def run(self) -> tuple[SlotData, ...]:
        grid = self.options.grid()
        self.logger.info(f"Grid: J={grid.J}, N={grid.N}, dx={grid.dx}, dtau={grid.dtau}.")

        started = time.perf_counter()
        solution = run_scheme(self.options, grid)
        wall_time = time.perf_counter() - started
        self.logger.info(f"Solved in {wall_time:.2f}s, S_f^N={solution.final.S_f:.10f}.")

        summary = {
            "params": solution.params.model_dump(),
            "grid": grid.model_dump(),
            "scheme": str(solution.scheme),
            "S_f_final": solution.final.S_f,
            "wall_time_seconds": wall_time,
            "stats": solution.stats.model_dump(),
        }
        return (
            DataframeSlot(surface_frame(solution), {"filename": metadata.SURFACE_FILE}),
            DataframeSlot(front_frame(solution), {"filename": metadata.FRONT_FILE}),
            DocumentSlot(summary, metadata.SUMMARY_FILE),
        )


class TruncationOperator(Operator):
    """Solve at several truncated boundaries with the space step of the config grid."""

    meta_name = "xinf"
    meta_description = "Sensitivity of the final front to the truncated boundary at fixed dx."
    meta_labels = {OperatorTags.ANALYZER}
    meta_output_slots = (SlotDefinition(name=metadata.BOUNDARY_FILE),)

    class Options(RunConfig):
        x_inf_values: list[float] = Field(default=[1.0, 2.0, 4.0], min_length=1)

    def run(self) -> tuple[SlotData, ...]:
        dx = self.options.x_inf / self.options.J
        rows = []
        for x_inf in self.options.x_inf_values:
            intervals = x_inf / dx
            J = round(intervals)
            if abs(intervals - J) > INTERVAL_SNAP * intervals:
                raise InvalidArgumentError(
                    f"x_inf={x_inf} is not a multiple of the space step {dx}."
                )
            grid = build_grid(x_inf, J, self.options.mu, self.options.T)
            solution = run_scheme(self.options, grid)
            self.logger.info(f"x_inf={x_inf}: S_f^N={solution.final.S_f:.13f}.")
            rows.append({"x_inf": x_inf, "J": J, "N": grid.N, "S_f": solution.final.S_f})

        frame = DataFrame(rows, columns=metadata.BOUNDARY_COLUMNS)
        return (DataframeSlot(frame, {"filename": metadata.BOUNDARY_FILE}),)
