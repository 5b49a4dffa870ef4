from pydantic import Field

from pricing_operators import metadata
from pricing_operators.config import RunConfig
from pricing_operators.solving import run_scheme
from richardson.extrapolation import build_tableau, observed_orders
from runtime.operator_definition import (
    DataframeSlot,
    DocumentSlot,
    IoType,
    Operator,
    OperatorTags,
    SlotData,
    SlotDefinition,
)

# Doubling J at fixed mu quarters the time step.
REFINEMENT_RATIO = 4


class ExtrapolateOperator(Operator):
    meta_name = "extrapolate"
    meta_description = "Repeated Richardson extrapolation of the final front over doubled grids."
    meta_labels = {OperatorTags.EVALUATOR}
    meta_output_slots = (
        SlotDefinition(name=metadata.TABLEAU_FILE),
        SlotDefinition(
            name=metadata.EXTRAPOLATION_FILE, tags={OperatorTags.REPORT}, type=IoType.DOCUMENT
        ),
    )

    class Options(RunConfig):
        # J is the coarsest grid of the sequence.
        J: int = 10
        levels: int = Field(default=5, ge=1)
        q0: float = Field(default=1.0, gt=0)
        q_step: float = Field(default=1.0, gt=0)

    def run(self) -> tuple[SlotData, ...]:
        runs = []
        for g in range(self.options.levels + 1):
            grid = self.options.grid(J=self.options.J * 2**g)
            solution = run_scheme(self.options, grid)
            self.logger.info(f"Level {g}: J={grid.J}, N={grid.N}, S_f^N={solution.final.S_f:.8f}.")
            runs.append({"J": grid.J, "N": grid.N, "S_f": solution.final.S_f})

        values = [run["S_f"] for run in runs]
        tableau = build_tableau(
            values, REFINEMENT_RATIO, self.options.q0, self.options.q_step
        )
        document = {
            "scheme": str(self.options.scheme),
            "runs": runs,
            "tableau": tableau.model_dump(),
            "benchmark": tableau.final,
            "observed_orders": observed_orders(values, tableau.final, REFINEMENT_RATIO),
        }
        frame = tableau.to_frame([run["N"] for run in runs])
        return (
            DataframeSlot(frame, {"filename": metadata.TABLEAU_FILE}),
            DocumentSlot(document, metadata.EXTRAPOLATION_FILE),
        )
