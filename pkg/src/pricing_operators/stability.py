from pandas import DataFrame
from pydantic import Field

from pricing_operators import metadata
from pricing_operators.config import RunConfig
from pricing_operators.solving import run_scheme
from runtime.operator_definition import (
    DataframeSlot,
    DocumentSlot,
    IoType,
    Operator,
    OperatorTags,
    SlotData,
    SlotDefinition,
)
from stability_lab.amplification import (
    MIN_SAMPLES,
    FrozenFrontTerm,
    front_levels_report,
    stability_scan,
)


class StabilityOperator(Operator):
    """Amplification curves per grid ratio at the space step of the config grid.

    With `front_levels` the configured scheme is also solved and its curves with g frozen
    at those time levels are written.
    """

    meta_name = "stability"
    meta_description = "Von Neumann amplification factors over grid ratios."
    meta_labels = {OperatorTags.ANALYZER}
    meta_output_slots = (
        SlotDefinition(name=metadata.STABILITY_FILE),
        SlotDefinition(
            name=metadata.STABILITY_SUMMARY_FILE, tags={OperatorTags.REPORT}, type=IoType.DOCUMENT
        ),
        SlotDefinition(name=metadata.FRONT_LEVELS_FILE, required=False),
    )

    class Options(RunConfig):
        mu_values: list[float] = Field(default=[12.0, 20.0, 26.0, 100.0], min_length=1)
        samples: int = Field(default=MIN_SAMPLES, ge=MIN_SAMPLES)
        front_levels: list[int] = []

    def run(self) -> tuple[SlotData, ...]:
        params = self.options.model_params()
        rows = []
        summaries = []
        for mu in self.options.mu_values:
            grid = self.options.model_copy(update={"mu": mu}).grid()
            report = stability_scan(
                self.options.scheme, params, mu, grid.dx, FrozenFrontTerm(), self.options.samples
            )
            rows.extend(
                {"mu": mu, "N": grid.N, "k_dx": phase, "modulus": modulus}
                for phase, modulus in report.samples
            )
            summaries.append(report.summary(T=self.options.T))

        slots: list[SlotData] = [
            DataframeSlot(
                DataFrame(rows, columns=metadata.STABILITY_COLUMNS),
                {"filename": metadata.STABILITY_FILE},
            ),
            DocumentSlot(
                {"scheme": str(self.options.scheme), "reports": summaries},
                metadata.STABILITY_SUMMARY_FILE,
            ),
        ]
        if self.options.front_levels:
            solution = run_scheme(self.options)
            frame = front_levels_report(
                solution, self.options.front_levels, self.options.samples
            )
            slots.append(DataframeSlot(frame, {"filename": metadata.FRONT_LEVELS_FILE}))
        return tuple(slots)
