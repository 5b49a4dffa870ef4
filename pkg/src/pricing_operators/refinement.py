from pydantic import Field

from front_fixing.errors import ToleranceNotMetError
from pricing_operators import metadata
from pricing_operators.config import RunConfig
from richardson.refinement import Estimator, RefinementReport, refine_until
from runtime.operator_definition import (
    DataframeSlot,
    DocumentSlot,
    IoType,
    Operator,
    OperatorTags,
    SlotData,
    SlotDefinition,
)
from runtime.runtimes import PartialResultError


def report_slots(report: RefinementReport) -> tuple[SlotData, ...]:
    """The report plus the error series of the accepted pair, or of the last one tried.

    The series file is numbered by the fine grid of the pair, J_g = J_start * 2^g.
    """
    slots: list[SlotData] = [DocumentSlot(report.summary(), metadata.REFINEMENT_FILE)]
    if report.levels:
        level = report.accepted_level if report.accepted else len(report.levels) - 1
        slots.append(
            DataframeSlot(
                report.levels[level].errors_frame(),
                {"filename": metadata.errors_file(level + 1)},
            )
        )
    return tuple(slots)


class RefineOperator(Operator):
    meta_name = "refine"
    meta_description = "Double the grid until the a posteriori error estimate meets a tolerance."
    meta_labels = {OperatorTags.EVALUATOR, OperatorTags.TIMESERIES}
    meta_output_slots = (
        SlotDefinition(
            name=metadata.REFINEMENT_FILE, tags={OperatorTags.REPORT}, type=IoType.DOCUMENT
        ),
        SlotDefinition(name="errors_g<level>.csv", tags={OperatorTags.TIMESERIES}),
    )

    class Options(RunConfig):
        # J is the coarse grid of the first pair.
        J: int = 5
        eps: float = Field(default=0.005, gt=0)
        max_levels: int = Field(default=8, ge=1)
        estimator: Estimator = Estimator.RICHARDSON

    def run(self) -> tuple[SlotData, ...]:
        try:
            report = refine_until(
                self.options.model_params(),
                self.options.x_inf,
                self.options.mu,
                J_start=self.options.J,
                eps=self.options.eps,
                solver=self.options.scheme,
                max_levels=self.options.max_levels,
                estimator=self.options.estimator,
                cfg=self.options.solver_config(),
            )
        except ToleranceNotMetError as err:
            raise PartialResultError(err, report_slots(err.report)) from err

        accepted = report.levels[report.accepted_level]
        self.logger.info(f"Accepted the pair J={accepted.J_coarse}/{accepted.J_fine}.")
        return report_slots(report)
