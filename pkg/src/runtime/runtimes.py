import logging
from pathlib import Path

from pydantic import ValidationError

from front_fixing.errors import SolverError, ToleranceNotMetError
from runtime.catalog_base import Catalog
from runtime.enums import ExitCode
from runtime.operator_definition import (
    DataframeSlot,
    DocumentSlot,
    SlotData,
    TaskDefinition,
)
from runtime.persistance import write_csv, write_json


class PartialResultError(Exception):
    """An operator failed but produced slots that must still be persisted."""

    def __init__(self, cause: Exception, slots: tuple[SlotData, ...]):
        super().__init__(str(cause))
        self.cause = cause
        self.slots = slots


def exit_code_for(error: BaseException) -> ExitCode:
    # Order matters: pydantic and domain argument errors are ValueErrors too.
    if isinstance(error, ToleranceNotMetError):
        return ExitCode.TOLERANCE_NOT_MET
    if isinstance(error, SolverError):
        return ExitCode.SOLVER_FAILURE
    if isinstance(error, (ValidationError, ValueError, KeyError)):
        return ExitCode.INVALID_ARGUMENTS
    if isinstance(error, OSError):
        return ExitCode.IO_FAILURE
    raise error


class Runtime:
    """Runs tasks against a catalog and persists what the operators return."""

    def __init__(self, catalog: Catalog):
        self.catalog: Catalog = catalog
        self.logger = logging.getLogger("Runtime")

    def run(self, task: TaskDefinition) -> ExitCode:
        try:
            operator_class = self.catalog.get_operator(task.operator)
            options = operator_class.Options.model_validate(task.options)
            operator = operator_class(options)
            self.logger.info(f"Running {operator.get_human_name()}.")
            slots = operator.run()
        except PartialResultError as err:
            self.logger.error(f"{task.operator} failed: {err.cause}")
            return self._persist_or_fail(err.slots, task.output_dir, exit_code_for(err.cause))
        except Exception as err:
            self.logger.error(f"{task.operator} failed: {err}")
            return exit_code_for(err)

        return self._persist_or_fail(slots, task.output_dir, ExitCode.SUCCESS)

    def _persist_or_fail(
        self, slots: tuple[SlotData, ...], output_dir: Path, exit_code: ExitCode
    ) -> ExitCode:
        try:
            for slot in slots:
                self.persist_slot(slot, output_dir)
        except OSError as err:
            self.logger.error(f"Could not write results: {err}")
            return ExitCode.IO_FAILURE
        return exit_code

    def persist_slot(self, slot: SlotData, output_dir: Path):
        path = Path(output_dir) / slot.filename
        if isinstance(slot, DataframeSlot):
            write_csv(slot.get_df(), path)
        elif isinstance(slot, DocumentSlot):
            write_json(slot.get_document(), path)
        else:
            raise TypeError(f"Don't know how to persist {type(slot).__name__}.")
        self.logger.info(f"Wrote {path}.")
