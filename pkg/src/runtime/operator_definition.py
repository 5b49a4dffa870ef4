import abc
import logging
import re
from enum import StrEnum
from pathlib import Path
from typing import Any

from pandas import DataFrame
from pydantic import BaseModel, Field


class TaskDefinition(BaseModel):
    """Defines a single executable operation.

    It only holds the definition, it cannot be executed by itself.
    """

    operator: str
    options: dict[str, Any] = Field(default_factory=dict)
    output_dir: Path = Path(".")


class OperatorTags(StrEnum):
    """Enum with some common tags.

    It's not an exhaustive list, as tags are just arbitrary strings.
    An enum is a convenient way to suggest common tags to devs.
    """

    # Role
    SIMULATOR = "simulator"
    ANALYZER = "analyzer"
    EVALUATOR = "evaluator"
    EXPORTER = "exporter"

    # Formats
    SURFACE = "surface"
    TIMESERIES = "timeseries"
    REPORT = "report"


class IoType(StrEnum):
    DATAFRAME = "dataframe"
    DOCUMENT = "document"


class SlotDefinition(BaseModel):
    """Describes an output slot, and the file it ends up in."""

    name: str = Field(default="")
    tags: set[str] = set()

    required: bool = Field(default=True)
    type: IoType = Field(default=IoType.DATAFRAME)


class SlotData:
    """Acts as a container for data produced by operators.

    It hides the details of how the data is stored; the runtime decides where it lands.
    """

    def __init__(self, filename: str):
        self.filename = filename


class DataframeSlot(SlotData):
    def __init__(
        self,
        df: DataFrame | None,
        metadata: dict | None = None,
    ):
        self.metadata = dict() if metadata is None else metadata
        super().__init__(self.metadata.get("filename", "data.csv"))
        self.df = df

    def get_df(self) -> DataFrame:
        if self.df is None:
            raise ValueError(
                "The dataframe is missing. Ensure the slot contains a valid dataframe before accessing it."
            )
        return self.df


class DocumentSlot(SlotData):
    """A JSON document, either a plain dict or a pydantic model."""

    def __init__(self, document: dict | BaseModel, filename: str):
        super().__init__(filename)
        self.document = document

    def get_document(self) -> dict:
        if isinstance(self.document, BaseModel):
            return self.document.model_dump(mode="json")
        return self.document


class Operator(abc.ABC):
    """Define the interface for an operator."""

    # Metadata about the operator
    meta_name: str = "GenericOperator"
    meta_description: str = ""
    meta_labels: set[str] = set()

    # Describes the specific output shape of the Operator.
    meta_output_slots: tuple[SlotDefinition, ...] = tuple()

    class Options(BaseModel):
        """An operator can have arbitrary options.

        This is ideally a single-level object. By using a Pydantic model, we can define its range.
        """

        pass

    def __init__(self, options: Options):
        # An instance is tied to actual parameters
        self.options = options
        self.logger = logging.getLogger(self.meta_name)

    @abc.abstractmethod
    def run(self) -> tuple[SlotData, ...]:
        pass

    def get_human_name(self):
        """Return a human-readable name for the operator."""
        return re.sub(r"\W+", " ", self.meta_name)
