from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import Field, PositiveFloat

from front_fixing.errors import ExtrapolationOutOfDomainError
from front_fixing.model import FrontFixedSolution
from front_fixing.readout import spline_prices
from pricing_operators import metadata
from pricing_operators.config import RunConfig
from pricing_operators.solving import run_scheme
from richardson.extrapolation import extrapolate_once
from runtime.operator_definition import (
    DataframeSlot,
    Operator,
    OperatorTags,
    SlotData,
    SlotDefinition,
)
from runtime.runtimes import PartialResultError

REFERENCE_PRICES = Path(__file__).parent / "data" / "reference_prices.csv"


def load_reference_prices() -> pd.DataFrame:
    """Published comparison prices for T=3, sigma=0.2, r=0.08, E=100. Display only."""
    return pd.read_csv(REFERENCE_PRICES, dtype=float)


def price_or_nan(solution: FrontFixedSolution, S: float) -> tuple[float, str]:
    try:
        price = spline_prices(solution.final, solution.grid, solution.params, [S])[0]
    except ExtrapolationOutOfDomainError as err:
        return np.nan, str(err)
    return float(price), ""


class PriceOperator(Operator):
    """Option prices at maturity of the solve, read off the spline through the final level.

    Defaults reproduce the published price comparison: T=3, sigma=0.2, r=0.08, E=100 on
    dx=0.02 (x_inf=1, J=50) and mu=5.
    """

    meta_name = "price"
    meta_description = "Price table at selected asset prices."
    meta_labels = {OperatorTags.EXPORTER}
    meta_output_slots = (SlotDefinition(name=metadata.PRICES_FILE),)

    class Options(RunConfig):
        r: float = Field(default=0.08, gt=0)
        T: float = Field(default=3.0, gt=0)
        E: float = Field(default=100.0, gt=0)
        J: int = 50
        mu: float = Field(default=5.0, gt=0)

        assets: list[PositiveFloat] = Field(default=[90.0, 100.0, 110.0, 120.0], min_length=1)
        extrapolate: bool = False
        reference: bool = False

    def run(self) -> tuple[SlotData, ...]:
        solution = run_scheme(self.options)
        priced = [price_or_nan(solution, S) for S in self.options.assets]
        frame = pd.DataFrame(
            {"S": self.options.assets, "price": [price for price, _ in priced]},
            columns=metadata.PRICE_COLUMNS,
        )

        if self.options.extrapolate:
            fine = run_scheme(self.options, self.options.grid(J=2 * self.options.J))
            fine_prices = [price_or_nan(fine, S)[0] for S in self.options.assets]
            frame["price_extrapolated"] = extrapolate_once(
                frame["price"].to_numpy(), np.array(fine_prices), s=4, q0=1
            )

        if self.options.reference:
            reference = load_reference_prices()[["S", *metadata.REFERENCE_COLUMNS]]
            frame = frame.merge(reference, on="S", how="left")

        failures = [message for _, message in priced if message]
        if failures:
            frame["error"] = [message for _, message in priced]
            slot = DataframeSlot(frame, {"filename": metadata.PRICES_FILE})
            raise PartialResultError(ExtrapolationOutOfDomainError(failures[0]), (slot,))

        self.logger.info(f"Priced {len(frame)} assets on J={solution.grid.J}.")
        return (DataframeSlot(frame, {"filename": metadata.PRICES_FILE}),)
