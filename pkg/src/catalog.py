"""Holds the library definition"""

from pricing_operators.extrapolation import ExtrapolateOperator
from pricing_operators.pricing import PriceOperator
from pricing_operators.refinement import RefineOperator
from pricing_operators.solving import SolveOperator, TruncationOperator
from pricing_operators.stability import StabilityOperator
from runtime.catalog_base import Catalog


catalog = Catalog(
    name="front-fixing-operators",
    description="Front-fixing finite differences for American puts",
    operators=[
        SolveOperator,
        ExtrapolateOperator,
        RefineOperator,
        StabilityOperator,
        PriceOperator,
        TruncationOperator,
    ],
)
