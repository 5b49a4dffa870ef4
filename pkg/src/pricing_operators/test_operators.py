import numpy as np
import pytest
from pydantic import ValidationError

from front_fixing.errors import InvalidArgumentError
from front_fixing.model import Scheme
from pricing_operators.config import RunConfig
from pricing_operators.pricing import PriceOperator, load_reference_prices
from pricing_operators.refinement import RefineOperator, report_slots
from pricing_operators.solving import (
    TruncationOperator,
    front_frame,
    run_scheme,
    surface_frame,
)
from richardson.refinement import RefinementReport
from runtime.operator_definition import DataframeSlot, DocumentSlot


class TestRunConfig:

    def test_defaults(self):
        config = RunConfig()
        grid = config.grid()
        assert (grid.J, grid.N, grid.dx) == (80, 320, 0.0125)
        assert config.scheme == Scheme.IMPLICIT
        assert config.model_params().E == 1.0

    def test_unknown_keys(self):
        with pytest.raises(ValidationError):
            RunConfig(volatility=0.2)

    @pytest.mark.parametrize("key", ["r", "sigma", "T", "E", "x_inf", "mu"])
    def test_positive_inputs(self, key):
        with pytest.raises(ValidationError):
            RunConfig(**{key: 0.0})

    def test_solver_overrides(self):
        cfg = RunConfig(max_iters=5, sf_tol=1e-10).solver_config()
        assert (cfg.max_iters, cfg.sf_tol, cfg.residual_tol) == (5, 1e-10, 1e-12)

    def test_operator_defaults_layer_on_top(self):
        options = PriceOperator.Options()
        assert (options.T, options.r, options.E, options.J, options.mu) == (3.0, 0.08, 100.0, 50, 5.0)
        assert options.grid().dx == pytest.approx(0.02)
        assert RefineOperator.Options().J == 5


class TestFrames:

    @pytest.fixture(scope="class")
    def solution(self):
        return run_scheme(RunConfig(J=10))

    def test_surface_layout(self, solution):
        frame = surface_frame(solution)
        assert len(frame) == (solution.grid.N + 1) * (solution.grid.J + 1)
        last = frame[frame["n"] == solution.grid.N]
        np.testing.assert_array_equal(last["p"].to_numpy(), solution.final.p)
        np.testing.assert_allclose(last["x"].to_numpy(), solution.grid.nodes())
        assert last["tau"].iloc[0] == pytest.approx(1.0)

    def test_front_layout(self, solution):
        frame = front_frame(solution)
        assert frame["n"].tolist() == list(range(solution.grid.N + 1))
        np.testing.assert_array_equal(frame["S_f"].to_numpy(), solution.fronts())

    def test_explicit_dispatch(self):
        assert run_scheme(RunConfig(J=20, scheme="explicit")).scheme == Scheme.EXPLICIT


class TestTruncationOperator:

    def test_keeps_the_space_step(self):
        options = TruncationOperator.Options(J=10, x_inf_values=[0.5, 1.0, 2.0])
        (slot,) = TruncationOperator(options).run()
        assert slot.filename == "boundary.csv"
        assert slot.get_df()["J"].tolist() == [5, 10, 20]

    def test_off_grid_boundary(self):
        options = TruncationOperator.Options(J=10, x_inf_values=[1.05])
        with pytest.raises(InvalidArgumentError):
            TruncationOperator(options).run()


class TestReportSlots:

    def test_empty_report(self):
        report = RefinementReport(eps=0.1, mu=20, x_inf=1, scheme="implicit", estimator="richardson")
        (slot,) = report_slots(report)
        assert isinstance(slot, DocumentSlot)
        assert slot.get_document()["accepted"] is False

    def test_accepted_pair_is_exported(self):
        (document, errors) = RefineOperator(RefineOperator.Options(eps=1.0)).run()
        assert document.filename == "refinement.json"
        assert isinstance(errors, DataframeSlot)
        assert errors.filename == "errors_g1.csv"


def test_reference_prices():
    reference = load_reference_prices()
    assert reference["S"].tolist() == [90, 100, 110, 120]
    assert reference.loc[reference["S"] == 100, "true"].item() == pytest.approx(6.9320)
    assert reference.loc[reference["S"] == 90, "emr"].item() == pytest.approx(11.7706)
