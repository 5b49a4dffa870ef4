import numpy as np
import pytest

from front_fixing.errors import DegenerateOrderError, InvalidArgumentError
from richardson.extrapolation import (
    build_tableau,
    estimate_error_r,
    estimate_error_s,
    extrapolate_once,
    observed_order,
    observed_orders,
)

FRONT_VALUES = [0.884069, 0.866100, 0.863100, 0.862719, 0.862717, 0.862738]
PUBLISHED_TABLEAU = [
    [0.884069],
    [0.866100, 0.860111],
    [0.863100, 0.862100, 0.862232],
    [0.862719, 0.862592, 0.862625, 0.862631],
    [0.862717, 0.862716, 0.862724, 0.862726, 0.862726],
    [0.862738, 0.862746, 0.862748, 0.862748, 0.862748, 0.862748],
]


class TestExtrapolateOnce:

    def test_first_column(self):
        assert extrapolate_once(0.866100, 0.863100, s=4, q0=1) == pytest.approx(
            0.862100, abs=1e-12
        )

    def test_second_order_column(self):
        assert extrapolate_once(0.860111, 0.862100, s=4, q0=2) == pytest.approx(
            0.862233, abs=1e-6
        )

    @pytest.mark.parametrize("s, q0", [(2, 1), (4, 1), (4, 2.5)])
    def test_identity(self, s, q0):
        assert extrapolate_once(0.7, 0.7, s=s, q0=q0) == 0.7

    def test_elementwise(self):
        coarse = np.array([1.0, 2.0])
        fine = np.array([1.3, 2.3])
        np.testing.assert_allclose(extrapolate_once(coarse, fine), [1.4, 2.4])

    @pytest.mark.parametrize("s", [1, 0.5, -2])
    def test_ratio_must_exceed_one(self, s):
        with pytest.raises(InvalidArgumentError):
            extrapolate_once(1.0, 1.1, s=s)


class TestEstimators:

    def test_richardson_estimate(self):
        assert estimate_error_r(0.866100, 0.863100, s=4, q0=1) == pytest.approx(
            -0.001, abs=1e-12
        )

    def test_equal_inputs(self):
        assert estimate_error_r(0.5, 0.5) == 0
        assert estimate_error_s(0.5, 0.5) == 0

    @pytest.mark.parametrize("coarse, fine", [(0.866100, 0.863100), (1.0, 2.5), (-3.0, 4.0)])
    def test_safe_estimate_is_three_times_larger(self, coarse, fine):
        e_r = estimate_error_r(coarse, fine, s=4, q0=1)
        e_s = estimate_error_s(coarse, fine)
        assert abs(e_s) == pytest.approx(3 * abs(e_r), rel=1e-14)


class TestTableau:

    @pytest.fixture(scope="class")
    def tableau(self):
        return build_tableau(FRONT_VALUES, s=4, q0=1, q1_minus_q0=1)

    def test_reproduces_published_triangle(self, tableau):
        assert tableau.levels == 6
        for g, row in enumerate(PUBLISHED_TABLEAU):
            assert len(tableau.entries[g]) == g + 1
            for k, expected in enumerate(row):
                assert tableau.value(g, k) == pytest.approx(expected, abs=2e-6)
        assert tableau.final == pytest.approx(0.862748, abs=2e-6)

    def test_recurrence_holds_everywhere(self, tableau):
        for g in range(1, tableau.levels):
            for k in range(g):
                factor = tableau.s ** tableau.order(k)
                rebuilt = tableau.value(g, k) + (
                    tableau.value(g, k) - tableau.value(g - 1, k)
                ) / (factor - 1)
                assert tableau.value(g, k + 1) == rebuilt

    def test_orders(self, tableau):
        assert [tableau.s ** tableau.order(k) for k in range(5)] == [4, 16, 64, 256, 1024]

    def test_two_equal_values(self):
        tableau = build_tableau([0.9, 0.9])
        assert tableau.final == 0.9

    def test_one_term_expansion_is_annihilated(self):
        exact, C, s = 0.5, 0.3, 4
        tableau = build_tableau([exact + C * s**-g for g in range(5)], s=s, q0=1)
        for g in range(1, 5):
            assert tableau.value(g, 1) == pytest.approx(exact, abs=1e-14)

    def test_needs_two_values(self):
        with pytest.raises(InvalidArgumentError):
            build_tableau([0.9])

    @pytest.mark.parametrize("q0, q_step", [(0.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (2.0, -2.0)])
    def test_column_orders_must_be_positive(self, q0, q_step):
        with pytest.raises(InvalidArgumentError):
            build_tableau([0.9, 0.88, 0.87], s=4, q0=q0, q1_minus_q0=q_step)

    def test_decreasing_orders_that_stay_positive(self):
        tableau = build_tableau([0.9, 0.88, 0.87], s=4, q0=2, q1_minus_q0=-0.5)
        assert tableau.order(1) == 1.5
        assert tableau.levels == 3

    def test_missing_entry(self, tableau):
        with pytest.raises(InvalidArgumentError):
            tableau.value(1, 2)

    def test_frame_layout(self, tableau):
        frame = tableau.to_frame([5, 20, 80, 320, 1280, 5120])
        assert list(frame.columns) == ["N", "U0", "U1", "U2", "U3", "U4", "U5"]
        assert frame["N"].tolist() == [5, 20, 80, 320, 1280, 5120]
        assert np.isnan(frame.loc[0, "U1"])
        assert frame.loc[5, "U5"] == tableau.final


class TestObservedOrder:

    @pytest.mark.parametrize("q", [1.0, 1.5, 2.0])
    def test_synthetic_expansion(self, q):
        exact, C, s = 1.25, 0.7, 4
        coarse, fine = exact + C * s ** (-q), exact + C * s ** (-2 * q)
        assert observed_order(coarse, fine, exact, s) == pytest.approx(q, rel=1e-10)

    def test_published_pair(self):
        assert observed_order(0.866100, 0.863100, 0.862748, 4) == pytest.approx(
            1.626, abs=0.01
        )

    def test_coincidence_with_reference(self):
        with pytest.raises(DegenerateOrderError):
            observed_order(0.866100, 0.862748, 0.862748, 4)

    def test_series_marks_degenerate_pairs(self):
        orders = observed_orders([0.9, 0.8, 0.8], reference=0.8, s=4)
        assert orders == [None, None]
        orders = observed_orders(FRONT_VALUES[:3], reference=0.862748, s=4)
        assert orders[1] == pytest.approx(1.626, abs=0.01)
