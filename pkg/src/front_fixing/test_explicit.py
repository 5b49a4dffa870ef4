import numpy as np
import pytest

from front_fixing.errors import InstabilityError
from front_fixing.explicit import explicit_solve, explicit_step
from front_fixing.implicit import solve
from front_fixing.model import FrontFixedState, ModelParams, Scheme, build_grid, initial_state

BASE_PARAMS = ModelParams(r=0.1, sigma=0.2, T=1.0, E=1.0)


def literal_update(p, sf, r, sigma, mu, dx, dtau):
    """Straight-line evaluation of the explicit update, one node at a time."""
    J = len(p) - 1
    ghost = list(p) + [0.0]

    def level_n(j):
        return (
            ghost[j]
            + mu * sigma**2 / 2 * (ghost[j + 1] - 2 * ghost[j] + ghost[j - 1])
            + mu * dx / 2 * (r - sigma**2 / 2) * (ghost[j + 1] - ghost[j - 1])
            - r * dtau * ghost[j]
        )

    kappa = (ghost[2] - ghost[0]) / (sf * 2 * dx)
    alpha = 1 + r * dx**2 / sigma**2
    beta = 1 + dx + dx**2 / 2
    new_sf = (alpha - level_n(1) + kappa * sf) / (beta + kappa)

    new_p = [1 - new_sf, alpha - beta * new_sf]
    for j in range(2, J + 1):
        new_p.append(level_n(j) + (new_sf - sf) / (sf * 2 * dx) * (ghost[j + 1] - ghost[j - 1]))
    return np.array(new_p), new_sf


class TestExplicitStep:

    def test_zero_field_stays_zero_away_from_the_boundary(self):
        grid = build_grid(1.0, 20, 20, 1.0)
        state = explicit_step(initial_state(grid), grid, BASE_PARAMS)

        alpha = 1 + BASE_PARAMS.r * grid.dx**2 / BASE_PARAMS.sigma**2
        beta = 1 + grid.dx + grid.dx**2 / 2
        assert state.S_f == pytest.approx(alpha / beta, rel=1e-15)
        assert state.p[0] == 1 - state.S_f
        assert state.p[1] == pytest.approx(0.0, abs=1e-15)
        assert np.all(state.p[2:] == 0)

    def test_matches_literal_update_on_toy_grid(self):
        grid = build_grid(1.0, 4, 20, 1.0)
        params = BASE_PARAMS
        state = FrontFixedState(p=[0.08, 0.05, 0.02, 0.005, 0.0005], S_f=0.92, n=3)

        next_state = explicit_step(state, grid, params)
        expected_p, expected_sf = literal_update(
            state.p, state.S_f, params.r, params.sigma, grid.mu, grid.dx, grid.dtau
        )

        assert next_state.S_f == pytest.approx(expected_sf, abs=1e-14)
        np.testing.assert_allclose(next_state.p, expected_p, atol=1e-14)
        assert next_state.n == 4

    def test_guard_trips_on_blow_up(self):
        grid = build_grid(1.0, 4, 20, 1.0)
        state = FrontFixedState(p=[0.08, 0.05, 50.0, -50.0, 50.0], S_f=0.92)
        with pytest.raises(InstabilityError):
            explicit_step(state, grid, BASE_PARAMS)


class TestExplicitSolve:

    def test_published_free_boundary(self):
        solution = explicit_solve(BASE_PARAMS, build_grid(1.0, 80, 20, BASE_PARAMS.T))
        assert solution.scheme == Scheme.EXPLICIT
        assert solution.final.S_f == pytest.approx(0.8628, abs=1e-3)

    @pytest.mark.parametrize("mu, N", [(12, 534), (20, 320)])
    def test_stable_grid_ratios(self, mu, N):
        solution = explicit_solve(BASE_PARAMS, build_grid(1.0, 80, mu, BASE_PARAMS.T))
        surface = solution.surface()

        assert solution.grid.N == N
        assert len(solution.states) == N + 1
        assert np.all(np.diff(solution.fronts()) <= 1e-12)
        assert np.all(surface >= -1e-9)
        assert np.all(surface <= 1 + 1e-9)

    def test_unstable_grid_ratio(self):
        grid = build_grid(1.0, 80, 26, BASE_PARAMS.T)
        assert grid.N == 247
        with pytest.raises(InstabilityError) as error:
            explicit_solve(BASE_PARAMS, grid)
        assert 1 <= error.value.time_index <= grid.N

    @pytest.mark.parametrize("J", [20, 40, 80])
    def test_agrees_with_implicit_to_first_order(self, J):
        grid = build_grid(1.0, J, 20, BASE_PARAMS.T)
        explicit = explicit_solve(BASE_PARAMS, grid).final.S_f
        implicit = solve(BASE_PARAMS, grid).final.S_f
        assert abs(explicit - implicit) <= 5 * grid.dtau
