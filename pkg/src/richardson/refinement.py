"""Tolerance-driven grid refinement.

Grids are doubled in J with mu fixed, so dtau shrinks by four and coarse level n meets
fine level 4n, while coarse node j meets fine node 2j. A pair is accepted once the error
estimate of both the price vector and the front stays below the tolerance at every shared
time level.
"""

import logging
from collections.abc import Callable
from enum import StrEnum

import numpy as np
from pandas import DataFrame
from pydantic import BaseModel

from front_fixing.errors import InvalidArgumentError, ToleranceNotMetError
from front_fixing.explicit import explicit_solve
from front_fixing.implicit import StepSolverConfig, solve
from front_fixing.model import (
    FrontFixedSolution,
    GridSpec,
    ModelParams,
    Scheme,
    build_grid,
)
from richardson.extrapolation import estimate_error_r, estimate_error_s

logger = logging.getLogger(__name__)

# J doubles and mu is fixed, so the time step shrinks by this ratio.
TIME_RATIO = 4


class Estimator(StrEnum):
    RICHARDSON = "richardson"
    SAFE = "safe"


class ErrorSample(BaseModel):
    n: int
    tau: float
    err_p_inf: float
    err_sf: float
    safe_p_inf: float
    safe_sf: float


class RefinementLevel(BaseModel):
    J_coarse: int
    N_coarse: int
    J_fine: int
    N_fine: int
    accepted: bool
    errors: list[ErrorSample]

    def errors_frame(self) -> DataFrame:
        return DataFrame(
            [sample.model_dump() for sample in self.errors],
            columns=["n", "tau", "err_p_inf", "err_sf"],
        )

    def peak_front_error(self) -> ErrorSample:
        return max(self.errors, key=lambda sample: abs(sample.err_sf))


class RefinementReport(BaseModel):
    eps: float
    mu: float
    x_inf: float
    scheme: Scheme
    estimator: Estimator
    levels: list[RefinementLevel] = []
    accepted_level: int | None = None

    @property
    def accepted(self) -> bool:
        return self.accepted_level is not None

    def summary(self) -> dict:
        """JSON-ready dump with the acceptance flag spelled out."""
        return {**self.model_dump(mode="json"), "accepted": self.accepted}


SOLVERS: dict[Scheme, Callable[..., FrontFixedSolution]] = {
    Scheme.IMPLICIT: solve,
    Scheme.EXPLICIT: lambda params, grid, cfg=None: explicit_solve(params, grid),
}


def aligned_levels(coarse: GridSpec, fine: GridSpec) -> list[tuple[int, int]]:
    """Pairs (n_coarse, n_fine) compared between two grids.

    When ceil() breaks the exact ratio the last levels of both runs are compared too.
    """
    shared = min(coarse.N, fine.N // TIME_RATIO)
    pairs = [(n, TIME_RATIO * n) for n in range(1, shared + 1)]
    if fine.N != TIME_RATIO * coarse.N:
        pairs = [pair for pair in pairs if pair[0] != coarse.N]
        pairs.append((coarse.N, fine.N))
    return pairs


def compare_solutions(
    coarse: FrontFixedSolution,
    fine: FrontFixedSolution,
    s: float = TIME_RATIO,
    q0: float = 1,
) -> list[ErrorSample]:
    if fine.grid.J != 2 * coarse.grid.J:
        raise InvalidArgumentError(
            f"The fine grid must double J, got {coarse.grid.J} and {fine.grid.J}."
        )

    samples = []
    for n_coarse, n_fine in aligned_levels(coarse.grid, fine.grid):
        coarse_state = coarse.states[n_coarse]
        fine_state = fine.states[n_fine]
        shared_fine = fine_state.p[::2]
        samples.append(
            ErrorSample(
                n=n_coarse,
                tau=coarse.grid.tau(n_coarse),
                err_p_inf=float(
                    np.max(np.abs(estimate_error_r(coarse_state.p, shared_fine, s, q0)))
                ),
                err_sf=float(estimate_error_r(coarse_state.S_f, fine_state.S_f, s, q0)),
                safe_p_inf=float(
                    np.max(np.abs(estimate_error_s(coarse_state.p, shared_fine)))
                ),
                safe_sf=float(estimate_error_s(coarse_state.S_f, fine_state.S_f)),
            )
        )
    return samples


def _within(samples: list[ErrorSample], eps: float, estimator: Estimator) -> bool:
    if estimator == Estimator.SAFE:
        return all(x.safe_p_inf <= eps and abs(x.safe_sf) <= eps for x in samples)
    return all(x.err_p_inf <= eps and abs(x.err_sf) <= eps for x in samples)


def refine_until(
    params: ModelParams,
    x_inf: float,
    mu: float,
    J_start: int,
    eps: float,
    solver: Scheme = Scheme.IMPLICIT,
    max_levels: int = 8,
    estimator: Estimator = Estimator.RICHARDSON,
    s: float = TIME_RATIO,
    q0: float = 1,
    cfg: StepSolverConfig | None = None,
) -> RefinementReport:
    """Double J from J_start until a (J, 2J) pair meets `eps`.

    `max_levels` bounds the number of pairs compared. Raises ToleranceNotMetError with
    the levels recorded so far when the budget runs out.
    """
    if not eps > 0:
        raise InvalidArgumentError(f"The tolerance must be positive, got {eps}.")
    if max_levels < 1:
        raise InvalidArgumentError(f"At least one level is needed, got {max_levels}.")

    solver = Scheme(solver)
    run = SOLVERS[solver]
    report = RefinementReport(
        eps=eps, mu=mu, x_inf=x_inf, scheme=solver, estimator=Estimator(estimator)
    )

    J = J_start
    coarse = run(params, build_grid(x_inf, J, mu, params.T), cfg)
    for level in range(max_levels):
        fine = run(params, build_grid(x_inf, 2 * J, mu, params.T), cfg)
        samples = compare_solutions(coarse, fine, s, q0)
        accepted = _within(samples, eps, report.estimator)
        report.levels.append(
            RefinementLevel(
                J_coarse=coarse.grid.J,
                N_coarse=coarse.grid.N,
                J_fine=fine.grid.J,
                N_fine=fine.grid.N,
                accepted=accepted,
                errors=samples,
            )
        )
        logger.info(
            f"Pair J={J}/{2 * J}: max |e_r(S_f)| = "
            f"{max(abs(x.err_sf) for x in samples):.3e}, accepted={accepted}."
        )
        if accepted:
            report.accepted_level = level
            return report
        coarse, J = fine, 2 * J

    raise ToleranceNotMetError(
        f"Tolerance {eps} not met after {max_levels} refinement levels (last J={J}).",
        report=report,
    )
