"""Von Neumann amplification factors of the front-fixing schemes.

The nonlinear front-motion coefficient g = (1 / S_f) dS_f/dtau is frozen, which turns
both schemes into constant-coefficient difference equations. A Fourier mode e^{i k x}
is then multiplied by lambda(k dx) at every step.
"""

import logging

import numpy as np
from pandas import DataFrame
from pydantic import BaseModel, ConfigDict, Field

from front_fixing.errors import InvalidArgumentError
from front_fixing.model import FrontFixedSolution, ModelParams, Scheme, time_steps

logger = logging.getLogger(__name__)

STABILITY_TOLERANCE = 1e-12
MIN_SAMPLES = 64


class FrozenFrontTerm(BaseModel):
    """g, the frozen value of (1 / S_f) dS_f/dtau. Non-positive along a computed front."""

    model_config = ConfigDict(frozen=True)

    g: float = 0.0


class StabilityReport(BaseModel):
    scheme: Scheme
    mu: float
    dx: float
    dtau: float
    samples: list[tuple[float, float]] = Field(description="(k dx, |lambda|) pairs")
    max_modulus: float
    stable: bool

    def summary(self, T: float | None = None) -> dict:
        """The report without its samples; `N` is added when a maturity is given."""
        summary = self.model_dump(mode="json", exclude={"samples"})
        if T is not None:
            summary["N"] = time_steps(T, self.dtau)
        return summary


def _frozen_terms(params: ModelParams, mu: float, dx: float, front: FrozenFrontTerm, phase):
    if dx <= 0 or mu <= 0:
        raise InvalidArgumentError(f"dx and mu must be positive, got dx={dx}, mu={mu}.")
    phase = np.asarray(phase, dtype=float)
    sigma2 = params.sigma**2
    dtau = mu * dx**2
    diffusion = 2 * mu * sigma2 * np.sin(phase / 2) ** 2
    convection = mu * dx * ((params.r - sigma2 / 2) + front.g) * np.sin(phase)
    return params.r * dtau, diffusion, convection


def amplification_implicit(
    phase, params: ModelParams, mu: float, dx: float, front: FrozenFrontTerm
):
    """|lambda| = 1 / sqrt((1 + A)^2 + B^2), elementwise over `phase`."""
    reaction, diffusion, convection = _frozen_terms(params, mu, dx, front, phase)
    return 1 / np.hypot(1 + reaction + diffusion, convection)


def amplification_explicit(
    phase, params: ModelParams, mu: float, dx: float, front: FrozenFrontTerm
):
    """|1 - r dtau - 2 mu sigma^2 sin^2(k dx / 2) + i B|, elementwise over `phase`."""
    reaction, diffusion, convection = _frozen_terms(params, mu, dx, front, phase)
    return np.hypot(1 - reaction - diffusion, convection)


AMPLIFICATION = {
    Scheme.IMPLICIT: amplification_implicit,
    Scheme.EXPLICIT: amplification_explicit,
}


def stability_scan(
    scheme: Scheme,
    params: ModelParams,
    mu: float,
    dx: float,
    front: FrozenFrontTerm = FrozenFrontTerm(),
    n_samples: int = MIN_SAMPLES,
) -> StabilityReport:
    if n_samples < MIN_SAMPLES:
        raise InvalidArgumentError(
            f"A scan needs at least {MIN_SAMPLES} phase samples, got {n_samples}."
        )

    phases = np.linspace(0.0, np.pi, n_samples)
    moduli = AMPLIFICATION[Scheme(scheme)](phases, params, mu, dx, front)
    max_modulus = float(np.max(moduli))
    report = StabilityReport(
        scheme=scheme,
        mu=mu,
        dx=dx,
        dtau=mu * dx**2,
        samples=list(zip(phases.tolist(), moduli.tolist())),
        max_modulus=max_modulus,
        stable=max_modulus <= 1 + STABILITY_TOLERANCE,
    )
    logger.info(
        f"{scheme} scan at mu={mu}: max |lambda| = {max_modulus:.6f} "
        f"({'stable' if report.stable else 'unstable'})."
    )
    return report


def front_term_series(solution: FrontFixedSolution) -> list[FrozenFrontTerm]:
    """g^n for n = 1..N.

    The implicit scheme normalises the front decrement by the new front S_f^n, the
    explicit one by the old front S_f^{n-1}, as each scheme does in its update.
    """
    fronts = solution.fronts()
    if fronts.size < 2:
        raise InvalidArgumentError("The solution needs at least two time levels.")

    decrements = np.diff(fronts) / solution.grid.dtau
    normaliser = fronts[1:] if solution.scheme == Scheme.IMPLICIT else fronts[:-1]
    return [FrozenFrontTerm(g=float(g)) for g in decrements / normaliser]


def front_levels_report(
    solution: FrontFixedSolution, levels: list[int], n_samples: int = MIN_SAMPLES
) -> DataFrame:
    """Amplification curves with g frozen at selected time levels of a computed solution.

    The curve labelled n uses g^n, the front motion between levels n-1 and n.
    """
    terms = front_term_series(solution)
    grid = solution.grid
    rows = []
    for n in levels:
        if not 1 <= n <= grid.N:
            raise InvalidArgumentError(f"Time level {n} is outside 1..{grid.N}.")
        report = stability_scan(
            solution.scheme, solution.params, grid.mu, grid.dx, terms[n - 1], n_samples
        )
        rows.extend(
            {"n": n, "g": terms[n - 1].g, "k_dx": phase, "modulus": modulus}
            for phase, modulus in report.samples
        )
    return DataFrame(rows, columns=["n", "g", "k_dx", "modulus"])
