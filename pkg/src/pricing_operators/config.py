"""Run configuration shared by every operator.

Values are layered as model defaults < JSON config file < command-line flags; the CLI
does the merging and the operators only ever see a validated model.
"""

import json
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from front_fixing.implicit import StepSolverConfig
from front_fixing.model import GridSpec, ModelParams, Scheme, build_grid


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    r: float = Field(default=0.1, gt=0)
    sigma: float = Field(default=0.2, gt=0)
    T: float = Field(default=1.0, gt=0)
    E: float = Field(default=1.0, gt=0)

    x_inf: float = Field(default=1.0, gt=0)
    J: int = 80
    mu: float = Field(default=20.0, gt=0)
    scheme: Scheme = Scheme.IMPLICIT

    residual_tol: float = Field(default=1e-12, gt=0)
    sf_tol: float = Field(default=1e-14, gt=0)
    max_iters: int = Field(default=100, ge=1)
    bracket_floor: float = Field(default=1e-6, gt=0, lt=1)

    out: Path = Path(".")

    def model_params(self) -> ModelParams:
        return ModelParams(r=self.r, sigma=self.sigma, T=self.T, E=self.E)

    def grid(self, J: int | None = None, x_inf: float | None = None) -> GridSpec:
        return build_grid(
            self.x_inf if x_inf is None else x_inf,
            self.J if J is None else J,
            self.mu,
            self.T,
        )

    def solver_config(self) -> StepSolverConfig:
        return StepSolverConfig(
            residual_tol=self.residual_tol,
            sf_tol=self.sf_tol,
            max_iters=self.max_iters,
            bracket_floor=self.bracket_floor,
        )


def load_config_file(path: Path) -> dict:
    """Flat key-value JSON document; keys are checked when the options are validated."""
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(document, dict):
        raise ValueError(f"The config file {path} must hold a JSON object.")
    return document
