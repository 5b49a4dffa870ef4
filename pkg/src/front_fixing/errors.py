"""Error hierarchy shared by the solvers, the estimators and the operators."""


class FrontFixingError(Exception):
    """Base class for every error raised by this project."""


class InvalidArgumentError(FrontFixingError, ValueError):
    pass


class SingularFrontError(FrontFixingError, ValueError):
    """The front value reached zero, the transformed equation is undefined there."""


class ExtrapolationOutOfDomainError(FrontFixingError, ValueError):
    """An asset price lies beyond the truncated boundary, the caller must enlarge x_inf."""


class DegenerateOrderError(FrontFixingError, ValueError):
    """An approximation coincides with the reference, so the log-ratio is undefined."""


class SolverError(FrontFixingError, RuntimeError):
    """Raised while marching in time. `time_index` is the level that could not be computed."""

    def __init__(self, message: str, time_index: int | None = None):
        super().__init__(message)
        self.time_index = time_index

    def __str__(self):
        message = super().__str__()
        if self.time_index is None:
            return message
        return f"{message} (time level {self.time_index})"


class StepNonConvergenceError(SolverError):
    def __init__(
        self,
        message: str,
        last_iterate: float,
        residual_norm: float,
        time_index: int | None = None,
    ):
        super().__init__(message, time_index)
        self.last_iterate = last_iterate
        self.residual_norm = residual_norm


class BracketingError(SolverError):
    """No sign change of the front residual was found above the bracket floor."""


class InstabilityError(SolverError):
    pass


class OverflowDetectedError(InstabilityError):
    pass


class ToleranceNotMetError(FrontFixingError, RuntimeError):
    """The refinement budget ran out. The partial report travels with the error."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report
