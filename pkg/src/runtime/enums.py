from enum import IntEnum


class ExitCode(IntEnum):
    """Process exit status reported by the runtime."""

    SUCCESS = 0
    INVALID_ARGUMENTS = 2
    SOLVER_FAILURE = 3
    TOLERANCE_NOT_MET = 4
    IO_FAILURE = 5
