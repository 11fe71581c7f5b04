"""
Exception hierarchy shared by every omatrix package
"""
from typing import List, Optional


class OMatrixError(Exception):
    """Base class for all omatrix errors"""


class ShapeMismatchError(OMatrixError, ValueError):
    """Dimensions or tensor shapes do not fit together"""


class PreconditionError(OMatrixError, ValueError):
    """Input refused because a stated precondition does not hold"""


class VerificationFailure(OMatrixError):
    """A property required by a later computation does not hold"""


class InternalConsistencyError(OMatrixError):
    """Two independent computations of the same quantity disagree"""


class JetOrderExceeded(OMatrixError):
    """A jet computation went past the configured derivative ceiling"""

    def __init__(self, order: int, ceiling: int):
        super().__init__(f"Jet order {order} exceeds ceiling {ceiling}")
        self.order = order
        self.ceiling = ceiling


class ManifestError(OMatrixError, ValueError):
    """Manifest schema violation, carrying the offending field paths"""

    def __init__(self, message: str, paths: Optional[List[str]] = None):
        self.paths = paths or []
        if self.paths:
            message = f"{message} (at {', '.join(self.paths)})"
        super().__init__(message)


class ConfigError(OMatrixError, ValueError):
    """Invalid settings value"""


# Exit codes used by the command-line runner
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
