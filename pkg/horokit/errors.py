from typing import List, Optional, Tuple


class HorokitError(Exception):
    """Base class for every error raised by the toolkit."""


# ------------------------------
# Geometry
# ------------------------------
class NoIntersection(HorokitError):
    pass


class OffGeodesic(HorokitError):
    pass


# ------------------------------
# Isometries
# ------------------------------
class InvalidMatrix(HorokitError):
    pass


class IsIdentity(HorokitError):
    pass


class NotHyperbolic(HorokitError):
    pass


class DegenerateAxis(HorokitError):
    pass


class DegenerateLength(HorokitError):
    pass


class AxisMiss(HorokitError):
    pass


class PairingMismatch(HorokitError):
    pass


# ------------------------------
# Groups and orbits
# ------------------------------
class PingPongUnverified(HorokitError):
    pass


class PingPongFailed(HorokitError):
    def __init__(self, n: int, reason: str = ""):
        self.n = n
        self.reason = reason
        super().__init__(f"ping-pong fails at generator {n}: {reason}".rstrip(": "))


class MaxStepsExceeded(HorokitError):
    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"reduction did not terminate within {steps} steps")


class EmptyTargets(HorokitError):
    pass


class IndexOutOfRange(HorokitError):
    pass


# ------------------------------
# Numerical searches
# ------------------------------
class BisectionFailure(HorokitError):
    pass


class RootSearchFailure(HorokitError):
    pass


# ------------------------------
# Front end
# ------------------------------
class ConfigError(HorokitError):
    pass


class SchemaViolation(HorokitError):
    """Invalid configuration; ``errors`` holds (field, reason) pairs."""

    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = errors
        joined = "; ".join(f"{field}: {reason}" for field, reason in errors)
        super().__init__(joined)

    @property
    def field(self) -> Optional[str]:
        return self.errors[0][0] if self.errors else None


class EmptyScene(HorokitError):
    pass


class IoError(HorokitError):
    pass
