"""SLIP running-model lab: asymptotic stance, apex return map, stability regions, ODE oracle."""

__version__ = "0.1.0"

from slipmap.errors import DomainError, SlipError, StumbleError  # noqa: E402
from slipmap.model import ApexState, ModelParams, StanceState, TouchdownState  # noqa: E402
from slipmap.returnmap import MapConfig, apex_return, iterate  # noqa: E402

__all__ = [
    "ApexState",
    "DomainError",
    "MapConfig",
    "ModelParams",
    "SlipError",
    "StanceState",
    "StumbleError",
    "TouchdownState",
    "apex_return",
    "iterate",
    "__version__",
]
