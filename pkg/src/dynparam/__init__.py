"""Dynamic parameterised maintainers with brute-force oracles."""

from .core import (
    DomainError,
    DynGraph,
    DynParamError,
    InvariantViolation,
    ParameterBoundError,
    ParamState,
)
from .script import make_maintainer, run_script

__all__ = [
    "DomainError",
    "DynGraph",
    "DynParamError",
    "InvariantViolation",
    "ParameterBoundError",
    "ParamState",
    "make_maintainer",
    "run_script",
]
