"""Exact proximity bounds for separable concave integer quadratic programs."""

from .errors import (ClaimViolation, DimensionError, DomainError,
                     InfeasibleError, InputError, RepresentationMismatch,
                     UnboundedError)
from .pipeline import (Instance, PipelineResult, Schedule, compute_schedule,
                       eval_objective, instance, normalize, run_pipeline,
                       subdeterminant_bound)

__all__ = [
    "ClaimViolation", "DimensionError", "DomainError", "InfeasibleError",
    "InputError", "RepresentationMismatch", "UnboundedError",
    "Instance", "PipelineResult", "Schedule", "compute_schedule",
    "eval_objective", "instance", "normalize", "run_pipeline",
    "subdeterminant_bound",
]

__version__ = "0.1.0"
