"""Long-stepsize gradient descent schedules, constants, and certificates."""

from ._core import (
    Huber,
    Quadratic,
    SmoothConvexFn,
    asymptotic_constant,
    certificate,
    certificate_vector,
    check_r_identities,
    check_silver_identities,
    composite_grad_bound,
    constants,
    grad_norm_bound,
    objective_gap_bound,
    restart_run,
    rollout,
    rollout_steps,
    schedule,
    silver_ratio,
    table1,
    tight_eta_left,
    tight_eta_right,
    tightness,
    verify_certificates,
)

__all__ = [
    "Huber",
    "Quadratic",
    "SmoothConvexFn",
    "asymptotic_constant",
    "certificate",
    "certificate_vector",
    "check_r_identities",
    "check_silver_identities",
    "composite_grad_bound",
    "constants",
    "grad_norm_bound",
    "objective_gap_bound",
    "restart_run",
    "rollout",
    "rollout_steps",
    "schedule",
    "silver_ratio",
    "table1",
    "tight_eta_left",
    "tight_eta_right",
    "tightness",
    "verify_certificates",
]
