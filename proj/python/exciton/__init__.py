"""Excitons on a thin cylinder."""

from ._core import (
    ConvergenceError,
    DomainError,
    convergence_report,
    criteria,
    digamma,
    elliptic_k,
    even_alpha,
    full_spectrum,
    hc_spectrum,
    heff_spectrum,
    kummer_u,
    l1_gap,
    run_criterion,
    schur_bound,
    v_eff,
    whittaker_w,
    y_comparison,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "convergence_report",
    "criteria",
    "digamma",
    "elliptic_k",
    "even_alpha",
    "full_spectrum",
    "hc_spectrum",
    "heff_spectrum",
    "kummer_u",
    "l1_gap",
    "run_criterion",
    "schur_bound",
    "v_eff",
    "whittaker_w",
    "y_comparison",
]
