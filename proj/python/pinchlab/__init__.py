"""Pinching inequalities, weight spectrahedra and gentle-measurement bounds."""

from ._pinchlab import (
    DimensionError,
    DomainError,
    Error,
    converse_check,
    converse_verdict,
    converse_witness,
    gentle_analysis,
    hermitize,
    in_A,
    in_A3_closed_form,
    in_A_direct,
    in_A_recursive,
    in_B_direct,
    is_psd,
    loewner_leq,
    pinch,
    run_campaign,
    sample_A2_boundary,
    sample_A_boundary,
    sample_B2_boundary,
    sign_structure,
    trace_norm,
    verify_generalized,
    verify_reverse,
    weighted_conjugation,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "Error",
    "converse_check",
    "converse_verdict",
    "converse_witness",
    "gentle_analysis",
    "hermitize",
    "in_A",
    "in_A3_closed_form",
    "in_A_direct",
    "in_A_recursive",
    "in_B_direct",
    "is_psd",
    "loewner_leq",
    "pinch",
    "run_campaign",
    "sample_A2_boundary",
    "sample_A_boundary",
    "sample_B2_boundary",
    "sign_structure",
    "trace_norm",
    "verify_generalized",
    "verify_reverse",
    "weighted_conjugation",
]
