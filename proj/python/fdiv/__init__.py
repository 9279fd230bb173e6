"""Structural f-divergence bounds for parameterised quantum circuits."""

from ._fdiv import (
    Error,
    Measure,
    Generator,
    Circuit,
    builtin_generators,
    generator,
    measure,
    parameter_measure,
    binary_pair,
    load_measure,
    load_circuit,
    canonical_circuit,
    f_divergence,
    symmetric_f_divergence,
    binary_divergence,
    invert_binary_divergence,
    structural_divergence,
    min_structural_divergence,
    total_variation,
    triangular_discrimination,
    cost,
    gradient,
    pushforward,
    check_gradient_bound,
    check_moment_bound,
    tightness_sweep,
    bp_divergence_threshold,
    cc_divergence_threshold,
)

__all__ = [name for name in dir() if not name.startswith("_")]
