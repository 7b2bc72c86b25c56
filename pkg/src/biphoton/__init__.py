"""Exact state-vector model of a momentum-entangled two-photon
interferometer, a unitary detection model, and deterministic coincidence
sampling with coherence analysis."""

from .analysis import (
    CHSH_OPTIMAL,
    ChshSettings,
    Marginals,
    SweepResult,
    chsh,
    correlation,
    fringe_visibility,
    l1_coherence,
    marginals,
    no_signaling_check,
    purity,
    sweep_correlation,
)
from .linalg import (
    DensityMatrix,
    Operator,
    StateVector,
    apply,
    density_of,
    ket,
    partial_trace,
    tensor,
)
from .montecarlo import (
    EstimatorResult,
    EventRecord,
    bell_experiment,
    estimate_correlation,
    sample_events,
)
from .optics import (
    JointDistribution,
    PhaseSettings,
    Visibility,
    beam_splitter,
    biphoton_state,
    circuit_operator,
    joint_distribution,
    phase_shifter,
    phased_biphoton_state,
    superposed_state,
)
from .premeasure import (
    CorrelationReport,
    correlation_report,
    detector_coupling,
    premeasure,
)
from .rng import SplitMix64, derive_seed

__all__ = [
    "CHSH_OPTIMAL",
    "ChshSettings",
    "CorrelationReport",
    "DensityMatrix",
    "EstimatorResult",
    "EventRecord",
    "JointDistribution",
    "Marginals",
    "Operator",
    "PhaseSettings",
    "SplitMix64",
    "StateVector",
    "SweepResult",
    "Visibility",
    "apply",
    "beam_splitter",
    "bell_experiment",
    "biphoton_state",
    "chsh",
    "circuit_operator",
    "correlation",
    "correlation_report",
    "density_of",
    "derive_seed",
    "detector_coupling",
    "estimate_correlation",
    "fringe_visibility",
    "joint_distribution",
    "ket",
    "l1_coherence",
    "marginals",
    "no_signaling_check",
    "partial_trace",
    "phase_shifter",
    "phased_biphoton_state",
    "premeasure",
    "purity",
    "sample_events",
    "superposed_state",
    "sweep_correlation",
    "tensor",
]
