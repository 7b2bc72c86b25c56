"""Two-photon interferometer: source states, optical elements, and the exact
joint detection distribution as a function of the local phase settings.

Conventions, fixed package-wide:

  * Symmetric lossless 50/50 splitters; reflection picks up a factor i:
        |1> -> (|+> + i|->)/sqrt2      |2> -> (i|+> + |->)/sqrt2
  * The variable phase shifter sits on path A2 for party A and on path B1
    for party B, so the two-photon fringe argument is phi_a - phi_b.
  * Party B's detector ports are labelled so that equal settings give
    perfectly matched outcomes (correlation +1 at phi_a = phi_b). The
    opposite labelling only flips the sign of the correlation.
  * Detector imperfection is a single visibility v: the ideal distribution
    is mixed with the flat one, p = v * p_ideal + (1 - v)/4, which leaves
    every single-detector marginal at exactly 1/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    Operator,
    StateVector,
    apply,
    compose,
    tensor_operator,
)

TWO_PI = 2.0 * math.pi
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

A_PATHS = ("A1", "A2")
B_PATHS = ("B1", "B2")
A_PORTS = ("A+", "A-")
B_PORTS = ("B+", "B-")
PATH_MODES = A_PATHS + B_PATHS
PORT_MODES = A_PORTS + B_PORTS

# Canonical outcome order for joint tables and inverse-CDF sampling.
OUTCOMES = (("+", "+"), ("+", "-"), ("-", "+"), ("-", "-"))


def _wrap_angle(phi: float) -> float:
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    phi = phi % TWO_PI
    # Tiny negatives can round up to exactly 2pi under %.
    if phi >= TWO_PI:
        phi -= TWO_PI
    return phi


@dataclass(frozen=True)
class PhaseSettings:
    """Local phase-shifter settings, normalized into [0, 2pi)."""

    phi_a: float
    phi_b: float

    def __post_init__(self):
        object.__setattr__(self, "phi_a", _wrap_angle(self.phi_a))
        object.__setattr__(self, "phi_b", _wrap_angle(self.phi_b))

    @property
    def delta(self) -> float:
        """Fringe argument phi_a - phi_b."""
        return self.phi_a - self.phi_b


@dataclass(frozen=True)
class Visibility:
    """Fringe contrast v in [0, 1]; v = 1 is the ideal instrument."""

    v: float = 1.0

    def __post_init__(self):
        v = float(self.v)
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"visibility must lie in [0, 1], got {v!r}")
        object.__setattr__(self, "v", v)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Probability table over the four paired detector outcomes."""

    settings: PhaseSettings
    probs: dict[tuple[str, str], float]

    def __post_init__(self):
        if set(self.probs) != set(OUTCOMES):
            raise ValueError(f"need exactly the outcomes {OUTCOMES}")
        probs = {k: float(self.probs[k]) for k in OUTCOMES}
        for pair, p in probs.items():
            if not (-1e-15 <= p <= 1.0 + 1e-15):
                raise ValueError(f"probability {p!r} for {pair} outside [0, 1]")
        total = sum(probs.values())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, pair: tuple[str, str]) -> float:
        return self.probs[pair]


def superposed_state(theta: float = 0.0) -> StateVector:
    """Single photon split evenly over paths A1, A2 with relative phase theta.

    theta = 0 is the plain 50-50 superposition; both path probabilities are
    1/2 for every theta.
    """
    amps = np.array([_INV_SQRT2, cmath.exp(1j * theta) * _INV_SQRT2])
    return StateVector((A_PATHS,), amps)


def biphoton_state() -> StateVector:
    """Momentum-entangled pair: (|A1 B1> + |A2 B2>)/sqrt2."""
    amps = np.array([_INV_SQRT2, 0.0, 0.0, _INV_SQRT2], dtype=complex)
    return StateVector((A_PATHS, B_PATHS), amps)


def phase_shifter(mode: str, phi: float) -> Operator:
    """Diagonal unitary multiplying one path mode's amplitude by e^{i phi}.

    Acts on the owning party's two-path space; output-port modes are not
    valid targets.
    """
    if mode in A_PATHS:
        party_paths = A_PATHS
    elif mode in B_PATHS:
        party_paths = B_PATHS
    elif mode in PORT_MODES:
        raise ValueError(f"phase shifters sit on paths, not detector ports: {mode!r}")
    else:
        raise ValueError(f"unknown mode {mode!r}; paths are {PATH_MODES}")
    diag = np.ones(2, dtype=complex)
    diag[party_paths.index(mode)] = cmath.exp(1j * float(phi))
    return Operator((party_paths,), (party_paths,), np.diag(diag))


_BS_ENTRIES = np.array([[1.0, 1j], [1j, 1.0]], dtype=complex) * _INV_SQRT2


def beam_splitter(party: str) -> Operator:
    """Symmetric 50/50 splitter taking a party's paths to its detector ports."""
    if party == "A":
        return Operator((A_PATHS,), (A_PORTS,), _BS_ENTRIES)
    if party == "B":
        return Operator((B_PATHS,), (B_PORTS,), _BS_ENTRIES)
    raise ValueError(f"party must be 'A' or 'B', got {party!r}")


def phase_shift_operator(settings: PhaseSettings) -> Operator:
    """Both shifters (phi_a on A2, phi_b on B1) as one 4x4 diagonal unitary."""
    return tensor_operator(
        phase_shifter("A2", settings.phi_a), phase_shifter("B1", settings.phi_b)
    )


def circuit_operator(settings: PhaseSettings) -> Operator:
    """Full interferometer (shifters, then both splitters) as one 4x4 unitary."""
    splitters = tensor_operator(beam_splitter("A"), beam_splitter("B"))
    return compose(splitters, phase_shift_operator(settings))


def phased_biphoton_state(settings: PhaseSettings) -> StateVector:
    """Entangled source state after the two phase shifters, before splitting."""
    return apply(phase_shift_operator(settings), biphoton_state())


# Cached circuit pieces for the hot path below; same matrices as the
# labelled-operator route, so the two agree to a few ulps.
_BS4 = np.kron(_BS_ENTRIES, _BS_ENTRIES)
_SOURCE_AMPS = np.array([_INV_SQRT2, 0.0, 0.0, _INV_SQRT2], dtype=complex)


def joint_distribution(settings: PhaseSettings, vis: Visibility) -> JointDistribution:
    """Exact Born probabilities of the four coincidence outcomes.

    Evaluates source -> phase shifters -> per-party splitters, reads the
    port probabilities under the matched-outcome labelling of B, and mixes
    with the flat distribution according to the visibility. The result is
    p(same ports) = v (1 + cos d)/4 + (1-v)/4 per pairing and
    p(opposite)  = v (1 - cos d)/4 + (1-v)/4, with d = phi_a - phi_b.
    """
    za = cmath.exp(1j * settings.phi_a)
    zb = cmath.exp(1j * settings.phi_b)
    shifted = _SOURCE_AMPS * np.array([zb, 1.0, za * zb, za])
    out = _BS4 @ shifted
    raw = (out * out.conj()).real
    # Matched-outcome labelling: B's physical ports are read out swapped.
    ideal = {
        ("+", "+"): raw[1],
        ("+", "-"): raw[0],
        ("-", "+"): raw[3],
        ("-", "-"): raw[2],
    }
    v = vis.v
    flat = (1.0 - v) * 0.25
    probs = {pair: v * p + flat for pair, p in ideal.items()}
    return JointDistribution(settings, probs)
