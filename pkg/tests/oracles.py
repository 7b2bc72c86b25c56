"""Independent reference implementations used as test oracles.

Nothing here imports the package's circuit or generator code: the joint
distribution is a hand expansion of the four two-photon amplitude paths as
literal scalar arithmetic, and the generator is a line-by-line scalar
transcription of the splitmix64 reference algorithm.
"""

import cmath
import math

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Splitter amplitudes path -> port for the symmetric 50/50 convention:
# straight-through 1/sqrt2, reflected i/sqrt2.
_SPLIT = {
    (1, "+"): _INV_SQRT2 + 0.0j,
    (1, "-"): 1j * _INV_SQRT2,
    (2, "+"): 1j * _INV_SQRT2,
    (2, "-"): _INV_SQRT2 + 0.0j,
}
# Party B's ports are read out swapped (matched-outcome labelling).
_SPLIT_B = {(path, "+"): _SPLIT[(path, "-")] for path in (1, 2)}
_SPLIT_B.update({(path, "-"): _SPLIT[(path, "+")] for path in (1, 2)})


def joint_probs_reference(phi_a: float, phi_b: float, v: float) -> dict:
    """Hand-expanded coincidence probabilities for the two-branch source.

    Branch (A1, B1) carries weight e^{i phi_b}/sqrt2 (shifter on B1) and
    branch (A2, B2) carries e^{i phi_a}/sqrt2 (shifter on A2); each outcome
    amplitude is the two-path sum of branch weight times the two splitter
    amplitudes. The ideal table is then mixed with the flat one.
    """
    w1 = _INV_SQRT2 * cmath.exp(1j * phi_b)
    w2 = _INV_SQRT2 * cmath.exp(1j * phi_a)
    probs = {}
    for a in "+-":
        for b in "+-":
            amp = w1 * _SPLIT[(1, a)] * _SPLIT_B[(1, b)]
            amp += w2 * _SPLIT[(2, a)] * _SPLIT_B[(2, b)]
            probs[(a, b)] = v * abs(amp) ** 2 + (1.0 - v) * 0.25
    return probs


def correlation_reference(phi_a: float, phi_b: float, v: float) -> float:
    p = joint_probs_reference(phi_a, phi_b, v)
    return p[("+", "+")] + p[("-", "-")] - p[("+", "-")] - p[("-", "+")]


def chsh_reference(a, a_prime, b, b_prime, v) -> float:
    return (
        correlation_reference(a, b, v)
        + correlation_reference(a, b_prime, v)
        + correlation_reference(a_prime, b, v)
        - correlation_reference(a_prime, b_prime, v)
    )


_MASK64 = (1 << 64) - 1


def splitmix64_reference(seed: int, n: int) -> list[int]:
    """Straight transcription of the splitmix64 reference algorithm."""
    state = seed & _MASK64
    out = []
    for _ in range(n):
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        out.append(z ^ (z >> 31))
    return out
