"""Statistics of the joint detection table: marginals, correlation fringes,
fringe visibility, CHSH, coherence measures, and a no-signaling scan.

The quantities here make the central dichotomy of the simulated experiment
checkable: every single-detector marginal is flat at 1/2 whatever the phase
settings, while the paired-outcome correlation carries a full-contrast
fringe v cos(phi_a - phi_b) and violates the CHSH bound exactly when
v > 1/sqrt2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .linalg import DensityMatrix
from .optics import JointDistribution, PhaseSettings, Visibility, joint_distribution


class Marginals(NamedTuple):
    a_plus: float
    a_minus: float
    b_plus: float
    b_minus: float


def marginals(j: JointDistribution) -> Marginals:
    """Single-detector probabilities (row/column sums of the joint table)."""
    p = j.probs
    return Marginals(
        a_plus=p[("+", "+")] + p[("+", "-")],
        a_minus=p[("-", "+")] + p[("-", "-")],
        b_plus=p[("+", "+")] + p[("-", "+")],
        b_minus=p[("+", "-")] + p[("-", "-")],
    )


def correlation(j: JointDistribution) -> float:
    """Expectation of the +-1 outcome product: p(same) - p(opposite)."""
    p = j.probs
    return p[("+", "+")] + p[("-", "-")] - p[("+", "-")] - p[("-", "+")]


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Exact correlation and singles over a grid of phase differences."""

    delta_grid: tuple[float, ...]
    correlations: tuple[float, ...]
    singles: tuple[Marginals, ...]
    visibility_used: Visibility

    def __post_init__(self):
        n = len(self.delta_grid)
        if len(self.correlations) != n or len(self.singles) != n:
            raise ValueError("grid and value lists must have equal length")
        if any(not -1.0 <= e <= 1.0 for e in self.correlations):
            raise ValueError("correlation outside [-1, 1]")
        if any(not 0.0 <= p <= 1.0 for m in self.singles for p in m):
            raise ValueError("marginal outside [0, 1]")


def sweep_correlation(grid: Sequence[float], vis: Visibility) -> SweepResult:
    """Evaluate E and the four singles at phi_a = delta, phi_b = 0 per point."""
    if len(grid) == 0:
        raise ValueError("sweep grid must be non-empty")
    correlations = []
    singles = []
    for delta in grid:
        j = joint_distribution(PhaseSettings(delta, 0.0), vis)
        correlations.append(correlation(j))
        singles.append(marginals(j))
    return SweepResult(
        delta_grid=tuple(float(d) for d in grid),
        correlations=tuple(correlations),
        singles=tuple(singles),
        visibility_used=vis,
    )


def fringe_visibility(values: Iterable[float]) -> float:
    """Fringe contrast (max - min)/(max + min); 0 for an all-zero series."""
    series = [float(x) for x in values]
    if len(series) < 2:
        raise ValueError("fringe visibility needs at least two values")
    hi, lo = max(series), min(series)
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


@dataclass(frozen=True)
class ChshSettings:
    """Two phase settings per party for the four-correlation CHSH sum."""

    a: float
    a_prime: float
    b: float
    b_prime: float


# Settings maximizing S for this instrument: S = 2 sqrt2 at full visibility.
CHSH_OPTIMAL = ChshSettings(0.0, math.pi / 2, math.pi / 4, -math.pi / 4)


def chsh_setting_pairs(s: ChshSettings) -> tuple[PhaseSettings, ...]:
    """The four (phi_a, phi_b) pairs, in the fixed order (a,b), (a,b'), (a',b), (a',b')."""
    return (
        PhaseSettings(s.a, s.b),
        PhaseSettings(s.a, s.b_prime),
        PhaseSettings(s.a_prime, s.b),
        PhaseSettings(s.a_prime, s.b_prime),
    )


def chsh(s: ChshSettings, vis: Visibility) -> float:
    """CHSH combination S = E(a,b) + E(a,b') + E(a',b) - E(a',b').

    Local-realistic models obey |S| <= 2; this instrument reaches
    2 sqrt2 * v, so S exceeds 2 exactly when v > 1/sqrt2.
    """
    e = [correlation(joint_distribution(p, vis)) for p in chsh_setting_pairs(s)]
    return e[0] + e[1] + e[2] - e[3]


def l1_coherence(rho: DensityMatrix) -> float:
    """Sum of moduli of off-diagonal entries in the declared basis."""
    mags = np.abs(rho.entries)
    return float(np.sum(mags) - np.sum(np.diag(mags)))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 for pure states, 1/d for the maximally mixed state."""
    return float(np.trace(rho.entries @ rho.entries).real)


def no_signaling_check(
    phi_a: float, phi_b_grid: Sequence[float], vis: Visibility
) -> float:
    """Worst deviation of either party's singles from 1/2 under remote scans.

    Scans phi_b over the grid at fixed phi_a and checks party A's marginal,
    then symmetrically scans phi_a over the same grid at fixed phi_b = phi_a
    and checks party B's. Returns the maximum |P(+) - 1/2| seen; any value
    above tolerance would mean one party's statistics respond to the other
    party's local setting.
    """
    if len(phi_b_grid) == 0:
        raise ValueError("no-signaling scan needs a non-empty grid")
    worst = 0.0
    for phi in phi_b_grid:
        m_a = marginals(joint_distribution(PhaseSettings(phi_a, phi), vis))
        worst = max(worst, abs(m_a.a_plus - 0.5))
        m_b = marginals(joint_distribution(PhaseSettings(phi, phi_a), vis))
        worst = max(worst, abs(m_b.b_plus - 0.5))
    return worst
