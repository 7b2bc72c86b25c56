"""Finite-statistics simulation of coincidence counting.

Every trial yields one outcome per party (no missed detections; instrument
loss is folded into the visibility upstream). Draws are inverse-CDF over
the four outcomes in the canonical order (+,+), (+,-), (-,+), (-,-) using
the splitmix64 stream, so a (distribution, n, seed) triple fixes the event
stream bit-for-bit. Multi-setting runs give each setting its own sub-seeded
stream (``rng.derive_seed``), which makes results independent of whether
settings are sampled sequentially or concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import ChshSettings, chsh_setting_pairs
from .optics import OUTCOMES, JointDistribution, PhaseSettings, Visibility, joint_distribution
from .rng import SplitMix64, derive_seed


@dataclass(frozen=True, slots=True)
class EventRecord:
    """One simulated coincidence: trial index, settings, outcome pair."""

    trial: int
    settings: PhaseSettings
    outcome_a: str
    outcome_b: str


@dataclass(frozen=True)
class EstimatorResult:
    estimate: float
    stderr: float
    n: int

    def __post_init__(self):
        if self.stderr < 0.0:
            raise ValueError(f"stderr must be nonnegative, got {self.stderr!r}")
        if self.n < 1:
            raise ValueError(f"sample count must be >= 1, got {self.n!r}")


def sample_events(j: JointDistribution, n: int, seed: int) -> list[EventRecord]:
    """n i.i.d. coincidence events drawn from the joint table.

    Deterministic in (j, n, seed); trial indices run 0..n-1.
    """
    if n < 1:
        raise ValueError(f"need at least one event, got n = {n}")
    cdf = np.cumsum([j.probs[pair] for pair in OUTCOMES])
    u = SplitMix64(seed).doubles(n)
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), 3)
    settings = j.settings
    return [
        EventRecord(trial, settings, OUTCOMES[k][0], OUTCOMES[k][1])
        for trial, k in enumerate(idx)
    ]


def estimate_correlation(events: list[EventRecord]) -> EstimatorResult:
    """Sample mean and standard error of the +-1 outcome product."""
    n = len(events)
    if n < 2:
        raise ValueError(f"correlation estimate needs n >= 2 events, got {n}")
    scores = np.fromiter(
        (1.0 if e.outcome_a == e.outcome_b else -1.0 for e in events),
        dtype=np.float64,
        count=n,
    )
    estimate = float(scores.mean())
    stderr = float(scores.std(ddof=1) / math.sqrt(n))
    return EstimatorResult(estimate=estimate, stderr=stderr, n=n)


def bell_experiment(
    s: ChshSettings,
    vis: Visibility,
    n_per_setting: int,
    seed: int,
    map_fn=map,
) -> EstimatorResult:
    """Sampled CHSH value S = E1 + E2 + E3 - E4 with propagated standard error.

    Setting k of the fixed order (a,b), (a,b'), (a',b), (a',b') is sampled
    from its own stream seeded with derive_seed(seed, k), so any map_fn that
    preserves argument order (the builtin, or an executor's) gives identical
    results. The reported n is the total number of events consumed.
    """
    if n_per_setting < 2:
        raise ValueError(f"need n_per_setting >= 2, got {n_per_setting}")

    def estimate_one(indexed) -> EstimatorResult:
        k, settings = indexed
        j = joint_distribution(settings, vis)
        return estimate_correlation(
            sample_events(j, n_per_setting, derive_seed(seed, k))
        )

    results = list(map_fn(estimate_one, enumerate(chsh_setting_pairs(s))))
    s_value = (
        results[0].estimate + results[1].estimate + results[2].estimate
        - results[3].estimate
    )
    stderr = math.sqrt(sum(r.stderr**2 for r in results))
    return EstimatorResult(estimate=s_value, stderr=stderr, n=4 * n_per_setting)
