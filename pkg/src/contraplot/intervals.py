"""Credible intervals, the delta_L score, threshold tests, and ranking.

The credible interval is the nearest-rank empirical quantile pair of the
Monte Carlo relative-difference draws: lo at rank ceil(K * alpha/2), hi at
rank ceil(K * (1 - alpha/2)), 1-based on the ascending sort. No
interpolation, so the interval endpoints are actual draws and an
independent sort-and-index oracle must agree exactly.

delta_L is the interval value closest to zero (zero when the interval
encloses zero). It scores effect strength and is the statistic for the
sign-specific threshold tests, so testing a new threshold never requires
recomputing draws or intervals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .posterior import PosteriorDraws

__all__ = [
    "CredibleInterval",
    "Direction",
    "ThresholdSpec",
    "TestOutcome",
    "ScoredStudy",
    "credible_interval",
    "posterior_median",
    "nearest_rank_quantile",
    "score_delta_l",
    "test_meaningful",
    "rank_entries",
]


class Direction(enum.Enum):
    DECREASE = "decrease"
    INCREASE = "increase"
    TWO_SIDED_MAGNITUDE = "two-sided-magnitude"


@dataclass(frozen=True)
class CredibleInterval:
    """Two-sided credible interval of the relative difference in means."""

    lo: float
    hi: float
    alpha_dm: float
    k: int
    seed: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"lo={self.lo} exceeds hi={self.hi}")
        if not 0.0 < self.alpha_dm < 1.0:
            raise ValueError(f"alpha_dm must be in (0, 1), got {self.alpha_dm}")


@dataclass(frozen=True)
class ThresholdSpec:
    """Sign-specific minimum meaningful relative difference.

    A decrease threshold is negative, an increase threshold positive, and a
    two-sided magnitude threshold positive. Zero is rejected in every
    direction: a point null is not testable with credible intervals.
    """

    value: float
    direction: Direction

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value == 0.0:
            raise ValueError("threshold value must be finite and nonzero")
        if self.direction is Direction.DECREASE and self.value >= 0:
            raise ValueError("decrease threshold must be negative")
        if self.direction is Direction.INCREASE and self.value <= 0:
            raise ValueError("increase threshold must be positive")
        if self.direction is Direction.TWO_SIDED_MAGNITUDE and self.value <= 0:
            raise ValueError("two-sided magnitude threshold must be positive")


@dataclass(frozen=True)
class TestOutcome:
    reject_null: bool
    delta_l: float
    threshold: ThresholdSpec


def _rational_alpha(alpha: float) -> Fraction:
    # Re-rationalize so ranks match exact decimal/fraction arithmetic:
    # float(0.1)/2 * 100 is fractionally above 5 as an exact rational, but
    # the intended rank for alpha=0.10, K=100 is 5, not 6.
    frac = Fraction(alpha).limit_denominator(10**9)
    if not 0 < frac < 1:
        raise ValueError(f"alpha_dm must be in (0, 1), got {alpha}")
    return frac


def _nearest_rank(k: int, p: Fraction) -> int:
    # 1-based nearest-rank: smallest r with r/k >= p, clamped to [1, k].
    r = math.ceil(k * p)
    return min(max(r, 1), k)


def nearest_rank_quantile(values: np.ndarray, p: float) -> float:
    """Nearest-rank quantile of a 1-d sample (ascending order statistic)."""
    values = np.asarray(values)
    if values.ndim != 1 or len(values) == 0:
        raise ValueError("values must be a non-empty 1-d vector")
    r = _nearest_rank(len(values), Fraction(p).limit_denominator(10**9))
    return float(np.partition(values, r - 1)[r - 1])


def credible_interval(draws: PosteriorDraws, alpha_dm: float) -> CredibleInterval:
    """Bonferroni-corrected equal-tailed interval from posterior draws.

    Requires K * alpha_dm/2 >= 1 so the tail rank is resolvable.
    """
    alpha = _rational_alpha(alpha_dm)
    k = draws.k
    if k * alpha / 2 < 1:
        raise ValueError(
            f"k={k} draws cannot resolve the alpha_dm/2={float(alpha) / 2:.3g} tail; "
            "increase the draw count"
        )
    r_lo = _nearest_rank(k, alpha / 2)
    r_hi = _nearest_rank(k, 1 - alpha / 2)
    part = np.partition(draws.relative, [r_lo - 1, r_hi - 1])
    return CredibleInterval(
        lo=float(part[r_lo - 1]),
        hi=float(part[r_hi - 1]),
        alpha_dm=float(alpha_dm),
        k=k,
        seed=draws.seed,
    )


def posterior_median(draws: PosteriorDraws) -> float:
    """Nearest-rank median of the relative-difference draws."""
    return nearest_rank_quantile(draws.relative, 0.5)


def score_delta_l(ci: CredibleInterval) -> float:
    """The interval value closest to zero (zero if the interval encloses it)."""
    if ci.lo <= 0.0 <= ci.hi:
        return 0.0
    return ci.lo if ci.lo > 0.0 else ci.hi


def test_meaningful(ci: CredibleInterval, threshold: ThresholdSpec) -> TestOutcome:
    """Reject the no-meaningful-effect null if delta_L lies beyond the threshold.

    Strict inequalities in every direction; the decision is a pure function
    of (delta_L, threshold).
    """
    if threshold.value == 0.0:
        raise ValueError("zero threshold: a point null is not supported")
    d = score_delta_l(ci)
    if threshold.direction is Direction.INCREASE:
        reject = d > threshold.value
    elif threshold.direction is Direction.DECREASE:
        reject = d < threshold.value
    else:
        reject = abs(d) > threshold.value
    return TestOutcome(reject_null=reject, delta_l=d, threshold=threshold)


@dataclass(frozen=True)
class ScoredStudy:
    """Ranking input: a study id with its delta_L score and posterior median."""

    study_id: int
    delta_l: float
    median: float = 0.0


def rank_entries(scores: Iterable[ScoredStudy | Sequence]) -> list[ScoredStudy]:
    """Order studies ascending by delta_L.

    Ties break by smaller posterior-median magnitude, then by study id, so
    the ranking is a total order invariant to input permutation. In the
    decrease view this leads with the strongest (most negative) scores; in
    the increase view the strongest scores come last.
    """
    items = [s if isinstance(s, ScoredStudy) else ScoredStudy(*s) for s in scores]
    return sorted(items, key=lambda s: (s.delta_l, abs(s.median), s.study_id))
