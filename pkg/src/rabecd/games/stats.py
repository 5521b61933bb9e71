"""Statistical estimators for experiment batches.

Acceptance thresholds in the test suite are stated as multiples of a
binomial standard deviation or as Wilson score intervals, so both live
here along with the advantage estimator that combines two experiment
arms (challenge bit 0 versus challenge bit 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ParameterError


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    if not 0 <= successes <= trials:
        raise ParameterError("successes outside [0, trials]")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def binomial_sigma(trials: int, p: float) -> float:
    """Standard deviation of a Binomial(trials, p) count."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p outside [0, 1]")
    return math.sqrt(trials * p * (1.0 - p))


def l1_sampling_sigma(support: int, trials: int) -> float:
    """Scale of the plug-in total-variation estimator's sampling error.

    With k outcomes estimated from n samples per arm, the L1 error of one
    empirical distribution is at most sqrt(k/n) in expectation; half of
    the two-arm sum gives the comparison scale used by the 4-sigma
    agreement checks between exact and Monte-Carlo trace distances.
    """
    if support < 1 or trials < 1:
        raise ParameterError("need positive support size and trial count")
    return 0.5 * math.sqrt(support / trials)


@dataclass(frozen=True)
class AdvantageEstimate:
    rate0: float
    rate1: float
    advantage: float
    ci_low: float
    ci_high: float
    trials0: int
    trials1: int

    def as_dict(self) -> dict:
        return {
            "rate0": self.rate0,
            "rate1": self.rate1,
            "advantage": self.advantage,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "trials0": self.trials0,
            "trials1": self.trials1,
        }


def estimate_advantage(
    wins0: int, trials0: int, wins1: int, trials1: int, z: float = 1.96
) -> AdvantageEstimate:
    """Advantage |Pr[out=1 | b=0] - Pr[out=1 | b=1]| with a Wilson-based interval.

    The interval is the conservative envelope of the two per-arm Wilson
    intervals: its upper end is the largest gap any pair of rates inside
    them can produce, its lower end the smallest.
    """
    lo0, hi0 = wilson_interval(wins0, trials0, z)
    lo1, hi1 = wilson_interval(wins1, trials1, z)
    p0 = wins0 / trials0
    p1 = wins1 / trials1
    upper = max(hi0 - lo1, hi1 - lo0, 0.0)
    lower = max(lo0 - hi1, lo1 - hi0, 0.0)
    return AdvantageEstimate(
        rate0=p0,
        rate1=p1,
        advantage=abs(p0 - p1),
        ci_low=lower,
        ci_high=min(1.0, upper),
        trials0=trials0,
        trials1=trials1,
    )


def empirical_distribution(samples) -> dict:
    """Outcome frequencies as a probability dictionary."""
    counts: dict = {}
    total = 0
    for s in samples:
        counts[s] = counts.get(s, 0) + 1
        total += 1
    if total == 0:
        raise ParameterError("no samples")
    return {k: v / total for k, v in counts.items()}


def empirical_tv_distance(p: dict, q: dict) -> float:
    """Total variation distance between two empirical distributions.

    Unlike qstate's checked version this accepts any hashable outcome keys,
    which is what view distributions keyed by serialized transcripts need.
    """
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)
