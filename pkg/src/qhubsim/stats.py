"""Aggregation of per-request outcomes into per-point summary metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .model import (
    ModelParams,
    PolicyKind,
    analytic_expected_attempts,
    analytic_success,
)
from .policies import RequestOutcome


@dataclass(frozen=True, slots=True)
class PointSummary:
    """Aggregate statistics for one (network size, policy) sweep point.

    success_rate and mean_attempts are exact ratios of the integer tallies;
    success_stderr is the binomial standard error sqrt(p*(1-p)/trials).
    mean_attempts averages over ALL requests, served and failed (failed
    requests still consumed attempts); see attempts_per_served() for the
    served-only variant.
    """

    n: int
    policy: PolicyKind
    trials: int
    successes: int
    success_rate: float
    total_attempts: int
    mean_attempts: float
    success_stderr: float
    cache_hits: int
    master_seed: int

    def attempts_per_served(self) -> float:
        """Total attempts divided by served requests; 0.0 when nothing was served."""
        if self.successes == 0:
            return 0.0
        return self.total_attempts / self.successes


def summarize(
    outcomes: Sequence[RequestOutcome],
    n: int,
    policy: PolicyKind,
    params: ModelParams,
) -> PointSummary:
    """Reduce one point's outcome list to a PointSummary.

    Cache-hit requests count as successes with zero attempts. The result is
    invariant under permutation of ``outcomes``.
    """
    if not outcomes:
        raise ValueError("cannot summarize an empty outcome list")
    trials = len(outcomes)
    successes = sum(1 for o in outcomes if o.served)
    total_attempts = sum(o.attempts for o in outcomes)
    cache_hits = sum(1 for o in outcomes if o.cache_hit)
    rate = successes / trials
    return PointSummary(
        n=n,
        policy=policy,
        trials=trials,
        successes=successes,
        success_rate=rate,
        total_attempts=total_attempts,
        mean_attempts=total_attempts / trials,
        success_stderr=math.sqrt(rate * (1.0 - rate) / trials),
        cache_hits=cache_hits,
        master_seed=params.master_seed,
    )


def stderr_bound(trials: int) -> float:
    """Worst-case binomial standard error over p, attained at p = 0.5."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    return 0.5 / math.sqrt(trials)


@dataclass(frozen=True, slots=True)
class AnalyticPoint:
    """Closed-form (cache-free) metrics for one (network size, policy) point."""

    n: int
    policy: PolicyKind
    success_rate: float
    mean_attempts: float

    def attempts_per_served(self) -> float:
        if self.success_rate == 0.0:
            return 0.0
        return self.mean_attempts / self.success_rate


def analytic_point(n: int, policy: PolicyKind, params: ModelParams) -> AnalyticPoint:
    """Evaluate the closed-form oracle at one sweep point."""
    return AnalyticPoint(
        n=n,
        policy=policy,
        success_rate=analytic_success(n, policy, params),
        mean_attempts=analytic_expected_attempts(n, policy, params),
    )
