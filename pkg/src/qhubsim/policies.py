"""Per-request execution: round loop, parallel attempt draws, cache traffic.

This is the reference (pure Python) implementation of one teleportation
request. The compiled kernel replays exactly the same draw sequence; keep the
two in lockstep when changing anything here.

Draw order per request (fixed; the reproducibility contract depends on it):

1. ``sample_pair`` consumes one or more stream values (masked rejection).
2. A cache lookup consumes nothing.
3. Each executed round consumes exactly K Bernoulli draws, attempt by
   attempt, even after an attempt in that round has already succeeded --
   parallel attempts are launched together and all of them count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cache import EntanglementCache, NodePair
from .model import ModelParams, PolicyKind, effective_success_probability, parallelism
from .rng import SplitMix64


@dataclass(frozen=True, slots=True)
class RequestOutcome:
    """What one teleportation request cost and whether it was served.

    Invariants:
      cache_hit       => served and attempts == 0 and rounds == 0
      served, no hit  => 1 <= rounds <= R and attempts == rounds * K
      not served      => rounds == R and attempts == R * K
    """

    served: bool
    attempts: int
    rounds: int
    cache_hit: bool


def sample_pair(n: int, rng: SplitMix64) -> NodePair:
    """Uniform canonical unordered pair among the n*(n-1)/2 possibilities.

    Samples a pair index directly (matching the cache key space) and unranks
    it with exact integer arithmetic: index t maps to the pair (lo, hi) with
    t = hi*(hi-1)/2 + lo.
    """
    if n < 2:
        raise ValueError(f"sampling a pair requires n >= 2, got {n}")
    n_pairs = n * (n - 1) // 2
    t = rng.next_below(n_pairs)
    hi = (1 + math.isqrt(8 * t + 1)) // 2
    if hi * (hi - 1) // 2 > t:
        hi -= 1
    lo = t - hi * (hi - 1) // 2
    return NodePair(lo, hi)


def execute_request(
    pair: NodePair,
    n: int,
    policy: PolicyKind,
    params: ModelParams,
    cache: EntanglementCache | None,
    rng: SplitMix64,
) -> RequestOutcome:
    """Run one request to completion under ``policy``.

    The orchestrated policy first consults the cache; on a miss it runs up to
    R rounds of K parallel attempts and, when the serving round produced m >= 2
    successes, deposits one spare for the pair. The naive policy never owns a
    cache (pass None).
    """
    if n < 2:
        raise ValueError(f"execute_request requires n >= 2, got {n}")
    if pair.hi >= n:
        raise ValueError(f"pair {pair} out of range for network size {n}")
    if policy is PolicyKind.NAIVE_SEQUENTIAL and cache is not None:
        raise ValueError("the naive policy does not use a cache; pass cache=None")

    if cache is not None and cache.try_consume(pair):
        return RequestOutcome(served=True, attempts=0, rounds=0, cache_hit=True)

    p = effective_success_probability(n, params)
    k = parallelism(n, policy, params)
    budget = params.round_budget
    for r in range(1, budget + 1):
        successes = 0
        for _ in range(k):
            if rng.bernoulli(p):
                successes += 1
        if successes > 0:
            if cache is not None and successes >= 2:
                cache.deposit(pair, successes - 1)
            return RequestOutcome(served=True, attempts=r * k, rounds=r, cache_hit=False)
    return RequestOutcome(served=False, attempts=budget * k, rounds=budget, cache_hit=False)
