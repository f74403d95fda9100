"""Loss model, parallelism schedule, and closed-form success/cost oracle.

A request for a Bell pair between two QPUs is served in discrete rounds. Each
round launches K simultaneous entanglement attempts, every attempt succeeding
independently with the scale-dependent probability p_eff(N). The closed forms
here describe the cache-free process and are used to cross-check simulation:

    p_eff(N)   = p0 / (1 + beta * log2(N))
    K(N)       = 1 (naive)  or  max(2, ceil(kappa * log2(N))) (orchestrated)
    p_round(N) = 1 - (1 - p_eff(N))^K
    success    = 1 - (1 - p_round(N))^R
    attempts   = K * E[min(G, R)],  G ~ Geometric(p_round)
               = K * (1 - (1 - p_round)^R) / p_round

All functions are pure and thread-safe.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

_MAX_SEED = (1 << 64) - 1


class PolicyKind(enum.Enum):
    """Entanglement-generation policy for serving teleportation requests."""

    NAIVE_SEQUENTIAL = "naive"
    ORCHESTRATED_PARALLEL = "orchestrated"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def from_label(cls, label: str) -> "PolicyKind":
        for member in cls:
            if member.value == label:
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown policy '{label}' (valid: {valid})")


# Stable wire constants used in random-stream derivation; never reorder.
POLICY_STREAM_CODE = {
    PolicyKind.NAIVE_SEQUENTIAL: 1,
    PolicyKind.ORCHESTRATED_PARALLEL: 2,
}


@dataclass(frozen=True, slots=True)
class ModelParams:
    """Scalar parameters governing one sweep.

    p0:             base per-attempt success probability, in (0, 1]
    beta:           scale attenuation coefficient, >= 0
    kappa:          parallelism coefficient, > 0
    round_budget:   rounds allowed per request before declaring failure, >= 1
    cache_capacity: spare Bell pairs stored per unordered node pair, >= 0
    trials:         requests simulated per sweep point, >= 1
    master_seed:    64-bit seed from which all point streams are derived
    """

    p0: float = 0.35
    beta: float = 0.35
    kappa: float = 0.9
    round_budget: int = 3
    cache_capacity: int = 1
    trials: int = 2500
    master_seed: int = 42

    def __post_init__(self):
        if not (0.0 < self.p0 <= 1.0):
            raise ValueError(f"p0 must be in (0, 1], got {self.p0}")
        if self.beta < 0.0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.kappa <= 0.0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if self.round_budget < 1:
            raise ValueError(f"round_budget must be >= 1, got {self.round_budget}")
        if self.cache_capacity < 0:
            raise ValueError(f"cache_capacity must be >= 0, got {self.cache_capacity}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not (0 <= self.master_seed <= _MAX_SEED):
            raise ValueError(
                f"master_seed must fit in 64 bits (0 <= seed < 2**64), got {self.master_seed}"
            )


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"network size must be >= 1, got {n}")


def effective_success_probability(n: int, params: ModelParams) -> float:
    """Per-attempt success probability at network size n.

    Equals p0 at n = 1 and decays as 1 / (1 + beta * log2 n); the result is
    clamped to [0, 1] to absorb floating-point edge cases.
    """
    _check_n(n)
    p = params.p0 / (1.0 + params.beta * math.log2(n))
    return min(max(p, 0.0), 1.0)


def parallelism(n: int, policy: PolicyKind, params: ModelParams) -> int:
    """Simultaneous attempts per round: 1 for naive, max(2, ceil(kappa*log2 n))."""
    _check_n(n)
    if policy is PolicyKind.NAIVE_SEQUENTIAL:
        return 1
    return max(2, math.ceil(params.kappa * math.log2(n)))


def round_success_probability(n: int, policy: PolicyKind, params: ModelParams) -> float:
    """Probability that at least one of the K parallel attempts in a round succeeds."""
    p = effective_success_probability(n, params)
    k = parallelism(n, policy, params)
    return 1.0 - (1.0 - p) ** k


def analytic_success(n: int, policy: PolicyKind, params: ModelParams) -> float:
    """Cache-free probability of serving a request within the round budget."""
    p_round = round_success_probability(n, policy, params)
    return 1.0 - (1.0 - p_round) ** params.round_budget


def analytic_expected_attempts(n: int, policy: PolicyKind, params: ModelParams) -> float:
    """Cache-free expected attempt count per request, counting all parallel attempts.

    Every executed round costs K attempts whether or not it succeeds, and a
    request stops at its first successful round, so the count is
    K * E[min(G, R)] for G geometric with success p_round. Failed requests
    (all R rounds empty) contribute R*K.
    """
    p_round = round_success_probability(n, policy, params)
    k = parallelism(n, policy, params)
    r = params.round_budget
    if p_round == 0.0:
        return float(k * r)
    return k * (1.0 - (1.0 - p_round) ** r) / p_round
