"""Deterministic sweep driver.

Each (network size, policy) point gets its own random substream derived from
(master_seed, N, policy code), its own cache, and a strictly sequential trial
loop (the cache makes requests within a point temporally dependent). Points
are independent, so the sweep may run them on any number of worker threads;
results are a pure function of the sweep spec regardless of parallelism.

Two interchangeable trial-loop backends exist: the compiled Cython kernel
(imported as ``qhubsim._speedup``) and the pure-Python reference in
``policies``. They replay identical draw sequences, so summaries and CSV
output are byte-identical whichever is used.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .cache import EntanglementCache
from .model import (
    POLICY_STREAM_CODE,
    ModelParams,
    PolicyKind,
    effective_success_probability,
    parallelism,
)
from .policies import RequestOutcome, execute_request, sample_pair
from .rng import SplitMix64, derive_state
from .stats import PointSummary, summarize

try:
    from . import _speedup
except ImportError:  # extension not built; pure fallback
    _speedup = None

BACKENDS = ("auto", "compiled", "python")
DEFAULT_BACKEND = "compiled" if _speedup is not None else "python"


def compiled_available() -> bool:
    return _speedup is not None


def resolve_backend(backend: str = "auto") -> str:
    """Map a requested backend name to 'compiled' or 'python'."""
    if backend == "auto":
        return DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend '{backend}' (valid: {', '.join(BACKENDS)})")
    if backend == "compiled" and _speedup is None:
        raise ValueError("compiled backend requested but the extension is not built")
    return backend


class SweepError(RuntimeError):
    """A sweep point failed; carries the offending (N, policy)."""


@dataclass(frozen=True, slots=True)
class SweepSpec:
    """Grid of network sizes and policies to sweep under one parameter set."""

    grid: tuple[int, ...] = (2, 4, 8, 16, 32, 64, 128)
    policies: tuple[PolicyKind, ...] = (
        PolicyKind.NAIVE_SEQUENTIAL,
        PolicyKind.ORCHESTRATED_PARALLEL,
    )
    params: ModelParams = field(default_factory=ModelParams)

    def __post_init__(self):
        if not self.grid:
            raise ValueError("grid must be nonempty")
        if any(n < 2 for n in self.grid):
            raise ValueError(f"all grid sizes must be >= 2, got {self.grid}")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError(f"grid must be strictly increasing, got {self.grid}")
        if not self.policies:
            raise ValueError("policies must be nonempty")
        if len(set(self.policies)) != len(self.policies):
            raise ValueError(f"duplicate policies in {self.policies}")

    def points(self) -> Iterator[tuple[int, PolicyKind]]:
        for n in self.grid:
            for policy in self.policies:
                yield n, policy


def derive_stream(master_seed: int, n: int, policy: PolicyKind) -> SplitMix64:
    """Reproducible substream for one sweep point.

    Keyed mixing over (master_seed, n, policy code): distinct points get
    statistically independent streams, and the derivation does not depend on
    the rest of the grid.
    """
    return SplitMix64(derive_state(master_seed, n, POLICY_STREAM_CODE[policy]))


def run_point(
    n: int,
    policy: PolicyKind,
    params: ModelParams,
    backend: str = "auto",
) -> list[RequestOutcome]:
    """Simulate ``params.trials`` requests for one point; outcomes in request order."""
    if n < 2:
        raise ValueError(f"network size must be >= 2 for a sweep point, got {n}")
    chosen = resolve_backend(backend)
    stream = derive_stream(params.master_seed, n, policy)
    with_cache = policy is PolicyKind.ORCHESTRATED_PARALLEL

    if chosen == "compiled":
        p = effective_success_probability(n, params)
        k = parallelism(n, policy, params)
        served, attempts, rounds, hits, _, _ = _speedup.simulate_point(
            p, k, params.round_budget, params.cache_capacity,
            params.trials, n, stream.state, with_cache,
        )
        return [
            RequestOutcome(served=s, attempts=a, rounds=r, cache_hit=h)
            for s, a, r, h in zip(served, attempts, rounds, hits)
        ]

    cache = EntanglementCache(params.cache_capacity) if with_cache else None
    outcomes = []
    for _ in range(params.trials):
        pair = sample_pair(n, stream)
        outcomes.append(execute_request(pair, n, policy, params, cache, stream))
    return outcomes


def run_sweep(
    spec: SweepSpec,
    parallelism_degree: int = 1,
    backend: str = "auto",
    progress: Callable[[PointSummary], None] | None = None,
) -> list[PointSummary]:
    """Run every (N, policy) point of ``spec``; one summary per point.

    Results are identical for identical (spec, master_seed) at any
    ``parallelism_degree``: each point owns a derived stream and summaries
    are assembled in grid order, never completion order. ``progress`` is
    invoked once per point, always in grid order.
    """
    if parallelism_degree < 1:
        raise ValueError(f"parallelism_degree must be >= 1, got {parallelism_degree}")
    resolve_backend(backend)  # fail fast on a bad name
    points = list(spec.points())

    def one(point: tuple[int, PolicyKind]) -> PointSummary:
        n, policy = point
        try:
            outcomes = run_point(n, policy, spec.params, backend=backend)
            return summarize(outcomes, n, policy, spec.params)
        except SweepError:
            raise
        except Exception as exc:
            raise SweepError(f"sweep point N={n} policy={policy.label} failed: {exc}") from exc

    summaries: list[PointSummary] = []
    if parallelism_degree == 1:
        for pt in points:
            summary = one(pt)
            if progress is not None:
                progress(summary)
            summaries.append(summary)
        return summaries
    with ThreadPoolExecutor(max_workers=parallelism_degree) as pool:
        futures = [pool.submit(one, pt) for pt in points]
        for f in futures:
            summary = f.result()
            if progress is not None:
                progress(summary)
            summaries.append(summary)
    return summaries
