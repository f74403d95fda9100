"""Per-request execution and pair sampling tests."""

import pytest
from hypothesis import given, settings, strategies as st

from qhubsim.cache import EntanglementCache, NodePair
from qhubsim.model import ModelParams, PolicyKind, parallelism
from qhubsim.policies import RequestOutcome, execute_request, sample_pair
from qhubsim.rng import SplitMix64

NAIVE = PolicyKind.NAIVE_SEQUENTIAL
ORCH = PolicyKind.ORCHESTRATED_PARALLEL
PAPER = ModelParams()


class _AllFail:
    """Stream stub whose Bernoulli draws always fail (p_eff -> 0 limit)."""

    def bernoulli(self, p):
        return False


class _Scripted:
    """Stream stub replaying a fixed Bernoulli script."""

    def __init__(self, script):
        self.script = list(script)

    def bernoulli(self, p):
        return self.script.pop(0)


def check_outcome_invariants(outcome: RequestOutcome, k: int, budget: int) -> None:
    if outcome.cache_hit:
        assert outcome.served and outcome.attempts == 0 and outcome.rounds == 0
    elif outcome.served:
        assert 1 <= outcome.rounds <= budget
        assert outcome.attempts == outcome.rounds * k
    else:
        assert outcome.rounds == budget
        assert outcome.attempts == budget * k


class TestExecuteRequest:
    def test_certain_success_naive(self):
        params = ModelParams(p0=1.0, beta=0.0)
        out = execute_request(NodePair(0, 1), 2, NAIVE, params, None, SplitMix64(1))
        assert out == RequestOutcome(served=True, attempts=1, rounds=1, cache_hit=False)

    def test_all_failures_exhaust_budget(self):
        # N=128 orchestrated: K=7, R=3 -> 21 attempts, all failing
        out = execute_request(
            NodePair(3, 77), 128, ORCH, PAPER, EntanglementCache(1), _AllFail()
        )
        assert out == RequestOutcome(served=False, attempts=21, rounds=3, cache_hit=False)

    def test_double_success_round_deposits_spare(self):
        cache = EntanglementCache(capacity=1)
        pair = NodePair(0, 1)
        out = execute_request(pair, 2, ORCH, PAPER, cache, _Scripted([True, True]))
        assert out == RequestOutcome(served=True, attempts=2, rounds=1, cache_hit=False)
        assert cache.stored(pair) == 1
        assert cache.deposits == 1

    def test_single_success_round_deposits_nothing(self):
        cache = EntanglementCache(capacity=1)
        out = execute_request(NodePair(0, 1), 2, ORCH, PAPER, cache, _Scripted([False, True]))
        assert out.served and out.attempts == 2 and out.rounds == 1
        assert cache.total_stored() == 0

    def test_cached_pair_served_for_free(self):
        cache = EntanglementCache(capacity=1)
        pair = NodePair(0, 1)
        cache.deposit(pair, 1)
        out = execute_request(pair, 2, ORCH, PAPER, cache, _AllFail())
        assert out == RequestOutcome(served=True, attempts=0, rounds=0, cache_hit=True)
        assert cache.hits == 1
        assert cache.stored(pair) == 0

    def test_all_attempts_of_serving_round_are_drawn(self):
        # success on the first of three attempts must still consume all three
        stream = _Scripted([True, False, False])
        params = ModelParams(kappa=1.5)  # K = ceil(1.5 * log2(4)) = 3 at N=4
        assert parallelism(4, ORCH, params) == 3
        out = execute_request(NodePair(1, 3), 4, ORCH, params, EntanglementCache(1), stream)
        assert out.attempts == 3
        assert stream.script == []  # every scripted draw consumed

    def test_naive_rejects_cache(self):
        with pytest.raises(ValueError, match="naive"):
            execute_request(NodePair(0, 1), 2, NAIVE, PAPER, EntanglementCache(1), SplitMix64(1))

    def test_rejects_out_of_range_pair(self):
        with pytest.raises(ValueError, match="out of range"):
            execute_request(NodePair(0, 5), 4, NAIVE, PAPER, None, SplitMix64(1))

    def test_rejects_tiny_network(self):
        with pytest.raises(ValueError):
            execute_request(NodePair(0, 1), 1, NAIVE, PAPER, None, SplitMix64(1))


request_params = st.builds(
    ModelParams,
    p0=st.floats(min_value=0.01, max_value=1.0),
    beta=st.floats(min_value=0.0, max_value=2.0),
    kappa=st.floats(min_value=0.1, max_value=2.5),
    round_budget=st.integers(min_value=1, max_value=5),
    cache_capacity=st.integers(min_value=0, max_value=2),
)


@settings(max_examples=300)
@given(
    params=request_params,
    n=st.integers(min_value=2, max_value=64),
    policy=st.sampled_from([NAIVE, ORCH]),
    seed=st.integers(min_value=0, max_value=2**64 - 1),
    warmup=st.integers(min_value=0, max_value=8),
)
def test_outcome_invariants_hold(params, n, policy, seed, warmup):
    rng = SplitMix64(seed)
    cache = EntanglementCache(params.cache_capacity) if policy is ORCH else None
    k = parallelism(n, policy, params)
    for _ in range(warmup + 1):
        pair = sample_pair(n, rng)
        out = execute_request(pair, n, policy, params, cache, rng)
        check_outcome_invariants(out, k, params.round_budget)
        assert out.attempts in {0} | {r * k for r in range(1, params.round_budget + 1)}
    if cache is None:
        return
    assert cache.hits <= cache.deposits


class TestSamplePair:
    def test_two_nodes_single_pair(self):
        rng = SplitMix64(3)
        assert all(sample_pair(2, rng) == NodePair(0, 1) for _ in range(50))

    def test_rejects_degenerate_network(self):
        with pytest.raises(ValueError):
            sample_pair(1, SplitMix64(0))

    def test_range_at_128(self):
        rng = SplitMix64(1)
        for _ in range(2000):
            pair = sample_pair(128, rng)
            assert 0 <= pair.lo < pair.hi < 128

    def test_unranking_is_a_bijection(self):
        # exhaust all pair indices for several sizes via the rng's own path
        for n in (3, 4, 7, 12):
            seen = set()
            rng = SplitMix64(99)
            draws = 0
            while len(seen) < n * (n - 1) // 2 and draws < 100_000:
                seen.add(sample_pair(n, rng))
                draws += 1
            assert seen == {
                NodePair(lo, hi) for hi in range(1, n) for lo in range(hi)
            }

    def test_uniform_over_six_pairs_chi_square(self):
        # N=4: 6 pairs; chi-square df=5, critical value 15.086 at alpha=0.01
        rng = SplitMix64(2718)
        draws = 6000
        counts = {}
        for _ in range(draws):
            pair = sample_pair(4, rng)
            counts[pair] = counts.get(pair, 0) + 1
        assert len(counts) == 6
        expected = draws / 6
        chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
        assert chi2 < 15.086, f"chi2={chi2:.2f}"
