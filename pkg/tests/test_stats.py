"""Summary aggregation tests."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from qhubsim.model import ModelParams, PolicyKind
from qhubsim.policies import RequestOutcome
from qhubsim.stats import analytic_point, stderr_bound, summarize

NAIVE = PolicyKind.NAIVE_SEQUENTIAL
ORCH = PolicyKind.ORCHESTRATED_PARALLEL
PAPER = ModelParams()


def served(attempts, rounds):
    return RequestOutcome(served=True, attempts=attempts, rounds=rounds, cache_hit=False)


def failed(attempts, rounds):
    return RequestOutcome(served=False, attempts=attempts, rounds=rounds, cache_hit=False)


HIT = RequestOutcome(served=True, attempts=0, rounds=0, cache_hit=True)


class TestSummarize:
    def test_all_served_single_attempt(self):
        outcomes = [served(1, 1)] * 2500
        s = summarize(outcomes, 2, NAIVE, PAPER)
        assert (s.success_rate, s.mean_attempts, s.success_stderr) == (1.0, 1.0, 0.0)

    def test_half_served_hits_worst_case_stderr(self):
        outcomes = [served(1, 1)] * 1250 + [failed(3, 3)] * 1250
        s = summarize(outcomes, 2, NAIVE, PAPER)
        assert s.success_rate == 0.5
        assert s.success_stderr == pytest.approx(0.01, rel=1e-12)

    def test_mixed_outcomes_hand_computed(self):
        # R=3, K=2: served in round 1 (2 attempts), one cache hit, one failure (6)
        outcomes = [served(2, 1), HIT, failed(6, 3)]
        s = summarize(outcomes, 4, ORCH, PAPER)
        assert s.successes == 2
        assert s.success_rate == pytest.approx(2 / 3, rel=1e-15)
        assert s.mean_attempts == pytest.approx(8 / 3, rel=1e-15)
        assert s.cache_hits == 1

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            summarize([], 2, NAIVE, PAPER)

    def test_attempts_per_served(self):
        s = summarize([served(2, 1), HIT, failed(6, 3)], 4, ORCH, PAPER)
        assert s.attempts_per_served() == pytest.approx(4.0, rel=1e-15)

    def test_attempts_per_served_all_failed(self):
        s = summarize([failed(3, 3)] * 5, 2, NAIVE, PAPER)
        assert s.attempts_per_served() == 0.0


outcome_st = st.one_of(
    st.just(HIT),
    st.builds(served, st.integers(1, 21), st.integers(1, 3)),
    st.builds(failed, st.integers(1, 21), st.integers(1, 3)),
)


@given(st.lists(outcome_st, min_size=1, max_size=300), st.randoms(use_true_random=False))
def test_permutation_invariance(outcomes, rnd):
    s1 = summarize(outcomes, 8, ORCH, PAPER)
    shuffled = list(outcomes)
    rnd.shuffle(shuffled)
    s2 = summarize(shuffled, 8, ORCH, PAPER)
    assert s1 == s2


@given(st.lists(outcome_st, min_size=1, max_size=300))
def test_recomputation_matches_stored_fields(outcomes):
    s = summarize(outcomes, 8, ORCH, PAPER)
    successes = sum(1 for o in outcomes if o.served)
    total = sum(o.attempts for o in outcomes)
    assert s.trials == len(outcomes)
    assert s.successes == successes
    assert s.success_rate == successes / len(outcomes)
    assert s.total_attempts == total
    assert s.mean_attempts == total / len(outcomes)
    assert s.success_stderr == math.sqrt(
        s.success_rate * (1 - s.success_rate) / len(outcomes)
    )
    assert s.cache_hits <= s.successes


class TestStderrBound:
    def test_paper_trial_count(self):
        assert stderr_bound(2500) == pytest.approx(0.01, rel=1e-15)

    def test_ten_thousand(self):
        assert stderr_bound(10_000) == pytest.approx(0.005, rel=1e-15)

    def test_single_trial(self):
        assert stderr_bound(1) == 0.5

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            stderr_bound(0)

    @given(st.lists(outcome_st, min_size=1, max_size=400))
    def test_dominates_every_summary(self, outcomes):
        s = summarize(outcomes, 4, ORCH, PAPER)
        assert s.success_stderr <= stderr_bound(len(outcomes)) + 1e-15


class TestAnalyticPoint:
    def test_matches_model_closed_forms(self):
        from qhubsim.model import analytic_expected_attempts, analytic_success

        point = analytic_point(128, ORCH, PAPER)
        assert point.success_rate == analytic_success(128, ORCH, PAPER)
        assert point.mean_attempts == analytic_expected_attempts(128, ORCH, PAPER)

    def test_attempts_per_served_scales_by_success(self):
        point = analytic_point(128, NAIVE, PAPER)
        assert point.attempts_per_served() == pytest.approx(
            point.mean_attempts / point.success_rate, rel=1e-15
        )
