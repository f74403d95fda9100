"""qhubsim: Monte Carlo study of teleportation servicing on hub-and-spoke QPU networks.

Compares a naive one-attempt-per-round entanglement policy against an
orchestrated policy with logarithmic parallelism and opportunistic Bell-pair
caching, cross-checked against a closed-form analytic oracle. All randomness
is SplitMix64-based and fully reproducible from a single master seed.
"""

__version__ = "0.1.0"

from .cache import EntanglementCache, NodePair
from .engine import (
    DEFAULT_BACKEND,
    SweepError,
    SweepSpec,
    compiled_available,
    derive_stream,
    run_point,
    run_sweep,
)
from .model import (
    ModelParams,
    PolicyKind,
    analytic_expected_attempts,
    analytic_success,
    effective_success_probability,
    parallelism,
    round_success_probability,
)
from .policies import RequestOutcome, execute_request, sample_pair
from .rng import SplitMix64, derive_state
from .stats import AnalyticPoint, PointSummary, analytic_point, stderr_bound, summarize

__all__ = [
    "AnalyticPoint",
    "DEFAULT_BACKEND",
    "EntanglementCache",
    "ModelParams",
    "NodePair",
    "PointSummary",
    "PolicyKind",
    "RequestOutcome",
    "SplitMix64",
    "SweepError",
    "SweepSpec",
    "analytic_expected_attempts",
    "analytic_point",
    "analytic_success",
    "compiled_available",
    "derive_state",
    "derive_stream",
    "effective_success_probability",
    "execute_request",
    "parallelism",
    "round_success_probability",
    "run_point",
    "run_sweep",
    "sample_pair",
    "stderr_bound",
    "summarize",
    "__version__",
]
