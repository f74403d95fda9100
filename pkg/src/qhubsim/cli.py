"""Batch command-line front end.

Runs simulation sweeps and/or the closed-form oracle over a grid of network
sizes, writes a CSV table (plus a JSON metadata sidecar naming the random
generator) and optionally a two-panel SVG chart.

Configuration comes from a flat ``key=value`` file (``#`` starts a comment)
and/or command-line flags; flags override file values and anything left
unspecified takes the documented defaults. Exit status: 0 on success, 1 on a
configuration error, 2 on an I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import __version__
from .charts import emit_chart
from .engine import BACKENDS, SweepSpec, SweepError, run_sweep
from .model import POLICY_STREAM_CODE, ModelParams, PolicyKind
from .stats import AnalyticPoint, PointSummary, analytic_point

MODES = ("simulate", "analytic", "both")
DENOMINATORS = ("all", "served")

CSV_HEADER = (
    "source,policy,N,trials,successes,success_rate,"
    "mean_attempts,success_stderr,cache_hits,seed"
)

RNG_ALGORITHM = "splitmix64"

DEFAULTS = {
    "mode": "both",
    "seed": "42",
    "trials": "2500",
    "grid": "2,4,8,16,32,64,128",
    "p0": "0.35",
    "beta": "0.35",
    "kappa": "0.9",
    "rounds": "3",
    "cache_capacity": "1",
    "policies": "naive,orchestrated",
    "csv": "results.csv",
    "svg": "",
    "attempts_denominator": "all",
    "parallelism": "1",
    "backend": "auto",
}


class ConfigError(ValueError):
    """Invalid configuration input; message names the key and valid range."""


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Fully resolved run request."""

    mode: str
    spec: SweepSpec
    csv_path: str
    svg_path: str | None
    attempts_denominator: str
    parallelism: int
    backend: str


def _parse_int(key: str, raw: str, low: int, high: int | None, range_text: str) -> int:
    try:
        value = int(raw, 10)
    except ValueError:
        raise ConfigError(f"{key}: malformed integer '{raw}' (valid: {range_text})") from None
    if value < low or (high is not None and value > high):
        raise ConfigError(f"{key}: {value} out of range (valid: {range_text})")
    return value


def _parse_float(key: str, raw: str, range_text: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: malformed number '{raw}' (valid: {range_text})") from None


def _parse_choice(key: str, raw: str, choices: tuple[str, ...]) -> str:
    if raw not in choices:
        raise ConfigError(f"{key}: unknown value '{raw}' (valid: {', '.join(choices)})")
    return raw


def _parse_grid(raw: str) -> tuple[int, ...]:
    items = [s.strip() for s in raw.split(",") if s.strip()]
    if not items:
        raise ConfigError("grid: must list at least one network size >= 2")
    sizes = [_parse_int("grid", s, 2, None, "integers >= 2") for s in items]
    return tuple(sorted(set(sizes)))


def _parse_policies(raw: str) -> tuple[PolicyKind, ...]:
    labels = [s.strip() for s in raw.split(",") if s.strip()]
    if not labels:
        raise ConfigError("policies: must list at least one policy")
    out = []
    for label in labels:
        try:
            policy = PolicyKind.from_label(label)
        except ValueError as exc:
            raise ConfigError(f"policies: {exc}") from None
        if policy in out:
            raise ConfigError(f"policies: duplicate entry '{label}'")
        out.append(policy)
    return tuple(out)


def parse_config_file(text: str) -> dict[str, str]:
    """Parse flat key=value config text into a raw string mapping."""
    values: dict[str, str] = {}
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"config line {lineno}: expected key=value, got '{line}'")
        key = key.strip()
        if key not in DEFAULTS:
            raise ConfigError(
                f"config line {lineno}: unknown key '{key}' "
                f"(valid: {', '.join(sorted(DEFAULTS))})"
            )
        values[key] = value.strip()
    return values


def parse_config(file_text: str | None = None, flags: dict[str, str] | None = None) -> RunConfig:
    """Resolve defaults, config-file values, and flag overrides into a RunConfig.

    Precedence: flags > file > documented defaults. Raises ConfigError with a
    diagnostic naming the offending key and its valid range.
    """
    raw = dict(DEFAULTS)
    if file_text is not None:
        raw.update(parse_config_file(file_text))
    for key, value in (flags or {}).items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key '{key}' (valid: {', '.join(sorted(DEFAULTS))})")
        raw[key] = value

    mode = _parse_choice("mode", raw["mode"], MODES)
    try:
        params = ModelParams(
            p0=_parse_float("p0", raw["p0"], "0 < p0 <= 1"),
            beta=_parse_float("beta", raw["beta"], "beta >= 0"),
            kappa=_parse_float("kappa", raw["kappa"], "kappa > 0"),
            round_budget=_parse_int("rounds", raw["rounds"], 1, None, "rounds >= 1"),
            cache_capacity=_parse_int(
                "cache_capacity", raw["cache_capacity"], 0, None, "cache_capacity >= 0"
            ),
            trials=_parse_int("trials", raw["trials"], 1, None, "trials >= 1"),
            master_seed=_parse_int(
                "seed", raw["seed"], 0, (1 << 64) - 1, "0 <= seed < 2**64"
            ),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    spec = SweepSpec(
        grid=_parse_grid(raw["grid"]),
        policies=_parse_policies(raw["policies"]),
        params=params,
    )
    csv_path = raw["csv"]
    if not csv_path:
        raise ConfigError("csv: output path must be nonempty")
    return RunConfig(
        mode=mode,
        spec=spec,
        csv_path=csv_path,
        svg_path=raw["svg"] or None,
        attempts_denominator=_parse_choice(
            "attempts_denominator", raw["attempts_denominator"], DENOMINATORS
        ),
        parallelism=_parse_int("parallelism", raw["parallelism"], 1, None, "parallelism >= 1"),
        backend=_parse_choice("backend", raw["backend"], BACKENDS),
    )


def emit_csv(
    summaries: list[PointSummary],
    analytic: list[AnalyticPoint],
    path: str,
    attempts_denominator: str = "all",
) -> None:
    """Write the results table: header plus one row per summary/analytic point.

    Columns: source,policy,N,trials,successes,success_rate,mean_attempts,
    success_stderr,cache_hits,seed. Analytic rows leave trials, successes,
    cache_hits, and seed empty. Probabilities carry 6 decimal places; rows are
    sorted by (source, policy, N). Output is byte-deterministic.
    """
    if not summaries and not analytic:
        raise ValueError("emit_csv requires at least one summary or analytic row")
    served_only = attempts_denominator == "served"
    rows: list[tuple[str, str, int, str]] = []
    for s in summaries:
        attempts = s.attempts_per_served() if served_only else s.mean_attempts
        tail = (
            f"{s.trials},{s.successes},{s.success_rate:.6f},{attempts:.6f},"
            f"{s.success_stderr:.6f},{s.cache_hits},{s.master_seed}"
        )
        rows.append(("sim", s.policy.label, s.n, tail))
    for a in analytic:
        attempts = a.attempts_per_served() if served_only else a.mean_attempts
        tail = f",,{a.success_rate:.6f},{attempts:.6f},0.000000,,"
        rows.append(("analytic", a.policy.label, a.n, tail))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    lines = [CSV_HEADER]
    lines.extend(f"{source},{policy},{n},{tail}" for source, policy, n, tail in rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_metadata(config: RunConfig, path: str) -> None:
    """Sidecar JSON recording the generator and the resolved configuration."""
    params = config.spec.params
    meta = {
        "tool": f"qhubsim {__version__}",
        "rng": {
            "algorithm": RNG_ALGORITHM,
            "stream_derivation": "splitmix64 finalizer over (master_seed, N, policy_code)",
            "policy_codes": {p.label: code for p, code in POLICY_STREAM_CODE.items()},
            "draw_order": "pair index (masked rejection), then K Bernoulli draws per round",
        },
        "config": {
            "mode": config.mode,
            "grid": list(config.spec.grid),
            "policies": [p.label for p in config.spec.policies],
            "p0": params.p0,
            "beta": params.beta,
            "kappa": params.kappa,
            "rounds": params.round_budget,
            "cache_capacity": params.cache_capacity,
            "trials": params.trials,
            "seed": params.master_seed,
            "attempts_denominator": config.attempts_denominator,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on bad flags, usage on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qhubsim",
        description=(
            "Monte Carlo sweep of teleportation-request servicing on a "
            "hub-and-spoke multi-QPU network, with a closed-form oracle."
        ),
    )
    add = parser.add_argument
    add("--config", metavar="PATH", help="key=value config file")
    add("--mode", choices=MODES, help="what to compute (default: both)")
    add("--seed", metavar="U64", help="master seed, 0 <= seed < 2**64 (default: 42)")
    add("--trials", metavar="U32", help="requests per sweep point (default: 2500)")
    add("--grid", metavar="N1,N2,...", help="network sizes, each >= 2 (default: 2,...,128)")
    add("--p0", metavar="F", help="base per-attempt success probability (default: 0.35)")
    add("--beta", metavar="F", help="scale attenuation coefficient (default: 0.35)")
    add("--kappa", metavar="F", help="parallelism coefficient (default: 0.9)")
    add("--rounds", metavar="U32", help="round budget per request (default: 3)")
    add("--cache-capacity", dest="cache_capacity", metavar="U32",
        help="spare pairs per node pair (default: 1)")
    add("--policies", metavar="P1,P2", help="comma-separated from: naive, orchestrated")
    add("--csv", metavar="PATH", help="output CSV path (default: results.csv)")
    add("--svg", metavar="PATH", help="optional output chart path")
    add("--attempts-denominator", dest="attempts_denominator", choices=DENOMINATORS,
        help="average attempts over all requests or served only (default: all)")
    add("--parallelism", metavar="U32", help="worker threads across sweep points (default: 1)")
    add("--backend", choices=BACKENDS, help="trial-loop implementation (default: auto)")
    add("--version", action="version", version=f"qhubsim {__version__}")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Run the tool; returns the process exit status (0 ok, 1 config, 2 I/O)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # bad flag (1) or --help/--version (0)
        return int(exc.code or 0)

    try:
        file_text = None
        if ns.config is not None:
            try:
                with open(ns.config, "r", encoding="utf-8") as fh:
                    file_text = fh.read()
            except OSError as exc:
                print(f"qhubsim: cannot read config {ns.config}: {exc}", file=sys.stderr)
                return 2
        flags = {
            key: value
            for key, value in vars(ns).items()
            if key != "config" and value is not None
        }
        config = parse_config(file_text, flags)
    except ConfigError as exc:
        print(f"qhubsim: configuration error: {exc}", file=sys.stderr)
        return 1

    do_sim = config.mode in ("simulate", "both")
    do_analytic = config.mode in ("analytic", "both")
    spec = config.spec

    summaries: list[PointSummary] = []
    analytic: list[AnalyticPoint] = []
    try:
        if do_sim:
            t0 = time.perf_counter()

            def report(s: PointSummary) -> None:
                print(
                    f"sim      {s.policy.label:<12} N={s.n:<5d} "
                    f"success_rate={s.success_rate:.6f} mean_attempts={s.mean_attempts:.6f} "
                    f"stderr={s.success_stderr:.6f} cache_hits={s.cache_hits}"
                )

            summaries = run_sweep(
                spec,
                parallelism_degree=config.parallelism,
                backend=config.backend,
                progress=report,
            )
            elapsed = time.perf_counter() - t0
            print(f"simulated {len(summaries)} points in {elapsed:.2f}s")
        if do_analytic:
            for n, policy in spec.points():
                point = analytic_point(n, policy, spec.params)
                analytic.append(point)
                print(
                    f"analytic {policy.label:<12} N={n:<5d} "
                    f"success_rate={point.success_rate:.6f} "
                    f"mean_attempts={point.mean_attempts:.6f}"
                )
    except (SweepError, ValueError) as exc:
        print(f"qhubsim: {exc}", file=sys.stderr)
        return 1

    try:
        emit_csv(summaries, analytic, config.csv_path, config.attempts_denominator)
        write_metadata(config, config.csv_path + ".meta.json")
        print(f"wrote {config.csv_path}")
        if config.svg_path:
            emit_chart(
                summaries,
                analytic,
                config.svg_path,
                attempts_per_served=(config.attempts_denominator == "served"),
            )
            print(f"wrote {config.svg_path}")
    except OSError as exc:
        print(f"qhubsim: I/O error: {exc}", file=sys.stderr)
        return 2
    return 0


def run() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
