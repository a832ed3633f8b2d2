"""Monte-Carlo comparison harness.

For every receiver count N and trial index, one instance is sampled and
fed to every configured algorithm, so the comparison is pathwise fair.
Seeds derive from the master seed through numpy SeedSequence spawn keys:
stream (N, trial, 0) samples the instance and (N, trial, 1 + crc32(algo
label)) drives an algorithm's own randomness.  That makes results
independent of execution order and reproducible run to run.
"""

from __future__ import annotations

import os
import zlib
from dataclasses import dataclass, field as dc_field

import numpy as np

from .baseline import RULE_PAPER_RANK, RULES, run_rlnc
from .gf import GF
from .graphic import build_solution
from .linalg import verify_solution
from .model import max_wants, sample_instance, wants_of
from .oracle import DEFAULT_BUDGET, CaseLabel, brute_force_uq, classify

TRIALS_HEADER = ("trial", "N", "seed", "wmax", "algo", "q", "U", "s1", "s2", "case")
SUMMARY_HEADER = (
    "N",
    "algo",
    "q",
    "mean_U",
    "mean_wmax",
    "pct_perfect",
    "pct_within_one",
    "trials",
)

ALGO_KINDS = ("graphic", "rlnc", "oracle")


@dataclass(frozen=True)
class AlgoSpec:
    """One algorithm under test: kind, field, and per-kind options."""

    kind: str
    q: int = 2
    poly: int | None = None
    rule: str = RULE_PAPER_RANK
    prune: bool = False

    def __post_init__(self):
        if self.kind not in ALGO_KINDS:
            raise ValueError(f"unknown algorithm {self.kind!r}; expected {ALGO_KINDS}")
        if self.rule not in RULES:
            raise ValueError(f"unknown stopping rule {self.rule!r}")

    @property
    def label(self) -> str:
        parts = [f"{self.kind}:q={self.q}"]
        if self.poly is not None:
            parts.append(f"poly={self.poly}")
        if self.kind == "rlnc" and self.rule != RULE_PAPER_RANK:
            parts.append("rule=decodable")
        if self.kind == "graphic" and self.prune:
            parts.append("prune")
        return ":".join(parts)

    @classmethod
    def parse(cls, token: str) -> "AlgoSpec":
        """Parse CLI tokens like graphic:q=2, rlnc:q=8:rule=decodable."""
        parts = token.split(":")
        kind = parts[0]
        kwargs = {}
        for part in parts[1:]:
            if part == "prune":
                kwargs["prune"] = True
            elif "=" in part:
                key, value = part.split("=", 1)
                if key == "q":
                    kwargs["q"] = int(value)
                elif key == "poly":
                    kwargs["poly"] = int(value)
                elif key == "rule":
                    full = {"paper": RULE_PAPER_RANK, "decodable": RULES[1]}
                    kwargs["rule"] = full.get(value, value)
                else:
                    raise ValueError(f"unknown algorithm option {key!r} in {token!r}")
            else:
                raise ValueError(f"cannot parse algorithm token {token!r}")
        return cls(kind=kind, **kwargs)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; defaults mirror the standard sweep."""

    k: int = 15
    n_values: tuple[int, ...] = (5, 10, 15, 20, 25, 30, 35, 40)
    pe: float = 0.2
    trials: int = 1000
    seed: int = 42
    algos: tuple[AlgoSpec, ...] = (AlgoSpec("graphic", 2),)
    oracle: bool = False
    oracle_cutoff: int = 6
    oracle_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError(f"receiver counts must be positive, got {self.n_values}")
        if not 0.0 <= self.pe <= 1.0:
            raise ValueError(f"pe must be in [0, 1], got {self.pe}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not self.algos:
            raise ValueError("at least one algorithm is required")


@dataclass(frozen=True)
class TrialRecord:
    """One (trial, algorithm) outcome; u/s1/s2 are None where undefined."""

    n: int
    trial: int
    seed: int
    wmax: int
    algo: str
    q: int
    u: int | None
    s1: bool | None
    s2: bool | None
    case: str


@dataclass(frozen=True)
class SummaryRow:
    n: int
    algo: str
    q: int
    mean_u: float
    mean_wmax: float
    pct_perfect: float
    pct_within_one: float
    trials: int


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[TrialRecord] = dc_field(default_factory=list)
    summary: list[SummaryRow] = dc_field(default_factory=list)


def _stream(master: int, n: int, trial: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(master, spawn_key=(n, trial, stream))
    return np.random.default_rng(ss)


def _algo_stream_id(label: str) -> int:
    return 1 + zlib.crc32(label.encode())


def _get_field(cache: dict, q: int, poly) -> GF:
    key = (q, poly)
    if key not in cache:
        cache[key] = GF(q, poly)
    return cache[key]


def run_experiment(config: ExperimentConfig, progress=None) -> ExperimentResult:
    """Run the full sweep; deterministic for a given config.

    Every graphic run is verified on the spot and a decodability failure
    aborts loudly, since that would mean the construction itself is
    broken.  Case labels are only attempted when the oracle is enabled
    and K is within the oracle cutoff.
    """
    fields: dict = {}
    result = ExperimentResult(config)
    classify_ok = config.oracle and config.k <= config.oracle_cutoff
    for n in config.n_values:
        for trial in range(config.trials):
            inst_rng = _stream(config.seed, n, trial, 0)
            trial_seed = int(
                np.random.SeedSequence(
                    config.seed, spawn_key=(n, trial, 0)
                ).generate_state(1)[0]
            )
            instance = sample_instance(n, config.k, config.pe, inst_rng)
            wants = wants_of(instance)
            wmax = max_wants(wants)
            for spec in config.algos:
                fld = _get_field(fields, spec.q, spec.poly)
                u = s1 = s2 = None
                case = CaseLabel.UNKNOWN
                if spec.kind == "graphic":
                    matrix = build_solution(wants, fld, prune=spec.prune)
                    u = matrix.u
                    verdict = verify_solution(matrix, wants)
                    s1, s2 = verdict.s1_ok, verdict.s2_ok
                    if not s1:
                        raise RuntimeError(
                            f"graphic construction failed decodability at "
                            f"N={n} trial={trial}: {verdict}"
                        )
                elif spec.kind == "rlnc":
                    algo_rng = _stream(
                        config.seed, n, trial, _algo_stream_id(spec.label)
                    )
                    run = run_rlnc(wants, fld, rule=spec.rule, seed=algo_rng)
                    u = run.u
                    verdict = verify_solution(run.matrix, wants)
                    s1, s2 = verdict.s1_ok, verdict.s2_ok
                else:  # oracle
                    u = brute_force_uq(wants, fld, budget=config.oracle_budget)
                if classify_ok and u is not None and spec.kind != "oracle":
                    case = classify(u, wants, fld, budget=config.oracle_budget)
                result.records.append(
                    TrialRecord(
                        n=n,
                        trial=trial,
                        seed=trial_seed,
                        wmax=wmax,
                        algo=spec.label,
                        q=spec.q,
                        u=u,
                        s1=s1,
                        s2=s2,
                        case=case.value,
                    )
                )
            if progress is not None:
                progress(n, trial)
    result.records.sort(key=lambda r: (r.n, r.trial, r.algo))
    result.summary = summarize(result.records)
    return result


def summarize(records) -> list[SummaryRow]:
    """Aggregate per (N, algorithm); rows without a U are left out."""
    groups: dict[tuple[int, str, int], list[TrialRecord]] = {}
    for rec in records:
        if rec.u is None:
            continue
        groups.setdefault((rec.n, rec.algo, rec.q), []).append(rec)
    out = []
    for (n, algo, q), rows in sorted(groups.items()):
        count = len(rows)
        us = [r.u for r in rows]
        wmaxes = [r.wmax for r in rows]
        perfect = sum(1 for r in rows if r.u == r.wmax)
        within = sum(1 for r in rows if r.u <= r.wmax + 1)
        out.append(
            SummaryRow(
                n=n,
                algo=algo,
                q=q,
                mean_u=sum(us) / count,
                mean_wmax=sum(wmaxes) / count,
                pct_perfect=100.0 * perfect / count,
                pct_within_one=100.0 * within / count,
                trials=count,
            )
        )
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _write_rows(path, header, rows) -> None:
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_csv(result: ExperimentResult, out_dir) -> tuple[str, str]:
    """Write trials.csv and summary.csv; returns their paths.

    One row per trial record and one per (N, algorithm) aggregate, fixed
    headers, floats at six significant digits.  Files are written via a
    temporary and renamed, so a failure never leaves a partial file.
    """
    os.makedirs(out_dir, exist_ok=True)
    trials_path = os.path.join(out_dir, "trials.csv")
    summary_path = os.path.join(out_dir, "summary.csv")
    _write_rows(
        trials_path,
        TRIALS_HEADER,
        (
            (r.trial, r.n, r.seed, r.wmax, r.algo, r.q, r.u, r.s1, r.s2, r.case)
            for r in result.records
        ),
    )
    _write_rows(
        summary_path,
        SUMMARY_HEADER,
        (
            (
                s.n,
                s.algo,
                s.q,
                s.mean_u,
                s.mean_wmax,
                s.pct_perfect,
                s.pct_within_one,
                s.trials,
            )
            for s in result.summary
        ),
    )
    return trials_path, summary_path
