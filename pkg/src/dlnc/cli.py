"""Command line interface.

Subcommands: run (Monte-Carlo sweep to CSV + figures), verify (check a
solution file against an instance), replay (re-run a bundled regression
instance), solve (build a coding matrix for an instance file).  Exit
codes: 0 success, 1 verification or assertion failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from .experiment import AlgoSpec, ExperimentConfig, emit_csv, run_experiment
from .gf import GF
from .graphic import build_graph, format_trace, to_matrix
from .linalg import format_matrix, prune_rows, read_matrix, verify_solution, write_matrix
from .model import max_wants, read_sfm, wants_of
from .oracle import DEFAULT_BUDGET
from .replay import replay_example
from .reports import render_figures


def _parse_n_values(text: str) -> tuple[int, ...]:
    """Accept '5..40:5' (inclusive, step), '5..8', or '5,10,20', or '12'."""
    if ".." in text:
        span, _, step_text = text.partition(":")
        start_text, _, stop_text = span.partition("..")
        start, stop = int(start_text), int(stop_text)
        step = int(step_text) if step_text else 1
        if step < 1 or stop < start:
            raise ValueError(f"bad receiver range {text!r}")
        return tuple(range(start, stop + 1, step))
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return (int(text),)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlnc",
        description="Deterministic linear network coding for erasure broadcast",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Monte-Carlo sweep over receiver counts")
    run.add_argument("--k", type=int, default=15, help="packet count")
    run.add_argument(
        "--n", default="5..40:5", help="receiver counts, e.g. 5..40:5 or 5,10,20"
    )
    run.add_argument("--pe", type=float, default=0.2, help="erasure probability")
    run.add_argument("--trials", type=int, default=1000, help="trials per point")
    run.add_argument("--seed", type=int, default=42, help="master seed")
    run.add_argument(
        "--algo",
        action="append",
        default=None,
        metavar="SPEC",
        help="algorithm spec like graphic:q=2, rlnc:q=8, oracle:q=2; repeatable",
    )
    run.add_argument(
        "--rlnc-rule",
        choices=("paper", "decodable"),
        default="paper",
        help="stopping rule for rlnc algorithms without an explicit rule",
    )
    run.add_argument("--oracle", action="store_true", help="classify against optimum")
    run.add_argument(
        "--oracle-cutoff",
        type=int,
        default=6,
        help="classify only when k is at most this",
    )
    run.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument(
        "--no-figures", action="store_true", help="skip PNG rendering"
    )

    verify = sub.add_parser("verify", help="check a solution against an instance")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--solution", required=True)
    verify.add_argument("--poly", type=int, default=None)

    replay = sub.add_parser("replay", help="re-run a bundled regression instance")
    replay.add_argument("name", choices=("example2", "u24"))

    solve = sub.add_parser("solve", help="build a coding matrix for an instance")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--q", type=int, default=2)
    solve.add_argument("--poly", type=int, default=None)
    solve.add_argument("--trace", action="store_true")
    solve.add_argument("--prune", action="store_true")
    solve.add_argument("--out", default=None)
    return parser


def _cmd_run(args) -> int:
    tokens = args.algo or ["graphic:q=2"]
    algos = []
    for token in tokens:
        spec = AlgoSpec.parse(token)
        if spec.kind == "rlnc" and ":rule=" not in token and args.rlnc_rule != "paper":
            spec = AlgoSpec(
                kind=spec.kind, q=spec.q, poly=spec.poly,
                rule="per-receiver-decodable", prune=spec.prune,
            )
        algos.append(spec)
    config = ExperimentConfig(
        k=args.k,
        n_values=_parse_n_values(args.n),
        pe=args.pe,
        trials=args.trials,
        seed=args.seed,
        algos=tuple(algos),
        oracle=args.oracle,
        oracle_cutoff=args.oracle_cutoff,
        oracle_budget=args.budget,
    )
    for spec in algos:
        GF(spec.q, spec.poly)  # fail on unsupported fields before any trial
    started = time.time()
    result = run_experiment(config)
    trials_path, summary_path = emit_csv(result, args.out)
    paths = [trials_path, summary_path]
    if not args.no_figures:
        paths.extend(render_figures(result, args.out))
    elapsed = time.time() - started
    header = f"{'N':>4} {'algo':<28} {'mean_U':>8} {'mean_wmax':>9} {'perfect%':>9} {'within1%':>9}"
    print(header)
    for row in result.summary:
        print(
            f"{row.n:>4} {row.algo:<28} {row.mean_u:>8.4f} {row.mean_wmax:>9.4f} "
            f"{row.pct_perfect:>9.2f} {row.pct_within_one:>9.2f}"
        )
    print(f"wrote {len(paths)} files to {args.out} in {elapsed:.1f}s:")
    for p in paths:
        print(f"  {p}")
    return 0


def _cmd_verify(args) -> int:
    instance = read_sfm(args.instance)
    matrix = read_matrix(args.solution, reduction_poly=args.poly)
    wants = wants_of(instance)
    verdict = verify_solution(matrix, wants)
    if verdict.s1_ok:
        print("decodability: ok (every receiver's wanted columns have full rank)")
    else:
        print("decodability: FAILED")
        for n, got, want in verdict.s1_failures:
            print(f"  receiver {n + 1}: rank {got} < {want} required")
    if verdict.s2_ok:
        print("row-minimality: ok (no single row is redundant)")
    else:
        rows = " ".join(str(r + 1) for r in verdict.removable_rows)
        print(f"row-minimality: FAILED (removable rows: {rows})")
    print(f"U={matrix.u} w_max={wants.wmax}")
    return 0 if verdict.is_solution else 1


def _cmd_replay(args) -> int:
    result = replay_example(args.name)
    for line in result.lines:
        print(line)
    print("PASS" if result.ok else "FAIL")
    return 0 if result.ok else 1


def _cmd_solve(args) -> int:
    instance = read_sfm(args.instance)
    wants = wants_of(instance)
    field = GF(args.q, args.poly)
    if wants.wmax == 0:
        from .linalg import CodingMatrix

        matrix = CodingMatrix.empty(field, wants.k)
    else:
        trace = [] if args.trace else None
        graph = build_graph(wants, trace=trace)
        if args.trace:
            for line in format_trace(trace):
                print(line, file=sys.stderr)
        matrix = to_matrix(graph, field, wants.k)
        if args.prune:
            matrix = prune_rows(matrix, wants)
    verdict = verify_solution(matrix, wants)
    if not verdict.s1_ok:
        print("internal error: built matrix fails decodability", file=sys.stderr)
        return 1
    summary = f"U={matrix.u} w_max={max_wants(wants)} q={field.q}"
    if args.out:
        write_matrix(matrix, args.out)
        print(f"{summary} -> {args.out}")
    else:
        print(summary, file=sys.stderr)
        sys.stdout.write(format_matrix(matrix))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "verify": _cmd_verify,
        "replay": _cmd_replay,
        "solve": _cmd_solve,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
