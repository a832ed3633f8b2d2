"""Deterministic linear network coding for single-hop erasure broadcast.

Builds feedback-driven coding matrices via a graphic-matroid placement
heuristic, verifies the two solution conditions exactly over small
finite fields, and benchmarks against systematic random linear coding
and a brute-force optimum.
"""

from .baseline import RULE_DECODABLE, RULE_PAPER_RANK, RlncRun, run_rlnc
from .experiment import (
    AlgoSpec,
    ExperimentConfig,
    ExperimentResult,
    SummaryRow,
    TrialRecord,
    emit_csv,
    run_experiment,
    summarize,
)
from .gf import DEFAULT_POLYNOMIALS, SUPPORTED_ORDERS, GF, FieldElement
from .graphic import (
    IterationConstraints,
    LabeledMultigraph,
    Placement,
    build_graph,
    build_solution,
    constraints_for,
    forbidden_locations,
    format_trace,
    place_edge,
    to_matrix,
)
from .linalg import (
    CodingMatrix,
    SolutionVerdict,
    decode,
    format_matrix,
    prune_rows,
    rank,
    read_matrix,
    verify_solution,
    write_matrix,
)
from .model import (
    ReceptionInstance,
    WantsCollection,
    max_wants,
    read_sfm,
    sample_instance,
    sfm_of,
    wants_of,
    write_sfm,
)
from .oracle import (
    CaseLabel,
    brute_force_uq,
    classify,
    exhaustive_u24_check,
    projective_points,
    uniform_representable,
)
from .replay import example_instance, replay_example

__version__ = "0.1.0"

__all__ = [
    "AlgoSpec",
    "CaseLabel",
    "CodingMatrix",
    "DEFAULT_POLYNOMIALS",
    "ExperimentConfig",
    "ExperimentResult",
    "FieldElement",
    "GF",
    "IterationConstraints",
    "LabeledMultigraph",
    "Placement",
    "ReceptionInstance",
    "RlncRun",
    "RULE_DECODABLE",
    "RULE_PAPER_RANK",
    "SolutionVerdict",
    "SummaryRow",
    "SUPPORTED_ORDERS",
    "TrialRecord",
    "WantsCollection",
    "brute_force_uq",
    "build_graph",
    "build_solution",
    "classify",
    "constraints_for",
    "decode",
    "emit_csv",
    "example_instance",
    "exhaustive_u24_check",
    "forbidden_locations",
    "format_matrix",
    "format_trace",
    "max_wants",
    "place_edge",
    "projective_points",
    "prune_rows",
    "rank",
    "read_matrix",
    "read_sfm",
    "replay_example",
    "run_experiment",
    "run_rlnc",
    "sample_instance",
    "sfm_of",
    "summarize",
    "to_matrix",
    "uniform_representable",
    "verify_solution",
    "wants_of",
    "write_matrix",
    "write_sfm",
]
