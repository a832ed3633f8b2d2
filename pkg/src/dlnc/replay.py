"""Bundled regression instances with known-good outcomes.

"example2" is a five-packet, four-receiver walkthrough whose placement
sequence, final size U = w_max = 4, and the column dependency
col1 - col2 + col4 = 0 are pinned exactly; the placements must come out
identical over every supported field order.  "u24" is the four-packet
instance whose wants sets are all 2-subsets: binary fields cannot do
better than three rows there while ternary ones reach two, so it pins
the brute-force oracle and the pairwise-independence check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import GF, SUPPORTED_ORDERS
from .graphic import build_graph, format_trace, to_matrix
from .model import ReceptionInstance, WantsCollection, max_wants, wants_of
from .oracle import brute_force_uq, exhaustive_u24_check

EXAMPLE2_SFM = np.array(
    [
        [1, 1, 1, 0, 0],
        [0, 1, 0, 1, 1],
        [0, 0, 1, 1, 1],
        [1, 0, 1, 1, 1],
    ],
    dtype=np.uint8,
)

EXAMPLE2_PLACEMENTS = ((1, 2), (1, 3), (1, 4), (2, 3), (1, 5))
EXAMPLE2_U = 4


def example_instance(name: str) -> ReceptionInstance:
    if name == "example2":
        return ReceptionInstance(EXAMPLE2_SFM)
    if name == "u24":
        sets = [set(pair) for pair in combinations(range(4), 2)]
        arr = np.zeros((len(sets), 4), dtype=np.uint8)
        for n, s in enumerate(sets):
            for idx in s:
                arr[n, idx] = 1
        return ReceptionInstance(arr)
    raise ValueError(f"unknown instance {name!r}; expected 'example2' or 'u24'")


@dataclass(frozen=True)
class ReplayResult:
    name: str
    ok: bool
    lines: tuple[str, ...]


def _replay_example2() -> ReplayResult:
    lines = []
    ok = True
    wants = wants_of(example_instance("example2"))
    trace = []
    graph = build_graph(wants, trace=trace)
    lines.extend(format_trace(trace))
    placements = graph.edges
    if placements != EXAMPLE2_PLACEMENTS:
        ok = False
        lines.append(f"placement mismatch: expected {EXAMPLE2_PLACEMENTS}")
        lines.append(f"                    got      {placements}")
    wmax = max_wants(wants)
    u = graph.vertex_count - 1
    lines.append(f"U={u} w_max={wmax}")
    if u != EXAMPLE2_U or wmax != EXAMPLE2_U:
        ok = False
        lines.append(f"size mismatch: expected U = w_max = {EXAMPLE2_U}")
    for q in SUPPORTED_ORDERS:
        field = GF(q)
        matrix = to_matrix(graph, field, wants.k)
        dep = field.add_arr(
            field.sub_arr(matrix.data[:, 0], matrix.data[:, 1]), matrix.data[:, 3]
        )
        if dep.any():
            ok = False
            lines.append(f"q={q}: col1 - col2 + col4 = {dep.tolist()} (expected zero)")
        else:
            lines.append(f"q={q}: col1 - col2 + col4 = 0")
    return ReplayResult("example2", ok, tuple(lines))


def _replay_u24() -> ReplayResult:
    lines = []
    ok = True
    wants = wants_of(example_instance("u24"))
    expected = {2: 3, 3: 2}
    for q, want in expected.items():
        got = brute_force_uq(wants, GF(q))
        lines.append(f"q={q}: optimal U = {got}")
        if got != want:
            ok = False
            lines.append(f"  expected {want}")
    for q, want in ((2, False), (3, True)):
        got = exhaustive_u24_check(q)
        lines.append(f"q={q}: four pairwise-independent points exist = {got}")
        if got != want:
            ok = False
            lines.append(f"  expected {want}")
    return ReplayResult("u24", ok, tuple(lines))


def replay_example(name: str) -> ReplayResult:
    """Re-run a bundled instance and compare against its pinned outcome."""
    if name == "example2":
        return _replay_example2()
    if name == "u24":
        return _replay_u24()
    raise ValueError(f"unknown instance {name!r}; expected 'example2' or 'u24'")
