"""Systematic random linear network coding baseline.

After the systematic phase the sender knows the wants sets; it then
draws coded rows with entries uniform over GF(q) (all-zero rows count as
transmissions too) until a stopping rule fires:

- "paper-rank": stop when the coding matrix restricted to the columns of
  a maximum-wants receiver reaches rank w_max.  This is the rank-counting
  rule whose expected overshoot at q = 2 is the classic
  sum_i q^-i / (1 - q^-i) =~ 1.6 extra rows.
- "per-receiver-decodable": stop only when every receiver's wanted
  columns have full rank, i.e. the matrix actually decodes for everyone.

With a shared draw sequence the second rule never stops earlier than the
first, since the target receiver is one of the receivers it waits for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF
from .linalg import CodingMatrix
from .model import WantsCollection, _as_rng

RULE_PAPER_RANK = "paper-rank"
RULE_DECODABLE = "per-receiver-decodable"
RULES = (RULE_PAPER_RANK, RULE_DECODABLE)


class _Echelon:
    """Incremental row basis over a field; tracks rank as rows arrive."""

    def __init__(self, field: GF):
        self.field = field
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec) -> bool:
        """Reduce vec against the basis; keep it if independent."""
        field = self.field
        v = [int(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                v = [field.sub(a, field.mul(b, f)) for a, b in zip(v, row)]
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = field.inv(v[pivot])
        self.rows.append([field.mul(x, inv) for x in v])
        self.pivots.append(pivot)
        return True


@dataclass(frozen=True)
class RlncRun:
    """One baseline run: the drawn matrix and how many rows it took."""

    field: GF
    k: int
    target_rank: int
    rule: str
    u: int
    matrix: CodingMatrix
    seed: object


def run_rlnc(
    wants: WantsCollection, field: GF, rule: str = RULE_PAPER_RANK, seed=None
) -> RlncRun:
    """Draw uniform random coded rows until the stopping rule is met.

    Identical seeds give identical draw sequences, so runs under the two
    rules on the same seed share a common prefix of rows.
    """
    if rule not in RULES:
        raise ValueError(f"unknown stopping rule {rule!r}; expected one of {RULES}")
    rng = _as_rng(seed)
    wmax = wants.wmax
    if wmax == 0:
        return RlncRun(
            field=field,
            k=wants.k,
            target_rank=0,
            rule=rule,
            u=0,
            matrix=CodingMatrix.empty(field, wants.k),
            seed=seed,
        )

    if rule == RULE_PAPER_RANK:
        target = next(sorted(w) for w in wants.wants if len(w) == wmax)
        watchers = [(sorted(target), len(target), _Echelon(field))]
    else:
        watchers = [
            (sorted(w), len(w), _Echelon(field)) for w in wants.wants if w
        ]

    rows = []
    pending = list(watchers)
    while pending:
        row = rng.integers(0, field.q, size=wants.k, dtype=np.int64)
        rows.append(row)
        still = []
        for cols, w, basis in pending:
            basis.insert(row[cols])
            if basis.rank < w:
                still.append((cols, w, basis))
        pending = still
    matrix = CodingMatrix(field, np.array(rows, dtype=np.int64))
    return RlncRun(
        field=field,
        k=wants.k,
        target_rank=wmax,
        rule=rule,
        u=len(rows),
        matrix=matrix,
        seed=seed,
    )
