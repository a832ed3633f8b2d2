"""Receiver feedback bookkeeping for single-hop erasure broadcast.

A state feedback matrix (SFM) is an N x K binary matrix A where
a[n, k] = 1 means receiver n lost packet k and still wants it.  The
wants set W_n collects the packet indices receiver n is missing.
Packet and receiver indices are 0-based throughout the library; the
on-disk format and CLI output stay 1-based for readability.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class ReceptionInstance:
    """One broadcast round's feedback: the SFM, validated and immutable."""

    sfm: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.sfm, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"SFM must be 2-D, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("SFM entries must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "sfm", arr)

    @property
    def n(self) -> int:
        return self.sfm.shape[0]

    @property
    def k(self) -> int:
        return self.sfm.shape[1]

    def __repr__(self) -> str:
        return f"ReceptionInstance(n={self.n}, k={self.k})"


@dataclass(frozen=True)
class WantsCollection:
    """The wants sets of all receivers over a K-packet broadcast."""

    k: int
    wants: tuple[frozenset[int], ...]

    def __post_init__(self):
        for w in self.wants:
            for idx in w:
                if not 0 <= idx < self.k:
                    raise ValueError(f"packet index {idx} outside [0, {self.k})")

    @property
    def n(self) -> int:
        return len(self.wants)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.wants)

    @property
    def wmax(self) -> int:
        return max(self.sizes, default=0)

    @classmethod
    def from_sets(cls, sets, k: int) -> "WantsCollection":
        return cls(k=k, wants=tuple(frozenset(s) for s in sets))


def wants_of(instance: ReceptionInstance) -> WantsCollection:
    """Read the wants sets off an instance's feedback matrix."""
    sets = tuple(
        frozenset(np.flatnonzero(row).tolist()) for row in instance.sfm
    )
    return WantsCollection(k=instance.k, wants=sets)


def max_wants(wants: WantsCollection) -> int:
    """w_max, the largest wants-set size; 0 when nobody is missing anything."""
    return wants.wmax


def sfm_of(wants: WantsCollection) -> ReceptionInstance:
    """Rebuild the feedback matrix from wants sets (round-trip of wants_of)."""
    arr = np.zeros((wants.n, wants.k), dtype=np.uint8)
    for n, w in enumerate(wants.wants):
        for idx in w:
            arr[n, idx] = 1
    return ReceptionInstance(arr)


def sample_instance(n: int, k: int, pe: float, seed=None) -> ReceptionInstance:
    """Draw an instance with iid Bernoulli(pe) losses.

    Args:
        n: receiver count, at least 1.
        k: packet count, at least 1.
        pe: erasure probability in [0, 1].
        seed: anything numpy's default_rng accepts, or a Generator.
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if not 0.0 <= pe <= 1.0:
        raise ValueError(f"erasure probability must be in [0, 1], got {pe}")
    rng = _as_rng(seed)
    sfm = (rng.random((n, k)) < pe).astype(np.uint8)
    return ReceptionInstance(sfm)


def write_sfm(instance: ReceptionInstance, path) -> None:
    """Write 'N K' then N rows of K space-separated 0/1 digits."""
    lines = [f"{instance.n} {instance.k}"]
    for row in instance.sfm:
        lines.append(" ".join(str(int(v)) for v in row))
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_sfm(path) -> ReceptionInstance:
    """Parse the format written by write_sfm."""
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing 'N K' header")
    n, k = int(tokens[0]), int(tokens[1])
    body = tokens[2:]
    if len(body) != n * k:
        raise ValueError(f"{path}: expected {n * k} entries, found {len(body)}")
    arr = np.array([int(t) for t in body], dtype=np.uint8).reshape(n, k)
    return ReceptionInstance(arr)
