"""Exact linear algebra over GF(q) for coding matrices.

Matrices are small (tens of rows/columns), so everything here is exact
Gaussian elimination: a bit-packed XOR path for GF(2), where the
simulation loops spend their time, and a generic path driven by the
field's vectorized table lookups for every other order.
"""

from __future__ import annotations

import os

import numpy as np

from .gf import GF
from .model import WantsCollection


class CodingMatrix:
    """A U x K matrix over a finite field, rows = coded transmissions.

    Row u encodes the combination X_u = sum_k c[u, k] * p_k.  Entries are
    canonical integer encodings of field elements.
    """

    def __init__(self, field: GF, data):
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"coding matrix must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must be in [0, {field.q}) for {field!r}")
        arr = arr.copy()
        arr.flags.writeable = False
        self.field = field
        self.data = arr
        self._packed = None  # GF(2) rows as ints, built lazily

    @classmethod
    def empty(cls, field: GF, k: int) -> "CodingMatrix":
        return cls(field, np.zeros((0, k), dtype=np.int64))

    @property
    def u(self) -> int:
        return self.data.shape[0]

    @property
    def k(self) -> int:
        return self.data.shape[1]

    def packed_rows(self) -> list[int]:
        """Rows as K-bit integers; only meaningful over GF(2)."""
        if self._packed is None:
            self._packed = [
                int(sum(1 << j for j in np.flatnonzero(row)))
                for row in self.data
            ]
        return self._packed

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CodingMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"CodingMatrix({self.field!r}, {self.u}x{self.k})"


def _rank_bits(rows, mask: int) -> int:
    """Rank over GF(2) of bit-packed rows restricted to the mask's columns."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in rows:
        v &= mask
        while v:
            low = v & -v
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = v
                rank += 1
                break
            v ^= piv
    return rank


def _rank_generic(field: GF, mat: np.ndarray) -> int:
    """In-place elimination rank; first nonzero entry of each column pivots."""
    mat = mat.copy()
    rows, cols = mat.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if mat[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            mat[[r, pivot]] = mat[[pivot, r]]
        inv = field.inv(int(mat[r, c]))
        for i in range(r + 1, rows):
            f = int(mat[i, c])
            if f:
                factor = field.mul(f, inv)
                mat[i] = field.sub_arr(mat[i], field.mul_arr(mat[r], factor))
        r += 1
        if r == rows:
            break
    return r


def _column_mask(columns) -> int:
    return sum(1 << c for c in set(columns))


def rank(matrix: CodingMatrix, columns=None) -> int:
    """Rank of the matrix, optionally restricted to a subset of columns.

    Args:
        matrix: the coding matrix.
        columns: iterable of 0-based column indices; None means all.

    Returns:
        The GF(q) rank of the selected columns.
    """
    if columns is None:
        cols = list(range(matrix.k))
    else:
        cols = sorted(set(int(c) for c in columns))
        for c in cols:
            if not 0 <= c < matrix.k:
                raise IndexError(f"column {c} outside [0, {matrix.k})")
    if not cols or matrix.u == 0:
        return 0
    if matrix.field.q == 2:
        return _rank_bits(matrix.packed_rows(), _column_mask(cols))
    return _rank_generic(matrix.field, matrix.data[:, cols])


class SolutionVerdict:
    """Outcome of checking the two solution conditions against wants sets.

    s1_ok: every receiver's wanted columns have full rank (the matrix lets
        everyone decode).  s1_failures lists (receiver, rank_found,
        rank_required) for the violations.
    s2_ok: no single row can be removed without breaking the first
        condition for someone; removable_rows lists the rows that could.
    """

    def __init__(self, s1_failures, removable_rows):
        self.s1_failures = tuple(s1_failures)
        self.removable_rows = tuple(removable_rows)

    @property
    def s1_ok(self) -> bool:
        return not self.s1_failures

    @property
    def s2_ok(self) -> bool:
        return not self.removable_rows

    @property
    def is_solution(self) -> bool:
        return self.s1_ok and self.s2_ok

    def __repr__(self) -> str:
        return (
            f"SolutionVerdict(s1_ok={self.s1_ok}, s2_ok={self.s2_ok}, "
            f"s1_failures={self.s1_failures}, removable_rows={self.removable_rows})"
        )


def verify_solution(matrix: CodingMatrix, wants: WantsCollection) -> SolutionVerdict:
    """Check both solution conditions of a coding matrix against wants sets.

    The row-minimality condition is checked by exhaustive single-row
    deletion, which is exactly its definition and cheap at these sizes.
    """
    if matrix.k != wants.k:
        raise ValueError(
            f"matrix has {matrix.k} columns but wants collection expects {wants.k}"
        )
    receivers = [(n, sorted(w)) for n, w in enumerate(wants.wants) if w]
    s1_failures = []
    if matrix.field.q == 2:
        packed = matrix.packed_rows()
        masks = [(n, len(cols), _column_mask(cols)) for n, cols in receivers]
        for n, w, mask in masks:
            r = _rank_bits(packed, mask)
            if r < w:
                s1_failures.append((n, r, w))
        removable = []
        for row in range(matrix.u):
            others = packed[:row] + packed[row + 1 :]
            if all(_rank_bits(others, mask) == w for _, w, mask in masks):
                removable.append(row)
    else:
        subs = [(n, len(cols), matrix.data[:, cols]) for n, cols in receivers]
        for n, w, sub in subs:
            r = _rank_generic(matrix.field, sub)
            if r < w:
                s1_failures.append((n, r, w))
        removable = []
        keep = np.ones(matrix.u, dtype=bool)
        for row in range(matrix.u):
            keep[row] = False
            if all(
                _rank_generic(matrix.field, sub[keep]) == w for _, w, sub in subs
            ):
                removable.append(row)
            keep[row] = True
    return SolutionVerdict(s1_failures, removable)


def prune_rows(matrix: CodingMatrix, wants: WantsCollection) -> CodingMatrix:
    """Greedily drop rows (lowest index first) while everyone can still decode.

    The input must already satisfy the decodability condition; the result
    additionally satisfies row-minimality.
    """
    verdict = verify_solution(matrix, wants)
    if not verdict.s1_ok:
        raise ValueError(f"matrix does not let every receiver decode: {verdict}")
    current = matrix
    while True:
        removable = verify_solution(current, wants).removable_rows
        if not removable:
            return current
        keep = [i for i in range(current.u) if i != removable[0]]
        current = CodingMatrix(current.field, current.data[keep])


def _rref(field: GF, mat: np.ndarray):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = mat.copy()
    rows, cols = mat.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if mat[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            mat[[r, pivot]] = mat[[pivot, r]]
        mat[r] = field.mul_arr(mat[r], field.inv(int(mat[r, c])))
        for i in range(rows):
            if i != r and mat[i, c]:
                mat[i] = field.sub_arr(mat[i], field.mul_arr(mat[r], int(mat[i, c])))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return mat[:r], pivots


def decode(matrix: CodingMatrix, received_rows, wants_one, payloads=None):
    """Determine which wanted packets a receiver can recover, and their values.

    The receiver already holds every packet outside wants_one, so each
    received coded row becomes an equation in the wanted unknowns with the
    known packets moved to the right-hand side.  A wanted packet is
    recovered exactly when its unit vector lies in the row space of those
    equations.

    Args:
        matrix: the coding matrix.
        received_rows: 0-based indices of the coded rows that arrived.
        wants_one: the receiver's wanted packet set (0-based indices).
        payloads: optional (K, L) array of packet payload symbols over the
            same field; defaults to symbolic payloads (the K x K identity),
            under which packet j's true value is the unit vector e_j.

    Returns:
        dict mapping each recovered packet index to its payload vector.
    """
    field = matrix.field
    received = sorted(set(int(r) for r in received_rows))
    for r in received:
        if not 0 <= r < matrix.u:
            raise IndexError(f"row {r} outside [0, {matrix.u})")
    wanted = sorted(set(int(c) for c in wants_one))
    for c in wanted:
        if not 0 <= c < matrix.k:
            raise IndexError(f"column {c} outside [0, {matrix.k})")
    if payloads is None:
        payloads = np.eye(matrix.k, dtype=np.int64)
    payloads = np.asarray(payloads, dtype=np.int64)
    if payloads.shape[0] != matrix.k:
        raise ValueError(f"payloads must have {matrix.k} rows")
    if not wanted or not received:
        return {}

    known = [c for c in range(matrix.k) if c not in set(wanted)]
    coeff = matrix.data[received][:, wanted]
    # right-hand side: received coded payload minus known packets' share
    rhs = _matmul(field, matrix.data[received], payloads)
    if known:
        rhs = field.sub_arr(rhs, _matmul(field, matrix.data[received][:, known], payloads[known]))

    reduced, pivots = _rref(field, np.hstack([coeff, rhs]))
    w = len(wanted)
    out = {}
    for j, packet in enumerate(wanted):
        # reduce e_j against the echelon rows; zero residue means determined
        v = np.zeros(w, dtype=np.int64)
        v[j] = 1
        val = np.zeros(rhs.shape[1], dtype=np.int64)
        for row, pc in zip(reduced, pivots):
            if pc < w and v[pc]:
                f = int(v[pc])
                v = field.sub_arr(v, field.mul_arr(row[:w], f))
                val = field.add_arr(val, field.mul_arr(row[w:], f))
        if not v.any():
            out[packet] = val
    return out


def _matmul(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[0]):
        acc = np.zeros(b.shape[1], dtype=np.int64)
        for k in range(a.shape[1]):
            if a[i, k]:
                acc = field.add_arr(acc, field.mul_arr(b[k], int(a[i, k])))
        out[i] = acc
    return out


def format_matrix(matrix: CodingMatrix) -> str:
    """Render 'U K q' then U rows of integer-encoded entries."""
    lines = [f"{matrix.u} {matrix.k} {matrix.field.q}"]
    for row in matrix.data:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def write_matrix(matrix: CodingMatrix, path) -> None:
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w") as fh:
            fh.write(format_matrix(matrix))
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_matrix(path, reduction_poly: int | None = None) -> CodingMatrix:
    """Parse the format written by write_matrix.

    Extension-field files carry only q; they are interpreted with the
    default reduction polynomial unless one is passed explicitly.
    """
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 3:
        raise ValueError(f"{path}: missing 'U K q' header")
    u, k, q = int(tokens[0]), int(tokens[1]), int(tokens[2])
    body = tokens[3:]
    if len(body) != u * k:
        raise ValueError(f"{path}: expected {u * k} entries, found {len(body)}")
    field = GF(q, reduction_poly)
    arr = np.array([int(t) for t in body], dtype=np.int64).reshape(u, k)
    return CodingMatrix(field, arr)
