"""Tests for the brute-force optimum and the uniform-wants characterization."""
from __future__ import annotations

import itertools

import numpy as np
import pytest

from dlnc.gf import GF
from dlnc.linalg import CodingMatrix, rank
from dlnc.model import WantsCollection, sample_instance, wants_of
from dlnc.oracle import (
    CaseLabel,
    brute_force_uq,
    classify,
    exhaustive_u24_check,
    projective_points,
    uniform_representable,
)


def all_r_subsets(r: int, k: int) -> WantsCollection:
    sets = [set(c) for c in itertools.combinations(range(k), r)]
    return WantsCollection.from_sets(sets, k=k)


def u24_wants() -> WantsCollection:
    return all_r_subsets(2, 4)


def naive_uq(wants: WantsCollection, field: GF) -> int | None:
    """Independent optimum: enumerate every U x K matrix entrywise.

    Exponential in U * K, so only run on very small instances; shares no
    code with the search under test.
    """
    if wants.wmax == 0:
        return 0
    sets = [sorted(w) for w in wants.wants if w]
    for u in range(wants.wmax, wants.k + 1):
        for entries in itertools.product(range(field.q), repeat=u * wants.k):
            data = np.array(entries, dtype=np.int64).reshape(u, wants.k)
            m = CodingMatrix(field, data)
            if all(rank(m, columns=s) == len(s) for s in sets):
                return u
    return None


def test_projective_points_canonical() -> None:
    for q, dim in [(2, 3), (3, 2), (4, 2), (5, 3)]:
        pts = projective_points(GF(q), dim)
        assert len(pts) == (q**dim - 1) // (q - 1)
        assert len(set(pts)) == len(pts)
        for p in pts:
            first = next(x for x in p if x)
            assert first == 1  # scaled so the leading nonzero entry is 1


def test_u24_optima() -> None:
    wants = u24_wants()
    assert brute_force_uq(wants, GF(2)) == 3
    assert brute_force_uq(wants, GF(3)) == 2
    assert brute_force_uq(wants, GF(4)) == 2
    assert brute_force_uq(wants, GF(5)) == 2


def test_u24_pairwise_point_check() -> None:
    assert exhaustive_u24_check(2) is False
    assert exhaustive_u24_check(3) is True
    assert exhaustive_u24_check(4) is True
    assert exhaustive_u24_check(9) is True
    with pytest.raises(ValueError):
        exhaustive_u24_check(16)


def test_uq_trivial_cases() -> None:
    empty = WantsCollection.from_sets([set()], k=3)
    assert brute_force_uq(empty, GF(2)) == 0
    everything = WantsCollection.from_sets([{0, 1, 2}], k=3)
    assert brute_force_uq(everything, GF(2)) == 3
    single = WantsCollection.from_sets([{1}], k=3)
    assert brute_force_uq(single, GF(2)) == 1


def test_uq_respects_u_max() -> None:
    wants = u24_wants()
    assert brute_force_uq(wants, GF(2), u_max=2) is None
    assert brute_force_uq(wants, GF(2), u_max=3) == 3


def test_uq_budget_exhaustion_returns_none() -> None:
    wants = all_r_subsets(2, 5)
    assert brute_force_uq(wants, GF(2), budget=3) is None


@pytest.mark.parametrize("q", [2, 3])
def test_uq_against_entrywise_enumeration(q: int) -> None:
    field = GF(q)
    rng = np.random.default_rng(60 + q)
    k_max = 4 if q == 2 else 3
    for _ in range(25):
        k = int(rng.integers(1, k_max + 1))
        n = int(rng.integers(1, 4))
        inst = sample_instance(n, k, 0.5, rng)
        wants = wants_of(inst)
        assert brute_force_uq(wants, field) == naive_uq(wants, field), wants


@pytest.mark.parametrize(
    "r,k,q,expected",
    [
        (1, 10, 2, True),
        (2, 3, 2, True),
        (2, 4, 2, False),
        (2, 4, 3, True),
        (2, 5, 3, False),
        (2, 5, 4, True),
        (2, 6, 4, False),
        (2, 17, 16, True),
        (3, 4, 2, True),
        (3, 5, 2, False),
        (3, 4, 3, True),
        (3, 5, 3, False),
        (3, 6, 4, True),
        (3, 7, 4, False),
        (3, 10, 8, True),
        (3, 11, 8, False),
        (3, 10, 9, True),
        (3, 11, 9, False),
        (4, 5, 2, True),
        (4, 6, 2, False),
        (4, 5, 3, True),
        (4, 6, 3, False),
        (4, 5, 4, True),
        (4, 6, 4, False),
        (4, 9, 8, True),
        (4, 10, 8, False),
        (5, 6, 4, True),
        (5, 7, 4, False),
        (5, 6, 5, True),
        (5, 7, 5, False),
        (5, 9, 8, True),
        (5, 7, 2, None),
        (5, 8, 3, None),
        (6, 7, 2, None),
        (6, 9, 4, None),
    ],
)
def test_uniform_representable_table(r: int, k: int, q: int, expected) -> None:
    assert uniform_representable(r, k, q) is expected


def test_uniform_representable_small_k_always_true() -> None:
    for r in range(1, 8):
        for k in range(0, r + 1):
            assert uniform_representable(r, k, 2) is True


def test_uniform_representable_validates_args() -> None:
    with pytest.raises(ValueError):
        uniform_representable(0, 3, 2)
    with pytest.raises(ValueError):
        uniform_representable(2, 3, 6)
    with pytest.raises(ValueError):
        uniform_representable(2, -1, 2)


@pytest.mark.parametrize(
    "r,k,q",
    [(2, 4, 2), (2, 4, 3), (2, 5, 4), (2, 6, 4), (3, 4, 2), (3, 5, 2), (3, 5, 3), (3, 6, 4), (4, 5, 3)],
)
def test_uniform_table_agrees_with_search(r: int, k: int, q: int) -> None:
    # Where the characterization says representable, the optimum over
    # all-r-subset wants is exactly r; where it says not, the optimum is
    # larger (every set has size r, so the lower bound alone gives r).
    wants = all_r_subsets(r, k)
    uq = brute_force_uq(wants, GF(q))
    if uniform_representable(r, k, q):
        assert uq == r
    else:
        assert uq is not None and uq > r


def test_classify_cases() -> None:
    f2, f3 = GF(2), GF(3)
    u24 = u24_wants()
    # achieving the lower bound is Case 1 regardless of the field
    assert classify(2, u24, f3) is CaseLabel.PERFECT
    # over F3 the optimum equals the bound, so stopping at 3 missed it
    assert classify(3, u24, f3) is CaseLabel.MISSED_PERFECT
    # over F2 no perfect solution exists and 3 is the best achievable
    assert classify(3, u24, f2) is CaseLabel.NO_PERFECT
    # one more row than the binary optimum is plain suboptimal
    assert classify(4, u24, f2) is CaseLabel.SUBOPTIMAL
    # a starved budget cannot settle anything beyond the perfect case
    assert classify(3, u24, f2, budget=1) is CaseLabel.UNKNOWN
    with pytest.raises(ValueError):
        classify(1, u24, f2)


def test_classify_labels_are_stable_strings() -> None:
    assert CaseLabel.PERFECT.value == "Case1-perfect"
    assert CaseLabel.MISSED_PERFECT.value == "Case2-missed-perfect"
    assert CaseLabel.NO_PERFECT.value == "Case3-no-perfect"
    assert CaseLabel.SUBOPTIMAL.value == "Case4-suboptimal"
    assert CaseLabel.UNKNOWN.value == "Unknown"
