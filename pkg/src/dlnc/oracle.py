"""Ground-truth references: brute-force optimal row counts and known
bounds on when every w-subset of K packets can be kept independent.

The search for the optimal U enumerates column assignments as projective
points (column scaling never changes independence, so one representative
per line suffices, first nonzero coordinate fixed to 1), assigns wanted
packets one at a time, and prunes as soon as any wants set would go
dependent.  Row operations let the first wanted column be pinned to a
unit vector.  A candidate budget caps the work; exceeding it yields None
rather than ever a wrong number.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations, product

from .gf import GF, _factor_prime_power
from .model import WantsCollection

DEFAULT_BUDGET = 10_000_000


class CaseLabel(Enum):
    """How an algorithm's row count U relates to w_max and the optimum U_q."""

    PERFECT = "Case1-perfect"
    MISSED_PERFECT = "Case2-missed-perfect"
    NO_PERFECT = "Case3-no-perfect"
    SUBOPTIMAL = "Case4-suboptimal"
    UNKNOWN = "Unknown"


def projective_points(field: GF, dim: int) -> list[tuple[int, ...]]:
    """Canonical representatives of the lines of F_q^dim.

    One vector per line, the first nonzero coordinate equal to 1, in
    lexicographic order; there are (q^dim - 1) / (q - 1) of them.
    """
    points = []
    for vec in product(range(field.q), repeat=dim):
        first = next((x for x in vec if x), None)
        if first == 1:
            points.append(vec)
    return points


class _BudgetExceeded(Exception):
    pass


class _ConstraintBasis:
    """Echelon basis with undo, one per wants set during the search."""

    def __init__(self, field: GF):
        self.field = field
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def push(self, vec) -> bool:
        field = self.field
        v = list(vec)
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

    def pop(self) -> None:
        self.rows.pop()
        self.pivots.pop()


def _maximal_sets(wants: WantsCollection) -> list[frozenset[int]]:
    distinct = sorted(set(w for w in wants.wants if w), key=lambda s: (-len(s), sorted(s)))
    maximal: list[frozenset[int]] = []
    for s in distinct:
        if not any(s < kept for kept in maximal):
            maximal.append(s)
    return maximal


def _search_level(field, u, wanted, sets, budget) -> bool:
    """Is there a u-row assignment keeping every set independent?"""
    points = projective_points(field, u)
    unit = tuple(1 if i == 0 else 0 for i in range(u))
    sets_of = [[s for s in sets if packet in s] for packet in wanted]
    bases = {s: _ConstraintBasis(field) for s in sets}

    def assign(depth: int) -> bool:
        if depth == len(wanted):
            return True
        # row operations make the first wanted column's choice irrelevant
        candidates = [unit] if depth == 0 else points
        for v in candidates:
            if budget[0] <= 0:
                raise _BudgetExceeded
            budget[0] -= 1
            pushed = []
            ok = True
            for s in sets_of[depth]:
                if bases[s].push(v):
                    pushed.append(bases[s])
                else:
                    ok = False
                    break
            if ok and assign(depth + 1):
                return True
            for b in pushed:
                b.pop()
        return False

    return assign(0)


def brute_force_uq(
    wants: WantsCollection,
    field: GF,
    u_max: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> int | None:
    """Smallest row count U for which some U x K matrix over the field
    keeps every wants set's columns independent, or None when the search
    ran out of budget (or of levels) before it could certify an answer.

    The identity matrix always works at U = K, so the search never has to
    explore that level.
    """
    wmax = wants.wmax
    if wmax == 0:
        return 0
    k = wants.k
    u_hi = k if u_max is None else min(u_max, k)
    if u_hi < wmax:
        return None
    wanted = sorted(set().union(*[set(w) for w in wants.wants if w]))
    sets = _maximal_sets(wants)
    remaining = [budget]
    for u in range(wmax, u_hi + 1):
        if u == k:
            return k
        try:
            if _search_level(field, u, wanted, sets, remaining):
                return u
        except _BudgetExceeded:
            return None
    return None


def uniform_representable(r: int, k: int, q: int) -> bool | None:
    """Can k columns over GF(q) be chosen with every r-subset independent?

    Encodes the known characterization for r <= 5; True/False where the
    answer is settled, None where it is open.  Any k <= r is trivially
    representable (identity columns plus distinct extras), checked first.
    """
    if r < 1:
        raise ValueError(f"rank r must be at least 1, got {r}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    _factor_prime_power(q)  # validates q is a prime power
    if k <= r:
        return True
    if r == 1:
        return True
    if r == 2:
        return k <= q + 1
    if r == 3:
        return k <= q + 1 if q % 2 else k <= q + 2
    if r == 4:
        return k <= 5 if q <= 3 else k <= q + 1
    if r == 5:
        if q == 4:
            return k <= 6
        if q >= 5:
            return k <= q + 1
        return None
    return None


def exhaustive_u24_check(q: int) -> bool:
    """Do four pairwise-independent projective points of F_q^2 exist?

    Checked by exhaustive enumeration over all 4-point combinations;
    intended for small orders only.
    """
    if q > 9:
        raise ValueError(f"exhaustive check is limited to q <= 9, got {q}")
    field = GF(q)
    points = projective_points(field, 2)
    for quad in combinations(points, 4):
        if all(
            field.sub(field.mul(a[0], b[1]), field.mul(a[1], b[0])) != 0
            for a, b in combinations(quad, 2)
        ):
            return True
    return False


def classify(
    u: int,
    wants: WantsCollection,
    field: GF,
    budget: int = DEFAULT_BUDGET,
    u_max: int | None = None,
) -> CaseLabel:
    """Relate an achieved row count to w_max and the brute-force optimum."""
    wmax = wants.wmax
    if u < wmax:
        raise ValueError(f"row count {u} below the lower bound {wmax}")
    if u == wmax:
        return CaseLabel.PERFECT
    uq = brute_force_uq(wants, field, u_max=u_max, budget=budget)
    if uq is None:
        return CaseLabel.UNKNOWN
    if uq == wmax:
        return CaseLabel.MISSED_PERFECT
    if u == uq:
        return CaseLabel.NO_PERFECT
    return CaseLabel.SUBOPTIMAL
