"""Exact arithmetic in small finite fields GF(p^m).

Elements are canonical integers in [0, q).  For a prime field the integer
is the residue mod p.  For an extension field it encodes the coefficient
vector of a polynomial of degree < m over F_p as base-p digits
(little-endian), so for p = 2 this is the familiar bit encoding: in
GF(8), 6 = 0b110 means x^2 + x.

Prime fields compute directly mod p and need no tables.  Extension
fields precompute log/antilog tables over a primitive element at
construction time, which is cheap at the orders used here.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

# Default reduction polynomials, base-p digit encoding, monic:
#   GF(4): x^2+x+1   GF(8): x^3+x+1   GF(9): x^2+1   GF(16): x^4+x+1
DEFAULT_POLYNOMIALS = {4: 0b111, 8: 0b1011, 9: 10, 16: 0b10011}

# Field orders guaranteed to construct without an explicit polynomial.
SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9, 16)

_MAX_ORDER = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, m) with q = p^m and p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"field order must be at least 2, got {q}")
    p = 2
    while p * p <= q and q % p != 0:
        p += 1
    if q % p != 0:
        p = q  # q itself is prime
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1 or not _is_prime(p):
        raise ValueError(f"{q} is not a prime power, so there is no field of that order")
    return p, m


def _digits(value: int, p: int) -> list[int]:
    """Base-p digits of value, little-endian, no trailing zeros."""
    if value == 0:
        return []
    out = []
    while value:
        value, d = divmod(value, p)
        out.append(d)
    return out


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of polynomial division over F_p (digit lists, little-endian)."""
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        factor = (num[-1] * inv_lead) % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
    while num and num[-1] == 0:
        num.pop()
    return num


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return out


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=d):
            candidate = list(tail) + [1]
            if not _poly_mod(poly, candidate, p):
                return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """A finite field of order q = p^m with canonical integer encoding.

    Scalar operations validate their operands; the *_arr variants work on
    numpy integer arrays without validation and exist for the matrix code.
    """

    def __init__(self, q: int, reduction_poly: int | None = None):
        p, m = _factor_prime_power(q)
        if q > _MAX_ORDER:
            raise ValueError(f"field orders above {_MAX_ORDER} are not supported")
        self.q = q
        self.p = p
        self.m = m
        if m == 1:
            if reduction_poly is not None:
                raise ValueError("a reduction polynomial only applies to extension fields")
            self.poly = None
        else:
            if reduction_poly is None:
                try:
                    reduction_poly = DEFAULT_POLYNOMIALS[q]
                except KeyError:
                    raise ValueError(
                        f"no default reduction polynomial for GF({q}); pass one explicitly"
                    ) from None
            digits = _digits(reduction_poly, p)
            if len(digits) != m + 1 or digits[-1] != 1:
                raise ValueError(
                    f"reduction polynomial {reduction_poly} is not monic of degree {m} over F_{p}"
                )
            if not _is_irreducible(digits, p):
                raise ValueError(
                    f"reduction polynomial {reduction_poly} is reducible over F_{p}"
                )
            self.poly = reduction_poly
            self._poly_digits = digits
            self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(_digits(a, self.p), _digits(b, self.p), self.p)
        rem = _poly_mod(prod, self._poly_digits, self.p)
        return sum(c * self.p**i for i, c in enumerate(rem))

    def _raw_pow(self, base: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._raw_mul(out, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return out

    def _build_tables(self) -> None:
        q = self.q
        factors = _prime_factors(q - 1)
        gen = None
        for g in range(2, q):
            if all(self._raw_pow(g, (q - 1) // f) != 1 for f in factors):
                gen = g
                break
        if gen is None:  # pragma: no cover - every field has a generator
            raise RuntimeError(f"no primitive element found for GF({q})")
        self.generator = gen
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self._raw_mul(acc, gen)
        self._exp = exp
        self._log = log
        self._exp_arr = np.array(exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)
        if self.p == 2:
            self._neg_table = None
            self._add_table = None
        else:
            neg = [self._digit_neg(v) for v in range(q)]
            self._neg_table = neg
            self._neg_arr_table = np.array(neg, dtype=np.int64)
            if q <= 1024:
                table = np.zeros((q, q), dtype=np.int64)
                for a in range(q):
                    for b in range(q):
                        table[a, b] = self._digit_add(a, b)
                self._add_table = table
            else:
                self._add_table = None

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        out, shift = 0, 1
        for _ in range(self.m):
            out += ((a % p + b % p) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def _digit_neg(self, a: int) -> int:
        p = self.p
        out, shift = 0, 1
        for _ in range(self.m):
            out += ((p - a % p) % p) * shift
            a //= p
            shift *= p
        return out

    # -- scalar operations ----------------------------------------------------

    def _check(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.q:
            raise ValueError(f"{v} is not a canonical element of {self!r}")
        return v

    def add(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        a = self._check(a)
        if self.m == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return a
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        a, b = self._check(a), self._check(b)
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        a = self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no multiplicative inverse in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def neg_one(self) -> int:
        """The additive inverse of 1: equals 1 in characteristic 2, else p - 1."""
        return self.neg(1)

    def elements(self) -> range:
        return range(self.q)

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self._check(value))

    # -- vectorized operations on numpy integer arrays ------------------------

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        av, bv = np.asarray(a).copy(), np.asarray(b).copy()
        out = np.zeros_like(av + bv)
        shift = 1
        for _ in range(self.m):
            out += ((av % self.p + bv % self.p) % self.p) * shift
            av //= self.p
            bv //= self.p
            shift *= self.p
        return out

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (self.p - a) % self.p
        if self.p == 2:
            return np.asarray(a).copy()
        return self._neg_arr_table[a]

    def sub_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a * b) % self.p
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        mask = (a != 0) & (b != 0)
        if mask.any():
            idx = self._log_arr[a[mask]] + self._log_arr[b[mask]]
            out[mask] = self._exp_arr[idx]
        return out

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and self.q == other.q
            and self.poly == other.poly
        )

    def __hash__(self) -> int:
        return hash((self.q, self.poly))

    def __repr__(self) -> str:
        if self.poly is None or self.poly == DEFAULT_POLYNOMIALS.get(self.q):
            return f"GF({self.q})"
        return f"GF({self.q}, poly={self.poly})"


class FieldElement:
    """A field value bound to its field, with operator sugar.

    Mixing elements of different fields raises ValueError; plain ints are
    accepted as canonical encodings of the same field.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = field._check(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(
                    f"cannot mix elements of {self.field!r} and {other.field!r}"
                )
            return other.value
        return self.field._check(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}:{self.value}"
