"""Tests for finite field arithmetic."""
from __future__ import annotations

import numpy as np
import pytest

from dlnc.gf import DEFAULT_POLYNOMIALS, SUPPORTED_ORDERS, GF, FieldElement


def naive_ext_mul(a: int, b: int, p: int, m: int, poly_digits: list[int]) -> int:
    """Schoolbook polynomial multiplication mod an irreducible polynomial.

    Elements are base-p digit encodings of polynomials over GF(p); this is an
    independent re-implementation used to cross-check the table-driven product.
    """

    def digits(x: int) -> list[int]:
        out = []
        for _ in range(2 * m):
            out.append(x % p)
            x //= p
        return out

    da, db = digits(a), digits(b)
    prod = [0] * (2 * m)
    for i in range(m):
        for j in range(m):
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    # Reduce: poly_digits has degree m with leading coefficient 1, so
    # x^m = -(lower digits).
    for deg in range(2 * m - 1, m - 1, -1):
        c = prod[deg]
        if c == 0:
            continue
        prod[deg] = 0
        for t in range(m):
            prod[deg - m + t] = (prod[deg - m + t] - c * poly_digits[t]) % p
    val = 0
    for t in reversed(range(m)):
        val = val * p + prod[t]
    return val


def test_supported_orders_construct() -> None:
    for q in SUPPORTED_ORDERS:
        field = GF(q)
        assert field.q == q
        assert len(field.elements()) == q


def test_unsupported_order_rejected() -> None:
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(1)
    with pytest.raises(ValueError):
        GF(12)


def test_reducible_polynomial_rejected() -> None:
    # x^2 + 1 factors over GF(2), so 0b101 is not a valid modulus for GF(4).
    with pytest.raises(ValueError):
        GF(4, reduction_poly=0b101)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms_exhaustive(q: int) -> None:
    field = GF(q)
    elems = list(range(q))
    for a in elems:
        assert field.add(a, 0) == a
        assert field.mul(a, 1) == a
        assert field.mul(a, 0) == 0
        assert field.add(a, field.neg(a)) == 0
        if a != 0:
            assert field.mul(a, field.inv(a)) == 1
        for b in elems:
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            for c in elems:
                assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
                assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
                assert field.mul(a, field.add(b, c)) == field.add(
                    field.mul(a, b), field.mul(a, c)
                )


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_multiplicative_order_divides_group(q: int) -> None:
    field = GF(q)
    for a in range(1, q):
        acc = 1
        for _ in range(q - 1):
            acc = field.mul(acc, a)
        assert acc == 1


def test_frozen_gf8_values() -> None:
    field = GF(8)
    # With modulus x^3 + x + 1: (x^2+x) + (x+1) = x^2 + 1.
    assert field.add(6, 3) == 5
    # x * x^2 = x^3 = x + 1.
    assert field.mul(2, 4) == 3
    # x * (x^2+1) = x^3 + x = 1.
    assert field.inv(2) == 5
    assert field.mul(2, 5) == 1


def test_frozen_gf9_values() -> None:
    field = GF(9)
    # Modulus x^2 + 1 over GF(3): x * x = x^2 = -1 = 2.
    assert field.mul(3, 3) == 2
    # (x+1)(x+2) = x^2 + 2 = 1, so inv(4) == 5.
    assert field.mul(4, 5) == 1
    assert field.inv(4) == 5


@pytest.mark.parametrize(
    "q,expected",
    [(2, 1), (3, 2), (4, 1), (5, 4), (7, 6), (8, 1), (9, 2), (16, 1)],
)
def test_neg_one(q: int, expected: int) -> None:
    field = GF(q)
    assert field.neg_one() == expected
    assert field.add(field.neg_one(), 1) == 0


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_extension_mul_against_naive_polynomial_product(q: int) -> None:
    field = GF(q)
    p = field.p
    m = field.m
    poly = field.poly
    poly_digits = []
    x = poly
    for _ in range(m):
        poly_digits.append(x % p)
        x //= p
    for a in range(q):
        for b in range(q):
            assert field.mul(a, b) == naive_ext_mul(a, b, p, m, poly_digits), (a, b)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_inverse_against_exhaustive_search(q: int) -> None:
    field = GF(q)
    for a in range(1, q):
        found = [b for b in range(1, q) if field.mul(a, b) == 1]
        assert found == [field.inv(a)]


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_sub_div_consistent(q: int) -> None:
    field = GF(q)
    for a in range(q):
        for b in range(q):
            assert field.add(field.sub(a, b), b) == a
            if b != 0:
                assert field.mul(field.div(a, b), b) == a


def test_error_cases() -> None:
    field = GF(5)
    with pytest.raises(ZeroDivisionError):
        field.inv(0)
    with pytest.raises(ZeroDivisionError):
        field.div(3, 0)
    with pytest.raises(ValueError):
        field.add(1, 5)
    with pytest.raises(ValueError):
        field.mul(-1, 2)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_array_ops_match_scalar(q: int) -> None:
    field = GF(q)
    rng = np.random.default_rng(q)
    a = rng.integers(0, q, size=200)
    b = rng.integers(0, q, size=200)
    add = field.add_arr(a, b)
    sub = field.sub_arr(a, b)
    mul = field.mul_arr(a, b)
    neg = field.neg_arr(a)
    for i in range(a.size):
        assert add[i] == field.add(int(a[i]), int(b[i]))
        assert sub[i] == field.sub(int(a[i]), int(b[i]))
        assert mul[i] == field.mul(int(a[i]), int(b[i]))
        assert neg[i] == field.neg(int(a[i]))


def test_field_equality_and_hash() -> None:
    assert GF(8) == GF(8)
    assert GF(8) == GF(8, reduction_poly=0b1011)
    assert GF(8) != GF(8, reduction_poly=0b1101)
    assert GF(4) != GF(8)
    assert len({GF(8), GF(8, reduction_poly=DEFAULT_POLYNOMIALS[8])}) == 1


def test_element_wrapper_arithmetic() -> None:
    field = GF(7)
    a = field.element(3)
    b = field.element(5)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert (a - b).value == 5
    assert (a / b).value == field.div(3, 5)
    assert (-a).value == 4
    assert a == field.element(3)
    assert a != b


def test_element_mixed_field_rejected() -> None:
    a = GF(4).element(2)
    b = GF(8).element(2)
    with pytest.raises(ValueError):
        _ = a + b
    with pytest.raises(ValueError):
        _ = a * b


def test_element_repr_mentions_field() -> None:
    e = GF(9).element(4)
    assert isinstance(e, FieldElement)
    assert "9" in repr(e)
