import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import NaiveField, irreducible_by_products, least_irreducible_by_enumeration
from rrnetcode.gf import (
    FieldError,
    FieldSpec,
    decode,
    encode,
    field_enumerate,
    field_make,
    field_of_size,
    is_irreducible,
    prime_power,
)

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


def test_prime_field_f2():
    F = field_make(2, 1)
    assert F.q == 2 and F.m == 1
    assert [encode(a) for a in F.elements()] == [0, 1]


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (2, 4), (3, 3), (5, 2)])
def test_default_modulus_is_least_irreducible(p, m):
    assert field_make(p, m).modulus == least_irreducible_by_enumeration(p, m)


def test_default_moduli_values():
    assert field_make(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1
    assert field_make(3, 2).modulus == (1, 0, 1)  # x^2 + 1


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_irreducibility_agrees_with_factor_enumeration(p, m):
    for coeffs in itertools.product(range(p), repeat=m):
        poly = tuple(coeffs) + (1,)
        assert is_irreducible(poly, p) == irreducible_by_products(poly, p)


def test_f4_omega_times_omega_plus_one(f4):
    w = f4(2)
    assert w * (w + 1) == f4.one


def test_f9_i_squared(f9):
    i = f9(3)  # coordinates (0, 1)
    assert i.coeffs == (0, 1)
    assert i * i == f9(2)


@pytest.mark.parametrize("p,m", SMALL)
def test_tables_match_naive_arithmetic(p, m):
    F = field_make(p, m)
    N = NaiveField(p, F.modulus)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul_t[a, b] == N.mul(a, b)
            assert F.add_t[a, b] == N.add(a, b)
            assert F.sub_t[a, b] == N.sub(a, b)


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms_exhaustive(p, m):
    F = field_make(p, m)
    q = F.q
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    add, mul = F.add_t, F.mul_t
    assert np.array_equal(add[add[a, b], c], add[a, add[b, c]])
    assert np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]])
    assert np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]])
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    x = np.arange(q)
    assert np.array_equal(add[x, 0], x) and np.array_equal(mul[x, 1], x)
    assert np.all(add[x, F.neg_t[x]] == 0)
    assert np.all(mul[x[1:], F.inv_t[x[1:]]] == 1)


@pytest.mark.parametrize("p,m", SMALL)
def test_little_fermat(p, m):
    F = field_make(p, m)
    assert all(a ** (F.q - 1) == F.one for a in F.elements()[1:])


def test_enumerate_order_and_distinct(f4, f9):
    assert [a.coeffs for a in field_enumerate(f4)] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    els = field_enumerate(f9)
    assert len(els) == 9 and len({a.value for a in els}) == 9


def test_encode_convention(f4):
    w = f4([0, 1])
    assert encode(w) == 2
    assert encode(w + 1) == 3
    assert encode(f4.zero) == 0


@pytest.mark.parametrize("p,m", SMALL)
def test_encode_decode_roundtrip(p, m):
    F = field_make(p, m)
    for a in F.elements():
        assert decode(F, encode(a)) == a
        assert F(list(a.coeffs)) == a


def test_decode_out_of_range(f4):
    with pytest.raises(FieldError):
        decode(f4, 4)


def test_errors():
    with pytest.raises(FieldError):
        field_make(4, 1)
    with pytest.raises(FieldError):
        field_make(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F_2
    with pytest.raises(FieldError):
        field_make(2, 2, (1, 1))
    with pytest.raises(FieldError):
        field_make(3, 5)  # 243 > desk limit
    with pytest.raises(FieldError):
        prime_power(12)


def test_mixed_fields_rejected(f4, f9):
    with pytest.raises(FieldError):
        f4.one + f9.one


def test_division(f9):
    with pytest.raises(ZeroDivisionError):
        f9.one / f9.zero
    for a in f9.elements()[1:]:
        assert a / a == f9.one


def test_fieldspec_json_roundtrip(f9):
    assert FieldSpec.from_json(f9.to_json()) == f9
    assert field_of_size(9) == f9


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_f16_distributes(a, b, c):
    F = field_make(2, 4)
    x, y, z = F(a), F(b), F(c)
    assert x * (y - z) == x * y - x * z
