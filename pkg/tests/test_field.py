import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SMALL_FIELDS, naive_mulmod
from modinv.field import (
    GF,
    FieldDescriptor,
    FieldError,
    extension_sample,
    is_irreducible,
    is_prime,
    smallest_irreducible,
    stream_rng,
)


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize(
    "p,e,expected",
    [(2, 2, (1, 1, 1)), (2, 3, (1, 1, 0, 1)), (2, 4, (1, 1, 0, 0, 1)), (3, 2, (1, 0, 1)), (5, 2, (2, 0, 1))],
)
def test_smallest_irreducible(p, e, expected):
    # hand lists: x^2+x+1, x^3+x+1, x^4+x+1, x^2+1, x^2+2 (2 is a non-square mod 5)
    assert smallest_irreducible(p, e) == expected


def test_irreducibility_rejects_products():
    assert not is_irreducible((1, 0, 1), 2)  # (x+1)^2
    assert not is_irreducible((0, 1, 1), 3)  # x(x+1)
    assert is_irreducible((1, 1, 1), 2)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = GF(p, e)
    q = F.q
    A, M = F.add_table, F.mul_table
    x = np.arange(q)
    a, b, c = np.meshgrid(x, x, x, indexing="ij")
    assert np.array_equal(A[A[a, b], c], A[a, A[b, c]])
    assert np.array_equal(M[M[a, b], c], M[a, M[b, c]])
    assert np.array_equal(M[a, A[b, c]], A[M[a, b], M[a, c]])
    assert np.array_equal(A, A.T) and np.array_equal(M, M.T)
    assert np.all(A[x, F.neg_table[x]] == 0)
    assert np.all(M[x[1:], F.inv_table[x[1:]]] == 1)
    assert np.all(A[x, 0] == x) and np.all(M[x, 1] == x)


@pytest.mark.parametrize("p,e", [pe for pe in SMALL_FIELDS if pe[1] > 1])
def test_multiplication_matches_schoolbook(p, e):
    F = GF(p, e)
    for a, b in itertools.product(range(F.q), repeat=2):
        assert F.mul(a, b) == naive_mulmod(a, b, p, F.modulus)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_frobenius_is_an_automorphism(p, e):
    F = GF(p, e)
    frob = [F.power(a, p) for a in range(F.q)]
    assert sorted(frob) == list(range(F.q))
    for a, b in itertools.product(range(F.q), repeat=2):
        assert frob[F.add(a, b)] == F.add(frob[a], frob[b])
    # x^(q) = x for every element
    assert all(F.power(a, F.q) == a for a in range(F.q))


def test_multiplicative_group_is_cyclic(gf16):
    orders = {min(k for k in range(1, 16) if gf16.power(a, k) == 1) for a in range(1, 16)}
    assert 15 in orders


def test_element_arithmetic():
    F = GF(3, 2)
    a, b = F.element(4), F.element(5)
    assert int(a + b) == F.add(4, 5)
    assert int(a * b) == F.mul(4, 5)
    assert (a / b) * b == a
    assert a - a == F.element(0)
    assert int(a**8) == 1
    assert a.coeffs == (1, 1)


def test_bad_fields_rejected():
    with pytest.raises(FieldError):
        GF(4)
    with pytest.raises(FieldError):
        GF(11)
    with pytest.raises(FieldError):
        FieldDescriptor(2, 2, modulus=(1, 0, 1))
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        GF(2, 2).element(1) + GF(2, 3).element(1)


def test_extension_sample_empty_and_deterministic(gf16):
    assert extension_sample(gf16, seed=3, count=0) == []
    assert extension_sample(gf16, seed=3, count=2) == extension_sample(gf16, seed=3, count=2)
    assert extension_sample(gf16, seed=3, count=2) != extension_sample(gf16, seed=4, count=2)


def test_extension_sample_coverage_rate():
    # P(16 uniform draws cover all 4 elements of F_2^2), by inclusion-exclusion
    exact = sum((-1) ** k * [1, 4, 6, 4, 1][k] * (1 - k / 4) ** 16 for k in range(5))
    F = GF(2)
    hits = 0
    trials = 500
    for seed in range(trials):
        draws = extension_sample(F, seed=seed, count=16, dim=2)
        hits += len({tuple(int(c) for c in v) for v in draws}) == 4
    assert abs(hits / trials - exact) < 0.035
    assert exact == pytest.approx(0.9600, abs=1e-3)


def test_streams_are_independent():
    a = stream_rng(0, "alpha").integers(0, 1 << 30, size=4)
    b = stream_rng(0, "beta").integers(0, 1 << 30, size=4)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, stream_rng(0, "alpha").integers(0, 1 << 30, size=4))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_power_matches_repeated_multiplication(pe, data):
    F = GF(*pe)
    a = data.draw(st.integers(0, F.q - 1))
    k = data.draw(st.integers(0, 12))
    expected = 1
    for _ in range(k):
        expected = F.mul(expected, a)
    assert F.power(a, k) == expected
