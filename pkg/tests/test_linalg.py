
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import leibniz_det
from modinv import linalg
from modinv.field import GF


def random_matrix(F, rng, rows, cols):
    return rng.integers(0, F.q, size=(rows, cols))


@pytest.mark.parametrize("pe", [(2, 1), (3, 1), (2, 4), (3, 2), (7, 1)])
def test_nullspace_is_kernel_and_rank_nullity(pe, rng):
    F = GF(*pe)
    for _ in range(20):
        M = random_matrix(F, rng, 4, 6)
        N = linalg.nullspace(F, M)
        assert len(N) == 6 - linalg.rank(F, M)
        for v in N:
            assert not linalg.matmul(F, M, v.reshape(-1, 1)).any()


def test_rref_is_canonical(rng):
    F = GF(3, 2)
    M = random_matrix(F, rng, 3, 5)
    R, piv = linalg.rref(F, M)
    R2, piv2 = linalg.rref(F, R)
    assert np.array_equal(R, R2) and piv == piv2
    # row operations do not change the reduced form
    E = np.array([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    assert np.array_equal(linalg.rref(F, linalg.matmul(F, E, M))[0], R)


def test_left_nullspace(rng):
    F = GF(5)
    M = random_matrix(F, rng, 5, 3)
    for v in linalg.left_nullspace(F, M):
        assert not linalg.matmul(F, v.reshape(1, -1), M).any()


@pytest.mark.parametrize("pe", [(2, 4), (3, 2), (5, 1)])
def test_charpoly_matches_permutation_expansion(pe, rng):
    F = GF(*pe)
    for n in (1, 2, 3, 4):
        M = random_matrix(F, rng, n, n)
        cp = linalg.charpoly(F, M)
        for t in range(F.q):
            value = 0
            for c in reversed(cp):
                value = F.add(F.mul(value, t), c)
            tI_M = [[F.sub(t if i == j else 0, int(M[i, j])) for j in range(n)] for i in range(n)]
            assert value == leibniz_det(F, tI_M)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(2, 1), (2, 4), (3, 2), (5, 1), (7, 1)]), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_berkowitz_agrees_with_hessenberg(pe, n, seed):
    F = GF(*pe)
    M = np.random.default_rng(seed).integers(0, F.q, size=(n, n))
    entries = [[F.element(int(c)) for c in row] for row in M]
    b = linalg.berkowitz(entries, F.element(0), F.element(1))
    h = linalg.charpoly(F, M)
    assert [int(c) for c in b] == h[::-1]


def test_in_span_and_lincomb():
    F = GF(3)
    rows = np.array([[1, 0, 1], [0, 1, 1]])
    assert linalg.in_span(F, np.array([1, 1, 2]), rows)
    assert not linalg.in_span(F, np.array([0, 0, 1]), rows)
    assert np.array_equal(linalg.lincomb(F, [2, 1], list(rows)), [2, 1, 0])


def test_matpow(rng):
    F = GF(2, 3)
    A = random_matrix(F, rng, 3, 3)
    expected = np.eye(3, dtype=np.int64)
    for k in range(6):
        assert np.array_equal(linalg.matpow(F, A, k), expected)
        expected = linalg.matmul(F, expected, A)
