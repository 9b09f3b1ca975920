import itertools

import numpy as np
import pytest

from modinv.field import GF

SMALL_FIELDS = [(p, e) for p in (2, 3, 5, 7) for e in range(1, 7) if p**e <= 81]


def naive_mulmod(a: int, b: int, p: int, modulus: tuple[int, ...]) -> int:
    """Schoolbook product of two codes in F_p[t]/(modulus); independent of the tables."""
    e = len(modulus) - 1
    da = [(a // p**i) % p for i in range(e)]
    db = [(b // p**i) % p for i in range(e)]
    prod = [0] * (2 * e)
    for i, j in itertools.product(range(e), repeat=2):
        prod[i + j] += da[i] * db[j]
    for k in range(2 * e - 1, e - 1, -1):
        c = prod[k] % p
        for i in range(e + 1):
            prod[k - e + i] -= c * modulus[i]
    return sum((prod[i] % p) * p**i for i in range(e))


def leibniz_det(F, M) -> int:
    """Determinant by the permutation expansion; only for tiny matrices."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term = F.mul(term, int(M[i][perm[i]]))
        total = F.add(total, term if sign > 0 else F.neg(term))
    return int(total)


@pytest.fixture
def gf16():
    return GF(2, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
