"""Finite fields F_p and F_{p^e} with table-driven arithmetic.

An element of F_{p^e} is stored as an integer code ``sum(c_i * p**i)`` where
``c_0 + c_1 t + ... + c_{e-1} t^{e-1}`` is its residue modulo the defining
polynomial. Codes ``0..p-1`` are exactly the prime subfield, so an ``F_p``
value can be used unchanged as an element of any extension.

All arithmetic goes through precomputed ``q x q`` tables, which index equally
well with Python ints and with numpy arrays; the latter is what the dense
linear algebra in :mod:`modinv.linalg` relies on.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

MAX_PRIME = 7
MAX_ORDER = 4096


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


# -- dense univariate helpers over F_p (coefficient lists, lowest degree first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _upoly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _upoly_mod(out, m, p)


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _upoly_mod(list(modulus), divisor, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``e``, ordered by its integer code.

    Coefficients are returned lowest degree first, leading 1 included.
    """
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        candidate = tuple(low) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise FieldError(f"no irreducible of degree {e} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldDescriptor:
    """The field F_{p^e}; build instances with :func:`GF`."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not is_prime(self.p) or self.p > MAX_PRIME:
            raise FieldError(f"characteristic must be a prime <= {MAX_PRIME}, got {self.p}")
        if self.e < 1:
            raise FieldError("extension degree must be >= 1")
        if self.p**self.e > MAX_ORDER:
            raise FieldError(f"field order {self.p}^{self.e} exceeds {MAX_ORDER}")
        if self.e > 1:
            if self.modulus is None:
                object.__setattr__(self, "modulus", smallest_irreducible(self.p, self.e))
            elif len(self.modulus) != self.e + 1 or not is_irreducible(self.modulus, self.p):
                raise FieldError(f"modulus {self.modulus} is not irreducible of degree {self.e}")

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- tables -------------------------------------------------------------

    def _digits(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.e)]

    def _code(self, digits) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q, p = self.q, self.p
        if self.e == 1:
            mulmod = lambda a, b: a * b % p  # noqa: E731
        else:
            modulus = list(self.modulus)

            def mulmod(a, b):
                prod = _upoly_mulmod(self._digits(a), self._digits(b), modulus, p)
                return self._code(prod)

        # find a generator of the multiplicative group
        for g in range(2 if q > 2 else 1, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = mulmod(x, g)
            if len(exp) == q - 1:
                break
        exp_arr = np.array(exp, dtype=np.int64)
        log_arr = np.zeros(q, dtype=np.int64)
        log_arr[exp_arr] = np.arange(q - 1)
        return exp_arr, log_arr

    @cached_property
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        digits = np.array([self._digits(c) for c in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.e, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        return (summed @ weights).astype(np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        digits = np.array([self._digits(c) for c in range(self.q)], dtype=np.int64)
        weights = self.p ** np.arange(self.e, dtype=np.int64)
        return ((-digits % self.p) @ weights).astype(np.int32)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        exp, log = self._exp_log
        logs = (log[:, None] + log[None, :]) % (q - 1)
        table = exp[logs].astype(np.int32)
        table[0, :] = 0
        table[:, 0] = 0
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        q = self.q
        exp, log = self._exp_log
        inv = np.zeros(q, dtype=np.int32)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        return inv

    # -- scalar and vectorized operations on codes -----------------------------

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def power(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            return 0
        exp, log = self._exp_log
        return int(exp[(int(log[a]) * k) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q."""
        return n % self.p

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.e:
                raise FieldError("coefficient vector has wrong length")
            return FieldElement(self, self._code([v % self.p for v in value]))
        return FieldElement(self, int(value) % self.q)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, c) for c in range(self.q)]

    def contains_code(self, code: int) -> bool:
        return 0 <= code < self.q


@lru_cache(maxsize=None)
def GF(p: int, e: int = 1) -> FieldDescriptor:
    """Cached field constructor; the modulus is the smallest irreducible."""
    return FieldDescriptor(p, e)


@dataclass(frozen=True)
class FieldElement:
    """A value in F_{p^e}: its field plus integer code."""

    field: FieldDescriptor
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.code))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("mixed fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.add(self.code, b)))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.sub(self.code, b)))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.sub(b, self.code)))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, int(self.field.mul(self.code, b)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.code)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.inv(self.code)))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.field, b).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.field, self.field.power(self.code, k))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"{self.code}@{self.field!r}"


def stream_rng(seed: int, stream: str | int = 0) -> np.random.Generator:
    """Independent generator for ``(seed, stream)``.

    Streams are named so that adding a new consumer never shifts the draws
    seen by existing ones.
    """
    if isinstance(stream, str):
        stream = zlib.crc32(stream.encode())
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(stream)]))


def extension_sample(
    field: FieldDescriptor, seed: int, count: int, dim: int = 1, stream: str | int = 0
) -> list[tuple[FieldElement, ...]]:
    """``count`` uniformly random vectors in ``field**dim``, reproducible from ``seed``."""
    if count <= 0:
        return []
    codes = stream_rng(seed, stream).integers(0, field.q, size=(count, dim))
    return [tuple(FieldElement(field, int(c)) for c in row) for row in codes]
