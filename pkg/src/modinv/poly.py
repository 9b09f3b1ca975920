"""Sparse multivariate polynomials over F_p, optionally modulo monomial relations.

A :class:`PolyRing` is ``F_p[x_1..x_N] / (m_1, ..., m_r)`` for monomials
``m_k``; with no relations it is the polynomial ring, and
:func:`TruncatedAlgebra` gives ``B_n = F_p[x_1..x_n]/(x_i^p)``.

Text format: terms joined by ``" + "`` in descending graded-lex order, each
``c*x1^e1*x2^e2`` with unit exponents and zero-exponent factors dropped,
for example ``2*x1^3*x2 + 1*x2^2 + 1``.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .field import FieldDescriptor, GF, is_prime

Monomial = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


def grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d``, ascending graded-lex."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for cut in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for c in cut:
            exps.append(c - prev - 1)
            prev = c
        exps.append(d + nvars - 1 - prev - 1)
        out.append(tuple(exps))
    return sorted(out)


@dataclass(frozen=True)
class PolyRing:
    nvars: int
    p: int
    relations: tuple[Monomial, ...] = ()
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for r in self.relations:
            if len(r) != self.nvars:
                raise DimensionMismatch("relation has wrong number of variables")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.nvars)))
        elif len(self.names) != self.nvars:
            raise DimensionMismatch("wrong number of variable names")

    @cached_property
    def _bounds(self) -> tuple[int, ...] | None:
        """Per-variable exponent bounds when every relation is a pure power."""
        bounds = [None] * self.nvars
        for r in self.relations:
            support = [i for i, a in enumerate(r) if a]
            if len(support) != 1:
                return None
            i = support[0]
            bounds[i] = r[i] if bounds[i] is None else min(bounds[i], r[i])
        if any(b is None for b in bounds) and self.relations:
            return None
        return tuple(bounds) if self.relations else None

    @property
    def is_truncated(self) -> bool:
        return self._bounds is not None and all(b == self.p for b in self._bounds)

    @property
    def is_finite(self) -> bool:
        covered = set()
        for r in self.relations:
            support = [i for i, a in enumerate(r) if a]
            if len(support) == 1:
                covered.add(support[0])
        return len(covered) == self.nvars

    @property
    def field(self) -> FieldDescriptor:
        return GF(self.p)

    def reduces_to_zero(self, m: Monomial) -> bool:
        bounds = self._bounds
        if bounds is not None:
            return any(a >= b for a, b in zip(m, bounds))
        return any(all(a >= r for a, r in zip(m, rel)) for rel in self.relations)

    def with_names(self, names: Sequence[str]) -> PolyRing:
        return PolyRing(self.nvars, self.p, self.relations, tuple(names))

    # -- constructors --------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i: int) -> Polynomial:
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(m): c})

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise DimensionMismatch("polynomial from a different ring")
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return parse_polynomial(self, value)
        raise TypeError(f"cannot convert {type(value).__name__} to a polynomial")

    # -- monomial bases ---------------------------------------------------------

    def monomials(self, d: int) -> list[Monomial]:
        """Nonzero monomials of degree ``d`` in ascending graded-lex order."""
        return [m for m in monomials_of_degree(self.nvars, d) if not self.reduces_to_zero(m)]

    def max_degree(self) -> int | None:
        """Top degree of a finite-dimensional quotient, else None."""
        if not self.is_finite:
            return None
        d = 0
        while self.monomials(d + 1):
            d += 1
        # monomial ideals can have gaps only if relations are not pure powers
        return d

    def basis(self) -> list[Monomial]:
        top = self.max_degree()
        if top is None:
            raise ValueError("ring is infinite dimensional")
        return [m for d in range(top + 1) for m in self.monomials(d)]

    @property
    def dimension(self) -> int:
        return len(self.basis())


def TruncatedAlgebra(n: int, p: int, names: Sequence[str] | None = None) -> PolyRing:
    """``B_n = F_p[x_1..x_n]/(x_1^p, ..., x_n^p)``, of dimension ``p**n``."""
    rels = tuple(tuple(p if j == i else 0 for j in range(n)) for i in range(n))
    return PolyRing(n, p, rels, tuple(names) if names else None)


class Polynomial:
    """Immutable sparse polynomial: a map from exponent vectors to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int], *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms)
        else:
            p = ring.p
            clean = {}
            for m, c in terms.items():
                c %= p
                if c and not ring.reduces_to_zero(m):
                    clean[tuple(m)] = c
            self.terms = clean
        self._hash = None

    # -- basic protocol -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DimensionMismatch(
                    f"ring mismatch: {self.ring.nvars} vs {other.ring.nvars} variables"
                )
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.const(int(other))
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        p = self.ring.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = (terms.get(m, 0) + c) % p
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.ring, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, np.integer)):
            c = int(other) % self.ring.p
            if not c:
                return self.ring.zero()
            return Polynomial(
                self.ring, {m: v * c % self.ring.p for m, v in self.terms.items()}, _clean=True
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        other = self._coerce(other)
        ring = self.ring
        p = ring.p
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if ring.relations and ring.reduces_to_zero(m):
                    continue
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(ring, {m: c for m, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- queries ----------------------------------------------------------------

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=descending)

    def leading_monomial(self) -> Monomial | None:
        if not self.terms:
            return None
        return max(self.terms, key=grlex_key)

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d}, _clean=True)

    def diff(self, i: int) -> Polynomial:
        """Formal partial derivative with respect to variable ``i``."""
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            a = m[i]
            if a % p:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = a * c % p
        return Polynomial(self.ring, out, _clean=True)

    def map_coefficients_to(self, ring: PolyRing) -> Polynomial:
        if ring.nvars != self.ring.nvars or ring.p != self.ring.p:
            raise DimensionMismatch("incompatible rings")
        return Polynomial(ring, self.terms)

    def evaluate(self, F: FieldDescriptor, point: Sequence[int]) -> int:
        """Value at a point of ``F**N`` given by element codes."""
        if len(point) != self.ring.nvars:
            raise DimensionMismatch("point has wrong dimension")
        if F.p != self.ring.p:
            raise ValueError("field characteristic differs from the ring's")
        point = [int(x) for x in point]
        powers: dict[tuple[int, int], int] = {}
        total = 0
        for m, c in self.terms.items():
            val = c
            for i, a in enumerate(m):
                if a:
                    key = (i, a)
                    if key not in powers:
                        powers[key] = F.power(point[i], a)
                    val = int(F.mul_table[val, powers[key]])
                    if not val:
                        break
            total = int(F.add_table[total, val])
        return total

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Image under the algebra map sending ``x_i`` to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise DimensionMismatch("need one image per variable")
        target = images[0].ring if images else self.ring
        result = target.zero()
        cache: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(m):
                if a:
                    if (i, a) not in cache:
                        cache[(i, a)] = images[i] ** a
                    term = term * cache[(i, a)]
            result = result + term
        return result

    def vector(self, basis_index: Mapping[Monomial, int], size: int) -> np.ndarray:
        v = np.zeros(size, dtype=np.int64)
        for m, c in self.terms.items():
            v[basis_index[m]] = c
        return v


def frobenius_power(f: Polynomial) -> Polynomial:
    """``f**p`` computed termwise: over F_p, ``(sum c m)^p = sum c m^p``."""
    p = f.ring.p
    return Polynomial(f.ring, {tuple(a * p for a in m): c for m, c in f.terms.items()})


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring.nvars != b.ring.nvars:
        raise DimensionMismatch(f"{a.ring.nvars} vs {b.ring.nvars} variables")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def from_vector(ring: PolyRing, monomials: Sequence[Monomial], v: Iterable[int]) -> Polynomial:
    return Polynomial(ring, {m: int(c) for m, c in zip(monomials, v) if c})


# -- text format ----------------------------------------------------------------


def format_monomial(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for name, a in zip(ring.names, m):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = format_monomial(f.ring, m)
        out.append(f"{c}*{mono}" if mono else f"{c}")
    return " + ".join(out)


_TERM_SPLIT = re.compile(r"([+-])")


class ParseError(ValueError):
    pass


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial`; tolerant of spacing, signs and implicit 1s."""
    index = {name: i for i, name in enumerate(ring.names)}
    s = "".join(text.split())
    if not s:
        raise ParseError("empty polynomial")
    pieces = _TERM_SPLIT.split(s)
    sign = 1
    terms: dict[Monomial, int] = {}
    expect_term = True
    for piece in pieces:
        if piece in "+-" and piece:
            if piece == "-":
                sign = -sign
            expect_term = True
            continue
        if not piece:
            continue
        if not expect_term:
            raise ParseError(f"missing operator before {piece!r}")
        coeff = sign
        exps = [0] * ring.nvars
        for factor in piece.split("*"):
            if not factor:
                raise ParseError(f"empty factor in {piece!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in index:
                raise ParseError(f"unknown variable {name!r}")
            if power and not power.isdigit():
                raise ParseError(f"bad exponent in {factor!r}")
            exps[index[name]] += int(power) if power else 1
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError("dangling operator")
    return Polynomial(ring, terms)


def iter_dense(ring: PolyRing, max_degree: int) -> Iterator[Monomial]:
    for d in range(max_degree + 1):
        yield from ring.monomials(d)
