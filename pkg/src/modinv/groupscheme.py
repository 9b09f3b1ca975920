"""Height-one group schemes through restricted enveloping algebras ``u(g)``.

``u(g)`` has the PBW basis ``e_1^a_1 ... e_m^a_m`` with ``0 <= a_i < p``.
Products are normal-ordered with ``e_k e_j = e_j e_k + [e_k, e_j]`` for
``j < k`` and ``e_j^p = e_j^[p]``; each rewrite lowers either the filtration
degree or the number of out-of-order pairs, so straightening terminates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg
from .derivations import RestrictedLieAlgebra
from .errors import BudgetError, PreconditionError
from .field import stream_rng

FULL_TABLE_MAX = 81
ASSOC_SAMPLES = 2000


@dataclass(frozen=True, eq=False)
class EnvelopingAlgebra:
    g: RestrictedLieAlgebra
    basis: tuple[tuple[int, ...], ...]
    table: np.ndarray = field(repr=False)

    @property
    def p(self) -> int:
        return self.g.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, a: tuple[int, ...]) -> int:
        return _pbw_index(a, self.p)

    def unit(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    def from_lie(self, u) -> np.ndarray:
        """Image of ``sum u_i e_i`` (degree-one PBW part)."""
        v = np.zeros(self.dim, dtype=np.int64)
        for i, c in enumerate(u):
            a = [0] * self.g.dim
            a[i] = 1
            v[self.index(tuple(a))] = int(c) % self.p
        return v

    def to_lie(self, v) -> np.ndarray | None:
        """Inverse of :meth:`from_lie`; None if ``v`` is not in degree one."""
        m = self.g.dim
        ones = [self.index(tuple(1 if j == i else 0 for j in range(m))) for i in range(m)]
        rest = np.array(v, dtype=np.int64, copy=True)
        rest[ones] = 0
        if rest.any():
            return None
        return np.asarray(v, dtype=np.int64)[ones] % self.p

    def mul(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("a,b,abc->c", u, v, self.table) % self.p

    def power(self, u, k: int) -> np.ndarray:
        result = self.unit()
        for _ in range(k):
            result = self.mul(result, u)
        return result

    def pmap_of(self, u) -> np.ndarray:
        """``x^[p]`` for ``x = sum u_i e_i`` read off from ``x^p`` in ``u(g)``."""
        out = self.to_lie(self.power(self.from_lie(u), self.p))
        if out is None:
            raise ArithmeticError("x^p left the degree-one part of u(g)")
        return out

    def is_commutative(self) -> bool:
        return np.array_equal(self.table, self.table.transpose(1, 0, 2))


def _pbw_index(a, p: int) -> int:
    idx = 0
    for x in a:
        idx = idx * p + x
    return idx


def _straighten(g: RestrictedLieAlgebra):
    p, m = g.p, g.dim
    c = g.brackets
    pm = g.pmap

    def add_into(acc: dict, vec: dict, scale: int):
        for key, val in vec.items():
            s = (acc.get(key, 0) + scale * val) % p
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)

    @lru_cache(maxsize=None)
    def mul_gen(a: tuple[int, ...], j: int) -> dict:
        """PBW expansion of ``e^a * e_j``."""
        support = [k for k in range(m) if a[k]]
        top = support[-1] if support else -1
        if top <= j:
            if a[j] + 1 < p:
                b = list(a)
                b[j] += 1
                return {tuple(b): 1}
            prefix = list(a)
            prefix[j] = 0
            prefix = tuple(prefix)
            out: dict = {}
            for ell in range(m):
                if pm[j, ell]:
                    add_into(out, mul_gen(prefix, ell), int(pm[j, ell]))
            if not pm[j].any():
                return {}
            return out
        k = top
        lowered = list(a)
        lowered[k] -= 1
        lowered = tuple(lowered)
        out = {}
        for b, coef in mul_gen(lowered, j).items():
            add_into(out, mul_gen(b, k), coef)
        for ell in range(m):
            if c[k, j, ell]:
                add_into(out, mul_gen(lowered, ell), int(c[k, j, ell]))
        return out

    @lru_cache(maxsize=None)
    def mul_basis(a: tuple[int, ...], b: tuple[int, ...]) -> dict:
        support = [k for k in range(m) if b[k]]
        if not support:
            return {a: 1}
        k = support[-1]
        lowered = list(b)
        lowered[k] -= 1
        out: dict = {}
        for cc, coef in mul_basis(a, tuple(lowered)).items():
            add_into(out, mul_gen(cc, k), coef)
        return out

    return mul_basis


def build_enveloping(g: RestrictedLieAlgebra, verify: bool = True) -> EnvelopingAlgebra:
    p, m = g.p, g.dim
    P = p**m
    if P > FULL_TABLE_MAX:
        raise BudgetError(f"u(g) has dimension {P} > {FULL_TABLE_MAX}")
    basis = tuple(itertools.product(range(p), repeat=m))
    mul_basis = _straighten(g)
    table = np.zeros((P, P, P), dtype=np.int64)
    for ia, a in enumerate(basis):
        for ib, b in enumerate(basis):
            for cc, coef in mul_basis(a, b).items():
                table[ia, ib, _pbw_index(cc, p)] = coef
    u = EnvelopingAlgebra(g, basis, table)
    if verify:
        problem = check_enveloping(u)
        if problem:
            raise ArithmeticError(problem)
    return u


def check_enveloping(u: EnvelopingAlgebra, seed: int = 0) -> str:
    """Empty string if ``u`` is associative and contains ``g`` correctly."""
    p, P, T = u.p, u.dim, u.table
    if P <= FULL_TABLE_MAX:
        Tf = T.astype(np.float64)
        flat = Tf.reshape(P * P, P)
        for a in range(P):
            left = (Tf[a] @ Tf.reshape(P, P * P)).reshape(P, P, P)  # (e_a e_b) e_c
            right = (flat @ Tf[a]).reshape(P, P, P)  # e_a (e_b e_c)
            if not np.array_equal(np.mod(left, p), np.mod(right, p)):
                return f"associativity fails for left factor {u.basis[a]}"
    else:
        rng = stream_rng(seed, "assoc")
        for a, b, c in rng.integers(0, P, size=(ASSOC_SAMPLES, 3)):
            ea, eb, ec = (np.eye(P, dtype=np.int64)[i] for i in (a, b, c))
            if not np.array_equal(u.mul(u.mul(ea, eb), ec), u.mul(ea, u.mul(eb, ec))):
                return f"associativity fails on basis triple {(a, b, c)}"
    g = u.g
    gens = [u.from_lie(np.eye(g.dim, dtype=np.int64)[i]) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(g.dim):
            comm = (u.mul(gens[i], gens[j]) - u.mul(gens[j], gens[i])) % p
            if not np.array_equal(comm, u.from_lie(g.brackets[i, j])):
                return f"e{i} e{j} - e{j} e{i} != [e{i}, e{j}]"
        if not np.array_equal(u.power(gens[i], p), u.from_lie(g.pmap[i])):
            return f"e{i}^p != e{i}^[p]"
    return ""


def _require_subalgebra(g: RestrictedLieAlgebra, h) -> np.ndarray:
    h = np.asarray(h, dtype=np.int64).reshape(-1, g.dim) % g.p
    if len(h):
        h = linalg.rref(g.field, h)[0]
    try:
        g.subalgebra(h)
    except ValueError as exc:
        raise PreconditionError(f"not a restricted subalgebra: {exc}") from None
    return h


def _ideal_rank(u: EnvelopingAlgebra, h: np.ndarray, side: str) -> int:
    P = u.dim
    eye = np.eye(P, dtype=np.int64)
    rows = []
    for vec in h:
        x = u.from_lie(vec)
        for a in range(P):
            rows.append(u.mul(eye[a], x) if side == "left" else u.mul(x, eye[a]))
    if not rows:
        return 0
    return linalg.rank(u.g.field, np.array(rows))


def subgroup_index(g: RestrictedLieAlgebra, h) -> int:
    """``dim u(g) / u(g) h``; equals ``p^(dim g - dim h)``."""
    h = _require_subalgebra(g, h)
    u = build_enveloping(g)
    index = u.dim - _ideal_rank(u, h, "left")
    expected = g.p ** (g.dim - len(h))
    if index != expected:
        raise ArithmeticError(f"index {index} != p^codim = {expected}")
    return index


def induced_dimension(g: RestrictedLieAlgebra, h, dimV: int) -> int:
    return subgroup_index(g, h) * dimV


def induced_dimension_oracle(g: RestrictedLieAlgebra, h, dimV: int) -> int:
    """Dimension of ``Hom_{u(h)}(u(g), V)`` for trivial ``V`` by solving its defining system.

    Unknowns are the ``dim u(g) * dimV`` entries of a linear map
    ``phi: u(g) -> V``; constraints say ``phi(y w) = 0`` for ``y`` in ``h``.
    """
    h = _require_subalgebra(g, h)
    u = build_enveloping(g)
    P = u.dim
    if dimV == 0:
        return 0
    eye = np.eye(P, dtype=np.int64)
    rows = [u.mul(u.from_lie(vec), eye[a]) for vec in h for a in range(P)]
    if not rows:
        return P * dimV
    system = np.kron(np.array(rows), np.eye(dimV, dtype=np.int64))
    return P * dimV - linalg.rank(g.field, system)


def is_torus(g: RestrictedLieAlgebra) -> bool:
    """Abelian, and each basis vector lies in the span of its iterated p-th powers."""
    if not g.is_abelian():
        return False
    F = g.field
    for i in range(g.dim):
        b = np.eye(g.dim, dtype=np.int64)[i]
        powers = []
        cur = b
        for _ in range(g.dim):
            cur = g.pmap_vec(cur)
            powers.append(cur)
        if not linalg.in_span(F, b, np.array(powers)):
            return False
    return True


def semisimplicity_oracle(u: EnvelopingAlgebra) -> bool:
    """For commutative ``u(g)``: semisimple iff reduced iff Frobenius is injective."""
    if not u.g.is_abelian():
        return False
    eye = np.eye(u.dim, dtype=np.int64)
    frob = np.array([u.power(eye[a], u.p) for a in range(u.dim)])
    return linalg.rank(u.g.field, frob) == u.dim
