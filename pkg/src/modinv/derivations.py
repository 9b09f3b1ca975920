"""Derivations, restricted Lie algebras and the Jacobson-Witt algebra W_n.

A derivation is stored by its images on the ring generators; everything else
(the Leibniz extension, brackets, p-th powers, matrices on ``B_n``) is derived
from those images.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import linalg
from .errors import BudgetError
from .field import GF
from .poly import DimensionMismatch, PolyRing, Polynomial, TruncatedAlgebra

MAX_TRUNCATED_DIM = 81


@dataclass(frozen=True)
class Derivation:
    ring: PolyRing
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != self.ring.nvars:
            raise DimensionMismatch("need one image per generator")
        object.__setattr__(self, "images", tuple(self.ring(f) for f in self.images))

    @classmethod
    def zero(cls, ring: PolyRing) -> Derivation:
        return cls(ring, tuple(ring.zero() for _ in range(ring.nvars)))

    @classmethod
    def partial(cls, ring: PolyRing, i: int) -> Derivation:
        return cls(ring, tuple(ring.one() if j == i else ring.zero() for j in range(ring.nvars)))

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.images)

    def _check(self, other: Derivation):
        if not isinstance(other, Derivation) or other.ring != self.ring:
            raise DimensionMismatch("derivations live on different rings")

    def __add__(self, other: Derivation) -> Derivation:
        self._check(other)
        return Derivation(self.ring, tuple(a + b for a, b in zip(self.images, other.images)))

    def __sub__(self, other: Derivation) -> Derivation:
        self._check(other)
        return Derivation(self.ring, tuple(a - b for a, b in zip(self.images, other.images)))

    def __neg__(self) -> Derivation:
        return Derivation(self.ring, tuple(-a for a in self.images))

    def __rmul__(self, f) -> Derivation:
        """``f * D`` for a scalar or a ring element ``f``."""
        if isinstance(f, Polynomial) and f.ring != self.ring:
            raise DimensionMismatch("coefficient from a different ring")
        return Derivation(self.ring, tuple(f * a for a in self.images))

    def __str__(self) -> str:
        parts = []
        for name, g in zip(self.ring.names, self.images):
            if not g.is_zero():
                parts.append(f"({g})*d/d{name}")
        return " + ".join(parts) or "0"


def apply(D: Derivation, f: Polynomial) -> Polynomial:
    """Leibniz extension: ``D(x^a) = sum_i a_i x^(a - e_i) D(x_i)``."""
    ring = D.ring
    if f.ring != ring:
        raise DimensionMismatch(f"{f.ring.nvars} vs {ring.nvars} variables")
    p = ring.p
    coeff_of: dict[tuple[int, ...], int] = {}
    for m, c in f.terms.items():
        for i, a in enumerate(m):
            if a % p == 0:
                continue
            lowered = list(m)
            lowered[i] -= 1
            lowered = tuple(lowered)
            scale = a * c % p
            for mi, ci in D.images[i].terms.items():
                prod = tuple(x + y for x, y in zip(lowered, mi))
                coeff_of[prod] = (coeff_of.get(prod, 0) + scale * ci) % p
    return Polynomial(ring, coeff_of)


def bracket(D: Derivation, E: Derivation) -> Derivation:
    D._check(E)
    return Derivation(D.ring, tuple(apply(D, b) - apply(E, a) for a, b in zip(D.images, E.images)))


def iterate(D: Derivation, f: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        f = apply(D, f)
    return f


def p_power(D: Derivation) -> Derivation:
    """``D^p``, again a derivation in characteristic p."""
    p = D.ring.p
    return Derivation(D.ring, tuple(iterate(D, x, p) for x in D.ring.gens()))


def fd_bracket(f: Polynomial, D: Derivation, E: Derivation) -> Derivation:
    """``f [D, E] - E(f) D``, which equals ``[fD, E]``."""
    D._check(E)
    return f * bracket(D, E) - apply(E, f) * D


def fd_power(f: Polynomial, D: Derivation) -> Derivation:
    """``f^p D^p + (fD)^(p-1)(f) D``, which equals ``(fD)^p``."""
    if f.ring != D.ring:
        raise DimensionMismatch("coefficient from a different ring")
    p = D.ring.p
    fD = f * D
    return (f**p) * p_power(D) + iterate(fD, f, p - 1) * D


def matrix_on_truncated(D: Derivation) -> np.ndarray:
    """Matrix of ``D`` on the monomial basis of a truncated algebra.

    Column ``j`` holds the coordinates of ``D(basis[j])``; basis in ascending
    graded-lex order.
    """
    ring = D.ring
    if not ring.is_finite:
        raise ValueError("matrix view needs a finite-dimensional algebra")
    basis = ring.basis()
    index = {m: i for i, m in enumerate(basis)}
    M = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for j, m in enumerate(basis):
        for mm, c in apply(D, ring.monomial(m)).terms.items():
            M[index[mm], j] = c
    return M


# -- restricted Lie algebras ------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class RestrictedLieAlgebra:
    """Structure constants over F_p.

    ``brackets[i, j]`` is the coordinate vector of ``[e_i, e_j]`` and
    ``pmap[i]`` that of ``e_i^[p]``. ``realization``, when present, is a list
    of derivations ``rho(e_i)`` that the tables must agree with.
    """

    p: int
    brackets: np.ndarray
    pmap: np.ndarray
    labels: tuple[str, ...] = ()
    realization: tuple[Derivation, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "brackets", np.asarray(self.brackets, dtype=np.int64) % self.p)
        object.__setattr__(self, "pmap", np.asarray(self.pmap, dtype=np.int64) % self.p)
        m = self.pmap.shape[0]
        if self.brackets.shape != (m, m, m) or self.pmap.shape != (m, m):
            raise DimensionMismatch("structure tables have inconsistent shapes")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(m)))
        if self.realization is not None and len(self.realization) != m:
            raise DimensionMismatch("realization must give one derivation per basis element")

    @property
    def dim(self) -> int:
        return self.pmap.shape[0]

    @property
    def field(self):
        return GF(self.p)

    @classmethod
    def abelian(cls, p: int, pmap, labels: Sequence[str] = ()) -> RestrictedLieAlgebra:
        pmap = np.asarray(pmap, dtype=np.int64).reshape(len(pmap), -1) if len(pmap) else np.zeros((0, 0))
        m = pmap.shape[0]
        return cls(p, np.zeros((m, m, m), dtype=np.int64), pmap, tuple(labels))

    def is_abelian(self) -> bool:
        return not self.brackets.any()

    def bracket(self, u, v) -> np.ndarray:
        """``[u, v]`` for coordinate vectors over F_p."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("i,j,ijk->k", u, v, self.brackets) % self.p

    def ad(self, u) -> np.ndarray:
        """Matrix of ``ad u`` acting on column coordinate vectors."""
        return np.einsum("i,ijk->kj", np.asarray(u, dtype=np.int64), self.brackets) % self.p

    def element(self, u) -> Derivation:
        if self.realization is None:
            raise ValueError("algebra has no derivation realization")
        ring = self.realization[0].ring
        total = Derivation.zero(ring)
        for c, D in zip(u, self.realization):
            if c:
                total = total + int(c) * D
        return total

    def pmap_vec(self, u) -> np.ndarray:
        """``u^[p]`` for an arbitrary element (not only basis vectors)."""
        u = np.asarray(u, dtype=np.int64) % self.p
        if not u.any():
            return np.zeros(self.dim, dtype=np.int64)
        if self.realization is not None and self._coords is not None:
            return self._coords(p_power(self.element(u)))
        if self.is_abelian():
            # additive and semilinear; c^p = c on F_p
            return (u @ self.pmap) % self.p
        nz = np.flatnonzero(u)
        if len(nz) == 1 and u[nz[0]] == 1:
            return self.pmap[nz[0]].copy()
        from .groupscheme import build_enveloping

        return build_enveloping(self).pmap_of(u)

    @cached_property
    def _coords(self):
        """Map a derivation in the span of the realization to its coordinates."""
        if self.realization is None:
            return None
        ring = self.realization[0].ring
        monos = sorted({m for D in self.realization for g in D.images for m in g.terms})
        index = {(i, m): k for k, (i, m) in enumerate((i, m) for i in range(ring.nvars) for m in monos)}

        def flatten(D: Derivation):
            v = np.zeros(len(index), dtype=np.int64)
            for i, g in enumerate(D.images):
                for m, c in g.terms.items():
                    if (i, m) not in index:
                        return None
                    v[index[(i, m)]] = c
            return v

        A = np.array([flatten(D) for D in self.realization]).T  # columns = basis
        F = self.field

        def coords(D: Derivation):
            v = flatten(D)
            if v is None:
                raise ValueError("derivation outside the span of the realization")
            aug = np.hstack([A, v[:, None]])
            Ra, piv = linalg.rref(F, aug)
            if A.shape[1] in piv:
                raise ValueError("derivation outside the span of the realization")
            x = np.zeros(A.shape[1], dtype=np.int64)
            for r, c in enumerate(piv):
                x[c] = Ra[r, -1]
            return x

        return coords

    def coordinates(self, D: Derivation) -> np.ndarray:
        if self._coords is None:
            raise ValueError("algebra has no derivation realization")
        return self._coords(D)

    def subalgebra(self, vectors, labels: Sequence[str] = ()) -> RestrictedLieAlgebra:
        """The restricted subalgebra spanned by ``vectors`` (checked closed)."""
        F = self.field
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim) % self.p
        if len(vectors) == 0:
            return RestrictedLieAlgebra(self.p, np.zeros((0, 0, 0)), np.zeros((0, 0)))
        B, pivots = linalg.rref(F, vectors)
        k = len(B)

        def coords(w):
            w = np.asarray(w, dtype=np.int64) % self.p
            x = np.array([w[c] for c in pivots], dtype=np.int64)
            if not np.array_equal((x @ B) % self.p, w):
                raise ValueError("subspace is not closed under the restricted structure")
            return x

        br = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                br[i, j] = coords(self.bracket(B[i], B[j]))
        pm = np.array([coords(self.pmap_vec(B[i])) for i in range(k)], dtype=np.int64).reshape(k, k)
        real = None
        if self.realization is not None:
            real = tuple(self.element(b) for b in B)
        return RestrictedLieAlgebra(self.p, br, pm, tuple(labels), real)

    def to_text(self) -> str:
        lines = [f"p={self.p} dim={self.dim}"]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.brackets[i, j].any():
                    lines.append(f"bracket {i} {j} -> " + ",".join(map(str, self.brackets[i, j])))
        for i in range(self.dim):
            if self.pmap[i].any():
                lines.append(f"pmap {i} -> " + ",".join(map(str, self.pmap[i])))
        return "\n".join(lines) + "\n"


def parse_lie_algebra(lines: Sequence[str]) -> RestrictedLieAlgebra:
    """Read the ``p=<p> dim=<m>`` / ``bracket i j -> ...`` / ``pmap i -> ...`` block.

    Indices are 0-based; brackets are given for ``i < j`` and completed by
    antisymmetry.
    """
    lines = [ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty Lie algebra description")
    header = dict(tok.split("=", 1) for tok in lines[0].split())
    try:
        p, m = int(header["p"]), int(header["dim"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    br = np.zeros((m, m, m), dtype=np.int64)
    pm = np.zeros((m, m), dtype=np.int64)

    def vec(text):
        vals = [int(t) for t in text.split(",")]
        if len(vals) != m:
            raise ValueError(f"expected {m} coordinates, got {len(vals)}")
        return np.array(vals, dtype=np.int64) % p

    for ln in lines[1:]:
        lhs, arrow, rhs = ln.partition("->")
        if not arrow:
            raise ValueError(f"cannot parse line {ln!r}")
        words = lhs.split()
        if words[0] == "bracket" and len(words) == 3:
            i, j = int(words[1]), int(words[2])
            if not (0 <= i < j < m):
                raise ValueError(f"bracket indices must satisfy 0 <= i < j < {m}: {ln!r}")
            br[i, j] = vec(rhs)
            br[j, i] = (-br[i, j]) % p
        elif words[0] == "pmap" and len(words) == 2:
            pm[int(words[1])] = vec(rhs)
        else:
            raise ValueError(f"cannot parse line {ln!r}")
    return RestrictedLieAlgebra(p, br, pm)


def verify_restricted(g: RestrictedLieAlgebra) -> Verdict:
    """Antisymmetry, Jacobi, and agreement with the realization if any.

    Without a realization the p-map is accepted as tabulated.
    """
    c, p, m = g.brackets, g.p, g.dim
    for i in range(m):
        if c[i, i].any():
            return Verdict(False, f"antisymmetry: [e{i},e{i}] != 0")
        for j in range(i + 1, m):
            if not np.array_equal((c[i, j] + c[j, i]) % p, np.zeros(m)):
                return Verdict(False, f"antisymmetry: [e{i},e{j}] != -[e{j},e{i}]")
    if m:
        # J[i,j,k] = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        nested = np.einsum("ijl,lkr->ijkr", c, c)
        jac = (nested + nested.transpose(1, 2, 0, 3) + nested.transpose(2, 0, 1, 3)) % p
        bad = np.argwhere(jac.any(axis=3))
        if len(bad):
            i, j, k = bad[0]
            return Verdict(False, f"Jacobi identity fails on (e{i},e{j},e{k})")
    if g.realization is not None:
        rho = g.realization
        for i in range(m):
            for j in range(i + 1, m):
                if bracket(rho[i], rho[j]) != g.element(c[i, j]):
                    return Verdict(False, f"realization: bracket of e{i},e{j} disagrees with table")
        for i in range(m):
            if p_power(rho[i]) != g.element(g.pmap[i]):
                return Verdict(False, f"realization: p-th power of e{i} disagrees with table")
    return Verdict(True, "ok")


# -- the Jacobson-Witt algebra -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class WnAlgebra:
    """``W_n = Der B_n`` with basis ``x^a d_i`` (coordinate index ``i*p^n + a``)."""

    n: int
    p: int
    ring: PolyRing
    basis: tuple[Derivation, ...]
    labels: tuple[str, ...]
    algebra: RestrictedLieAlgebra

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        """Dimension ``p^n`` of the algebra ``B_n`` it acts on."""
        return self.p**self.n

    @cached_property
    def basis_matrices(self) -> np.ndarray:
        return np.array([matrix_on_truncated(D) for D in self.basis])

    def coordinate_names(self) -> tuple[str, ...]:
        return tuple(f"xi_{k}" for k in range(self.dim))

    def element(self, coords) -> Derivation:
        return self.algebra.element(coords)

    def coordinates(self, D: Derivation) -> np.ndarray:
        """Coordinates of a derivation of ``B_n`` (read off its generator images)."""
        monos = self.ring.basis()
        P = len(monos)
        v = np.zeros(self.dim, dtype=np.int64)
        index = {m: a for a, m in enumerate(monos)}
        for i, g in enumerate(D.images):
            for m, c in g.terms.items():
                v[i * P + index[m]] = c
        return v

    def matrix(self, F, coords) -> np.ndarray:
        """Matrix on ``B_n`` of the element with coordinates over ``F``."""
        return linalg.lincomb(F, coords, list(self.basis_matrices))


@lru_cache(maxsize=16)
def build_wn(n: int, p: int) -> WnAlgebra:
    if n < 1:
        raise ValueError("n must be positive")
    if p**n > MAX_TRUNCATED_DIM:
        raise BudgetError(f"p^n = {p**n} exceeds the truncated-algebra budget {MAX_TRUNCATED_DIM}")
    ring = TruncatedAlgebra(n, p)
    monos = ring.basis()
    basis = []
    labels = []
    for i in range(n):
        for m in monos:
            images = tuple(ring.monomial(m) if j == i else ring.zero() for j in range(n))
            basis.append(Derivation(ring, images))
            mono = "*".join(
                f"{ring.names[k]}^{a}" if a > 1 else ring.names[k] for k, a in enumerate(m) if a
            )
            labels.append(f"{mono}*d{i + 1}" if mono else f"d{i + 1}")
    dim = len(basis)
    P = len(monos)
    index = {m: a for a, m in enumerate(monos)}

    def coords(D: Derivation) -> np.ndarray:
        v = np.zeros(dim, dtype=np.int64)
        for i, g in enumerate(D.images):
            for m, c in g.terms.items():
                v[i * P + index[m]] = c
        return v

    br = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(dim):
        for b in range(a + 1, dim):
            v = coords(bracket(basis[a], basis[b]))
            br[a, b] = v
            br[b, a] = (-v) % p
    pm = np.array([coords(p_power(D)) for D in basis], dtype=np.int64)
    algebra = RestrictedLieAlgebra(p, br, pm, tuple(labels), tuple(basis))
    return WnAlgebra(n, p, ring, tuple(basis), tuple(labels), algebra)
