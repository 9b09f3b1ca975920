"""Invariant rings of Lie algebra actions and the invariants of W_n.

For ``D`` in ``W_n`` acting on ``B_n`` the characteristic polynomial has the
shape ``t^(p^n) + sum_i psi_i(D) t^(p^i)``; the ``psi_i`` are computed here
both as polynomials in the coordinates of ``W_n`` and at concrete points.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .actions import LieAction, RationalPoint, adjoint_action, jacobian_independent
from .derivations import Derivation, Verdict, WnAlgebra, build_wn, matrix_on_truncated
from .errors import BudgetError, PreconditionError, VanishingPatternError
from .field import GF, FieldDescriptor
from .graded import GradedSubspace, filtered_kernel, graded_kernel, span_dimension
from .poly import PolyRing, Polynomial, monomials_of_degree

MONOMIAL_BUDGET = 20000
SYMBOLIC_DEFAULT_MAX = 7
SYMBOLIC_FLAGGED_MAX = 9


@dataclass(frozen=True)
class InvariantBasis:
    """Invariants by degree: ``pieces[d]`` is the degree-``d`` piece.

    When the action does not preserve degree, ``graded`` is False and
    ``pieces[d]`` holds all invariants of degree at most ``d``.
    """

    action: object
    max_degree: int
    pieces: tuple[GradedSubspace, ...]
    graded: bool = True

    def dims(self) -> list[int]:
        return [piece.dim for piece in self.pieces]

    def all_elements(self) -> list[Polynomial]:
        if not self.graded:
            return list(self.pieces[-1].basis) if self.pieces else []
        return [f for piece in self.pieces for f in piece.basis]


def _check_budget(ring: PolyRing, D: int):
    count = len(monomials_of_degree(ring.nvars, D))
    if count > MONOMIAL_BUDGET:
        raise BudgetError(f"{count} monomials in degree {D} exceed the budget {MONOMIAL_BUDGET}")


def invariants_up_to_degree(action: LieAction, D: int) -> InvariantBasis:
    if D < 0:
        raise ValueError("degree bound must be >= 0")
    _check_budget(action.ring, D)
    rho = list(action.rho)
    graded = all(
        all(len({sum(m) for m in img.terms}) <= 1 and all(sum(m) == 1 for m in img.terms) for img in Dj.images)
        for Dj in rho
    )
    if graded:
        pieces = tuple(graded_kernel(action.ring, d, rho) for d in range(D + 1))
    else:
        pieces = tuple(filtered_kernel(action.ring, d, rho) for d in range(D + 1))
    for piece in pieces:
        for f in piece.basis:
            if any(not Dj(f).is_zero() for Dj in rho):
                raise ArithmeticError(f"solver returned a non-invariant {f}")
    return InvariantBasis(action, D, pieces, graded)


# -- characteristic polynomial invariants -----------------------------------------


@dataclass(frozen=True)
class PsiInvariants:
    n: int
    p: int
    ring: PolyRing
    psi: tuple[Polynomial, ...]


def _psi_exponents(n: int, p: int) -> list[int]:
    return [p**i for i in range(n)]


def _split_charpoly(coeffs_by_power: dict[int, object], n: int, p: int, is_zero) -> list:
    """Pick out the psi coefficients and check every other one vanishes."""
    N = p**n
    allowed = set(_psi_exponents(n, p)) | {N}
    for j, c in coeffs_by_power.items():
        if j not in allowed and not is_zero(c):
            raise VanishingPatternError(f"coefficient of t^{j} is nonzero: {c}")
    return [coeffs_by_power[p**i] for i in range(n)]


def generic_matrix(w: WnAlgebra) -> tuple[PolyRing, list[list[Polynomial]]]:
    """``M(xi) = sum_k xi_k * matrix(e_k)`` with polynomial entries."""
    ring = PolyRing(w.dim, w.p, names=w.coordinate_names())
    mats = w.basis_matrices
    N = w.size
    entries = [[ring.zero() for _ in range(N)] for _ in range(N)]
    xi = ring.gens()
    for k in range(w.dim):
        for r, c in zip(*np.nonzero(mats[k])):
            entries[r][c] = entries[r][c] + int(mats[k][r, c]) * xi[k]
    return ring, entries


@lru_cache(maxsize=None)
def char_poly_invariants_symbolic(n: int, p: int, allow_large: bool = False) -> PsiInvariants:
    N = p**n
    limit = SYMBOLIC_FLAGGED_MAX if allow_large else SYMBOLIC_DEFAULT_MAX
    if N > limit:
        raise BudgetError(
            f"symbolic characteristic polynomial of a {N}x{N} matrix is over budget "
            f"(limit {limit}{'' if allow_large else '; larger sizes need allow_large'})"
        )
    w = build_wn(n, p)
    ring, M = generic_matrix(w)
    coeffs = linalg.berkowitz(M, ring.zero(), ring.one())
    by_power = {N - k: c for k, c in enumerate(coeffs)}
    if by_power[N] != ring.one():
        raise VanishingPatternError("characteristic polynomial is not monic")
    psi = _split_charpoly(by_power, n, p, lambda c: c.is_zero())
    for i, f in enumerate(psi):
        if not f.is_zero() and (not f.is_homogeneous() or f.degree() != N - p**i):
            raise VanishingPatternError(f"psi_{i} is not homogeneous of degree {N - p**i}")
    return PsiInvariants(n, p, ring, tuple(psi))


def char_poly_invariants_at(coords, n: int, p: int, F: FieldDescriptor | None = None) -> list[int]:
    """``psi_i(D)`` for ``D`` with the given coordinates (codes over ``F``)."""
    F = F or GF(p)
    w = build_wn(n, p)
    if len(coords) != w.dim:
        raise ValueError(f"W_{n} has dimension {w.dim}, got {len(coords)} coordinates")
    cp = linalg.charpoly(F, w.matrix(F, coords))
    return [int(c) for c in _split_charpoly(dict(enumerate(cp)), n, p, lambda c: c == 0)]


def psi_differential(n: int, p: int, F: FieldDescriptor, D, Dprime, method: str = "auto") -> list[int]:
    """``(d_D psi_i)(D')`` for each ``i``.

    ``symbolic`` differentiates the psi polynomials; ``dual`` reads the
    epsilon-coefficient of the characteristic polynomial of ``D + eps D'``
    over ``F[eps]/(eps^2)``.
    """
    if method == "auto":
        method = "symbolic" if p**n <= SYMBOLIC_DEFAULT_MAX else "dual"
    if method == "symbolic":
        psi = char_poly_invariants_symbolic(n, p)
        out = []
        for f in psi.psi:
            total = 0
            for k, d in enumerate(Dprime):
                if d:
                    partial = f.diff(k).evaluate(F, D)
                    total = int(F.add(total, F.mul(partial, int(d))))
            out.append(total)
        return out
    if method != "dual":
        raise ValueError(f"unknown method {method!r}")
    w = build_wn(n, p)
    A = w.matrix(F, D)
    B = w.matrix(F, Dprime)
    N = w.size
    M = [[Dual(F, int(A[r, c]), int(B[r, c])) for c in range(N)] for r in range(N)]
    coeffs = linalg.berkowitz(M, Dual(F, 0, 0), Dual(F, 1, 0))
    return [coeffs[N - p**i].eps for i in range(n)]


@dataclass(frozen=True)
class Dual:
    """``a + b*eps`` with ``eps^2 = 0`` over a finite field (codes)."""

    field: FieldDescriptor
    re: int
    eps: int

    def __add__(self, o: Dual) -> Dual:
        F = self.field
        return Dual(F, int(F.add(self.re, o.re)), int(F.add(self.eps, o.eps)))

    def __sub__(self, o: Dual) -> Dual:
        F = self.field
        return Dual(F, int(F.sub(self.re, o.re)), int(F.sub(self.eps, o.eps)))

    def __mul__(self, o: Dual) -> Dual:
        F = self.field
        re = int(F.mul(self.re, o.re))
        eps = int(F.add(F.mul(self.re, o.eps), F.mul(self.eps, o.re)))
        return Dual(F, re, eps)


# -- generation and freeness -------------------------------------------------------


@dataclass(frozen=True)
class GenerationReport:
    max_degree: int
    dim_invariant: tuple[int, ...]
    dim_generated: tuple[int, ...]
    contained: tuple[bool, ...]

    @property
    def verdicts(self) -> list[str]:
        return [
            "generated" if inv == gen and ok else "not generated"
            for inv, gen, ok in zip(self.dim_invariant, self.dim_generated, self.contained)
        ]

    @property
    def generated(self) -> bool:
        return all(v == "generated" for v in self.verdicts)

    def rows(self) -> list[tuple[int, int, int, str]]:
        return [
            (d, inv, gen, v)
            for d, (inv, gen, v) in enumerate(zip(self.dim_invariant, self.dim_generated, self.verdicts))
        ]


def _products_in_degree(ring: PolyRing, f_list: Sequence[Polynomial], d: int) -> list[Polynomial]:
    """``m^p * prod f_i^a_i`` with ``0 <= a_i < p`` of total degree ``d``."""
    p = ring.p
    degs = [f.degree() for f in f_list]
    out = []
    for alpha in itertools.product(range(p), repeat=len(f_list)):
        rest = d - sum(a * g for a, g in zip(alpha, degs))
        if rest < 0 or rest % p:
            continue
        head = ring.one()
        for a, f in zip(alpha, f_list):
            if a:
                head = head * f**a
        if head.is_zero():
            out.append(head)
            continue
        for m in ring.monomials(rest // p):
            out.append(head * ring.monomial(tuple(a * p for a in m)))
    return out


def _require_homogeneous(f_list: Sequence[Polynomial]):
    for f in f_list:
        if not f.is_zero() and not f.is_homogeneous():
            raise PreconditionError(f"{f} is not homogeneous")


def check_generation(action: LieAction, f_list: Sequence[Polynomial], D: int) -> GenerationReport:
    """Compare ``(A^g)_d`` with ``(A^(p)[f_1..f_n])_d`` for each ``d <= D``."""
    f_list = [action.ring(f) for f in f_list]
    _require_homogeneous(f_list)
    for f in f_list:
        if any(not Dj(f).is_zero() for Dj in action.rho):
            raise PreconditionError(f"{f} is not invariant")
    inv = invariants_up_to_degree(action, D)
    if not inv.graded:
        raise PreconditionError("generation check needs a degree-preserving action")
    dim_inv, dim_gen, contained = [], [], []
    for d in range(D + 1):
        products = _products_in_degree(action.ring, f_list, d)
        gen = span_dimension(action.ring, products)
        union = span_dimension(action.ring, list(inv.pieces[d].basis) + products)
        dim_inv.append(inv.pieces[d].dim)
        dim_gen.append(gen)
        contained.append(union == inv.pieces[d].dim)
    return GenerationReport(D, tuple(dim_inv), tuple(dim_gen), tuple(contained))


def freeness_monomial_check(f_list: Sequence[Polynomial], D: int) -> Verdict:
    """Are the ``f^a`` (``0 <= a_i < p``) independent over the p-th powers up to degree D?"""
    if not f_list:
        return Verdict(True, "empty family")
    _require_homogeneous(f_list)
    if any(f.is_zero() for f in f_list):
        return Verdict(False, "the family contains 0")
    ring = f_list[0].ring
    for d in range(D + 1):
        products = _products_in_degree(ring, f_list, d)
        r = span_dimension(ring, products)
        if r != len(products):
            return Verdict(False, f"degree {d}: {len(products)} products span only {r} dimensions")
    return Verdict(True, f"independent in every degree <= {D}")


# -- pointwise identities on W_n ------------------------------------------------------


def centralizes(w: WnAlgebra, F: FieldDescriptor, D, E) -> bool:
    A = w.matrix(F, D)
    B = w.matrix(F, E)
    return np.array_equal(linalg.matmul(F, A, B), linalg.matmul(F, B, A))


def premet_identity_check(
    n: int, p: int, D, Dprime, F: FieldDescriptor | None = None, method: str = "auto"
) -> Verdict:
    """``sum_i (d_D psi_i)(D') D^(p^i) == -psi_0(D) D'`` for ``D'`` centralizing ``D``."""
    F = F or GF(p)
    w = build_wn(n, p)
    psi0 = char_poly_invariants_at(D, n, p, F)[0]
    if psi0 == 0:
        raise PreconditionError("psi_0(D) = 0")
    if not centralizes(w, F, D, Dprime):
        raise PreconditionError("D' is not in the centralizer of D")
    dpsi = psi_differential(n, p, F, D, Dprime, method)
    MD = w.matrix(F, D)
    lhs = np.zeros_like(MD)
    for i, c in enumerate(dpsi):
        if c:
            lhs = F.add_table[lhs, F.mul_table[c, linalg.matpow(F, MD, p**i)]]
    rhs = F.mul_table[int(F.neg(psi0)), w.matrix(F, Dprime)]
    if np.array_equal(lhs, rhs):
        return Verdict(True, "both sides agree")
    return Verdict(False, "sides differ")


def semisimple_span_check(D: Derivation | np.ndarray, F: FieldDescriptor | None = None) -> bool:
    """Is the matrix of ``D`` in the span of ``D^p, D^(p^2), ..., D^(p^n)``?

    ``D`` is a derivation of ``B_n`` or directly its matrix over ``F``.
    """
    if isinstance(D, Derivation):
        ring = D.ring
        F = F or GF(ring.p)
        M = matrix_on_truncated(D)
        n = ring.nvars
    else:
        M = np.asarray(D, dtype=np.int64)
        if F is None:
            raise ValueError("field needed for a bare matrix")
        n = round(np.log(M.shape[0]) / np.log(F.p))
    powers = []
    cur = M
    for _ in range(n):
        cur = linalg.matpow(F, cur, F.p)
        powers.append(cur.ravel())
    return linalg.in_span(F, M.ravel(), np.array(powers))


def wn_setup(n: int, p: int) -> tuple[WnAlgebra, LieAction, PsiInvariants]:
    w = build_wn(n, p)
    return w, adjoint_action(w), char_poly_invariants_symbolic(n, p)


def psi_on_action(psi: PsiInvariants, action: LieAction) -> list[Polynomial]:
    """Re-home the psi polynomials into the coordinate ring of the adjoint action."""
    return [f.map_coefficients_to(action.ring) for f in psi.psi]


def jacobian_independent_psi(psi: PsiInvariants, x: RationalPoint) -> bool:
    return jacobian_independent(list(psi.psi), x)
