"""Subspaces of polynomials in canonical row-reduced form, and joint kernels."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .poly import Monomial, PolyRing, Polynomial, grlex_key

LinearOperator = Callable[[Polynomial], Polynomial]


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace of ``ring`` spanned by ``basis``.

    ``degree`` is the common degree of the basis, or None for a subspace of a
    filtered piece. Construct through :meth:`span` to get the canonical basis:
    monic leading terms, pivot monomials absent from every other basis element,
    leading monomials strictly increasing in graded-lex order.
    """

    ring: PolyRing
    degree: int | None
    basis: tuple[Polynomial, ...]

    @classmethod
    def span(cls, ring: PolyRing, degree: int | None, polys: Sequence[Polynomial]) -> GradedSubspace:
        polys = [f for f in polys if not f.is_zero()]
        if not polys:
            return cls(ring, degree, ())
        monos = sorted({m for f in polys for m in f.terms}, key=grlex_key, reverse=True)
        index = {m: i for i, m in enumerate(monos)}
        M = np.array([f.vector(index, len(monos)) for f in polys])
        R, _ = linalg.rref(ring.field, M)
        basis = [Polynomial(ring, {monos[j]: int(c) for j, c in enumerate(row) if c}) for row in R]
        basis.sort(key=lambda f: grlex_key(f.leading_monomial()))
        return cls(ring, degree, tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def canonical(self) -> GradedSubspace:
        return GradedSubspace.span(self.ring, self.degree, self.basis)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        return GradedSubspace.span(self.ring, self.degree, list(self.basis) + [f]).dim == self.dim

    def leading_monomials(self) -> list[Monomial]:
        return [f.leading_monomial() for f in self.basis]

    def __str__(self) -> str:
        return "span{" + ", ".join(str(f) for f in self.basis) + "}"


def operator_matrix(
    ring: PolyRing, domain: Sequence[Monomial], operators: Sequence[LinearOperator]
) -> tuple[np.ndarray, list[Monomial]]:
    """Stack the operators' images of each domain monomial as columns.

    Rows are indexed by (operator, output monomial); output monomials are
    collected from the images so non-degree-preserving operators are fine.
    """
    images = [[op(ring.monomial(m)) for m in domain] for op in operators]
    out_monos = sorted({m for row in images for f in row for m in f.terms}, key=grlex_key)
    index = {m: i for i, m in enumerate(out_monos)}
    k = len(out_monos)
    M = np.zeros((len(operators) * k, len(domain)), dtype=np.int64)
    for j, row in enumerate(images):
        for col, f in enumerate(row):
            for m, c in f.terms.items():
                M[j * k + index[m], col] = c
    return M, out_monos


def kernel_of(
    ring: PolyRing, domain: Sequence[Monomial], operators: Sequence[LinearOperator], degree: int | None
) -> GradedSubspace:
    if not domain:
        return GradedSubspace(ring, degree, ())
    if not operators:
        return GradedSubspace.span(ring, degree, [ring.monomial(m) for m in domain])
    M, _ = operator_matrix(ring, domain, operators)
    null = linalg.nullspace(ring.field, M, ncols=len(domain))
    polys = [Polynomial(ring, {domain[j]: int(c) for j, c in enumerate(v) if c}) for v in null]
    return GradedSubspace.span(ring, degree, polys)


def graded_kernel(ring: PolyRing, d: int, operators: Sequence[LinearOperator]) -> GradedSubspace:
    """Joint kernel of ``operators`` on the degree-``d`` homogeneous polynomials.

    With no operators this is the whole degree-``d`` piece.
    """
    return kernel_of(ring, ring.monomials(d), operators, d)


def filtered_kernel(ring: PolyRing, d: int, operators: Sequence[LinearOperator]) -> GradedSubspace:
    """Joint kernel on all polynomials of degree at most ``d``."""
    domain = [m for k in range(d + 1) for m in ring.monomials(k)]
    return kernel_of(ring, domain, operators, None)


def span_dimension(ring: PolyRing, polys: Sequence[Polynomial]) -> int:
    return GradedSubspace.span(ring, None, polys).dim
