"""Restricted Lie algebra actions on affine space: stabilizers and regular loci."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import linalg
from .derivations import (
    Derivation,
    RestrictedLieAlgebra,
    WnAlgebra,
    bracket,
    p_power,
    parse_lie_algebra,
)
from .field import GF, FieldDescriptor, stream_rng
from .poly import DimensionMismatch, PolyRing, Polynomial, parse_polynomial


class ActionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LieAction:
    """``rho: g -> Der A`` for ``A`` a polynomial ring over F_p.

    Construction checks that ``rho`` respects brackets and p-maps.
    """

    g: RestrictedLieAlgebra
    ring: PolyRing
    rho: tuple[Derivation, ...]
    check: bool = True

    def __post_init__(self):
        if len(self.rho) != self.g.dim:
            raise ActionError("need one derivation per basis element of g")
        if any(D.ring != self.ring for D in self.rho):
            raise ActionError("derivations must act on the action's ring")
        if self.ring.p != self.g.p:
            raise ActionError("characteristics differ")
        if self.check:
            ok, why = self.homomorphism_defect()
            if not ok:
                raise ActionError(why)

    def image(self, u) -> Derivation:
        total = Derivation.zero(self.ring)
        for c, D in zip(u, self.rho):
            if c % self.g.p:
                total = total + int(c) * D
        return total

    def homomorphism_defect(self) -> tuple[bool, str]:
        m = self.g.dim
        for i in range(m):
            for j in range(i + 1, m):
                if bracket(self.rho[i], self.rho[j]) != self.image(self.g.brackets[i, j]):
                    return False, f"rho([e{i},e{j}]) != [rho(e{i}),rho(e{j})]"
        for i in range(m):
            if p_power(self.rho[i]) != self.image(self.g.pmap[i]):
                return False, f"rho(e{i}^[p]) != rho(e{i})^p"
        return True, ""

    @property
    def is_linear(self) -> bool:
        """All generator images are linear forms, so ``rho`` preserves degree."""
        return all(
            all(sum(m) == 1 for m in img.terms) for D in self.rho for img in D.images
        )


@dataclass(frozen=True)
class RationalPoint:
    field: FieldDescriptor
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if any(not self.field.contains_code(c) for c in self.coords):
            raise ValueError(f"coordinates outside {self.field!r}")

    def __str__(self) -> str:
        return ",".join(map(str, self.coords))

    def scaled(self, c: int) -> RationalPoint:
        return RationalPoint(self.field, tuple(int(self.field.mul(c, x)) for x in self.coords))


@dataclass(frozen=True)
class StabilizerResult:
    point: RationalPoint
    kernel: np.ndarray
    codim: int

    @property
    def dim(self) -> int:
        return len(self.kernel)


@dataclass(frozen=True)
class RegularityReport:
    estimate: int
    witness: RationalPoint | None
    points: tuple[RationalPoint, ...]
    codims: tuple[int, ...]


def _check_point(action: LieAction, x: RationalPoint):
    if x.field.p != action.ring.p:
        raise ActionError(f"point over {x.field!r} but action is in characteristic {action.ring.p}")
    if len(x.coords) != action.ring.nvars:
        raise DimensionMismatch(f"point has {len(x.coords)} coordinates, ring has {action.ring.nvars}")


def tangent_map(action: LieAction, x: RationalPoint) -> np.ndarray:
    """Row ``j`` is the tangent vector ``(rho(e_j)(x_i))(x)`` for ``i = 1..N``."""
    _check_point(action, x)
    F = x.field
    return np.array(
        [[img.evaluate(F, x.coords) for img in D.images] for D in action.rho], dtype=np.int64
    ).reshape(action.g.dim, action.ring.nvars)


def stabilizer(action: LieAction, x: RationalPoint) -> StabilizerResult:
    T = tangent_map(action, x)
    kernel = linalg.left_nullspace(x.field, T)
    codim = action.g.dim - len(kernel)
    return StabilizerResult(x, kernel, codim)


def codim_at(action: LieAction, x: RationalPoint) -> int:
    return linalg.rank(x.field, tangent_map(action, x))


def sample_points(ring: PolyRing, F: FieldDescriptor, seed: int, samples: int, stream: str) -> list[RationalPoint]:
    rng = stream_rng(seed, stream)
    codes = rng.integers(0, F.q, size=(samples, ring.nvars))
    return [RationalPoint(F, tuple(int(c) for c in row)) for row in codes]


def estimate_c_g(action: LieAction, seed: int = 0, samples: int = 200, e: int = 4) -> RegularityReport:
    """Largest stabilizer codimension seen at ``samples`` random points of ``F_{p^e}^N``.

    The regular locus is a dense open set, so over a large enough field the
    maximum is found quickly; the result is a lower bound in general.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    F = GF(action.ring.p, e)
    points = sample_points(action.ring, F, seed, samples, "estimate_c_g")
    codims = [codim_at(action, x) for x in points]
    best = max(codims)
    witness = points[codims.index(best)]
    return RegularityReport(best, witness, tuple(points), tuple(codims))


def is_regular(action: LieAction, x: RationalPoint, c: int) -> bool:
    return codim_at(action, x) == c


def adjoint_action(w: WnAlgebra | RestrictedLieAlgebra) -> LieAction:
    """Action of ``g`` on its own coordinate ring ``F_p[xi_0..xi_{m-1}]``.

    Right-action convention: ``rho(e_j)(xi_k)`` is the linear form
    ``D -> xi_k([D, e_j])``, so the stabilizer of a point ``D`` is its
    centralizer.
    """
    g = w.algebra if isinstance(w, WnAlgebra) else w
    m, p = g.dim, g.p
    ring = PolyRing(m, p, names=tuple(f"xi_{k}" for k in range(m)))
    xi = ring.gens()
    rho = []
    for j in range(m):
        images = []
        for k in range(m):
            form = ring.zero()
            for ell in range(m):
                c = int(g.brackets[ell, j, k])
                if c:
                    form = form + c * xi[ell]
            images.append(form)
        rho.append(Derivation(ring, tuple(images)))
    return LieAction(g, ring, tuple(rho))


def jacobian_matrix(f_list: Sequence[Polynomial], x: RationalPoint) -> np.ndarray:
    if not f_list:
        return np.zeros((0, len(x.coords)), dtype=np.int64)
    n = f_list[0].ring.nvars
    return np.array(
        [[f.diff(i).evaluate(x.field, x.coords) for i in range(n)] for f in f_list], dtype=np.int64
    )


def jacobian_independent(f_list: Sequence[Polynomial], x: RationalPoint) -> bool:
    """Whether the differentials ``d_x f`` are linearly independent."""
    if not f_list:
        return True
    return linalg.rank(x.field, jacobian_matrix(f_list, x)) == len(f_list)


def parse_action(text: str) -> LieAction:
    """Lie algebra block, then ``vars N``, then ``rho i : j -> <polynomial>``.

    ``i`` is a 0-based basis index of g and ``j`` the 1-based variable index,
    matching the variable names ``x1..xN``.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    try:
        split = next(k for k, ln in enumerate(lines) if ln.split()[0] == "vars")
    except StopIteration:
        raise ActionError("missing 'vars N' line") from None
    g = parse_lie_algebra(lines[:split])
    nvars = int(lines[split].split()[1])
    ring = PolyRing(nvars, g.p)
    images = [[ring.zero() for _ in range(nvars)] for _ in range(g.dim)]
    for ln in lines[split + 1 :]:
        lhs, arrow, rhs = ln.partition("->")
        head, colon, var = lhs.partition(":")
        words = head.split()
        if not arrow or not colon or len(words) != 2 or words[0] != "rho":
            raise ActionError(f"cannot parse line {ln!r}")
        i, j = int(words[1]), int(var)
        if not (0 <= i < g.dim and 1 <= j <= nvars):
            raise ActionError(f"index out of range in {ln!r}")
        images[i][j - 1] = parse_polynomial(ring, rhs)
    rho = tuple(Derivation(ring, tuple(row)) for row in images)
    return LieAction(g, ring, rho)


def format_action(action: LieAction) -> str:
    lines = [action.g.to_text().rstrip("\n"), f"vars {action.ring.nvars}"]
    plain = PolyRing(action.ring.nvars, action.ring.p, action.ring.relations)
    for i, D in enumerate(action.rho):
        for j, img in enumerate(D.images):
            if not img.is_zero():
                lines.append(f"rho {i} : {j + 1} -> {img.map_coefficients_to(plain)}")
    return "\n".join(lines) + "\n"
