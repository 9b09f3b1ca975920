"""Constant finite groups acting on polynomial rings and monomial quotients.

Invariants are always computed as fixed spaces ``ker(sigma - id)``, never by
averaging over the group, so modular group orders are handled correctly.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field


from .field import GF, stream_rng
from .graded import GradedSubspace, filtered_kernel, graded_kernel, span_dimension
from .invariants import InvariantBasis
from .poly import Monomial, PolyRing, Polynomial, grlex_key, parse_polynomial

MAX_GROUP_ORDER = 24

Substitution = tuple[Polynomial, ...]


class GroupError(ValueError):
    pass


def compose(sigma: Substitution, tau: Substitution) -> Substitution:
    """The substitution for ``sigma* o tau*`` (apply ``tau`` first)."""
    return tuple(t.substitute(sigma) for t in tau)


@dataclass(frozen=True, eq=False)
class ConstantGroupAction:
    """A finite group given by generating algebra automorphisms of ``ring``.

    Each generator lists the images of the variables. The ring is either a
    polynomial ring or a quotient by monomial relations.
    """

    ring: PolyRing
    generators: tuple[Substitution, ...]
    elements: tuple[Substitution, ...] = field(init=False, repr=False)

    def __post_init__(self):
        gens = tuple(tuple(self.ring(f) for f in sigma) for sigma in self.generators)
        object.__setattr__(self, "generators", gens)
        identity = tuple(self.ring.gens())
        for sigma in gens:
            if len(sigma) != self.ring.nvars:
                raise GroupError("a substitution needs one image per variable")
            for rel in self.ring.relations:
                image = self.ring.one()
                for f, a in zip(sigma, rel):
                    image = image * f**a
                if not image.is_zero():
                    raise GroupError("substitution does not preserve the relations")
            power, order = sigma, 1
            while power != identity:
                power = compose(sigma, power)
                order += 1
                if order > MAX_GROUP_ORDER:
                    raise GroupError(f"generator has order > {MAX_GROUP_ORDER} or is not invertible")
        elements = [identity]
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for sigma in gens:
                    y = compose(sigma, x)
                    if y not in seen:
                        seen.add(y)
                        elements.append(y)
                        nxt.append(y)
                        if len(elements) > MAX_GROUP_ORDER:
                            raise GroupError(f"group order exceeds {MAX_GROUP_ORDER}")
            frontier = nxt
        object.__setattr__(self, "elements", tuple(elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_graded(self) -> bool:
        """Generators act by linear substitutions, so they preserve degree."""
        return all(all(sum(m) == 1 for m in f.terms) for sigma in self.generators for f in sigma)

    def act(self, sigma: Substitution, f: Polynomial) -> Polynomial:
        return f.substitute(sigma)

    def operators(self):
        return [lambda f, s=sigma: f.substitute(s) - f for sigma in self.generators]


def constant_invariants(action: ConstantGroupAction, D: int | None = None) -> InvariantBasis:
    """Fixed subalgebra, degree by degree up to ``D``.

    ``D=None`` means the whole algebra and needs a finite-dimensional target.
    """
    ring = action.ring
    if D is None:
        D = ring.max_degree()
        if D is None:
            raise GroupError("a degree bound is required for an infinite-dimensional target")
    ops = action.operators()
    if action.is_graded:
        pieces = tuple(graded_kernel(ring, d, ops) for d in range(D + 1))
        return InvariantBasis(action, D, pieces, True)
    if not ring.is_finite:
        raise GroupError("non-linear substitutions are only supported on finite-dimensional targets")
    pieces = tuple(filtered_kernel(ring, d, ops) for d in range(D + 1))
    return InvariantBasis(action, D, pieces, False)


@dataclass(frozen=True)
class FreenessReport:
    dim_algebra: tuple[int, ...]
    dim_invariants: tuple[int, ...]
    status: str  # "free", "not free" or "inconclusive"
    rank: int | None
    reason: str
    basis: tuple[Polynomial, ...] = ()

    @property
    def verdict(self) -> str:
        return f"free of rank {self.rank}" if self.status == "free" else self.status


def _module_generators(ring: PolyRing, inv: InvariantBasis, top: int) -> list[Polynomial]:
    """Homogeneous lifts of a basis of ``A / A^G_+ A`` up to degree ``top``."""
    positive = [f for piece in inv.pieces[1:] for f in piece.basis]
    gens = []
    for d in range(top + 1):
        spanning = [g * ring.monomial(m) for g in positive for m in ring.monomials(d - g.degree())
                    if d - g.degree() >= 0]
        spanning = [f for f in spanning if not f.is_zero()]
        current = GradedSubspace.span(ring, d, spanning).basis
        dim_now = len(current)
        for m in ring.monomials(d):
            candidate = list(current) + [ring.monomial(m)]
            if span_dimension(ring, candidate) > dim_now:
                gens.append(ring.monomial(m))
                current = candidate
                dim_now += 1
    return gens


def _free_products(ring: PolyRing, inv: InvariantBasis, gens: Sequence[Polynomial], d: int) -> list[Polynomial]:
    out = []
    for b in gens:
        e = d - b.degree()
        if 0 <= e < len(inv.pieces):
            out.extend(g * b for g in inv.pieces[e].basis)
    return out


def freeness_check(
    action: ConstantGroupAction, D: int | None = None, q: int | None = None
) -> FreenessReport:
    """Is the algebra a free module over its invariants?

    Graded actions use the graded Nakayama lemma: lifts of a basis of
    ``A / A^G_+ A`` generate, and freeness means they are independent over
    ``A^G``, checked degree by degree up to ``D`` (the top degree for
    finite-dimensional targets). ``q``, when given, is the expected rank.
    """
    ring = action.ring
    finite = ring.is_finite
    top = ring.max_degree() if finite else D
    if top is None:
        raise GroupError("a degree bound is required for an infinite-dimensional target")
    inv = constant_invariants(action, top)
    if not inv.graded:
        dim_a = ring.dimension
        dim_i = inv.pieces[-1].dim
        if dim_a % dim_i:
            return FreenessReport((dim_a,), (dim_i,), "not free", None, f"{dim_a} is not a multiple of {dim_i}")
        return FreenessReport((dim_a,), (dim_i,), "inconclusive", None, "non-graded action")
    dims_a = tuple(len(ring.monomials(d)) for d in range(top + 1))
    dims_i = tuple(inv.dims())
    if finite:
        total_a, total_i = sum(dims_a), sum(dims_i)
        if total_a % total_i:
            return FreenessReport(
                dims_a, dims_i, "not free", None,
                f"dim A = {total_a} is not a multiple of dim A^G = {total_i}",
            )
    gens = _module_generators(ring, inv, top)
    for d in range(top + 1):
        products = _free_products(ring, inv, gens, d)
        r = span_dimension(ring, products)
        if r != len(products) or r != dims_a[d]:
            return FreenessReport(
                dims_a, dims_i, "not free", None,
                f"degree {d}: minimal generators give {len(products)} products of rank {r}, "
                f"dim A_{d} = {dims_a[d]}",
            )
    reason = f"basis {{{', '.join(map(str, gens))}}}"
    if q is not None:
        reason += f"; expected rank {q} {'matches' if q == len(gens) else 'differs'}"
    return FreenessReport(dims_a, dims_i, "free", len(gens), reason, tuple(gens))


def max_orbit_index(action: ConstantGroupAction, seed: int = 0, samples: int = 20, e: int = 1) -> int:
    """Largest orbit size ``|G| / |G_x|`` over sampled points of ``F_{p^e}^N``."""
    ring = action.ring
    if ring.relations:
        raise GroupError("orbit sampling needs a polynomial-ring target")
    F = GF(ring.p, e)
    rng = stream_rng(seed, "max_orbit_index")
    best = 1
    for row in rng.integers(0, F.q, size=(samples, ring.nvars)):
        point = tuple(int(c) for c in row)
        orbit = {tuple(f.evaluate(F, point) for f in g) for g in action.elements}
        best = max(best, len(orbit))
    return best


def parse_group_action(text: str) -> ConstantGroupAction:
    """Read ``p=<p>``, a ``target`` block and a ``group`` block.

    Target is ``target poly N`` or ``target quotient N`` followed by
    ``relation <monomial>`` lines; the group block lists
    ``sigma_k : x_j -> <polynomial>`` lines (unlisted variables are fixed).
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    p = None
    ring = None
    relations: list[Monomial] = []
    kind = None
    nvars = 0
    subs: dict[str, dict[int, str]] = {}
    section = None
    for ln in lines:
        words = ln.split()
        if ln.startswith("p="):
            p = int(ln[2:])
        elif words[0] == "target":
            kind, nvars = words[1], int(words[2])
            section = "target"
        elif words[0] == "group":
            section = "group"
        elif section == "target" and words[0] == "relation":
            if p is None:
                raise GroupError("p= must come first")
            rel = parse_polynomial(PolyRing(nvars, p), " ".join(words[1:]))
            if len(rel.terms) != 1:
                raise GroupError("relations must be monomials")
            relations.append(next(iter(rel.terms)))
        elif section == "group":
            lhs, arrow, rhs = ln.partition("->")
            name, colon, var = lhs.partition(":")
            if not arrow or not colon:
                raise GroupError(f"cannot parse line {ln!r}")
            var = var.strip()
            if not var.startswith("x"):
                raise GroupError(f"bad variable {var!r}")
            subs.setdefault(name.strip(), {})[int(var[1:]) - 1] = rhs.strip()
        else:
            raise GroupError(f"cannot parse line {ln!r}")
    if p is None or kind not in ("poly", "quotient"):
        raise GroupError("need p= and a target block")
    if kind == "poly" and relations:
        raise GroupError("a poly target takes no relations")
    ring = PolyRing(nvars, p, tuple(relations))
    gens = []
    for name in sorted(subs, key=lambda s: (len(s), s)):
        images = list(ring.gens())
        for j, txt in subs[name].items():
            images[j] = parse_polynomial(ring, txt)
        gens.append(tuple(images))
    return ConstantGroupAction(ring, tuple(gens))


def format_group_action(action: ConstantGroupAction) -> str:
    ring = action.ring
    lines = [f"p={ring.p}", f"target {'quotient' if ring.relations else 'poly'} {ring.nvars}"]
    free = PolyRing(ring.nvars, ring.p)
    for rel in sorted(ring.relations, key=grlex_key):
        lines.append(f"relation {free.monomial(rel)}".replace("relation 1*", "relation "))
    lines.append("group")
    for k, sigma in enumerate(action.generators):
        for j, f in enumerate(sigma):
            lines.append(f"sigma_{k} : {ring.names[j]} -> {f}")
    return "\n".join(lines) + "\n"


def sign_action(p: int, relations: Sequence[Monomial] = ()) -> ConstantGroupAction:
    """``x -> -x`` on ``F_p[x]`` or a monomial quotient of it."""
    ring = PolyRing(1, p, tuple(relations))
    return ConstantGroupAction(ring, ((-ring.gen(0),),))
