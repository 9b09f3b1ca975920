"""Named verification suites; each check yields one (check, anchor, status, detail) row.

The anchor column names the identity under test. Every suite draws its
randomness from ``stream_rng(seed, <suite-specific stream>)``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass

import numpy as np

from . import catalog, linalg
from .actions import RationalPoint, adjoint_action, estimate_c_g, stabilizer
from .derivations import Derivation, bracket, build_wn, fd_bracket, fd_power, p_power
from .errors import PreconditionError, VanishingPatternError
from .field import GF, stream_rng
from .finite_groups import constant_invariants, freeness_check, max_orbit_index
from .groupscheme import (
    build_enveloping,
    induced_dimension,
    induced_dimension_oracle,
    is_torus,
    semisimplicity_oracle,
    subgroup_index,
)
from .invariants import (
    char_poly_invariants_at,
    char_poly_invariants_symbolic,
    check_generation,
    freeness_monomial_check,
    premet_identity_check,
    psi_on_action,
)
from .poly import PolyRing, Polynomial, TruncatedAlgebra


@dataclass(frozen=True)
class CheckResult:
    check: str
    anchor: str
    passed: bool
    detail: str

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class VerificationSuiteResult:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_tsv(self) -> str:
        lines = ["check\tanchor\tstatus\tdetail"]
        lines += [f"{r.check}\t{r.anchor}\t{r.status}\t{r.detail}" for r in self.results]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"[{r.status.upper()}] {r.check}: {r.detail}" for r in self.results]
        ok = sum(r.passed for r in self.results)
        lines.append(f"{ok}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"


# -- random samplers ------------------------------------------------------------


def random_element(ring: PolyRing, rng: np.random.Generator, max_degree: int | None = None) -> Polynomial:
    """Dense random element of a finite algebra, or of degree <= ``max_degree``."""
    if max_degree is None:
        monos = ring.basis()
    else:
        monos = [m for d in range(max_degree + 1) for m in ring.monomials(d)]
    coeffs = rng.integers(0, ring.p, size=len(monos))
    return Polynomial(ring, {m: int(c) for m, c in zip(monos, coeffs) if c})


def random_derivation(ring: PolyRing, rng: np.random.Generator, max_degree: int | None = None) -> Derivation:
    return Derivation(ring, tuple(random_element(ring, rng, max_degree) for _ in range(ring.nvars)))


HOCHSCHILD_CONFIGS = ((1, 2), (1, 3), (2, 2), (1, 5))
WN_CONFIGS = ((1, 2), (1, 3), (2, 2))
GENERATION_CONFIGS = ((1, 2, 6), (1, 3, 6), (2, 2, 4))


# -- suites -----------------------------------------------------------------------


def suite_hochschild(seed: int, trials: int = 100) -> Iterator[CheckResult]:
    for n, p in HOCHSCHILD_CONFIGS:
        ring = TruncatedAlgebra(n, p)
        rng = stream_rng(seed, f"hochschild-power:{n}:{p}")
        bad = 0
        for _ in range(trials):
            f = random_element(ring, rng)
            D = random_derivation(ring, rng)
            if fd_power(f, D) != p_power(f * D):
                bad += 1
        yield CheckResult(
            f"fd_power B_{n} p={p}", "(fD)^p = f^p D^p + (fD)^{p-1}(f) D",
            bad == 0, f"{trials - bad}/{trials} random (f, D) agree with p-fold composition",
        )
        rng = stream_rng(seed, f"hochschild-bracket:{n}:{p}")
        bad = 0
        for _ in range(trials):
            f = random_element(ring, rng)
            D = random_derivation(ring, rng)
            E = random_derivation(ring, rng)
            if fd_bracket(f, D, E) != bracket(f * D, E):
                bad += 1
        yield CheckResult(
            f"fd_bracket B_{n} p={p}", "[fD, E] = f [D, E] - E(f) D",
            bad == 0, f"{trials - bad}/{trials} random (f, D, E) agree with the commutator",
        )


def suite_charpoly(seed: int, points: int = 100) -> Iterator[CheckResult]:
    anchor = "chi_D(t) = t^(p^n) + sum_i psi_i(D) t^(p^i)"
    for n, p in WN_CONFIGS:
        try:
            psi = char_poly_invariants_symbolic(n, p)
            homogeneous = all(
                f.is_homogeneous() and f.degree() == p**n - p**i for i, f in enumerate(psi.psi)
            )
            ok = len(psi.psi) == n and homogeneous
            detail = f"psi degrees {[f.degree() for f in psi.psi]}, all other coefficients vanish"
        except VanishingPatternError as exc:
            ok, detail = False, str(exc)
        yield CheckResult(f"symbolic shape W_{n} p={p}", anchor, ok, detail)
    n, p, e = 2, 2, 4
    F = GF(p, e)
    w = build_wn(n, p)
    psi = char_poly_invariants_symbolic(n, p)
    rng = stream_rng(seed, "charpoly-points")
    bad_shape = bad_match = 0
    for _ in range(points):
        D = [int(c) for c in rng.integers(0, F.q, size=w.dim)]
        try:
            at = char_poly_invariants_at(D, n, p, F)
        except VanishingPatternError:
            bad_shape += 1
            continue
        if at != [f.evaluate(F, D) for f in psi.psi]:
            bad_match += 1
    yield CheckResult(
        f"pointwise shape W_{n} p={p} over GF({p}^{e})", anchor, bad_shape == 0,
        f"{points - bad_shape}/{points} points have the vanishing pattern",
    )
    yield CheckResult(
        f"pointwise = symbolic W_{n} p={p}", anchor, bad_match == 0,
        f"{points - bad_shape - bad_match}/{points - bad_shape} points agree",
    )


def suite_wn_invariants(seed: int) -> Iterator[CheckResult]:
    for n, p in WN_CONFIGS:
        w = build_wn(n, p)
        action = adjoint_action(w)
        psi = psi_on_action(char_poly_invariants_symbolic(n, p), action)
        killed = all(D(f).is_zero() for D in action.rho for f in psi)
        yield CheckResult(
            f"psi invariant W_{n} p={p}", "rho(e_j)(psi_i) = 0", killed,
            f"{len(action.rho)} x {len(psi)} derivatives vanish" if killed else "nonzero derivative",
        )
    for n, p, D in GENERATION_CONFIGS:
        action = adjoint_action(build_wn(n, p))
        psi = psi_on_action(char_poly_invariants_symbolic(n, p), action)
        report = check_generation(action, psi, D)
        yield CheckResult(
            f"generation W_{n} p={p} D={D}", "A^g = A^(p)[psi_0..psi_{n-1}]", report.generated,
            "dims " + ",".join(map(str, report.dim_invariant)),
        )
        free = freeness_monomial_check(psi, D)
        yield CheckResult(
            f"monomial freeness W_{n} p={p} D={D}", "psi^m (0 <= m_i < p) free over A^(p)",
            free.ok, free.reason,
        )
    for n, p in WN_CONFIGS:
        w = build_wn(n, p)
        action = adjoint_action(w)
        report = estimate_c_g(action, seed=seed, samples=200, e=4)
        expected = w.dim - n
        yield CheckResult(
            f"regular codim W_{n} p={p}", "c_g(g) = dim g - n", report.estimate == expected,
            f"estimate {report.estimate}, expected {expected}",
        )
    for n, p in WN_CONFIGS:
        w = build_wn(n, p)
        action = adjoint_action(w)
        F = GF(p, 4)
        rng = stream_rng(seed, f"centralizer-dim:{n}:{p}")
        tried = bad = 0
        while tried < 20:
            D = [int(c) for c in rng.integers(0, F.q, size=w.dim)]
            if char_poly_invariants_at(D, n, p, F)[0] == 0:
                continue
            tried += 1
            if stabilizer(action, RationalPoint(F, D)).dim != n:
                bad += 1
        yield CheckResult(
            f"centralizer dim W_{n} p={p}", "dim g_D = n when psi_0(D) != 0", bad == 0,
            f"{tried - bad}/{tried} points",
        )


def suite_index(seed: int) -> Iterator[CheckResult]:
    for name, h in catalog.subalgebra_pairs():
        g = catalog.lie_algebra(name)
        idx = subgroup_index(g, h)
        u_h = g.p ** len(h)
        u_g = build_enveloping(g).dim
        ok = idx * u_h == u_g
        detail = f"({idx})*({u_h}) = {u_g}"
        if u_g <= 16:
            ind = induced_dimension(g, h, 2)
            oracle = induced_dimension_oracle(g, h, 2)
            ok = ok and ind == oracle
            detail += f"; dim ind V (dim V = 2) = {ind}, linear system gives {oracle}"
        label = "0" if not h else ";".join(",".join(map(str, v)) for v in h)
        yield CheckResult(f"index {name} h={label}", "|G| = (G:G')|G'|", ok, detail)
    action = catalog.group_action("sign-line:3")
    q = max_orbit_index(action, seed=seed, samples=20, e=1)
    report = freeness_check(action, D=5, q=q)
    yield CheckResult(
        "graded freeness sign-line:3", "A free over A^G of rank q(X)",
        report.status == "free" and report.rank == q == 2,
        f"{report.verdict}, max orbit index {q}",
    )


def suite_torus(seed: int) -> Iterator[CheckResult]:
    for label, g in catalog.torus_cases():
        t = is_torus(g)
        s = semisimplicity_oracle(build_enveloping(g))
        yield CheckResult(
            f"torus criterion {label}", "u(g) semisimple <=> g torus", t == s,
            f"is_torus={t}, semisimple={s}",
        )
    w = build_wn(1, 2)
    action = adjoint_action(w)
    stab = stabilizer(action, RationalPoint(GF(2), (0, 1)))
    h = w.algebra.subalgebra(stab.kernel)
    yield CheckResult(
        "regular stabilizer W_1 p=2 at x1*d1", "u(g_x) semisimple <=> g_x torus",
        stab.codim == 1 and is_torus(h) and semisimplicity_oracle(build_enveloping(h)),
        f"g_x = span{{{';'.join(','.join(map(str, v)) for v in stab.kernel)}}}, codim {stab.codim}",
    )


def suite_counterexample(seed: int) -> Iterator[CheckResult]:
    action = catalog.group_action("counterexample:2.remark")
    inv = constant_invariants(action)
    ring = action.ring
    expected = [ring.one(), ring.gen(0) ** 2]
    spans = inv.all_elements() == expected
    report = freeness_check(action)
    yield CheckResult(
        "x -> -x on F_3[x]/(x^3)", "A^G = k + k x^2, A not free over A^G",
        spans and report.status == "not free",
        f"A^G = span{{{', '.join(map(str, inv.all_elements()))}}}; {report.verdict}: {report.reason}",
    )


def suite_premet(seed: int, pairs: int = 50) -> Iterator[CheckResult]:
    for n, p in WN_CONFIGS:
        F = GF(p, 4)
        w = build_wn(n, p)
        action = adjoint_action(w)
        rng = stream_rng(seed, f"premet:{n}:{p}")
        done = bad = 0
        while done < pairs:
            D = [int(c) for c in rng.integers(0, F.q, size=w.dim)]
            if char_poly_invariants_at(D, n, p, F)[0] == 0:
                continue
            kernel = stabilizer(action, RationalPoint(F, D)).kernel
            coeffs = rng.integers(0, F.q, size=len(kernel))
            Dprime = [int(c) for c in linalg.lincomb(F, coeffs, list(kernel))]
            try:
                ok = premet_identity_check(n, p, D, Dprime, F).ok
            except PreconditionError:
                ok = False
            done += 1
            bad += not ok
        yield CheckResult(
            f"premet identity W_{n} p={p}", "sum_i (d_D psi_i)(D') D^(p^i) = -psi_0(D) D'",
            bad == 0, f"{pairs - bad}/{pairs} pairs over GF({p}^4)",
        )


SUITES: dict[str, Callable[[int], Iterator[CheckResult]]] = {
    "hochschild": suite_hochschild,
    "charpoly": suite_charpoly,
    "wn-invariants": suite_wn_invariants,
    "index": suite_index,
    "torus": suite_torus,
    "counterexample": suite_counterexample,
    "premet": suite_premet,
}


def run_suite(name: str, seed: int = 0) -> VerificationSuiteResult:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    results = []
    for suite in names:
        results.extend(SUITES[suite](seed))
    return VerificationSuiteResult(tuple(results))
