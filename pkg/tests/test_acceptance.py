"""Acceptance gate: one test per criterion, each reporting a pass/fail line with its timing.

Run directly (``python tests/test_acceptance.py``) or through pytest; in the
latter case the lines are printed in the terminal summary.
"""

from __future__ import annotations

import subprocess
import sys
import time
from contextlib import contextmanager


from modinv import catalog, linalg
from modinv.actions import RationalPoint, adjoint_action, estimate_c_g, stabilizer
from modinv.derivations import bracket, build_wn, fd_bracket, fd_power, p_power
from modinv.field import GF, stream_rng
from modinv.finite_groups import constant_invariants, freeness_check, max_orbit_index
from modinv.groupscheme import build_enveloping, is_torus, semisimplicity_oracle, subgroup_index
from modinv.invariants import (
    char_poly_invariants_at,
    char_poly_invariants_symbolic,
    check_generation,
    freeness_monomial_check,
    premet_identity_check,
    psi_on_action,
)
from modinv.poly import TruncatedAlgebra
from modinv.verify import random_derivation, random_element

REPORT: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        REPORT.append(f"[{status}] criterion {number:>2}: {title} -- {timing}")
        print(REPORT[-1])
    assert within, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


HOCHSCHILD = [(1, 2), (1, 3), (2, 2), (1, 5)]
WN = [(1, 2), (1, 3), (2, 2)]


def test_criterion_01_hochschild_power():
    with criterion(1, "fd_power equals p-fold composition, 100 samples x 4 configs", 10):
        for n, p in HOCHSCHILD:
            B = TruncatedAlgebra(n, p)
            rng = stream_rng(0, f"acceptance-1:{n}:{p}")
            for _ in range(100):
                f, D = random_element(B, rng), random_derivation(B, rng)
                assert fd_power(f, D) == p_power(f * D)


def test_criterion_02_bracket_formula():
    with criterion(2, "fd_bracket equals the commutator, 100 samples x 4 configs", 5):
        for n, p in HOCHSCHILD:
            B = TruncatedAlgebra(n, p)
            rng = stream_rng(0, f"acceptance-2:{n}:{p}")
            for _ in range(100):
                f = random_element(B, rng)
                D, E = random_derivation(B, rng), random_derivation(B, rng)
                assert fd_bracket(f, D, E) == bracket(f * D, E)


def test_criterion_03_charpoly_shape():
    with criterion(3, "characteristic polynomial vanishing pattern, symbolic and 100 points", 60):
        for n, p in WN:
            psi = char_poly_invariants_symbolic(n, p)  # raises on any stray coefficient
            assert len(psi.psi) == n
            assert all(not f.is_zero() for f in psi.psi)
        F = GF(2, 4)
        w = build_wn(2, 2)
        psi = char_poly_invariants_symbolic(2, 2)
        rng = stream_rng(0, "acceptance-3")
        for _ in range(100):
            D = [int(c) for c in rng.integers(0, F.q, size=w.dim)]
            cp = linalg.charpoly(F, w.matrix(F, D))
            assert all(c == 0 for j, c in enumerate(cp) if j not in (1, 2, 4))
            assert [cp[1], cp[2]] == [f.evaluate(F, D) for f in psi.psi]


def test_criterion_04_psi_invariance():
    with criterion(4, "rho(e_j)(psi_i) = 0 symbolically", 60):
        for n, p in WN:
            action = adjoint_action(build_wn(n, p))
            for f in psi_on_action(char_poly_invariants_symbolic(n, p), action):
                assert all(D(f).is_zero() for D in action.rho)


def test_criterion_05_generation_and_freeness():
    with criterion(5, "A^g generated by A^(p) and psi, psi-monomials free", 300):
        for n, p, D in [(1, 2, 6), (1, 3, 6), (2, 2, 4)]:
            action = adjoint_action(build_wn(n, p))
            psi = psi_on_action(char_poly_invariants_symbolic(n, p), action)
            report = check_generation(action, psi, D)
            assert report.verdicts == ["generated"] * (D + 1)
            assert freeness_monomial_check(psi, D).ok


def test_criterion_06_regular_codimension():
    with criterion(6, "estimate_c_g = dim g - n with 200 samples over F_{p^4}", 30):
        for n, p in WN:
            w = build_wn(n, p)
            assert estimate_c_g(adjoint_action(w), seed=0, samples=200, e=4).estimate == w.dim - n


def test_criterion_07_index_law():
    with criterion(7, "subgroup_index * |u(h)| = |u(g)| on the catalog"):
        pairs = catalog.subalgebra_pairs()
        assert len(pairs) >= 10
        for name, h in pairs:
            g = catalog.lie_algebra(name)
            assert subgroup_index(g, h) * g.p ** len(h) == build_enveloping(g).dim


def test_criterion_08_torus_equivalence():
    with criterion(8, "is_torus agrees with semisimplicity of u(g)"):
        seen = {True: 0, False: 0}
        for _, g in catalog.torus_cases():
            t = is_torus(g)
            assert t == semisimplicity_oracle(build_enveloping(g))
            seen[t] += 1
        assert seen[True] >= 2 and seen[False] >= 3


def test_criterion_09_counterexample():
    with criterion(9, "x -> -x on k[x]/(x^3): A^G = span{1, x^2}, not free"):
        action = catalog.group_action("counterexample:2.remark")
        x = action.ring.gen(0)
        assert constant_invariants(action).all_elements() == [action.ring.one(), x**2]
        assert freeness_check(action).verdict == "not free"


def test_criterion_10_premet_identity():
    with criterion(10, "premet identity on 50 centralizer pairs x 3 configs", 60):
        for n, p in WN:
            F = GF(p, 4)
            w = build_wn(n, p)
            action = adjoint_action(w)
            rng = stream_rng(0, f"acceptance-10:{n}:{p}")
            done = 0
            while done < 50:
                D = [int(c) for c in rng.integers(0, F.q, size=w.dim)]
                if char_poly_invariants_at(D, n, p, F)[0] == 0:
                    continue
                kernel = stabilizer(action, RationalPoint(F, D)).kernel
                coeffs = rng.integers(0, F.q, size=len(kernel))
                Dp = [int(c) for c in linalg.lincomb(F, coeffs, list(kernel))]
                assert premet_identity_check(n, p, D, Dp, F).ok
                done += 1


def test_criterion_11_graded_freeness():
    with criterion(11, "x -> -x on k[x], p=3: graded free of rank 2 = max orbit index"):
        action = catalog.group_action("sign-line:3")
        q = max_orbit_index(action, seed=0, samples=20, e=1)
        report = freeness_check(action, D=5, q=q)
        assert q == 2 and report.verdict == "free of rank 2"


def test_criterion_12_determinism():
    with criterion(12, "verify --suite all --seed 0 is byte-identical across runs"):
        cmd = [sys.executable, "-m", "modinv.cli", "verify", "--suite", "all", "--seed", "0"]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first and first == second
        assert b"\tfail\t" not in first


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
