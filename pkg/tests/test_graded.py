import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from modinv.derivations import Derivation, apply
from modinv.graded import GradedSubspace, filtered_kernel, graded_kernel, span_dimension
from modinv.poly import PolyRing
from modinv.verify import random_element


def test_zero_operator_kernel_is_everything():
    R = PolyRing(2, 3)
    K = graded_kernel(R, 1, [lambda f: R.zero()])
    assert K.dim == 2


def test_derivation_kernel_by_hand():
    R = PolyRing(2, 5)
    x, y = R.gens()
    D = Derivation(R, (y, R.zero()))  # x -> y, y -> 0
    K = graded_kernel(R, 1, [lambda f: apply(D, f)])
    assert K.basis == (y,)


def test_trivially_intersecting_kernels():
    R = PolyRing(2, 3)
    x, y = R.gens()
    d1 = Derivation.partial(R, 0)
    d2 = Derivation.partial(R, 1)
    K = graded_kernel(R, 1, [lambda f: apply(d1, f), lambda f: apply(d2, f)])
    assert K.dim == 0


def test_filtered_kernel_contains_constants():
    R = PolyRing(1, 3)
    d = Derivation.partial(R, 0)
    K = filtered_kernel(R, 4, [lambda f: apply(d, f)])
    # constants and x^3
    assert K.dim == 2
    assert K.contains(R.gen(0) ** 3) and K.contains(R.one())


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32 - 1))
def test_canonical_basis_is_idempotent(p, seed):
    R = PolyRing(3, p)
    rng = np.random.default_rng(seed)
    polys = [random_element(R, rng, 2).homogeneous_part(2) for _ in range(4)]
    V = GradedSubspace.span(R, 2, polys)
    assert V.canonical().basis == V.basis
    assert V.dim == span_dimension(R, polys)
    lead = V.leading_monomials()
    assert len(set(lead)) == len(lead)
    for f in V.basis:
        assert f.terms[f.leading_monomial()] == 1
    assert all(V.contains(f) for f in polys)
