"""Hypothesis-driven checks of algebraic identities."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from eulerwedge import numerics as nm
from eulerwedge.covergroup import rotation_lift, tag_by_name
from eulerwedge.liecore import bracket, sl2
from eulerwedge.modular import modular_data, subspace_equal, subspace_from_pair, symplectic_complement
from eulerwedge.verify import _random_unitary, random_standard_subspace
from eulerwedge.wedges import Interval, in_compression_semigroup, mobius

ALG = sl2()
rational = st.fractions(min_value=-5, max_value=5, max_denominator=12)
element = st.tuples(rational, rational, rational).map(lambda c: ALG.element(list(c)))
small = st.floats(-5, 5, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


@given(element, element)
def test_bracket_antisymmetric(x, y):
    assert bracket(x, y).equals(-bracket(y, x))


@given(element, element, element)
def test_jacobi_identity(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero() and total.exact


@settings(max_examples=50)
@given(seeds)
def test_exp_inverse(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(4, 4))
    x *= rng.uniform(0, 5) / np.linalg.norm(x, 2)
    assert np.allclose(nm.mat_exp(x) @ nm.mat_exp(-x), np.eye(4), atol=1e-8)


@settings(max_examples=50)
@given(seeds)
def test_polar_recovers_unitary(seed):
    rng = np.random.default_rng(seed)
    u = _random_unitary(rng, 3)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    p = a @ a.conj().T + 0.1 * np.eye(3)
    assert np.allclose(nm.polar_unitary(u @ p), u, atol=1e-8)


@given(st.lists(small, min_size=3, max_size=3))
def test_covering_group_associative(angles):
    tag = tag_by_name("PSL2xPSL2~")
    a, b, c = (rotation_lift(tag, t, block=i % 2) for i, t in enumerate(angles))
    assert ((a * b) * c).equals(a * (b * c))
    assert (a * a.inverse()).equals(a.inverse() * a)


def _sl2_exact(a, b, c):
    # [[a, b], [c, (1 + b c) / a]]
    return nm.exact_matrix([[a, b], [c, (1 + b * c) / a]])


nonzero = rational.filter(lambda v: v != 0)


@given(nonzero, rational, rational, nonzero, rational, rational, rational)
def test_mobius_is_an_action(a1, b1, c1, a2, b2, c2, x):
    g1, g2 = _sl2_exact(a1, b1, c1), _sl2_exact(a2, b2, c2)
    y = mobius(g2, x)
    if y in (float("inf"), float("-inf")):
        return
    left, right = mobius(nm.exact_dot(g1, g2), x), mobius(g1, y)
    if isinstance(left, Fraction) and isinstance(right, Fraction):
        assert left == right


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_circle_complement_is_involution(a, b):
    if a == b:
        return
    i = Interval("circle", a, b)
    assert i.complement().complement().close_to(i)


member = st.tuples(st.floats(0, 4), st.floats(0, 4), st.floats(0.2, 5))


def _member(t, s, lam):
    return np.array([[1, t], [0, 1]]) @ np.diag([lam, 1 / lam]) @ np.array([[1, 0], [s, 1]])


@given(member, member)
def test_compression_semigroup_closed(p, q):
    assert in_compression_semigroup(_member(*p))
    assert in_compression_semigroup(_member(*p) @ _member(*q))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 5))
def test_modular_round_trip(seed, n):
    h = random_standard_subspace(np.random.default_rng(seed), n)
    p = modular_data(h)
    assert subspace_equal(subspace_from_pair(p), h)
    assert subspace_equal(symplectic_complement(symplectic_complement(h)), h)
