import math

import numpy as np
import pytest

from eulerwedge import numerics as nm
from eulerwedge.cones import Sl2Cone, TrivialCone
from eulerwedge.covergroup import CoveringElement, central_element, rotation_lift, tag_by_name, winding_of_exponential
from eulerwedge.errors import NonCentral
from eulerwedge.verify import factorization_oracle
from eulerwedge.wedges import (Interval, WedgeGroup, act, complement, covering_interval_act, in_compression_semigroup,
                               interval_of_euler, leq_sl2, minkowski_positivity_region, mobius, product_wedge_region,
                               rindler_boost, twisted_complement)

from conftest import pair

INF = math.inf


@pytest.fixture(scope="module")
def grp():
    return WedgeGroup("PSL2R~")


def random_group_element(tag, rng, s):
    x = s["h0"] * rng.normal() + s["e0"] * rng.normal() + s["z0"] * rng.normal(scale=3)
    return winding_of_exponential(tag, x, 1.0)


def test_identity_action(grp):
    w0 = grp.base_wedge()
    assert act(grp.identity(), w0).equals(w0)


def test_rotation_moves_h0_to_k0(grp, s):
    g = rotation_lift(grp.tag, -math.pi / 2)
    w = act(g, grp.base_wedge())
    assert w.x.equals(s["k0"])
    assert w.is_valid()


def test_parity_coset_gives_complement(grp):
    w0 = grp.base_wedge()
    assert act(w0.sigma, w0).equals(complement(w0))


def test_double_complement(grp):
    w0 = grp.base_wedge()
    assert complement(complement(w0)).equals(w0)


def test_complement_commutes_with_action(grp, s, rng):
    w0 = grp.base_wedge()
    for _ in range(50):
        g = random_group_element(grp.tag, rng, s)
        assert complement(act(g, w0)).equals(act(g, complement(w0)))


def test_twisted_complement(grp):
    w0 = grp.base_wedge()
    e = CoveringElement.identity(grp.tag)
    assert twisted_complement(w0, e).equals(complement(w0))
    with pytest.raises(NonCentral):
        twisted_complement(w0, rotation_lift(grp.tag, 0.4))


def test_compression_semigroup_examples():
    assert in_compression_semigroup(np.eye(2))
    assert in_compression_semigroup(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not in_compression_semigroup(np.array([[1.0, -1.0], [0.0, 1.0]]))
    assert in_compression_semigroup(np.array([[1.0, -1.0], [0.0, 1.0]]), Sl2Cone(-1))
    assert not in_compression_semigroup(np.array([[1.0, 1.0], [0.0, 1.0]]), TrivialCone())
    assert in_compression_semigroup(np.diag([2.0, 0.5]), TrivialCone())


def test_order_reflexive_and_generators():
    eye = np.eye(2)
    assert leq_sl2(eye, eye)
    assert leq_sl2(np.array([[1.0, 1.0], [0.0, 1.0]]), eye)
    assert not leq_sl2(np.array([[1.0, -1.0], [0.0, 1.0]]), eye)


def test_order_agrees_with_oracle_on_samples(rng):
    for _ in range(40):
        m = rng.normal(size=(2, 2))
        if abs(np.linalg.det(m)) < 0.2:
            continue
        m = m / math.sqrt(abs(np.linalg.det(m)))
        if np.linalg.det(m) < 0:
            m[:, 0] *= -1
        assert in_compression_semigroup(m) == factorization_oracle(m)


def test_order_is_invariant(rng):
    for _ in range(50):
        g, a, b = (_sl2(rng) for _ in range(3))
        assert leq_sl2(g @ a, g @ b) == leq_sl2(a, b)


def test_order_is_transitive(rng):
    for _ in range(50):
        s1, s2 = (_member(rng) for _ in range(2))
        g3 = _sl2(rng)
        g2, g1 = g3 @ s2, g3 @ s2 @ s1
        assert leq_sl2(g1, g2) and leq_sl2(g2, g3) and leq_sl2(g1, g3)


def _sl2(rng):
    m = rng.normal(size=(2, 2))
    d = np.linalg.det(m)
    if d < 0:
        m[:, 0] *= -1
    return m / math.sqrt(abs(d))


def _member(rng):
    t, s, lam = rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0.3, 3)
    return np.array([[1, t], [0, 1]]) @ np.diag([lam, 1 / lam]) @ np.array([[1, 0], [s, 1]])


def test_rindler_boost_positivity():
    h = rindler_boost(3)
    assert minkowski_positivity_region(h, [0, 1, 0])
    assert not minkowski_positivity_region(h, [2, 1, 0])
    assert not minkowski_positivity_region(h, [0, 0, 0])


def test_intervals_of_euler_elements(s):
    assert interval_of_euler(s["h0"]).close_to(Interval("circle", 0, INF))
    assert interval_of_euler(s["k0"]).close_to(Interval("circle", -1, 1))
    assert interval_of_euler(-s["h0"]).close_to(Interval("circle", -INF, 0))


def test_interval_complement(s):
    i = interval_of_euler(s["h0"])
    assert i.complement().close_to(interval_of_euler(-s["h0"]))
    assert i.contains(1) and not i.contains(-1)


def test_mobius_is_exact():
    g = nm.exact_matrix([[1, 1], [0, 1]])
    assert mobius(g, nm.parse_scalar("1/3")) == nm.parse_scalar("4/3")


def test_covering_interval_action():
    tag = tag_by_name("PSL2R~")
    base = Interval("line", 0, math.pi)
    out = covering_interval_act(central_element(tag, [1]), base)
    assert out.close_to(Interval("line", 2 * math.pi, 3 * math.pi))
    assert covering_interval_act(CoveringElement.identity(tag), base).close_to(base)


def test_dilation_fixes_base_interval(s):
    tag = tag_by_name("PSL2R~")
    base = Interval("line", 0, math.pi)
    for t in (-2.0, -0.3, 0.5, 3.0):
        g = winding_of_exponential(tag, s["h0"], t)
        assert covering_interval_act(g, base).close_to(base, 1e-8)


def test_product_wedge_regions(s):
    def region(h):
        return product_wedge_region(h)

    a, b = region(pair(s["h0"], -s["h0"]))
    assert a.close_to(Interval("circle", 0, INF)) and b.close_to(Interval("circle", -INF, 0))
    assert all(i.close_to(Interval("circle", -1, 1)) for i in region(pair(s["k0"], s["k0"])))
    assert all(i.close_to(Interval("circle", 0, INF)) for i in region(pair(s["h0"], s["h0"])))


def test_interval_json_round_trip():
    i = Interval("circle", 2, -1)
    assert Interval.from_json(i.to_json()).close_to(i)
    assert i.wraps
