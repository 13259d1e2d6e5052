import numpy as np
import pytest

from eulerwedge import numerics as nm
from eulerwedge.cones import (ConeClass, MinkowskiForward, ProductCone, Sl2Cone, classify_pair, cone_contains,
                              h_representative, k_j_representative, sl2_cone_contains)
from eulerwedge.liecore import adjoint_apply

from conftest import pair


def test_sl2_cone_membership(s, alg):
    assert sl2_cone_contains(s["z0"])
    assert sl2_cone_contains(alg.zero())
    assert not sl2_cone_contains(s["h0"])


def test_product_and_minkowski_cones(s):
    assert cone_contains(ProductCone((Sl2Cone(1), Sl2Cone(1))), pair(s["z0"], s["z0"]))
    assert cone_contains(MinkowskiForward(3), [1, 0, 0])
    assert not cone_contains(MinkowskiForward(3), [1, 2, 0])


def test_classification_examples(s):
    assert classify_pair(s["h0"], s["k0"]) is ConeClass.POSITIVE_TIMELIKE
    assert classify_pair(h_representative(2), k_j_representative(2, 0)) is ConeClass.NEGATIVE_TIMELIKE
    assert classify_pair(h_representative(2), k_j_representative(2, 1)) is ConeClass.SPACELIKE


def test_k_j_representatives(s):
    assert k_j_representative(1, 1).equals(s["k0"])
    assert k_j_representative(2, 0).equals(pair(-s["k0"], -s["k0"]))
    k = k_j_representative(3, 2)
    coords = list(k.coords)
    q = list(s["k0"].coords)
    assert coords == q + q + [-c for c in q]


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_classes_by_j(r):
    h = h_representative(r)
    for j in range(r + 1):
        c = classify_pair(h, k_j_representative(r, j))
        if j == 0:
            assert c is ConeClass.NEGATIVE_TIMELIKE
        elif j == r:
            assert c is ConeClass.POSITIVE_TIMELIKE
        else:
            assert c is ConeClass.SPACELIKE


def test_cone_is_invariant_under_sampled_adjoint_action(s, alg, rng):
    basis = [alg.basis_element(i) for i in range(alg.dim)]
    for _ in range(20):
        t = rng.uniform(-2, 2)
        x = basis[rng.integers(3)]
        g = nm.mat_exp(t * nm.to_float(x.matrix))
        for _ in range(10):
            # random point of the cone: a^2 + bc <= 0 with b >= 0
            a, u = rng.normal(), rng.uniform(0.1, 3)
            b = u
            c = -(a * a) / u - rng.uniform(0, 2)
            p = alg.from_matrix(np.array([[a, b], [c, -a]]))
            assert sl2_cone_contains(adjoint_apply(g, p), nm.Tolerance(1e-7, 1e-7))


def test_cone_is_pointed(alg, rng):
    for _ in range(50):
        a, b, c = rng.normal(size=3)
        p = alg.from_matrix(np.array([[a, b], [c, -a]]))
        assert not (sl2_cone_contains(p) and sl2_cone_contains(-p))
