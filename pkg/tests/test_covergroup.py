import math

import numpy as np
import pytest

from eulerwedge.catalog import orthogonal_pair_representatives
from eulerwedge.covergroup import (CoveringElement, Lattice, central_element, commutator_identity_check, partial_h,
                                   rotation_lift, tag_by_name, winding_of_exponential, z_subgroups, zeta)
from eulerwedge.cones import sl2_sum_element
from eulerwedge.errors import NotInStabilizer

from conftest import pair

PSL, SL, PP = (tag_by_name(n) for n in ("PSL2R~", "SL2R~", "PSL2xPSL2~"))


def test_zero_exponential_is_identity(alg):
    g = winding_of_exponential(PSL, alg.zero(), 1.0)
    assert g.equals(CoveringElement.identity(PSL))
    assert g.center_coords() == (0,)


def test_full_turn_generates_center(s):
    g = winding_of_exponential(PSL, s["z0"], 2 * math.pi)
    assert np.allclose(g.base, np.eye(2), atol=1e-9)
    assert g.center_coords() == (1,)
    assert g.is_central()


def test_sl2_full_turn_is_minus_identity(s):
    g = winding_of_exponential(SL, s["z0"], 2 * math.pi)
    assert np.allclose(g.base, -np.eye(2), atol=1e-9)
    assert g.rotation_number() == pytest.approx(0.5)


def test_zeta_values(s):
    assert list(zeta(PSL, s["h0"], s["k0"]).reported()) == [1]
    assert list(zeta(PSL, s["h0"], -s["k0"]).reported()) == [-1]


def test_zeta_so22_normalization(s):
    assert list(zeta(PP, pair(s["h0"], s["h0"]), pair(s["k0"], s["k0"])).reported()) == [1, 0]
    assert list(zeta(PP, pair(s["h0"], s["h0"]), pair(s["k0"], -s["k0"])).reported()) == [0, 1]


def test_zeta_inverse_symmetries():
    for rep in orthogonal_pair_representatives("sl2_sum_r", [2]):
        z = zeta(PP, rep.h, rep.k)
        assert z.inverse().equals(zeta(PP, rep.h, -rep.k))
        assert z.inverse().equals(zeta(PP, -rep.h, rep.k))


def test_partial_h_examples(s):
    g = winding_of_exponential(PSL, s["h0"], 0.8)
    assert partial_h(PSL, s["h0"], g).equals(CoveringElement.identity(PSL))
    assert partial_h(PSL, s["h0"], rotation_lift(PSL, math.pi)).center_coords() == (1,)
    assert partial_h(PSL, s["h0"], rotation_lift(PSL, 2 * math.pi)).center_coords() == (2,)


def test_partial_h_rejects_non_stabilizer(s):
    with pytest.raises(NotInStabilizer):
        partial_h(PSL, s["h0"], rotation_lift(PSL, 0.3))


def test_partial_h_is_homomorphism_on_stabilizer(s, rng):
    for _ in range(10):
        g1 = winding_of_exponential(PSL, s["h0"], rng.uniform(-3, 3)) * central_element(PSL, [int(rng.integers(-3, 4))])
        g2 = winding_of_exponential(PSL, s["h0"], rng.uniform(-3, 3)) * central_element(PSL, [int(rng.integers(-3, 4))])
        lhs = partial_h(PSL, s["h0"], g1 * g2)
        rhs = partial_h(PSL, s["h0"], g1) * partial_h(PSL, s["h0"], g2)
        assert lhs.equals(rhs)


def test_winding_additivity(s):
    for z in (s["z0"], 2 * s["z0"]):
        for t in (0.7, 2.5, math.pi):
            once = winding_of_exponential(PSL, z, t)
            assert winding_of_exponential(PSL, z, 2 * t).equals(once * once)


def test_z_subgroups(s):
    z = z_subgroups(SL, s["h0"])
    assert z.z1.basis == ((2,),) and z.z2.basis == ((2,),) and z.z3.basis == ((1,),)
    z = z_subgroups(PSL, s["h0"])
    assert z.z2.basis == ((2,),) and z.z3.basis == ((1,),)
    z = z_subgroups(PP, pair(s["h0"], -s["h0"]))
    assert z.z2 == Lattice.generated_by(2, [[2, 0], [0, 2]])


@pytest.mark.parametrize("name", ["SL2R~", "PSL2R~", "PSL2xPSL2~", "PSL2^3~"])
def test_z_chain_and_index(s, name):
    tag = tag_by_name(name)
    h = s["h0"] if tag.blocks == 1 else sl2_sum_element([s["h0"]] * tag.blocks)
    z = z_subgroups(tag, h)
    assert z.z1 <= z.z2 <= z.z3
    assert z.z2.index_in(z.z3) in (1, 2)


def test_z3_generated_by_zetas(s):
    z = z_subgroups(PP, pair(s["h0"], s["h0"]))
    gens = [zeta(PP, rep.h, rep.k).center_coords() for rep in orthogonal_pair_representatives("sl2_sum_r", [2])]
    assert Lattice.generated_by(2, [list(g) for g in gens]) == z.z3


def test_commutator_identity(s):
    assert commutator_identity_check(s["h0"], s["k0"])
    c = commutator_identity_check(s["h0"], -s["k0"])
    assert c and c.zeta_coords == (-1,)
    assert commutator_identity_check(pair(s["h0"], s["h0"]), pair(s["k0"], -s["k0"]))


def test_group_law(rng):
    for _ in range(10):
        xs = [rotation_lift(PP, rng.uniform(-9, 9), block=int(rng.integers(2))) for _ in range(3)]
        assert ((xs[0] * xs[1]) * xs[2]).equals(xs[0] * (xs[1] * xs[2]))
        assert (xs[0] * xs[0].inverse()).equals(CoveringElement.identity(PP))


def test_center_commutes_with_samples(s, rng):
    z = central_element(PSL, [3])
    for _ in range(50):
        x = s["h0"] * rng.normal() + s["e0"] * rng.normal() + s["z0"] * rng.normal()
        g = winding_of_exponential(PSL, x, 1.0)
        assert (z * g).equals(g * z)


def test_json_round_trip(s):
    g = winding_of_exponential(PP, pair(s["z0"], s["h0"]), 9.0)
    assert CoveringElement.from_json(g.to_json()).equals(g)
