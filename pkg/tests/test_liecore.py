import numpy as np
import pytest

from eulerwedge import numerics as nm
from eulerwedge.liecore import (adjoint_apply, bracket, cartan_theta, exp_ad_quarter_turns, grading_violations,
                                is_euler, is_orthogonal_pair, is_regular, sl2_triple, tau_apply, tau_matrix)
from eulerwedge.errors import NotSl2Triple

from conftest import pair


def test_brackets(s):
    assert bracket(s["h0"], s["k0"]).equals(s["z0"])
    assert bracket(s["h0"], s["h0"]).is_zero()
    assert bracket(s["z0"], s["h0"]).equals(-s["k0"])


def test_brackets_are_exact(s):
    assert bracket(s["h0"], s["k0"]).exact


def test_euler_detection(s, alg):
    assert is_euler(s["h0"]) is not None
    assert is_euler(s["k0"]) is not None
    assert is_euler(alg.zero()) is None
    assert is_euler(s["z0"]) is None
    assert is_euler(s["e0"]) is None


def test_tau(s):
    assert tau_apply(s["h0"], s["k0"]).equals(-s["k0"])
    assert tau_apply(s["h0"], s["h0"]).equals(s["h0"])
    assert tau_apply(s["h0"], s["z0"]).equals(-s["z0"])


def test_orthogonal_pairs(s):
    assert is_orthogonal_pair(s["h0"], s["k0"])
    assert not is_orthogonal_pair(s["h0"], s["e0"])
    assert not is_orthogonal_pair(s["h0"], s["h0"])


def test_sl2_triples(s):
    assert sl2_triple(s["h0"], s["k0"]).z.equals(s["z0"])
    assert sl2_triple(s["h0"], -s["k0"]).z.equals(-s["z0"])
    t = sl2_triple(pair(s["h0"], s["h0"]), pair(s["k0"], -s["k0"]))
    assert t.z.equals(pair(s["z0"], -s["z0"]))
    with pytest.raises(NotSl2Triple):
        sl2_triple(s["h0"], s["h0"])


def test_cartan_involution(s):
    assert cartan_theta(s["e0"]).equals(-s["f0"])
    assert cartan_theta(s["z0"]).equals(s["z0"])
    assert cartan_theta(s["h0"]).equals(-s["h0"])


def test_adjoint_rotations(s):
    g = nm.mat_exp(-np.pi / 2 * nm.to_float(s["z0"].matrix))
    assert adjoint_apply(g, s["h0"]).equals(s["k0"])
    assert adjoint_apply(np.eye(2), s["z0"]).equals(s["z0"])
    g = nm.mat_exp(np.pi * nm.to_float(s["z0"].matrix))
    assert adjoint_apply(g, s["h0"]).equals(-s["h0"])


def test_exact_quarter_turns_match_float_adjoint(s):
    m = exp_ad_quarter_turns(s["z0"], -1)
    assert nm.is_exact(m)
    k = np.array(nm.exact_dot(m, s["h0"].coords.reshape(-1, 1))).ravel()
    assert list(k) == list(s["k0"].coords)


def test_regularity(s, alg):
    assert is_regular(s["h0"])
    assert is_regular(pair(s["h0"], s["h0"]))
    assert not is_regular(pair(s["h0"], alg.zero()))


@pytest.mark.parametrize("name", ["h0", "k0"])
def test_tau_is_involutive_automorphism(s, alg, name):
    t = tau_matrix(s[name])
    assert (nm.exact_dot(t, t) == nm.exact_identity(alg.dim)).all()
    basis = [alg.basis_element(i) for i in range(alg.dim)]
    for x in basis:
        for y in basis:
            lhs = tau_apply(s[name], bracket(x, y))
            rhs = bracket(tau_apply(s[name], x), tau_apply(s[name], y))
            assert lhs.equals(rhs)


def test_grading_is_respected(s):
    assert grading_violations(is_euler(pair(s["h0"], -s["h0"]))) == []


def test_triple_implies_symmetric_orthogonality(s):
    sl2_triple(s["h0"], s["k0"])
    assert is_orthogonal_pair(s["k0"], s["h0"])
