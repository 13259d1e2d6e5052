import pytest

from eulerwedge.catalog import (FAMILIES, algebra_by_name, conformal_center_case, orthogonal_pair_representatives,
                                realize, so22_model, table_hermitian_tube, table_simple_3_graded)
from eulerwedge.cones import classify_pair
from eulerwedge.errors import UnsupportedFamily
from eulerwedge.liecore import grading_violations, is_euler, is_orthogonal_pair, sl2_triple


CASES = [("sl_n_R", [2]), ("sl_n_R", [3]), ("sl_n_R", [4]), ("sp_2n_R", [2]), ("so_p_q", [2, 2]),
         ("so_p_q", [1, 3]), ("sl2_sum_r", [3])]


def test_sl2_realization_gives_h0(s):
    r = realize("sl_n_R", [2])
    assert r.eulers[0].element.matrix.tolist() == s["h0"].matrix.tolist()


@pytest.mark.parametrize("family,params", CASES)
def test_catalog_eulers_certify_exactly(family, params):
    r = realize(family, params)
    for cert in r.eulers:
        assert cert.element.exact
        assert is_euler(cert.element) is not None
        assert grading_violations(cert) == []


def test_sl2_sum_euler_is_diagonal(s):
    r = realize("sl2_sum_r", [3])
    assert r.eulers[0].element.coords.tolist() == list(s["h0"].coords) * 3


@pytest.mark.parametrize("family,params,count", [("sl2_sum_r", [1], 2), ("sl2_sum_r", [2], 3),
                                                 ("so_2_2_via_sl2", [], 4)])
def test_pair_representatives(family, params, count):
    reps = orthogonal_pair_representatives(family, params)
    assert len(reps) == count
    for rep in reps:
        assert is_orthogonal_pair(rep.h, rep.k)
        sl2_triple(rep.h, rep.k)
        assert classify_pair(rep.h, rep.k) is rep.expected


def test_sl2_pairs_are_k0_and_minus_k0(s):
    ks = [rep.k for rep in orthogonal_pair_representatives("sl2_sum_r", [1])]
    assert any(k.equals(s["k0"]) for k in ks)
    assert any(k.equals(-s["k0"]) for k in ks)


def test_so22_model_preserves_brackets():
    assert so22_model().bracket_preserved()


def test_conformal_center_cases():
    a = conformal_center_case(3)
    assert a.case == "a"
    assert a.z1.is_trivial and a.z2.order == 2 and a.z3.order == 2 and a.center.order == 2
    b = conformal_center_case(6)
    assert b.case == "b" and b.z1.is_trivial and b.z2.is_trivial and b.z3.is_trivial
    c = conformal_center_case(4)
    assert c.case == "c" and c.z3.is_trivial and c.center.order == 2


def test_tables_are_shipped():
    rows = table_simple_3_graded()
    assert any(r.family == "sl_n_R" and r.constructor_available for r in rows)
    assert any(not r.constructor_available for r in rows)
    assert table_hermitian_tube()


def test_algebra_names_round_trip():
    for name in ["sl2R", "sl_n_R(3)", "sp_2n_R(2)", "so_p_q(2,2)"]:
        assert algebra_by_name(name).name == name
    with pytest.raises(UnsupportedFamily):
        algebra_by_name("e8")
    assert set(FAMILIES) >= {"sl_n_R", "sl2_sum_r"}


def test_so22_boost_is_euler():
    r = realize("so_p_q", [2, 2])
    assert all(is_euler(c.element) for c in r.eulers)


def test_unsupported_family():
    with pytest.raises(UnsupportedFamily):
        realize("e6", [1])
