from fractions import Fraction

import numpy as np
import pytest

from eulerwedge import numerics as nm
from eulerwedge.errors import MalformedInput

Z0 = np.array([[0, 0.5], [-0.5, 0]])


def test_parse_scalar_rational_and_float():
    assert nm.parse_scalar("3/4") == Fraction(3, 4)
    assert nm.parse_scalar("-2") == Fraction(-2)
    assert nm.parse_scalar("0.25") == pytest.approx(0.25)


def test_exact_matrix_is_exact():
    m = nm.exact_matrix([["1/2", 0], [0, "-1/2"]])
    assert nm.is_exact(m)
    assert m[0, 0] == Fraction(1, 2)


def test_mat_exp_zero_is_identity():
    assert np.allclose(nm.mat_exp(np.zeros((2, 2))), np.eye(2))


def test_mat_exp_full_turn_is_minus_identity():
    assert np.allclose(nm.mat_exp(2 * np.pi * Z0), -np.eye(2), atol=1e-12)


def test_mat_exp_quarter_turn():
    assert np.allclose(nm.mat_exp(np.pi * Z0), [[0, 1], [-1, 0]], atol=1e-12)


def test_mat_exp_matches_rotation_formula():
    for t in np.linspace(-7, 7, 11):
        c, s = np.cos(t / 2), np.sin(t / 2)
        assert np.allclose(nm.mat_exp(t * Z0), [[c, s], [-s, c]], atol=1e-12)


def test_polar_unitary_examples():
    assert np.allclose(nm.polar_unitary(np.eye(2)), np.eye(2))
    assert np.allclose(nm.polar_unitary(np.diag([2.0, 0.5])), np.eye(2))
    g = np.array([[0, 1], [-1, 0]]) @ np.diag([2.0, 0.5])
    assert np.allclose(nm.polar_unitary(g), [[0, 1], [-1, 0]])


def test_eig_selfadjoint_examples():
    w, v = nm.eig_selfadjoint(np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(w, [1, 2, 3])
    assert np.allclose(np.abs(v), np.eye(3))
    w, _ = nm.eig_selfadjoint(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1, 1])


def test_exact_linear_algebra():
    a = nm.exact_matrix([[1, 2], [2, 4]])
    assert nm.rank_exact(a) == 1
    ns = nm.nullspace_exact(a)
    assert all(v == 0 for v in nm.exact_dot(a, ns).ravel())
    b = nm.exact_matrix([[2, 1], [1, 1]])
    assert (nm.exact_dot(b, nm.inverse_exact(b)) == nm.exact_identity(2)).all()


def test_matrix_json_round_trip():
    m = np.array([[1 + 2j, -0.5], [0, 3j]])
    back = nm.matrix_from_json(nm.matrix_to_json(m))
    assert np.allclose(back, m)


def test_matrix_json_rejects_bad_shape():
    with pytest.raises(MalformedInput):
        nm.matrix_from_json({"rows": 2, "cols": 2, "entries": [[{"re": "1", "im": "0"}]]})


def test_format_float_twelve_digits():
    assert nm.format_float(1 / 3) == "0.333333333333"
    assert nm.format_float(0.0) == "0"
