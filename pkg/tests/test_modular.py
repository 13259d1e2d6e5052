import math

import numpy as np
import pytest

from eulerwedge.errors import PairAxiomError
from eulerwedge.modular import (AntiunitaryOp, ModularPair, RealSubspace, bgl_subspace, borchers_relations_check,
                                borchers_trace_obstruction, conjugate_subspace, counterexample_family, delta_power,
                                intersection_standard_probe, is_cyclic, is_separating, is_standard, modular_data,
                                orthogonality_check, subspace_equal, subspace_from_pair, symplectic_complement,
                                tomita_matrix)
from eulerwedge.nets import naturality_residual
from eulerwedge.verify import _random_unitary, random_standard_subspace

SWAP = np.array([[0, 1], [1, 0]], dtype=complex)


def mixed():
    return RealSubspace(2, [[1, 0], [0, 1j]])


def test_standardness_flags():
    assert is_standard(RealSubspace.real_part(3))
    full = RealSubspace(2, [[1, 0], [1j, 0], [0, 1], [0, 1j]])
    assert is_cyclic(full) and not is_separating(full)
    assert is_standard(mixed())


def test_modular_data_of_real_part():
    p = modular_data(RealSubspace.real_part(3))
    assert np.allclose(p.delta, np.eye(3))
    assert np.allclose(p.j.u, np.eye(3))


def test_modular_data_of_rotated_line():
    theta = 0.7
    p = modular_data(RealSubspace(1, [[np.exp(1j * theta)]]))
    assert np.allclose(p.delta, [[1]])
    assert np.allclose(p.j.u, [[np.exp(2j * theta)]])


def test_modular_data_of_mixed_subspace():
    p = modular_data(mixed())
    assert np.allclose(p.delta, np.eye(2))
    assert np.allclose(p.j.u, np.diag([1, -1]))


def test_subspace_from_pair_examples():
    assert subspace_equal(subspace_from_pair(ModularPair(np.eye(2), AntiunitaryOp(np.eye(2)))),
                          RealSubspace.real_part(2))
    lam = 3.0
    h = subspace_from_pair(ModularPair(np.diag([lam, 1 / lam]).astype(complex), AntiunitaryOp(SWAP)))
    assert h.dim == 2 and is_standard(h)
    assert np.allclose(modular_data(h).delta, np.diag([lam, 1 / lam]))


def test_subspace_from_pair_rejects_bad_pair():
    with pytest.raises(PairAxiomError):
        subspace_from_pair(ModularPair(np.diag([2.0, 1.0]).astype(complex), AntiunitaryOp(np.eye(2))))


def test_complements(rng):
    real = RealSubspace.real_part(3)
    assert subspace_equal(symplectic_complement(real), real)
    for _ in range(20):
        h = random_standard_subspace(rng, int(rng.integers(1, 5)))
        assert subspace_equal(symplectic_complement(symplectic_complement(h)), h)
        p, q = modular_data(h), modular_data(symplectic_complement(h))
        assert np.allclose(q.delta, np.linalg.inv(p.delta), atol=1e-7)
        assert np.allclose(q.j.u, p.j.u, atol=1e-7)


def test_conjugation_by_unitaries(rng):
    h = random_standard_subspace(rng, 3)
    assert subspace_equal(conjugate_subspace(np.eye(3), h), h)
    u = _random_unitary(rng, 3)
    p = modular_data(h)
    moved = modular_data(conjugate_subspace(u, h))
    assert np.allclose(moved.delta, u @ p.delta @ u.conj().T, atol=1e-7)
    assert subspace_equal(conjugate_subspace(p.j, h), symplectic_complement(h))


def test_orthogonality_examples(rng):
    h = random_standard_subspace(rng, 2)
    assert not orthogonality_check(h, h)
    c = counterexample_family(np.array([[1.0]]))
    assert orthogonality_check(c.h1, c.h2)
    real = RealSubspace.real_part(2)
    assert orthogonality_check(real, symplectic_complement(real))
    lam = 2.0
    hh = subspace_from_pair(ModularPair(np.diag([lam, 1 / lam]).astype(complex), AntiunitaryOp(SWAP)))
    assert not orthogonality_check(hh, symplectic_complement(hh))


def test_counterexample_family():
    c = counterexample_family(np.array([[0.0]]))
    assert np.allclose(c.delta1, np.eye(2)) and np.allclose(c.delta2, np.eye(2))
    c = counterexample_family(np.array([[1.0]]))
    want = np.array([[math.cosh(1), -1j * math.sinh(1)], [1j * math.sinh(1), math.cosh(1)]])
    assert np.allclose(c.delta2, want, atol=1e-9)
    assert c.orthogonality_residual < 1e-9
    c = counterexample_family(np.diag([1.0, 2.0]))
    assert c.orthogonality_residual < 1e-9 and c.closed_form_residual < 1e-9


def test_intersection_probe():
    h = mixed()
    rows = intersection_standard_probe(h, h, [0.0])
    assert rows[0]["delta2_H1_cap_H2"]["standard"]
    assert rows[0]["delta2_H1_cap_H2"]["dim"] == 2
    c = counterexample_family(np.array([[1.0]]))
    rows = intersection_standard_probe(c.h1, c.h2, [0.0, 0.5])
    assert {"delta2_H1_cap_H2", "delta1_H2_cap_H1", "delta1_H2_cap_H2"} <= set(rows[0])


def test_bgl_examples(rng):
    assert subspace_equal(bgl_subspace(np.zeros((3, 3)), AntiunitaryOp(np.eye(3))), RealSubspace.real_part(3))
    a = 0.3
    h = bgl_subspace(np.diag([1j * a, -1j * a]), AntiunitaryOp(SWAP))
    assert np.allclose(modular_data(h).delta, np.diag([np.exp(-2 * np.pi * a), np.exp(2 * np.pi * a)]))
    phi = _random_unitary(rng, 2)
    assert naturality_residual(np.diag([1j * a, -1j * a]), AntiunitaryOp(SWAP), phi) < 1e-8


def test_borchers_checks():
    p = ModularPair(np.eye(2, dtype=complex), AntiunitaryOp(np.eye(2)))
    assert borchers_relations_check(p, np.zeros((2, 2)))["holds"]
    assert not borchers_relations_check(p, np.diag([1.0, 0.0]))["holds"]
    out = borchers_trace_obstruction((np.diag([1, -1]), np.zeros((2, 2))), (np.diag([1, 0]), np.zeros((2, 2))))
    assert out["relation_forces_zero_trace"] and out["P_nonzero_psd_has_positive_trace"]
    assert not out["consistent"]


def test_round_trip_and_tomita_involution(rng):
    for _ in range(50):
        h = random_standard_subspace(rng, int(rng.integers(1, 7)))
        p = modular_data(h)
        assert subspace_equal(subspace_from_pair(p), h)
        m = tomita_matrix(h)
        # S v = M conj(v), so S^2 = M conj(M)
        assert np.allclose(m @ m.conj(), np.eye(m.shape[0]), atol=1e-7)


def test_modular_invariance(rng):
    h = random_standard_subspace(rng, 4)
    p = modular_data(h)
    for t in (1.0, -1.0, 0.37, -0.37):
        assert subspace_equal(conjugate_subspace(delta_power(p.delta, 1j * t), h), h)
