"""Finite-dimensional standard subspaces and their modular data.

Complex vectors in C^n are handled as real vectors ``(Re v, Im v)`` in
R^{2n}; the real inner product there is ``Re <u, v>``.  Antiunitary maps
are stored by their unitary part ``u`` and act as ``v -> u conj(v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np
import scipy.linalg

from . import numerics as nm
from .errors import CompatibilityError, MalformedInput, NonStandard, PairAxiomError
from .numerics import DEFAULT_TOL, Tolerance

__all__ = [
    "RealSubspace",
    "AntiunitaryOp",
    "ModularPair",
    "is_cyclic",
    "is_separating",
    "is_standard",
    "modular_data",
    "subspace_from_pair",
    "symplectic_complement",
    "conjugate_subspace",
    "containment_residual",
    "subspace_equal",
    "orthogonality_check",
    "counterexample_family",
    "intersection_standard_probe",
    "bgl_subspace",
    "borchers_relations_check",
    "borchers_trace_obstruction",
    "delta_power",
]

RANK_RTOL = 1e-9


def _realify(vectors: np.ndarray) -> np.ndarray:
    """Columns (Re v, Im v) for the rows v of ``vectors``."""
    v = np.atleast_2d(np.asarray(vectors, dtype=complex))
    return np.vstack([v.real.T, v.imag.T])


def _complexify(cols: np.ndarray) -> np.ndarray:
    """Inverse of ``_realify``: rows of complex vectors."""
    n = cols.shape[0] // 2
    return (cols[:n] + 1j * cols[n:]).T


def _times_i(cols: np.ndarray) -> np.ndarray:
    n = cols.shape[0] // 2
    return np.vstack([-cols[n:], cols[:n]])


def _orth(cols: np.ndarray, rtol: float = RANK_RTOL) -> np.ndarray:
    if cols.size == 0 or cols.shape[1] == 0:
        return np.zeros((cols.shape[0], 0))
    return scipy.linalg.orth(cols, rcond=rtol)


def _rank(cols: np.ndarray, rtol: float = RANK_RTOL) -> int:
    return _orth(cols, rtol).shape[1]


# subspaces -------------------------------------------------------------------


class RealSubspace:
    """A real subspace of C^n given by a real-linearly independent spanning list."""

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence[complex]] | np.ndarray):
        if ambient_dim < 1:
            raise MalformedInput("ambient dimension must be positive")
        b = np.asarray(list(basis) if not isinstance(basis, np.ndarray) else basis, dtype=complex)
        if b.size == 0:
            b = np.zeros((0, ambient_dim), dtype=complex)
        if b.ndim != 2 or b.shape[1] != ambient_dim:
            raise MalformedInput(f"basis vectors must have length {ambient_dim}")
        r = _realify(b) if b.shape[0] else np.zeros((2 * ambient_dim, 0))
        if b.shape[0] and _rank(r) != b.shape[0]:
            raise MalformedInput("basis vectors are not real-linearly independent")
        self.n = ambient_dim
        self.basis = b
        self.frame = _orth(r) if b.shape[0] else r

    @classmethod
    def from_frame(cls, n: int, cols: np.ndarray) -> "RealSubspace":
        return cls(n, _complexify(cols) if cols.shape[1] else np.zeros((0, n)))

    @classmethod
    def real_part(cls, n: int) -> "RealSubspace":
        """R^n inside C^n."""
        return cls(n, np.eye(n))

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def to_json(self) -> dict:
        return {"ambient_dim": self.n, "basis": [nm.vector_to_json(v) for v in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "RealSubspace":
        try:
            n = int(obj["ambient_dim"])
            basis = [nm.vector_from_json(v) for v in obj["basis"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad subspace object: {exc}") from exc
        return cls(n, np.array(basis, dtype=complex) if basis else np.zeros((0, n)))

    def __repr__(self) -> str:
        return f"RealSubspace(n={self.n}, dim={self.dim})"


def is_cyclic(h: RealSubspace) -> bool:
    """``H + iH = C^n``."""
    return _rank(np.hstack([h.frame, _times_i(h.frame)])) == 2 * h.n


def is_separating(h: RealSubspace) -> bool:
    """``H cap iH = 0``."""
    return _rank(np.hstack([h.frame, _times_i(h.frame)])) == 2 * h.dim


def is_standard(h: RealSubspace) -> bool:
    return h.dim == h.n and is_separating(h)


def containment_residual(a: RealSubspace, b: RealSubspace) -> float:
    """Largest distance from a unit vector of ``a`` to ``b``."""
    if a.n != b.n:
        raise MalformedInput("subspaces of different spaces")
    if a.dim == 0:
        return 0.0
    rest = a.frame - b.frame @ (b.frame.T @ a.frame)
    return float(np.linalg.norm(rest, 2))


def subspace_equal(a: RealSubspace, b: RealSubspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    if a.dim != b.dim:
        return False
    bound = 100 * tol.abs_tol
    return containment_residual(a, b) <= bound and containment_residual(b, a) <= bound


def symplectic_complement(h: RealSubspace) -> RealSubspace:
    """``{v : Im <v, w> = 0 for w in H}``, the real orthogonal complement of iH."""
    ih = _times_i(h.frame)
    if ih.shape[1] == 0:
        return RealSubspace.from_frame(h.n, np.eye(2 * h.n))
    return RealSubspace.from_frame(h.n, scipy.linalg.null_space(ih.T, rcond=RANK_RTOL))


def intersection(a: RealSubspace, b: RealSubspace) -> RealSubspace:
    if a.dim == 0 or b.dim == 0:
        return RealSubspace(a.n, np.zeros((0, a.n)))
    k = scipy.linalg.null_space(np.hstack([a.frame, -b.frame]), rcond=1e-8)
    return RealSubspace.from_frame(a.n, _orth(a.frame @ k[:a.dim], 1e-8))


# antiunitaries and modular pairs -------------------------------------------------


@dataclass(frozen=True, eq=False)
class AntiunitaryOp:
    """``v -> u conj(v)``."""

    u: np.ndarray

    def __post_init__(self) -> None:
        u = np.asarray(self.u, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise MalformedInput("antiunitary part must be a square matrix")
        object.__setattr__(self, "u", u)

    @classmethod
    def conjugation(cls, n: int) -> "AntiunitaryOp":
        return cls(np.eye(n))

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.u @ np.conj(v)

    def unitarity_residual(self) -> float:
        return float(np.max(np.abs(self.u.conj().T @ self.u - np.eye(self.n))))

    def involution_residual(self) -> float:
        return float(np.max(np.abs(self.u @ self.u.conj() - np.eye(self.n))))

    def compose(self, other: "AntiunitaryOp | np.ndarray") -> "AntiunitaryOp | np.ndarray":
        """``self o other``: linear for two antiunitaries, antiunitary otherwise."""
        if isinstance(other, AntiunitaryOp):
            return self.u @ other.u.conj()
        return AntiunitaryOp(self.u @ np.conj(other))

    def conjugate_linear(self, a: np.ndarray) -> np.ndarray:
        """``J A J^-1`` for a linear map A."""
        return self.u @ np.conj(a) @ np.linalg.inv(self.u)

    def real_matrix(self) -> np.ndarray:
        p, q = self.u.real, self.u.imag
        return np.block([[p, q], [q, -p]])

    def to_json(self) -> dict:
        return {"u": nm.matrix_to_json(self.u)}


def _left_unitary(v: np.ndarray, j: AntiunitaryOp) -> AntiunitaryOp:
    return AntiunitaryOp(v @ j.u)


@dataclass(frozen=True, eq=False)
class ModularPair:
    delta: np.ndarray
    j: AntiunitaryOp

    @property
    def n(self) -> int:
        return self.delta.shape[0]

    def residuals(self) -> dict[str, float]:
        d = np.asarray(self.delta, dtype=complex)
        herm = float(np.max(np.abs(d - d.conj().T)))
        w = np.linalg.eigvalsh((d + d.conj().T) / 2)
        jdj = self.j.conjugate_linear(d)
        return {
            "delta_hermitian": herm,
            "delta_min_eigenvalue": float(w.min()),
            "j_unitary": self.j.unitarity_residual(),
            "j_involution": self.j.involution_residual(),
            "j_delta_j": float(np.max(np.abs(jdj - np.linalg.inv(d)))),
        }

    def check(self, tol: Tolerance = DEFAULT_TOL) -> None:
        """Raise PairAxiomError naming the first failed axiom."""
        if self.delta.shape != (self.j.n, self.j.n):
            raise MalformedInput("delta and J act on different spaces")
        r = self.residuals()
        scale = max(1.0, float(np.max(np.abs(self.delta))))
        bound = 1e-8 * scale
        if r["delta_hermitian"] > bound:
            raise PairAxiomError("delta self-adjoint", r["delta_hermitian"])
        if r["delta_min_eigenvalue"] <= tol.abs_tol:
            raise PairAxiomError("delta positive", r["delta_min_eigenvalue"])
        if r["j_unitary"] > 1e-8:
            raise PairAxiomError("J antiunitary", r["j_unitary"])
        if r["j_involution"] > 1e-8:
            raise PairAxiomError("J involution", r["j_involution"])
        dinv = float(np.max(np.abs(np.linalg.inv(self.delta))))
        if r["j_delta_j"] > 1e-8 * max(scale, dinv):
            raise PairAxiomError("J delta J = delta^-1", r["j_delta_j"])

    def inverse(self) -> "ModularPair":
        return ModularPair(np.linalg.inv(self.delta), self.j)

    def to_json(self) -> dict:
        return {"delta": nm.matrix_to_json(self.delta), "j": self.j.to_json()}


def delta_power(delta: np.ndarray, z: complex, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``delta^z`` by the spectral decomposition of a positive matrix."""
    w, v = nm.eig_selfadjoint(np.asarray(delta, dtype=complex), tol)
    if w.min() <= 0:
        raise PairAxiomError("delta positive", float(w.min()))
    return (v * np.exp(z * np.log(w))) @ v.conj().T


def tomita_matrix(h: RealSubspace) -> np.ndarray:
    """M with ``S v = M conj(v)``, where S fixes H and is antilinear."""
    b = h.basis.T
    return b @ np.conj(np.linalg.inv(b))


def modular_data(h: RealSubspace, tol: Tolerance = DEFAULT_TOL) -> ModularPair:
    """``(delta, J)`` from the polar decomposition ``S = J delta^(1/2)``."""
    if not is_standard(h):
        raise NonStandard("modular data needs a standard subspace")
    m = tomita_matrix(h)
    # real form of S anticommutes with multiplication by i
    s_real = AntiunitaryOp(m).real_matrix()
    i_real = np.block([[np.zeros((h.n, h.n)), -np.eye(h.n)], [np.eye(h.n), np.zeros((h.n, h.n))]])
    anti = float(np.max(np.abs(s_real @ i_real + i_real @ s_real)))
    if anti > 1e-8 * max(1.0, float(np.max(np.abs(s_real)))):
        raise CompatibilityError(f"S is not antilinear (residual {anti:.3g})")
    # S* w = M^T conj(w), so S*S = M^T conj(M)
    delta = m.T @ np.conj(m)
    delta = (delta + delta.conj().T) / 2
    u = m @ np.conj(delta_power(delta, -0.5, tol))
    return ModularPair(delta, AntiunitaryOp(u))


def subspace_from_pair(p: ModularPair, tol: Tolerance = DEFAULT_TOL) -> RealSubspace:
    """Fixed points of ``S = J delta^(1/2)``."""
    p.check(tol)
    m = p.j.u @ np.conj(delta_power(p.delta, 0.5, tol))
    s_real = AntiunitaryOp(m).real_matrix()
    k = scipy.linalg.null_space(s_real - np.eye(2 * p.n), rcond=1e-9)
    if k.shape[1] != p.n:
        raise NonStandard(f"fixed space of S has real dimension {k.shape[1]}, expected {p.n}")
    out = RealSubspace.from_frame(p.n, k)
    if not is_standard(out):
        raise NonStandard("fixed space of S is not standard")
    return out


def conjugate_subspace(v: np.ndarray | AntiunitaryOp, h: RealSubspace, tol: Tolerance = DEFAULT_TOL,
                       verify: bool = True) -> RealSubspace:
    """``V H`` for a unitary or antiunitary V, with the modular law checked on standard H.

    The modular data become ``(V delta V^-1, V J V^-1)``; for antiunitary V
    this inverts the modular group, ``delta^{it} -> delta^{-it}``.
    """
    if isinstance(v, AntiunitaryOp):
        img = (v.u @ np.conj(h.basis.T)).T
        if v.unitarity_residual() > 1e-8:
            raise MalformedInput("V is not antiunitary")
    else:
        v = np.asarray(v, dtype=complex)
        if np.max(np.abs(v.conj().T @ v - np.eye(v.shape[0]))) > 1e-8:
            raise MalformedInput("V is not unitary")
        img = (v @ h.basis.T).T
    out = RealSubspace(h.n, img)
    if verify and is_standard(h):
        p, q = modular_data(h, tol), modular_data(out, tol)
        if isinstance(v, AntiunitaryOp):
            w = v.u
            want_delta = w @ np.conj(p.delta) @ np.linalg.inv(w)
            want_j = w @ np.conj(p.j.u) @ np.linalg.inv(np.conj(w))
        else:
            want_delta = v @ p.delta @ v.conj().T
            want_j = v @ p.j.u @ v.T
        res = max(float(np.max(np.abs(q.delta - want_delta))), float(np.max(np.abs(q.j.u - want_j))))
        scale = max(1.0, float(np.max(np.abs(p.delta))), float(np.max(np.abs(np.linalg.inv(p.delta)))))
        if res > 1e-7 * scale:
            raise CompatibilityError(f"modular data of VH do not transform as expected (residual {res:.3g})")
    return out


def orthogonality_check(h1: RealSubspace, h2: RealSubspace, tol: float = 1e-9,
                        report: bool = False) -> bool | tuple[bool, float]:
    """``J2 delta1 J2 = delta1`` and ``J1 delta2 J1 = delta2``."""
    p1, p2 = modular_data(h1), modular_data(h2)
    r1 = float(np.max(np.abs(p2.j.conjugate_linear(p1.delta) - p1.delta)))
    r2 = float(np.max(np.abs(p1.j.conjugate_linear(p2.delta) - p2.delta)))
    res = max(r1, r2)
    ok = res <= tol
    return (ok, res) if report else ok


# the counterexample family ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class Counterexample:
    h1: RealSubspace
    h2: RealSubspace
    u: np.ndarray
    delta1: np.ndarray
    delta2: np.ndarray
    closed_form_residual: float
    orthogonality_residual: float

    def to_json(self) -> dict:
        return {
            "H1": self.h1.to_json(),
            "H2": self.h2.to_json(),
            "U": nm.matrix_to_json(self.u),
            "closed_form_residual": nm.format_float(self.closed_form_residual),
            "orthogonality_residual": nm.format_float(self.orthogonality_residual),
        }


def counterexample_family(h_gen: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> Counterexample:
    """Orthogonal pair on ``C^m + C^m`` built from ``A = exp(h_gen)``.

    ``delta1 = A + A^-1`` (block diagonal), ``J1`` swaps and conjugates, and
    H2 is the image of H1 under ``(1/sqrt 2) [[1, 1], [i, -i]]``.
    """
    g = nm.to_float(np.atleast_2d(np.asarray(h_gen)))
    m = g.shape[0]
    if g.shape != (m, m) or np.max(np.abs(g - g.T), initial=0.0) > 1e-12:
        raise MalformedInput("h_gen must be a real symmetric matrix")
    a = nm.mat_exp(g)
    ainv = nm.mat_exp(-g)
    z = np.zeros((m, m))
    one = np.eye(m)
    delta1 = np.block([[a, z], [z, ainv]]).astype(complex)
    j1 = AntiunitaryOp(np.block([[z, one], [one, z]]))
    h1 = subspace_from_pair(ModularPair(delta1, j1), tol)
    u = np.block([[one, one], [1j * one, -1j * one]]) / math.sqrt(2)
    h2 = conjugate_subspace(u, h1, tol)
    delta2 = modular_data(h2, tol).delta
    closed = nm.mat_exp(np.block([[z, -1j * g], [1j * g, z]]))
    closed_res = float(np.max(np.abs(delta2 - closed)))
    _, orth_res = orthogonality_check(h1, h2, report=True)
    return Counterexample(h1, h2, u, delta1, delta2, closed_res, orth_res)


def intersection_standard_probe(h1: RealSubspace, h2: RealSubspace, t_samples: Sequence[float],
                                tol: Tolerance = DEFAULT_TOL) -> list[dict]:
    """Flags for ``delta2^{it} H1 cap H2`` and ``delta1^{it} H2 cap H1``.

    The literal second form ``delta1^{it} H2 cap H2`` is reported too.
    """
    p1, p2 = modular_data(h1, tol), modular_data(h2, tol)
    out = []

    def flags(k: RealSubspace) -> dict:
        return {"dim": k.dim, "cyclic": is_cyclic(k), "separating": is_separating(k), "standard": is_standard(k)}

    for t in t_samples:
        a = conjugate_subspace(delta_power(p2.delta, 1j * t, tol), h1, tol, verify=False)
        b = conjugate_subspace(delta_power(p1.delta, 1j * t, tol), h2, tol, verify=False)
        out.append({
            "t": float(t),
            "delta2_H1_cap_H2": flags(intersection(a, h2)),
            "delta1_H2_cap_H1": flags(intersection(b, h1)),
            "delta1_H2_cap_H2": flags(intersection(b, h2)),
        })
    return out


# BGL construction ------------------------------------------------------------------


def bgl_subspace(x: np.ndarray, j: AntiunitaryOp, tol: Tolerance = DEFAULT_TOL,
                 samples: Sequence[float] = (1.0, -1.0, 0.5, -0.5)) -> RealSubspace:
    """Standard subspace with ``delta = exp(2 pi i X)`` and the given J.

    X is the skew-adjoint generator of the represented Euler one-parameter
    group and J the representative of its involution; J must commute with
    ``exp(tX)``.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (j.n, j.n):
        raise MalformedInput("X and J act on different spaces")
    scale = max(1.0, float(np.max(np.abs(x))))
    if np.max(np.abs(x + x.conj().T)) > 1e-9 * scale:
        raise CompatibilityError("iX is not self-adjoint")
    if j.involution_residual() > 1e-8 or j.unitarity_residual() > 1e-8:
        raise CompatibilityError("J is not an antiunitary involution")
    for t in samples:
        e = nm.mat_exp(t * x)
        if np.max(np.abs(j.conjugate_linear(e) - e)) > 1e-8 * max(1.0, float(np.max(np.abs(e)))):
            raise CompatibilityError(f"J exp(tX) J != exp(tX) at t = {t}")
    hx = 1j * x
    delta = nm.selfadjoint_function((hx + hx.conj().T) / 2, lambda w: np.exp(2 * math.pi * w), tol)
    return subspace_from_pair(ModularPair(delta, j), tol)


# Borchers relations -------------------------------------------------------------------


def borchers_relations_check(p: ModularPair, P: np.ndarray, sign: int = 1,
                             s_samples: Sequence[float] = (-1.0, -0.3, 0.4, 1.0),
                             t_samples: Sequence[float] = (-1.0, 0.5, 2.0),
                             tol: float = 1e-8) -> dict:
    """``delta^{-is/2pi} U(t) delta^{is/2pi} = U(e^{sign s} t)`` and ``J U(t) J = U(-t)``.

    ``U(t) = exp(i t P)``.
    """
    P = np.asarray(P, dtype=complex)
    if P.shape != p.delta.shape:
        raise MalformedInput("P acts on a different space")
    if np.max(np.abs(P - P.conj().T)) > 1e-9 * max(1.0, float(np.max(np.abs(P)))):
        raise MalformedInput("P must be self-adjoint")
    if sign not in (1, -1):
        raise MalformedInput("sign must be +1 or -1")

    def u(t: float) -> np.ndarray:
        return nm.mat_exp(1j * t * P)

    dil = 0.0
    for s in s_samples:
        a = delta_power(p.delta, -1j * s / (2 * math.pi))
        b = delta_power(p.delta, 1j * s / (2 * math.pi))
        for t in t_samples:
            dil = max(dil, float(np.max(np.abs(a @ u(t) @ b - u(math.exp(sign * s) * t)))))
    refl = max(float(np.max(np.abs(p.j.conjugate_linear(u(t)) - u(-t)))) for t in t_samples)
    return {"dilation_residual": dil, "reflection_residual": refl, "holds": dil <= tol and refl <= tol}


def _trace(a: np.ndarray) -> Any:
    return sum((a[i, i] for i in range(a.shape[0])), Fraction(0))


def borchers_trace_obstruction(K: tuple[np.ndarray, np.ndarray], P: tuple[np.ndarray, np.ndarray]) -> dict:
    """Exact form of the finite-dimensional obstruction.

    Differentiating the dilation relation at s = 0 gives ``P = -+ i [K, P]``
    with ``delta = exp(2 pi K)``.  A commutator has zero trace, so tr P = 0,
    and a positive semidefinite P with zero trace vanishes.  Matrices are
    passed as (real part, imaginary part) pairs of rationals.
    """
    kr, ki = (nm.exact_matrix(m) for m in K)
    pr, pi = (nm.exact_matrix(m) for m in P)

    def mul(ar, ai, br, bi):
        return (nm.exact_dot(ar, br) - nm.exact_dot(ai, bi), nm.exact_dot(ar, bi) + nm.exact_dot(ai, br))

    kp = mul(kr, ki, pr, pi)
    pk = mul(pr, pi, kr, ki)
    comm_trace = (_trace(kp[0] - pk[0]), _trace(kp[1] - pk[1]))
    trace_p = (_trace(pr), _trace(pi))
    return {
        "commutator_trace": comm_trace,
        "trace_P": trace_p,
        "relation_forces_zero_trace": comm_trace == (0, 0),
        "P_nonzero_psd_has_positive_trace": trace_p[0] > 0,
        "consistent": comm_trace == (0, 0) and trace_p == (0, 0),
    }
