"""Matrix Lie algebras, the exact Euler test, 3-gradings and sl2-triples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Callable, Iterable, Sequence

import numpy as np
import scipy.linalg

from . import numerics as nm
from .errors import AlgebraMismatch, ClosureError, MalformedInput, NotEuler, NotSl2Triple
from .numerics import DEFAULT_TOL, Tolerance

__all__ = [
    "LieAlgebra",
    "AlgebraElement",
    "EulerCertificate",
    "Sl2Triple",
    "bracket",
    "ad_matrix",
    "is_euler",
    "certify_euler",
    "tau_matrix",
    "tau_apply",
    "is_orthogonal_pair",
    "sl2_triple",
    "cartan_theta",
    "adjoint_apply",
    "adjoint_matrix",
    "is_regular",
    "exp_ad_quarter_turns",
    "grading_violations",
    "direct_sum",
    "sl2",
    "sl2_elements",
]


def _residual_bound(v: np.ndarray, tol: Tolerance) -> float:
    scale = float(np.max(np.abs(nm.to_float(v)), initial=0.0))
    return 100 * (tol.abs_tol + tol.rel_tol * scale)


class LieAlgebra:
    """A Lie algebra realized by square matrices with a fixed basis.

    Coordinates are solved exactly when every basis matrix is rational.
    Structure constants are computed on first use and cached as the list of
    ``ad(b_i)`` matrices.
    """

    def __init__(self, name: str, basis: Sequence[np.ndarray], family: str | None = None,
                 tol: Tolerance = DEFAULT_TOL):
        if not basis:
            raise MalformedInput("a Lie algebra needs a non-empty basis")
        mats = [np.asarray(b) for b in basis]
        size = mats[0].shape
        if len(size) != 2 or size[0] != size[1] or any(m.shape != size for m in mats):
            raise MalformedInput("basis matrices must be square and of equal size")
        self.name = name
        self.family = family
        self.tol = tol
        self.exact = all(nm.is_exact(m) for m in mats)
        if self.exact:
            self.basis = tuple(mats)
        else:
            self.basis = tuple(nm.to_float(m) for m in mats)
        self.dim = len(mats)
        self.size = size[0]
        stacked = np.stack([m.reshape(-1) for m in self.basis], axis=1)
        self._stacked = stacked
        if self.exact:
            _, rows = nm.rref(stacked.T)
            if len(rows) != self.dim:
                raise MalformedInput("basis matrices are linearly dependent")
            self._rows = rows
            self._row_inverse = nm.ScaledInt.of(nm.inverse_exact(stacked[rows, :]))
            self._stacked_int = nm.ScaledInt.of(stacked)
        else:
            if np.linalg.matrix_rank(stacked) != self.dim:
                raise MalformedInput("basis matrices are linearly dependent")

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim}, size={self.size})"

    # coordinates --------------------------------------------------------

    def coords_of(self, matrix: np.ndarray, tol: Tolerance | None = None) -> np.ndarray:
        """Coordinates of ``matrix`` in the basis; ClosureError when outside the span."""
        tol = tol or self.tol
        m = np.asarray(matrix)
        if m.shape != (self.size, self.size):
            raise ClosureError(f"matrix of shape {m.shape} is not in {self.name}")
        v = m.reshape(-1)
        if self.exact and nm.is_exact(m):
            c = nm.exact_dot(self._row_inverse, v[self._rows])
            if not np.all(nm.exact_dot(self._stacked_int, c) == v):
                raise ClosureError(f"matrix lies outside the span of {self.name}")
            return c
        fv = nm.to_float(v)
        fb, pinv = self._float_solver
        c = pinv @ fv
        if np.max(np.abs(fb @ c - fv), initial=0.0) > _residual_bound(fv, tol):
            raise ClosureError(f"matrix lies outside the span of {self.name}")
        if np.iscomplexobj(c):
            if np.max(np.abs(c.imag), initial=0.0) > _residual_bound(fv, tol):
                raise ClosureError("complex coordinates in a real Lie algebra")
            c = c.real
        return c

    @cached_property
    def _float_solver(self) -> tuple[np.ndarray, np.ndarray]:
        fb = nm.to_float(self._stacked)
        return fb, np.linalg.pinv(fb)

    def matrix_of(self, coords: np.ndarray) -> np.ndarray:
        c = np.asarray(coords)
        if self.exact and c.dtype == object:
            return nm.exact_dot(self._stacked_int, c).reshape(self.size, self.size)
        return (nm.to_float(self._stacked) @ nm.to_float(c)).reshape(self.size, self.size)

    def element(self, coords: Iterable[Any]) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def from_matrix(self, matrix: np.ndarray, tol: Tolerance | None = None) -> "AlgebraElement":
        return AlgebraElement(self, self.coords_of(matrix, tol))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [0] * self.dim)

    def basis_element(self, i: int) -> "AlgebraElement":
        c = [0] * self.dim
        c[i] = 1
        return AlgebraElement(self, c)

    def identity(self) -> np.ndarray:
        return nm.exact_identity(self.dim) if self.exact else np.eye(self.dim)

    # structure ----------------------------------------------------------

    @cached_property
    def ad_basis(self) -> tuple[np.ndarray, ...]:
        """``ad(b_i)`` as dim x dim matrices; raises ClosureError if not closed."""
        d = self.dim
        cols: dict[tuple[int, int], np.ndarray] = {}
        for i in range(d):
            for j in range(i + 1, d):
                bi, bj = self.basis[i], self.basis[j]
                cols[(i, j)] = self.coords_of(nm.dot(bi, bj) - nm.dot(bj, bi))
        zero = nm.exact_zeros((d,)) if self.exact else np.zeros(d)
        out = []
        for i in range(d):
            m = nm.exact_zeros((d, d)) if self.exact else np.zeros((d, d))
            for j in range(d):
                if i < j:
                    m[:, j] = cols[(i, j)]
                elif i > j:
                    m[:, j] = -cols[(j, i)]
                else:
                    m[:, j] = zero
            out.append(m)
        return tuple(out)

    @cached_property
    def ad_stack(self) -> np.ndarray:
        """``ad(b_i)`` flattened into the rows of a dim x dim^2 array."""
        stack = np.stack([m.reshape(-1) for m in self.ad_basis])
        return nm.ScaledInt.of(stack) if self.exact else stack

    def check_closure(self) -> bool:
        try:
            self.ad_basis
        except ClosureError:
            return False
        return True

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, LieAlgebra) and other.name == self.name
                                 and other.dim == self.dim and other.size == self.size)

    def __hash__(self) -> int:
        return hash((self.name, self.dim, self.size))

    def to_json(self) -> dict:
        return {"name": self.name, "basis": [nm.matrix_to_json(b) for b in self.basis]}

    @classmethod
    def from_json(cls, obj: dict) -> "LieAlgebra":
        try:
            return cls(obj["name"], [nm.matrix_from_json(b) for b in obj["basis"]])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad Lie algebra object: {exc}") from exc


def _coerce_coords(coords: Iterable[Any]) -> np.ndarray:
    vals = list(coords)
    if all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in vals):
        out = np.empty(len(vals), dtype=object)
        for i, v in enumerate(vals):
            out[i] = Fraction(v)
        return out
    if all(isinstance(v, (int, float, Fraction, np.floating, np.integer)) for v in vals):
        return np.array([float(v) for v in vals])
    arr = np.asarray(vals)
    if arr.dtype == object:
        return arr
    return arr.astype(float)


class AlgebraElement:
    """An element of a LieAlgebra, stored by its basis coordinates."""

    __slots__ = ("algebra", "coords", "_matrix")

    def __init__(self, algebra: LieAlgebra, coords: Iterable[Any]):
        c = coords if isinstance(coords, np.ndarray) else _coerce_coords(coords)
        if c.dtype != object:
            c = c.astype(float)
        if c.shape != (algebra.dim,):
            raise MalformedInput(f"expected {algebra.dim} coordinates, got {c.shape}")
        self.algebra = algebra
        self.coords = c
        self._matrix = None

    @property
    def exact(self) -> bool:
        return self.coords.dtype == object and self.algebra.exact

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = self.algebra.matrix_of(self.coords)
        return self._matrix

    def _same(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an AlgebraElement")
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, _mix(self.coords, other.coords, lambda a, b: a + b))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same(other)
        return AlgebraElement(self.algebra, _mix(self.coords, other.coords, lambda a, b: a - b))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, -self.coords)

    def __mul__(self, s: Any) -> "AlgebraElement":
        if isinstance(s, (int, Fraction)) and self.coords.dtype == object:
            return AlgebraElement(self.algebra, self.coords * Fraction(s))
        return AlgebraElement(self.algebra, nm.to_float(self.coords) * float(s))

    __rmul__ = __mul__

    def is_zero(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return nm.is_zero(self.coords, tol)

    def equals(self, other: "AlgebraElement", tol: Tolerance = DEFAULT_TOL) -> bool:
        self._same(other)
        if self.exact and other.exact:
            return bool(np.all(self.coords == other.coords))
        return nm.allclose(self.coords, other.coords, tol, factor=100)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.coords.dtype == object:
            txt = ", ".join(str(v) for v in self.coords)
        else:
            txt = ", ".join(nm.format_float(v) for v in self.coords)
        return f"<{self.algebra.name}: ({txt})>"

    def to_json(self) -> dict:
        if self.coords.dtype == object:
            coords = [str(v) for v in self.coords]
        else:
            coords = [nm.format_float(v) for v in self.coords]
        return {"algebra": self.algebra.name, "coords": coords}

    @classmethod
    def from_json(cls, obj: dict, resolve: Callable[[str], LieAlgebra]) -> "AlgebraElement":
        try:
            alg = resolve(obj["algebra"])
            return cls(alg, [nm.parse_scalar(v) for v in obj["coords"]])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad algebra element object: {exc}") from exc


def _mix(a: np.ndarray, b: np.ndarray, op: Callable) -> np.ndarray:
    if a.dtype == object and b.dtype == object:
        return op(a, b)
    return op(nm.to_float(a), nm.to_float(b))


# brackets and ad ------------------------------------------------------------


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Coordinates of the commutator ``xy - yx``."""
    x._same(y)
    a, b = x.matrix, y.matrix
    if not (x.exact and y.exact):
        a, b = nm.to_float(a), nm.to_float(b)
    return x.algebra.from_matrix(nm.dot(a, b) - nm.dot(b, a))


def ad_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of ``ad x`` in the algebra's basis."""
    alg = x.algebra
    d = alg.dim
    if x.exact:
        return nm.exact_dot(x.coords, alg.ad_stack).reshape(d, d)
    stack = alg.ad_stack
    if isinstance(stack, nm.ScaledInt):
        stack = stack.ints / stack.den
    return (nm.to_float(x.coords) @ stack).reshape(d, d)


@dataclass(frozen=True, eq=False)
class EulerCertificate:
    """Proof that ``element`` is Euler, together with its grading projections."""

    element: AlgebraElement
    ad: np.ndarray
    p_minus: np.ndarray
    p_zero: np.ndarray
    p_plus: np.ndarray

    @property
    def algebra(self) -> LieAlgebra:
        return self.element.algebra

    def projection(self, j: int) -> np.ndarray:
        return {-1: self.p_minus, 0: self.p_zero, 1: self.p_plus}[j]

    @property
    def tau(self) -> np.ndarray:
        """Matrix of the involution ``I - 2 (ad h)^2``."""
        return self.p_zero - self.p_minus - self.p_plus

    def grading_dims(self) -> dict[int, int]:
        """Dimensions of the eigenspaces for -1, 0, +1."""
        out = {}
        for j in (-1, 0, 1):
            p = self.projection(j)
            out[j] = nm.rank_exact(p) if nm.is_exact(p) else int(np.linalg.matrix_rank(nm.to_float(p), tol=1e-8))
        return out

    def degenerate_sides(self) -> list[int]:
        """Which of the spaces for -1 and +1 are trivial (at most one can be)."""
        dims = self.grading_dims()
        return [j for j in (-1, 1) if dims[j] == 0]


def is_euler(h: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> EulerCertificate | None:
    """Certificate when ``(ad h)^3 = ad h`` and ``ad h != 0``; None otherwise."""
    a = ad_matrix(h)
    a2 = nm.dot(a, a)
    a3 = nm.dot(a2, a)
    if h.exact:
        if nm.is_zero(a) or not np.all(a3 == a):
            return None
        ident = nm.exact_identity(h.algebra.dim)
        half = Fraction(1, 2)
    else:
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a)) <= 100 * tol.abs_tol or np.max(np.abs(a3 - a)) > 100 * tol.abs_tol * scale ** 3:
            return None
        ident = np.eye(h.algebra.dim)
        half = 0.5
    return EulerCertificate(h, a, (a2 - a) * half, ident - a2, (a2 + a) * half)


def certify_euler(h: AlgebraElement | EulerCertificate, tol: Tolerance = DEFAULT_TOL) -> EulerCertificate:
    if isinstance(h, EulerCertificate):
        return h
    cert = is_euler(h, tol)
    if cert is None:
        raise NotEuler(f"{h!r} is not an Euler element")
    return cert


def tau_matrix(h: AlgebraElement | EulerCertificate) -> np.ndarray:
    return certify_euler(h).tau


def _apply(m: np.ndarray, x: AlgebraElement) -> AlgebraElement:
    if nm.is_exact(m) and x.exact:
        return AlgebraElement(x.algebra, nm.exact_dot(m, x.coords))
    return AlgebraElement(x.algebra, nm.to_float(m) @ nm.to_float(x.coords))


def tau_apply(h: AlgebraElement | EulerCertificate, x: AlgebraElement) -> AlgebraElement:
    """``x - 2 (ad h)^2 x``."""
    cert = certify_euler(h)
    if cert.algebra != x.algebra:
        raise AlgebraMismatch(f"{cert.algebra.name} vs {x.algebra.name}")
    return _apply(cert.tau, x)


def is_orthogonal_pair(h: AlgebraElement, k: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    if h.algebra != k.algebra:
        return False
    ch, ck = is_euler(h, tol), is_euler(k, tol)
    if ch is None or ck is None:
        return False
    return _apply(nm.dot(ch.ad, ch.ad), k).equals(k, tol)


@dataclass(frozen=True, eq=False)
class Sl2Triple:
    h: AlgebraElement
    k: AlgebraElement
    z: AlgebraElement


def sl2_triple(h: AlgebraElement, k: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> Sl2Triple:
    """Check the table ``[h,k]=z, [z,h]=-k, [z,k]=h`` for an orthogonal pair."""
    if not is_orthogonal_pair(h, k, tol):
        raise NotSl2Triple("(h, k) is not an orthogonal pair of Euler elements")
    z = bracket(h, k)
    if not bracket(z, h).equals(-k, tol):
        raise NotSl2Triple("[z, h] != -k")
    if not bracket(z, k).equals(h, tol):
        raise NotSl2Triple("[z, k] != h")
    return Sl2Triple(h, k, z)


def cartan_theta(x: AlgebraElement) -> AlgebraElement:
    """The element with matrix ``-x^T``."""
    return x.algebra.from_matrix(-x.matrix.T)


def _inverse(g: np.ndarray, tol: Tolerance) -> np.ndarray:
    if nm.is_exact(g):
        try:
            return nm.inverse_exact(g)
        except ZeroDivisionError as exc:
            raise MalformedInput("adjoint action by a singular matrix") from exc
    fg = nm.to_float(g)
    s = np.linalg.svd(fg, compute_uv=False)
    if s[-1] <= tol.abs_tol * max(1.0, s[0]):
        raise MalformedInput("adjoint action by a singular matrix")
    return np.linalg.inv(fg)


def adjoint_apply(g: np.ndarray, x: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Coordinates of ``g x g^-1``."""
    g = np.asarray(g)
    ginv = _inverse(g, tol)
    if nm.is_exact(g) and x.exact:
        return x.algebra.from_matrix(nm.exact_dot(nm.exact_dot(g, x.matrix), ginv))
    return x.algebra.from_matrix(nm.to_float(g) @ nm.to_float(x.matrix) @ ginv, tol)


def adjoint_matrix(g: np.ndarray, algebra: LieAlgebra, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``Ad(g)`` in the basis of ``algebra``."""
    ginv = _inverse(np.asarray(g), tol)
    exact = nm.is_exact(np.asarray(g)) and algebra.exact
    cols = []
    for b in algebra.basis:
        if exact:
            cols.append(algebra.coords_of(nm.exact_dot(nm.exact_dot(g, b), ginv)))
        else:
            cols.append(algebra.coords_of(nm.to_float(g) @ nm.to_float(b) @ ginv, tol))
    return np.stack(cols, axis=1)


def is_regular(h: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the centralizer of ``h`` is abelian."""
    a = ad_matrix(h)
    alg = h.algebra
    if h.exact:
        ker = nm.nullspace_exact(a)
        elems = [AlgebraElement(alg, ker[:, i]) for i in range(ker.shape[1])]
    else:
        ker = scipy.linalg.null_space(nm.to_float(a), rcond=1e-10)
        elems = [AlgebraElement(alg, ker[:, i]) for i in range(ker.shape[1])]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not bracket(elems[i], elems[j]).is_zero(tol.scaled(100)):
                return False
    return True


def exp_ad_quarter_turns(z: AlgebraElement, quarter_turns: int) -> np.ndarray:
    """Exact ``exp(theta ad z)`` for ``theta = quarter_turns * pi/2``.

    Requires ``(ad z)^3 = -ad z``, so that
    ``exp(theta ad z) = I + sin(theta) ad z + (1 - cos(theta)) (ad z)^2``.
    """
    a = ad_matrix(z)
    a2 = nm.dot(a, a)
    if not nm.allclose(nm.dot(a2, a), -a):
        raise MalformedInput("exp_ad_quarter_turns needs (ad z)^3 = -ad z")
    q = quarter_turns % 4
    sin_t = (0, 1, 0, -1)[q]
    one_minus_cos = (0, 1, 2, 1)[q]
    return z.algebra.identity() + a * sin_t + a2 * one_minus_cos


def grading_violations(cert: EulerCertificate, tol: Tolerance = DEFAULT_TOL) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` for which ``[g_i, g_j]`` is not inside ``g_{i+j}``.

    Each eigenspace is spanned by the columns of its projection.  All
    brackets between two spaces are obtained at once from the structure
    constants, and a bracket ``z`` lies in ``g_{i+j}`` when
    ``ad h . z = (i+j) z`` (``z = 0`` when ``|i+j| = 2``).
    """
    alg = cert.algebra
    d = alg.dim
    exact = nm.is_exact(cert.ad) and alg.exact
    spaces: dict[int, np.ndarray] = {}
    for j in (-1, 0, 1):
        p = cert.projection(j)
        if exact:
            _, piv = nm.rref(p)
            spaces[j] = p[:, piv]
        else:
            spaces[j] = scipy.linalg.orth(nm.to_float(p), rcond=max(1e-10, 100 * tol.abs_tol))
    stack = alg.ad_stack
    if not exact and isinstance(stack, nm.ScaledInt):
        stack = stack.ints / stack.den
    ad_h = cert.ad if exact else nm.to_float(cert.ad)
    loose = tol.scaled(100)
    bad = []
    for i in (-1, 0, 1):
        ui = spaces[i]
        if ui.shape[1] == 0:
            continue
        # ads[a] = ad(u_a) as a d x d matrix
        ads = (nm.exact_dot(ui.T, stack) if exact else ui.T @ stack).reshape(ui.shape[1], d, d)
        for j in (-1, 0, 1):
            uj = spaces[j]
            if uj.shape[1] == 0:
                continue
            # column (a, b) holds the coordinates of [u_a, v_b]
            z = np.concatenate([nm.dot(ads[a], uj) for a in range(ui.shape[1])], axis=1)
            s = i + j
            if abs(s) == 2:
                good = nm.is_zero(z, loose)
            else:
                good = nm.allclose(nm.dot(ad_h, z), z * s, loose)
            if not good:
                bad.append((i, j))
    return bad


# constructions -------------------------------------------------------------


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    exact = all(nm.is_exact(b) for b in blocks)
    n = sum(b.shape[0] for b in blocks)
    out = nm.exact_zeros((n, n)) if exact else np.zeros((n, n), dtype=np.result_type(*blocks))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def direct_sum(algebras: Sequence[LieAlgebra], name: str, family: str | None = None) -> LieAlgebra:
    """Block-diagonal realization of a direct sum."""
    basis = []
    for idx, alg in enumerate(algebras):
        for b in alg.basis:
            blocks = [b if i == idx else _zero_like(a, alg.exact) for i, a in enumerate(algebras)]
            basis.append(block_diag(blocks))
    return LieAlgebra(name, basis, family=family)


def _zero_like(alg: LieAlgebra, exact: bool) -> np.ndarray:
    return nm.exact_zeros((alg.size, alg.size)) if exact else np.zeros((alg.size, alg.size))


@lru_cache(maxsize=None)
def sl2() -> LieAlgebra:
    """sl2(R) with basis H = diag(1,-1), E = E_12, F = E_21."""
    basis = [
        nm.exact_matrix([[1, 0], [0, -1]]),
        nm.exact_matrix([[0, 1], [0, 0]]),
        nm.exact_matrix([[0, 0], [1, 0]]),
    ]
    return LieAlgebra("sl2R", basis, family="sl_n_R")


def sl2_elements(algebra: LieAlgebra | None = None) -> dict[str, AlgebraElement]:
    """The named elements h0, k0, z0, e0, f0 of sl2(R)."""
    alg = algebra or sl2()
    q = Fraction(1, 2)
    m = {
        "h0": [[q, 0], [0, -q]],
        "k0": [[0, q], [q, 0]],
        "z0": [[0, q], [-q, 0]],
        "e0": [[0, 1], [0, 0]],
        "f0": [[0, 0], [1, 0]],
    }
    return {k: alg.from_matrix(nm.exact_matrix(v)) for k, v in m.items()}
