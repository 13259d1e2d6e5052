"""Scalar and matrix kernel.

Matrices are numpy arrays.  The exact path stores ``fractions.Fraction``
entries in ``dtype=object`` arrays; the float path uses ``float64`` or
``complex128``.  Structural identities (brackets, projections, the Euler
test) stay exact whenever every input is rational.  Exponentials,
eigendecompositions and polar factors always run on floats.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import MalformedInput

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "parse_scalar",
    "exact_matrix",
    "is_exact",
    "to_float",
    "scalar_close",
    "allclose",
    "is_zero",
    "matrices_equal",
    "rref",
    "nullspace_exact",
    "rank_exact",
    "inverse_exact",
    "exact_dot",
    "dot",
    "mat_exp",
    "polar_unitary",
    "eig_selfadjoint",
    "selfadjoint_function",
    "matrix_to_json",
    "matrix_from_json",
    "format_float",
]


@dataclass(frozen=True)
class Tolerance:
    """Tolerance policy for every inexact comparison.

    Two floats ``a`` and ``b`` are equal when
    ``|a - b| <= abs_tol + rel_tol * max(|a|, |b|)``.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    eig_cluster_tol: float = 1e-7

    def __post_init__(self) -> None:
        for name in ("abs_tol", "rel_tol", "eig_cluster_tol"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")

    def scaled(self, factor: float) -> "Tolerance":
        return Tolerance(self.abs_tol * factor, self.rel_tol * factor, self.eig_cluster_tol)


DEFAULT_TOL = Tolerance()

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def parse_scalar(text: Any) -> Fraction | float:
    """Parse a JSON scalar.  Integer and ``p/q`` strings become Fractions."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, (bool, np.bool_)):
        raise MalformedInput(f"boolean is not a scalar: {text!r}")
    if isinstance(text, (int, np.integer)):
        return Fraction(int(text))
    if isinstance(text, (float, np.floating)):
        return float(text)
    if isinstance(text, str):
        s = text.strip().replace("−", "-")
        if _RATIONAL_RE.match(s):
            try:
                return Fraction(s.replace(" ", ""))
            except ZeroDivisionError as exc:
                raise MalformedInput(f"zero denominator in {text!r}") from exc
        try:
            return float(s)
        except ValueError as exc:
            raise MalformedInput(f"not a number: {text!r}") from exc
    raise MalformedInput(f"not a scalar: {text!r}")


def exact_matrix(rows: Iterable[Iterable[Any]]) -> np.ndarray:
    """Build an object array of Fractions from nested rows."""
    data = [[Fraction(parse_scalar(v)) for v in row] for row in rows]
    if not data or any(len(r) != len(data[0]) for r in data):
        raise MalformedInput("ragged or empty matrix")
    out = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def is_exact(a: np.ndarray) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def to_float(a: np.ndarray) -> np.ndarray:
    """Float copy of ``a`` (complex when any entry is complex)."""
    a = np.asarray(a)
    if a.dtype == object:
        return a.astype(float)
    if np.iscomplexobj(a):
        return a.astype(complex)
    return a.astype(float)


def scalar_close(a: complex, b: complex, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(a - b) <= tol.abs_tol + tol.rel_tol * max(abs(a), abs(b))


def allclose(a: Any, b: Any, tol: Tolerance = DEFAULT_TOL, factor: float = 1.0) -> bool:
    """Entrywise combined abs/rel comparison; ``factor`` scales both tolerances."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    if a.dtype == object and b.dtype == object:
        return bool(np.all(a == b))
    fa, fb = to_float(a), to_float(b)
    bound = factor * (tol.abs_tol + tol.rel_tol * np.maximum(np.abs(fa), np.abs(fb)))
    return bool(np.all(np.abs(fa - fb) <= bound))


def is_zero(a: Any, tol: Tolerance = DEFAULT_TOL, factor: float = 1.0) -> bool:
    a = np.asarray(a)
    if a.dtype == object:
        return bool(np.all(a == 0))
    return bool(np.all(np.abs(a) <= factor * tol.abs_tol))


def matrices_equal(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return allclose(a, b, tol)


# exact linear algebra ------------------------------------------------------


def rref(a: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals.  Returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in np.asarray(a, dtype=object)]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank_exact(a: np.ndarray) -> int:
    return len(rref(a)[1])


def nullspace_exact(a: np.ndarray) -> np.ndarray:
    """Basis of the right kernel as the columns of an object array."""
    a = np.asarray(a, dtype=object)
    ncols = a.shape[1]
    rows, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.empty((ncols, len(free)), dtype=object)
    out[:, :] = Fraction(0)
    for k, f in enumerate(free):
        out[f, k] = Fraction(1)
        for i, p in enumerate(pivots):
            out[p, k] = -rows[i][f]
    return out


def inverse_exact(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise MalformedInput("inverse of a non-square matrix")
    aug = np.concatenate([a, exact_identity(n)], axis=1)
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return np.array([row[n:] for row in rows], dtype=object)


_numerators = np.frompyfunc(lambda f: f.numerator, 1, 1)
_denominators = np.frompyfunc(lambda f: f.denominator, 1, 1)
_INT64_SAFE = 2 ** 62


@dataclass(frozen=True, eq=False)
class ScaledInt:
    """A rational array stored as ``ints / den`` with a common denominator."""

    ints: np.ndarray
    den: int
    bound: int

    @classmethod
    def of(cls, a: "np.ndarray | ScaledInt") -> "ScaledInt":
        if isinstance(a, ScaledInt):
            return a
        a = np.asarray(a, dtype=object)
        if a.size == 0:
            return cls(np.zeros(a.shape, dtype=np.int64), 1, 0)
        dens = _denominators(a)
        den = math.lcm(*(int(d) for d in set(dens.flat)))
        ints = _numerators(a) * (den // dens)
        bound = max(abs(int(ints.max())), abs(int(ints.min())))
        if bound < _INT64_SAFE:
            ints = ints.astype(np.int64)
        return cls(ints, den, bound)

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.ints.shape, dtype=object)
        den = self.den
        for idx, v in np.ndenumerate(self.ints):
            out[idx] = Fraction(int(v), den)
        return out


def exact_dot(a: "np.ndarray | ScaledInt", b: "np.ndarray | ScaledInt") -> np.ndarray:
    """Product of two rational arrays, computed on integers.

    Denominators are cleared first; int64 is used when the product cannot
    overflow, Python integers otherwise.
    """
    sa, sb = ScaledInt.of(a), ScaledInt.of(b)
    inner = sa.ints.shape[-1] if sa.ints.ndim else 1
    ia, ib = sa.ints, sb.ints
    if sa.bound * sb.bound * max(inner, 1) < _INT64_SAFE and ia.dtype != object and ib.dtype != object:
        prod = np.dot(ia, ib)
    else:
        prod = np.dot(ia.astype(object), ib.astype(object))
    out = ScaledInt(np.asarray(prod), sa.den * sb.den, 0).to_fractions()
    return out if out.shape else out[()]


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product that stays exact when both factors are Fraction arrays."""
    if is_exact(a) and is_exact(b):
        return exact_dot(a, b)
    return to_float(a) @ to_float(b)


def exact_identity(n: int) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out[:, :] = Fraction(0)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def exact_zeros(shape: tuple[int, ...]) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    return out


# analytic routines ---------------------------------------------------------


def _square(x: np.ndarray, what: str) -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise MalformedInput(f"{what} needs a square matrix, got shape {x.shape}")
    return x


def mat_exp(x: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling and squaring with Pade approximants)."""
    x = _square(x, "mat_exp")
    return scipy.linalg.expm(to_float(x))


def polar_unitary(g: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Unitary factor ``u`` of the right polar decomposition ``g = u p``."""
    g = to_float(_square(g, "polar_unitary"))
    s = np.linalg.svd(g, compute_uv=False)
    if s[-1] <= tol.abs_tol * max(1.0, s[0]):
        raise np.linalg.LinAlgError("polar_unitary: singular input")
    u, _ = scipy.linalg.polar(g, side="right")
    return u


def _check_hermitian(a: np.ndarray, tol: Tolerance) -> np.ndarray:
    a = to_float(_square(a, "eig_selfadjoint"))
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol.abs_tol * scale * 100:
        raise MalformedInput("matrix is not self-adjoint within tolerance")
    return (a + a.conj().T) / 2


def eig_selfadjoint(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and orthonormal eigenvector columns."""
    a = _check_hermitian(a, tol)
    w, v = np.linalg.eigh(a)
    return w, v


def selfadjoint_function(a: np.ndarray, f: Callable[[np.ndarray], np.ndarray], tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Functional calculus ``f(a)`` for a self-adjoint matrix."""
    w, v = eig_selfadjoint(a, tol)
    return (v * f(w)) @ v.conj().T


# JSON codec ----------------------------------------------------------------


def format_float(x: float) -> str:
    if x == 0:
        return "0"
    return format(float(x), ".12g")


def _scalar_text(v: Any) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return format_float(float(v))


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    entries = []
    for row in a:
        out_row = []
        for v in row:
            if isinstance(v, Fraction):
                out_row.append({"re": str(v), "im": "0"})
            else:
                c = complex(v)
                out_row.append({"re": _scalar_text(c.real), "im": _scalar_text(c.imag)})
        entries.append(out_row)
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def matrix_from_json(obj: Any) -> np.ndarray:
    """Decode the matrix format.  All-rational real input yields an exact array."""
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad matrix object: {exc}") from exc
    if rows < 1 or cols < 1 or len(entries) != rows or any(len(r) != cols for r in entries):
        raise MalformedInput("matrix entry count does not match rows x cols")
    parsed: list[list[tuple[Any, Any]]] = []
    for row in entries:
        prow = []
        for e in row:
            if isinstance(e, dict):
                re_ = parse_scalar(e.get("re", "0"))
                im_ = parse_scalar(e.get("im", "0"))
            else:
                re_, im_ = parse_scalar(e), Fraction(0)
            prow.append((re_, im_))
        parsed.append(prow)
    flat = [v for row in parsed for pair in row for v in pair]
    if all(isinstance(v, Fraction) for v in flat) and all(im == 0 for row in parsed for _, im in row):
        return exact_matrix([[re_ for re_, _ in row] for row in parsed])
    arr = np.array([[complex(float(re_), float(im_)) for re_, im_ in row] for row in parsed])
    if np.all(arr.imag == 0):
        return arr.real.copy()
    return arr


def vector_from_json(obj: Any) -> np.ndarray:
    """Vectors are lists of ``{"re","im"}`` objects or plain numbers; always complex."""
    if isinstance(obj, dict):
        m = matrix_from_json(obj)
        return to_float(m).astype(complex).reshape(-1)
    out = []
    for e in obj:
        if isinstance(e, dict):
            out.append(complex(float(parse_scalar(e.get("re", "0"))), float(parse_scalar(e.get("im", "0")))))
        else:
            out.append(complex(float(parse_scalar(e))))
    return np.array(out, dtype=complex)


def vector_to_json(v: Sequence[complex]) -> list:
    return [{"re": format_float(complex(x).real), "im": format_float(complex(x).imag)} for x in v]
