"""Covering groups of SL2(R), PSL2(R) and their products.

An element of the universal cover is stored per 2x2 block as a base matrix
plus an integer winding ``n``.  The lifted rotation angle of a block is
``angle = principal_angle(base) + period * n``, where ``principal_angle``
is twice the argument of the unitary polar factor of the base block and
lies in ``(-period/2, period/2]``.  Angles are measured in the
normalization ``exp(angle * z0)``, so ``period`` is ``4 pi`` for SL2 and
``2 pi`` for PSL2.

Central elements are ``exp(2 pi n z0)`` blockwise; their center
coordinates are the integers ``n = angle / 2 pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import numerics as nm
from .cones import blocks_of, sl2_sum
from .errors import (AlgebraMismatch, LiftError, MalformedInput, NonCentral, NotInStabilizer, NotSl2Triple,
                     UnsupportedFamily)
from .liecore import (AlgebraElement, EulerCertificate, adjoint_apply, bracket, certify_euler, exp_ad_quarter_turns,
                      is_euler, ad_matrix, sl2_triple, tau_matrix)
from .numerics import DEFAULT_TOL, Tolerance

__all__ = [
    "CoveringGroupTag",
    "CoveringElement",
    "Lattice",
    "ZSubgroups",
    "tag_by_name",
    "default_tag",
    "principal_angle",
    "winding_of_exponential",
    "rotation_lift",
    "central_element",
    "zeta",
    "tau_on_group",
    "partial_h",
    "z_subgroups",
    "commutator_identity_check",
    "ANGLE_TOL",
]

TWO_PI = 2 * math.pi
ANGLE_TOL = 1e-6


@dataclass(frozen=True)
class CoveringGroupTag:
    """Which covering group, and how its center coordinates are reported.

    ``report_matrix`` maps blockwise center coordinates to the reported
    winding vector (identity except for the so(2,2) calibration).
    """

    name: str
    base: str
    blocks: int
    projective: bool
    report_matrix: tuple[tuple[Fraction, ...], ...]

    @property
    def period(self) -> float:
        return TWO_PI if self.projective else 2 * TWO_PI

    @property
    def winding_rank(self) -> int:
        return self.blocks

    @property
    def center_model(self) -> str:
        return "Z" if self.blocks == 1 else f"Z^{self.blocks}"

    @property
    def algebra(self):
        return sl2_sum(self.blocks)

    def report(self, coords: Sequence[int]) -> list:
        out = []
        for row in self.report_matrix:
            v = sum(Fraction(r) * c for r, c in zip(row, coords))
            out.append(int(v) if v.denominator == 1 else v)
        return out


def _identity_report(r: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))


@lru_cache(maxsize=None)
def _so22_report() -> tuple[tuple[Fraction, ...], ...]:
    from .catalog import so22_model

    m = so22_model().report_matrix
    return tuple(tuple(m[i, j] for j in range(2)) for i in range(2))


@lru_cache(maxsize=None)
def tag_by_name(name: str) -> CoveringGroupTag:
    """``SL2R~``, ``PSL2R~``, ``PSL2xPSL2~`` or ``PSL2^r~`` (r <= 4).

    The trailing ``~`` is optional.
    """
    key = name.strip().rstrip("~")
    if key == "SL2R":
        return CoveringGroupTag("SL2R~", "SL2R", 1, False, _identity_report(1))
    if key == "PSL2R":
        return CoveringGroupTag("PSL2R~", "PSL2R", 1, True, _identity_report(1))
    if key in ("PSL2xPSL2", "PSL2^2"):
        return CoveringGroupTag("PSL2xPSL2~", "PSL2xPSL2", 2, True, _so22_report())
    if key.startswith("PSL2^"):
        try:
            r = int(key[5:])
        except ValueError as exc:
            raise UnsupportedFamily(f"unknown covering group {name!r}") from exc
        if r == 1:
            return tag_by_name("PSL2R~")
        if 3 <= r <= 4:
            return CoveringGroupTag(f"PSL2^{r}~", f"PSL2^{r}", r, True, _identity_report(r))
    raise UnsupportedFamily(f"unknown covering group {name!r}")


def default_tag(algebra) -> CoveringGroupTag:
    r = algebra.size // 2
    if algebra != sl2_sum(r):
        raise UnsupportedFamily(f"no covering group for {algebra.name}")
    return tag_by_name("PSL2R~" if r == 1 else f"PSL2^{r}~")


# angles ----------------------------------------------------------------


def principal_angle(block: np.ndarray, projective: bool) -> float:
    """Twice the argument of the polar factor; in (-period/2, period/2]."""
    b = nm.to_float(block)
    phi = math.atan2(b[0, 1] - b[1, 0], b[0, 0] + b[1, 1])
    theta = 2 * phi
    if projective:
        if theta > math.pi:
            theta -= TWO_PI
        elif theta <= -math.pi:
            theta += TWO_PI
    return theta


def _normalize(block: np.ndarray, projective: bool) -> np.ndarray:
    """PSL2 blocks are stored with the representative whose angle is in (-pi, pi]."""
    b = nm.to_float(block)
    if not projective:
        return b
    theta = 2 * math.atan2(b[0, 1] - b[1, 0], b[0, 0] + b[1, 1])
    if theta > math.pi or theta <= -math.pi:
        return -b
    return b


def _winding_for(angle: float, block: np.ndarray, tag: CoveringGroupTag, tol: float = ANGLE_TOL) -> int:
    p = principal_angle(block, tag.projective)
    n = round((angle - p) / tag.period)
    if abs(angle - p - n * tag.period) > tol:
        raise LiftError(f"angle {angle:.9g} is not a lift of the base block (principal {p:.9g})")
    return int(n)


def _nearest_winding(target: float, block: np.ndarray, tag: CoveringGroupTag) -> int:
    p = principal_angle(block, tag.projective)
    return int(round((target - p) / tag.period))


def rotation_block(theta: float) -> np.ndarray:
    """``exp(theta z0)``."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, s], [-s, c]])


# elements --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoveringElement:
    tag: CoveringGroupTag
    blocks: tuple
    winding: tuple

    def __post_init__(self) -> None:
        if len(self.blocks) != self.tag.blocks or len(self.winding) != self.tag.blocks:
            raise MalformedInput(f"{self.tag.name} needs {self.tag.blocks} blocks")

    @classmethod
    def from_angles(cls, tag: CoveringGroupTag, blocks: Sequence[np.ndarray], angles: Sequence[float],
                    tol: float = ANGLE_TOL) -> "CoveringElement":
        bs = tuple(_normalize(b, tag.projective) for b in blocks)
        return cls(tag, bs, tuple(_winding_for(a, b, tag, tol) for a, b in zip(angles, bs)))

    @classmethod
    def identity(cls, tag: CoveringGroupTag) -> "CoveringElement":
        return cls(tag, tuple(np.eye(2) for _ in range(tag.blocks)), (0,) * tag.blocks)

    @property
    def base(self) -> np.ndarray:
        n = 2 * self.tag.blocks
        out = np.zeros((n, n))
        for i, b in enumerate(self.blocks):
            out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = b
        return out

    @property
    def angles(self) -> np.ndarray:
        return np.array([principal_angle(b, self.tag.projective) + self.tag.period * w
                         for b, w in zip(self.blocks, self.winding)])

    def rotation_number(self) -> np.ndarray:
        """Lifted angle in units of the base period (1/2 for exp(2 pi z0) in SL2~)."""
        return self.angles / self.tag.period

    def _check(self, other: "CoveringElement") -> None:
        if not isinstance(other, CoveringElement) or other.tag != self.tag:
            raise AlgebraMismatch("covering elements of different groups")

    def __mul__(self, other: "CoveringElement") -> "CoveringElement":
        self._check(other)
        blocks, wind = [], []
        # the lifted angle of a product differs from the sum by less than pi
        for b1, b2, a1, a2 in zip(self.blocks, other.blocks, self.angles, other.angles):
            b = _normalize(b1 @ b2, self.tag.projective)
            blocks.append(b)
            wind.append(_nearest_winding(a1 + a2, b, self.tag))
        return CoveringElement(self.tag, tuple(blocks), tuple(wind))

    def inverse(self) -> "CoveringElement":
        blocks, wind = [], []
        for b, a in zip(self.blocks, self.angles):
            bi = _normalize(np.linalg.inv(b), self.tag.projective)
            blocks.append(bi)
            wind.append(_nearest_winding(-a, bi, self.tag))
        return CoveringElement(self.tag, tuple(blocks), tuple(wind))

    def __pow__(self, n: int) -> "CoveringElement":
        out = CoveringElement.identity(self.tag)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def equals(self, other: "CoveringElement", tol: float = ANGLE_TOL) -> bool:
        self._check(other)
        if tuple(self.winding) != tuple(other.winding):
            return False
        return all(np.max(np.abs(a - b)) <= tol for a, b in zip(self.blocks, other.blocks))

    def is_central(self, tol: float = 1e-8) -> bool:
        for b in self.blocks:
            if not (np.max(np.abs(b - np.eye(2))) <= tol or np.max(np.abs(b + np.eye(2))) <= tol):
                return False
        return True

    def center_coords(self, tol: float = 1e-8) -> tuple[int, ...]:
        """Integers n with self = exp(2 pi n z0) blockwise; NonCentral otherwise."""
        if not self.is_central(tol):
            raise NonCentral("element is not central")
        out = []
        for a in self.angles:
            n = round(a / TWO_PI)
            if abs(a - n * TWO_PI) > ANGLE_TOL:
                raise NonCentral("central base with a non-central angle")
            out.append(int(n))
        return tuple(out)

    def reported(self) -> list:
        return self.tag.report(self.center_coords())

    def adjoint(self, x: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
        return adjoint_apply(self.base, x, tol)

    def to_json(self) -> dict:
        return {"tag": self.tag.name, "base": nm.matrix_to_json(self.base), "winding": list(self.winding)}

    @classmethod
    def from_json(cls, obj: dict) -> "CoveringElement":
        try:
            tag = tag_by_name(obj["tag"])
            base = nm.to_float(nm.matrix_from_json(obj["base"]))
            winding = tuple(int(w) for w in obj["winding"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad covering element object: {exc}") from exc
        if base.shape != (2 * tag.blocks, 2 * tag.blocks):
            raise MalformedInput("base matrix has the wrong size for the tag")
        blocks = tuple(_normalize(base[2 * i:2 * i + 2, 2 * i:2 * i + 2], tag.projective) for i in range(tag.blocks))
        for b in blocks:
            if abs(np.linalg.det(b) - 1) > 1e-8:
                raise MalformedInput("base blocks must have determinant 1")
        return cls(tag, blocks, winding)


def rotation_lift(tag: CoveringGroupTag, theta: float, block: int | None = None) -> CoveringElement:
    """``exp(theta z0)`` in one block (or all blocks when ``block`` is None)."""
    blocks, angles = [], []
    for i in range(tag.blocks):
        t = theta if block is None or block == i else 0.0
        blocks.append(rotation_block(t))
        angles.append(t)
    return CoveringElement.from_angles(tag, blocks, angles)


def central_element(tag: CoveringGroupTag, coords: Sequence[int]) -> CoveringElement:
    """``exp(2 pi n_i z0)`` in block i."""
    if len(coords) != tag.blocks:
        raise MalformedInput("wrong number of center coordinates")
    blocks = [np.eye(2) * (-1 if n % 2 else 1) for n in coords]
    return CoveringElement.from_angles(tag, blocks, [TWO_PI * n for n in coords])


def _sl2_exp_path(x: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """``exp(t x)`` for trace-free 2x2 x at every t, as an array (len(ts), 2, 2).

    Uses ``x^2 = delta I`` with ``delta = -det x``.
    """
    delta = -(x[0, 0] * x[1, 1] - x[0, 1] * x[1, 0])
    scale = max(1.0, float(np.max(np.abs(x))))
    if abs(delta) <= 1e-15 * scale ** 2:
        c, s = np.ones_like(ts), ts
    elif delta > 0:
        r = math.sqrt(delta)
        c, s = np.cosh(r * ts), np.sinh(r * ts) / r
    else:
        r = math.sqrt(-delta)
        c, s = np.cos(r * ts), np.sin(r * ts) / r
    return c[:, None, None] * np.eye(2) + s[:, None, None] * x


def _polar_angles(ms: np.ndarray) -> np.ndarray:
    """Argument of the unitary polar factor of each 2x2 matrix with positive determinant.

    For such M the polar factor is ``M + adj(M)^T`` normalized, a rotation
    by ``atan2(b - c, a + d)``.
    """
    if np.any(ms[:, 0, 0] * ms[:, 1, 1] - ms[:, 0, 1] * ms[:, 1, 0] <= 0):
        raise LiftError("path leaves the positive-determinant matrices")
    return np.arctan2(ms[:, 0, 1] - ms[:, 1, 0], ms[:, 0, 0] + ms[:, 1, 1])


def winding_of_exponential(tag: CoveringGroupTag, z: AlgebraElement, T: float = 1.0, steps: int = 512,
                           max_steps: int = 1 << 16, tol: Tolerance = DEFAULT_TOL) -> CoveringElement:
    """Lift of ``exp(T z)`` obtained by following ``t -> exp(t z)``.

    The unitary polar factor of each block is sampled at ``steps + 1`` points;
    the step count doubles until every angle increment is below pi/4.
    """
    if z.algebra != tag.algebra:
        raise AlgebraMismatch(f"{tag.name} needs elements of {tag.algebra.name}, got {z.algebra.name}")
    zb = [nm.to_float(b) for b in blocks_of(z)]
    n = steps
    while True:
        angles = []
        worst = 0.0
        ts = np.linspace(0.0, T, n + 1)
        for b in zb:
            phis = _polar_angles(_sl2_exp_path(b, ts))
            d = np.diff(phis)
            d = (d + math.pi) % TWO_PI - math.pi
            worst = max(worst, float(np.max(np.abs(2 * d), initial=0.0)))
            angles.append(float(2 * np.sum(d)))
        if worst < math.pi / 4:
            break
        if n >= max_steps:
            raise LiftError(f"angle increment {worst:.3g} >= pi/4 at {n} steps")
        n *= 2
    ends = [nm.mat_exp(b * T) for b in zb]
    return CoveringElement.from_angles(tag, ends, angles)


# tau and the boundary map ------------------------------------------------


def _reflections(h: EulerCertificate, tol: Tolerance) -> list[np.ndarray | None]:
    """Per block: ``2 h_block`` (an orthogonal reflection) or None for h_block = 0."""
    out: list[np.ndarray | None] = []
    for blk in blocks_of(h.element):
        f = nm.to_float(blk)
        if np.max(np.abs(f)) <= tol.abs_tol:
            out.append(None)
            continue
        sym = abs(f[0, 1] - f[1, 0]) <= 1e-9 and abs(f[0, 0] + f[1, 1]) <= 1e-9
        if not sym or abs(f[0, 0] ** 2 + f[0, 1] ** 2 - 0.25) > 1e-9:
            raise UnsupportedFamily("tau on the group needs blocks a h0 + b k0 with a^2 + b^2 = 1/4, or 0")
        out.append(2 * f)
    return out


def tau_on_group(h: AlgebraElement | EulerCertificate, g: CoveringElement, tol: Tolerance = DEFAULT_TOL) -> CoveringElement:
    """Lift of the involution of h: conjugation by ``2 h`` per block, angles negated."""
    cert = certify_euler(h)
    if cert.algebra != g.tag.algebra:
        raise AlgebraMismatch("h and g live over different algebras")
    refl = _reflections(cert, tol)
    blocks, angles = [], []
    for s, b, a in zip(refl, g.blocks, g.angles):
        if s is None:
            blocks.append(b)
            angles.append(a)
        else:
            blocks.append(s @ b @ s)
            angles.append(-a)
    return CoveringElement.from_angles(g.tag, blocks, angles)


def _stabilizer_sign(cert: EulerCertificate, g: CoveringElement, tol: Tolerance) -> int:
    y = g.adjoint(cert.element, tol)
    if y.equals(cert.element, tol):
        return 1
    if y.equals(-cert.element, tol):
        return -1
    raise NotInStabilizer("Ad(g) h is neither h nor -h")


def partial_h(tag: CoveringGroupTag, h: AlgebraElement | EulerCertificate, g: CoveringElement,
              tol: Tolerance = DEFAULT_TOL) -> CoveringElement:
    """``g tau_h(g)^-1``, checked to be central."""
    if g.tag != tag:
        raise AlgebraMismatch("element belongs to another covering group")
    cert = certify_euler(h)
    _stabilizer_sign(cert, g, tol)
    out = g * tau_on_group(cert, g, tol).inverse()
    if not out.is_central():
        raise NonCentral("g tau(g)^-1 is not central")
    return out


# lattices ---------------------------------------------------------------


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the integer row span (zero rows dropped)."""
    m = [list(map(int, r)) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while m and col < ncols:
        nz = [r for r in m if r[col] != 0]
        if not nz:
            col += 1
            continue
        # gcd reduction on this column
        while sum(1 for r in m if r[col] != 0) > 1:
            m.sort(key=lambda r: (r[col] == 0, abs(r[col])))
            pivot = m[0]
            for i in range(1, len(m)):
                if m[i][col] != 0:
                    q = m[i][col] // pivot[col]
                    m[i] = [a - q * b for a, b in zip(m[i], pivot)]
        m.sort(key=lambda r: (r[col] == 0, abs(r[col])))
        pivot = m.pop(0)
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        out.append(pivot)
        m = [r for r in m if any(r)]
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        c = next(k for k, v in enumerate(row) if v != 0)
        for j in range(i):
            q = out[j][c] // row[c]
            out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^n, stored by its Hermite normal form basis."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def generated_by(cls, ambient: int, gens: Sequence[Sequence[int]]) -> "Lattice":
        return cls(ambient, tuple(tuple(r) for r in hermite_normal_form(gens, ambient)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Lattice.generated_by(self.ambient, list(self.basis) + [list(v)]) == self

    def __le__(self, other: "Lattice") -> bool:
        return all(other.contains(b) for b in self.basis)

    def index_in(self, other: "Lattice") -> int | None:
        """``[other : self]`` when self <= other; None when infinite."""
        if not self <= other:
            raise ValueError("not a subgroup")
        if self.rank != other.rank:
            return None
        if self.rank == 0:
            return 1
        # coordinates of self's basis in other's basis, then |det|
        ob = np.array(other.basis, dtype=object).T
        cols = [c for c in range(self.ambient) if any(r[c] for r in other.basis)]
        piv = []
        for c in cols:
            if nm.rank_exact(ob[piv + [c], :]) > len(piv):
                piv.append(c)
            if len(piv) == other.rank:
                break
        sub = nm.exact_matrix(ob[piv, :].tolist())
        inv = nm.inverse_exact(sub)
        coords = nm.exact_dot(inv, nm.exact_matrix(np.array(self.basis, dtype=object).T[piv, :].tolist()))
        det = _det_exact(coords)
        return abs(int(det))

    def to_json(self) -> dict:
        return {"ambient_rank": self.ambient, "basis": [list(b) for b in self.basis]}


def _det_exact(m: np.ndarray) -> Fraction:
    rows = [[Fraction(v) for v in r] for r in m]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


@dataclass(frozen=True)
class ZSubgroups:
    z1: Lattice
    z2: Lattice
    z3: Lattice

    def to_json(self) -> dict:
        return {"Z1": self.z1.to_json(), "Z2": self.z2.to_json(), "Z3": self.z3.to_json()}


def z_subgroups(tag: CoveringGroupTag, h: AlgebraElement | EulerCertificate, tol: Tolerance = DEFAULT_TOL) -> ZSubgroups:
    """Images of the center, of G^h and of G^{+-h} under the boundary map.

    Subgroups are returned in blockwise center coordinates.
    """
    cert = certify_euler(h)
    if cert.algebra != tag.algebra:
        raise AlgebraMismatch(f"{tag.name} needs h in {tag.algebra.name}")
    r = tag.blocks
    centers = [central_element(tag, [int(i == j) for j in range(r)]) for i in range(r)]
    g1 = [partial_h(tag, cert, c, tol).center_coords() for c in centers]
    # G^h is generated by the center and exp of the centralizer of h
    a = ad_matrix(cert.element)
    ker = nm.nullspace_exact(a) if nm.is_exact(a) else None
    if ker is None:
        raise MalformedInput("z_subgroups needs an exact Euler element")
    cent = [AlgebraElement(cert.algebra, ker[:, i]) for i in range(ker.shape[1])]
    g2 = list(g1)
    for c in cent:
        for t in (1.0, math.pi):
            g = winding_of_exponential(tag, c, t)
            g2.append(partial_h(tag, cert, g, tol).center_coords())
    # witness with Ad(g) h = -h: rotation by pi in every block where h != 0
    refl = _reflections(cert, tol)
    blocks = [rotation_block(math.pi) if s is not None else np.eye(2) for s in refl]
    angles = [math.pi if s is not None else 0.0 for s in refl]
    witness = CoveringElement.from_angles(tag, blocks, angles)
    g3 = g2 + [partial_h(tag, cert, witness, tol).center_coords()]
    return ZSubgroups(Lattice.generated_by(r, g1), Lattice.generated_by(r, g2), Lattice.generated_by(r, g3))


# zeta and the commutator identity -----------------------------------------


def zeta(tag: CoveringGroupTag, h: AlgebraElement, k: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> CoveringElement:
    """``exp(2 pi [h, k])`` in the covering group, verified central."""
    triple = sl2_triple(h, k, tol)
    out = winding_of_exponential(tag, triple.z, TWO_PI, tol=tol)
    if not out.is_central():
        raise NonCentral("exp(2 pi [h,k]) is not central; wrong group for this algebra?")
    out.center_coords()
    return out


@dataclass(frozen=True)
class CommutatorCheck:
    adjoint_ok: bool
    covering_ok: bool | None
    zeta_coords: tuple[int, ...] | None
    angle_residual: float | None

    def __bool__(self) -> bool:
        return self.adjoint_ok and self.covering_ok is not False


def commutator_identity_check(h: AlgebraElement, k: AlgebraElement, tag: CoveringGroupTag | None = None,
                              tol: Tolerance = DEFAULT_TOL, covering: bool = True) -> CommutatorCheck:
    """``tau_k tau_h = exp(pi ad z)`` exactly, and ``partial_h(exp(pi z)) = zeta(h, k)`` on the cover."""
    try:
        triple = sl2_triple(h, k, tol)
    except NotSl2Triple:
        return CommutatorCheck(False, None, None, None)
    th, tk = tau_matrix(h), tau_matrix(k)
    lhs = nm.dot(tk, th)
    rhs = exp_ad_quarter_turns(triple.z, 2)
    adjoint_ok = nm.allclose(lhs, rhs, tol) and nm.allclose(nm.dot(lhs, lhs), h.algebra.identity(), tol)
    if not covering:
        return CommutatorCheck(adjoint_ok, None, None, None)
    tag = tag or default_tag(h.algebra)
    r2 = winding_of_exponential(tag, triple.z, math.pi, tol=tol)
    lhs_g = partial_h(tag, h, r2, tol)
    z = zeta(tag, h, k, tol)
    residual = float(np.max(np.abs(lhs_g.angles - z.angles)))
    covering_ok = residual <= ANGLE_TOL and lhs_g.equals(z)
    return CommutatorCheck(adjoint_ok, covering_ok, z.center_coords(), residual)
