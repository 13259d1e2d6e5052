"""Concrete realizations of simple 3-graded algebras and classification data.

Realized families (all with rational bases):

* ``sl_n_R``  (n <= 5), Euler elements ``h_j``
* ``sp_2n_R`` (n <= 3), Euler element ``h_n``
* ``so_p_q``  (3 <= p+q <= 6), the boosts ``h_{j,i}``
* ``sl2_sum_r`` (r <= 4), the diagonal ``h`` and the ``k^j``
* ``so_2_2_via_sl2``: sl2 + sl2 together with an explicit isomorphism onto
  so(2,2) (see :class:`So22Model`)

The non-realized rows of the tables are shipped as data in
``data/tables.json``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, NamedTuple, Sequence

import numpy as np

from . import numerics as nm
from .cones import ConeClass, classify_pair, h_representative, k_j_representative, sl2_sum, sl2_sum_element
from .errors import ClosureError, MalformedInput, UnsupportedFamily
from .liecore import AlgebraElement, EulerCertificate, LieAlgebra, bracket, certify_euler, sl2, sl2_elements

__all__ = [
    "Realization",
    "FamilyEntry",
    "HermitianEntry",
    "ConformalCenterCase",
    "PairRepresentative",
    "So22Model",
    "realize",
    "algebra_by_name",
    "orthogonal_pair_representatives",
    "conformal_center_case",
    "table_simple_3_graded",
    "table_hermitian_tube",
    "so22_model",
    "sl_n",
    "sp_2n",
    "so_p_q",
    "poincare",
    "so_index",
    "boost",
    "FAMILIES",
]

FAMILIES = ("sl_n_R", "sp_2n_R", "so_p_q", "sl2_sum_r", "so_2_2_via_sl2")


def _unit(n: int, i: int, j: int) -> np.ndarray:
    m = nm.exact_zeros((n, n))
    m[i, j] = Fraction(1)
    return m


# sl_n -----------------------------------------------------------------


@lru_cache(maxsize=None)
def sl_n(n: int) -> LieAlgebra:
    """sl_n(R), basis ``H_i = E_ii - E_{i+1,i+1}`` then ``E_ij`` (i != j)."""
    if n == 2:
        return sl2()
    if not 2 <= n <= 8:
        raise UnsupportedFamily(f"sl_n_R needs 2 <= n <= 8, got {n}")
    basis = [_unit(n, i, i) - _unit(n, i + 1, i + 1) for i in range(n - 1)]
    basis += [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    return LieAlgebra(f"sl_n_R({n})", basis, family="sl_n_R")


def sl_n_euler(n: int, j: int) -> AlgebraElement:
    """``h_j = diag(b 1_j, (b-1) 1_{n-j})`` with ``b = (n-j)/n``."""
    b = Fraction(n - j, n)
    diag = [b] * j + [b - 1] * (n - j)
    m = nm.exact_zeros((n, n))
    for i, v in enumerate(diag):
        m[i, i] = v
    return sl_n(n).from_matrix(m)


# sp_2n ----------------------------------------------------------------


@lru_cache(maxsize=None)
def sp_2n(n: int) -> LieAlgebra:
    """sp_2n(R) as matrices ``[[A, B], [C, -A^T]]`` with B, C symmetric."""
    if not 1 <= n <= 4:
        raise UnsupportedFamily(f"sp_2n_R needs 1 <= n <= 4, got {n}")
    N = 2 * n
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append(_unit(N, i, j) - _unit(N, n + j, n + i))
    for i in range(n):
        for j in range(i, n):
            m = _unit(N, i, n + j)
            if i != j:
                m = m + _unit(N, j, n + i)
            basis.append(m)
    for i in range(n):
        for j in range(i, n):
            m = _unit(N, n + i, j)
            if i != j:
                m = m + _unit(N, n + j, i)
            basis.append(m)
    return LieAlgebra(f"sp_2n_R({n})", basis, family="sp_2n_R")


def sp_2n_euler(n: int) -> AlgebraElement:
    """``h_n = diag(1/2 I_n, -1/2 I_n)``."""
    m = nm.exact_zeros((2 * n, 2 * n))
    for i in range(n):
        m[i, i] = Fraction(1, 2)
        m[n + i, n + i] = Fraction(-1, 2)
    return sp_2n(n).from_matrix(m)


# so(p,q) --------------------------------------------------------------


def so_index(p: int, label: int) -> int:
    """Matrix index of the basis vector ``e_label``; labels run -(p-1)..q."""
    return label + p - 1


def so_labels(p: int, q: int) -> list[int]:
    return list(range(-(p - 1), q + 1))


@lru_cache(maxsize=None)
def so_p_q(p: int, q: int) -> LieAlgebra:
    """so(p,q) preserving ``diag(I_p, -I_q)``.

    Basis vectors ``e_{-(p-1)}, ..., e_0`` are positive, ``e_1, ..., e_q``
    negative.  Basis: ``E_ab - E_ba`` inside a block, ``E_ab + E_ba`` across.
    """
    if p < 1 or q < 1 or not 3 <= p + q <= 6:
        raise UnsupportedFamily(f"so_p_q needs p, q >= 1 and 3 <= p+q <= 6, got ({p},{q})")
    n = p + q
    basis = []
    for a in range(n):
        for b in range(a + 1, n):
            same = (a < p) == (b < p)
            m = _unit(n, a, b) - _unit(n, b, a) if same else _unit(n, a, b) + _unit(n, b, a)
            basis.append(m)
    return LieAlgebra(f"so_p_q({p},{q})", basis, family="so_p_q")


def boost(p: int, q: int, j: int, i: int) -> AlgebraElement:
    """``h_{j,i}`` with ``h e_i = e_j`` and ``h e_j = e_i`` (j positive, i negative)."""
    if not (-(p - 1) <= j <= 0 and 1 <= i <= q):
        raise MalformedInput(f"h_{{{j},{i}}} needs -(p-1) <= j <= 0 < i <= q")
    n = p + q
    a, b = so_index(p, j), so_index(p, i)
    return so_p_q(p, q).from_matrix(_unit(n, a, b) + _unit(n, b, a))


def rotation(p: int, q: int, a_label: int, b_label: int) -> AlgebraElement:
    """``E_ab - E_ba`` for two labels in the same block."""
    n = p + q
    a, b = so_index(p, a_label), so_index(p, b_label)
    return so_p_q(p, q).from_matrix(_unit(n, a, b) - _unit(n, b, a))


# Poincare algebra ------------------------------------------------------


@lru_cache(maxsize=None)
def poincare(d: int) -> LieAlgebra:
    """Poincare algebra of R^{1,d-1} as affine matrices ``[[A, b], [0, 0]]``."""
    if not 2 <= d <= 6:
        raise UnsupportedFamily(f"poincare needs 2 <= d <= 6, got {d}")
    n = d + 1
    basis = []
    for a in range(d):
        for b in range(a + 1, d):
            if a == 0:
                basis.append(_unit(n, a, b) + _unit(n, b, a))
            else:
                basis.append(_unit(n, a, b) - _unit(n, b, a))
    for a in range(d):
        basis.append(_unit(n, a, d))
    return LieAlgebra(f"poincare({d})", basis, family="poincare")


# so(2,2) model -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class So22Model:
    """Isomorphism ``phi`` from sl2 + sl2 onto so(2,2).

    Normalized by ``phi(h0,h0) = h_{-1,2}``, ``phi(k0,k0) = -h_{0,2}`` and
    ``phi(k0,-k0) = h_{-1,1}``.  ``matrix`` maps chiral coordinates to
    so(2,2) coordinates.

    Compact coordinates of ``y`` in so(2) + so(2) are the pair ``(c_t, c_s)``
    with ``y = c_t R_t + c_s R_s``, where ``R_t = E_{-1,0} - E_{0,-1}`` and
    ``R_s = E_{1,2} - E_{2,1}``.  Central windings are reported as
    counterclockwise turns in the ``(e_-1, e_0)`` and ``(e_1, e_2)`` planes,
    which is ``(-c_t, -c_s)`` per unit of ``2 pi``.
    """

    chiral: LieAlgebra
    target: LieAlgebra
    matrix: np.ndarray

    def phi(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.chiral:
            raise MalformedInput("phi expects an element of sl2R^2")
        if x.exact:
            return AlgebraElement(self.target, nm.exact_dot(self.matrix, x.coords))
        return AlgebraElement(self.target, nm.to_float(self.matrix) @ nm.to_float(x.coords))

    def bracket_preserved(self) -> bool:
        """``phi[b_i, b_j] = [phi b_i, phi b_j]`` on all basis pairs, exactly."""
        for i in range(self.chiral.dim):
            for j in range(i + 1, self.chiral.dim):
                bi, bj = self.chiral.basis_element(i), self.chiral.basis_element(j)
                if not self.phi(bracket(bi, bj)).equals(bracket(self.phi(bi), self.phi(bj))):
                    return False
        return True

    def compact_coordinates(self, y: AlgebraElement) -> tuple[Any, Any]:
        m = y.matrix
        ct, cs = m[0, 1], m[2, 3]
        expected = rotation(2, 2, -1, 0).matrix * ct + rotation(2, 2, 1, 2).matrix * cs
        ok = bool(np.all(m == expected)) if y.exact else nm.allclose(m, expected)
        if not ok:
            raise ClosureError("element does not lie in so(2) + so(2)")
        return ct, cs

    @property
    def report_matrix(self) -> np.ndarray:
        """Chiral central coordinates to reported so(2,2) windings."""
        z0 = sl2_elements()["z0"]
        zero = sl2().zero()
        out = nm.exact_zeros((2, 2))
        for col, parts in enumerate(([z0, zero], [zero, z0])):
            ct, cs = self.compact_coordinates(self.phi(sl2_sum_element(parts)))
            out[0, col] = -ct
            out[1, col] = -cs
        return out


@lru_cache(maxsize=None)
def so22_model() -> So22Model:
    chiral = sl2_sum(2)
    target = so_p_q(2, 2)
    A = boost(2, 2, -1, 2)
    B = -boost(2, 2, 0, 2)
    C = boost(2, 2, -1, 1)
    zz = bracket(A, B)          # image of (z0, z0)
    zm = bracket(A, C)          # image of (z0, -z0)
    hm = bracket(zz, C)         # image of (h0, -h0)
    half = Fraction(1, 2)
    img = {
        "h": ((A + hm) * half, (A - hm) * half),
        "k": ((B + C) * half, (B - C) * half),
        "z": ((zz + zm) * half, (zz - zm) * half),
    }
    cols = []
    for block in (0, 1):
        h, k, z = img["h"][block], img["k"][block], img["z"][block]
        # chiral basis per block: H = 2 h0, E = k0 + z0, F = k0 - z0
        for v in (h * 2, k + z, k - z):
            cols.append(v.coords)
    return So22Model(chiral, target, np.stack(cols, axis=1))


# realize ----------------------------------------------------------------


class Realization(NamedTuple):
    algebra: LieAlgebra
    eulers: list[EulerCertificate]
    labels: list[str]

    def euler(self, label: str) -> EulerCertificate:
        return self.eulers[self.labels.index(label)]


def _params(params: Sequence[int] | int, count: int, family: str) -> list[int]:
    ps = [params] if isinstance(params, int) else [int(p) for p in params]
    if len(ps) != count:
        raise UnsupportedFamily(f"{family} takes {count} parameter(s), got {len(ps)}")
    return ps


def realize(family: str, params: Sequence[int] | int) -> Realization:
    """Construct the algebra and its certified catalog Euler elements."""
    labelled: list[tuple[str, AlgebraElement]]
    if family == "sl_n_R":
        (n,) = _params(params, 1, family)
        if not 2 <= n <= 5:
            raise UnsupportedFamily("sl_n_R is realized for 2 <= n <= 5")
        alg = sl_n(n)
        labelled = [(f"h_{j}", sl_n_euler(n, j)) for j in range(1, n)]
    elif family == "sp_2n_R":
        (n,) = _params(params, 1, family)
        if not 1 <= n <= 3:
            raise UnsupportedFamily("sp_2n_R is realized for 1 <= n <= 3")
        alg = sp_2n(n)
        labelled = [(f"h_{n}", sp_2n_euler(n))]
    elif family == "so_p_q":
        p, q = _params(params, 2, family)
        alg = so_p_q(p, q)
        labelled = [(f"h_{{{j},{i}}}", boost(p, q, j, i))
                    for j in range(-(p - 1), 1) for i in range(1, q + 1)]
    elif family == "sl2_sum_r":
        (r,) = _params(params, 1, family)
        if not 1 <= r <= 4:
            raise UnsupportedFamily("sl2_sum_r is realized for 1 <= r <= 4")
        alg = sl2_sum(r)
        labelled = [("h", h_representative(r))] + [(f"k^{j}", k_j_representative(r, j)) for j in range(r + 1)]
    elif family in ("so_2_2_via_sl2", "so_2_2"):
        if params not in ([], (), None):
            _params(params, 0, family)
        alg = sl2_sum(2)
        E = sl2_elements()
        h0, k0 = E["h0"], E["k0"]
        labelled = [
            ("(h0,h0)", sl2_sum_element([h0, h0])),
            ("(h0,-h0)", sl2_sum_element([h0, -h0])),
            ("(k0,k0)", sl2_sum_element([k0, k0])),
            ("(k0,-k0)", sl2_sum_element([k0, -k0])),
            ("(-k0,k0)", sl2_sum_element([-k0, k0])),
            ("(-k0,-k0)", sl2_sum_element([-k0, -k0])),
        ]
    else:
        raise UnsupportedFamily(f"unknown family {family!r}; realizable: {', '.join(FAMILIES)}")
    return Realization(alg, [certify_euler(x) for _, x in labelled], [lbl for lbl, _ in labelled])


_NAME_PATTERNS = [
    (re.compile(r"^sl2R$"), lambda m: sl2()),
    (re.compile(r"^sl2R\^(\d+)$"), lambda m: sl2_sum(int(m[1]))),
    (re.compile(r"^sl_n_R\((\d+)\)$"), lambda m: sl_n(int(m[1]))),
    (re.compile(r"^sp_2n_R\((\d+)\)$"), lambda m: sp_2n(int(m[1]))),
    (re.compile(r"^so_p_q\((\d+),\s*(\d+)\)$"), lambda m: so_p_q(int(m[1]), int(m[2]))),
    (re.compile(r"^poincare\((\d+)\)$"), lambda m: poincare(int(m[1]))),
]


def algebra_by_name(name: str) -> LieAlgebra:
    """Resolve the names used in JSON element files."""
    for pat, make in _NAME_PATTERNS:
        m = pat.match(name.strip())
        if m:
            return make(m)
    raise UnsupportedFamily(f"unknown algebra name {name!r}")


# orthogonal pairs -------------------------------------------------------


class PairRepresentative(NamedTuple):
    label: str
    h: AlgebraElement
    k: AlgebraElement
    expected: ConeClass | None


def orthogonal_pair_representatives(family: str, params: Sequence[int] | int = ()) -> list[PairRepresentative]:
    if family == "sl2_sum_r":
        (r,) = _params(params, 1, family)
        h = h_representative(r)
        out = []
        for j in range(r + 1):
            if j == 0:
                cls = ConeClass.NEGATIVE_TIMELIKE
            elif j == r:
                cls = ConeClass.POSITIVE_TIMELIKE
            else:
                cls = ConeClass.SPACELIKE
            out.append(PairRepresentative(f"(h,k^{j})", h, k_j_representative(r, j), cls))
        return out
    if family in ("so_2_2", "so_2_2_via_sl2"):
        E = sl2_elements()
        h0, k0 = E["h0"], E["k0"]
        h = sl2_sum_element([h0, h0])
        return [
            PairRepresentative("((h0,h0),(k0,k0))", h, sl2_sum_element([k0, k0]), ConeClass.POSITIVE_TIMELIKE),
            PairRepresentative("((h0,h0),(k0,-k0))", h, sl2_sum_element([k0, -k0]), ConeClass.SPACELIKE),
            PairRepresentative("((h0,h0),(-k0,k0))", h, sl2_sum_element([-k0, k0]), ConeClass.SPACELIKE),
            PairRepresentative("((h0,h0),(-k0,-k0))", h, sl2_sum_element([-k0, -k0]), ConeClass.NEGATIVE_TIMELIKE),
        ]
    raise UnsupportedFamily(f"no orthogonal pair representatives for {family!r}")


# tables -------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyEntry:
    row: str
    family: str
    algebra: str
    root_system: str
    euler_labels: tuple[str, ...]
    g1_description: str
    constructor_available: bool
    params: tuple[int, ...] = ()


@dataclass(frozen=True)
class HermitianEntry:
    algebra: str
    restricted_root: str
    complexification: str
    complex_root_system: str
    symmetric_euler_labels: tuple[str, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z_{n_1} x ... x Z_{n_k}`` by invariant factors; empty means trivial."""

    description: str
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for n in self.invariant_factors:
            out *= n
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors


@dataclass(frozen=True)
class ConformalCenterCase:
    d: int
    case: str
    condition: str
    group: str
    center: FiniteAbelianGroup
    z1: FiniteAbelianGroup
    z2: FiniteAbelianGroup
    z3: FiniteAbelianGroup

    def to_json(self) -> dict:
        def grp(g: FiniteAbelianGroup) -> dict:
            return {"description": g.description, "invariant_factors": list(g.invariant_factors)}

        return {"d": self.d, "case": self.case, "condition": self.condition, "group": self.group,
                "center": grp(self.center), "z1": grp(self.z1), "z2": grp(self.z2), "z3": grp(self.z3)}


@lru_cache(maxsize=None)
def _tables() -> dict:
    return json.loads(resources.files("eulerwedge").joinpath("data/tables.json").read_text(encoding="utf-8"))


def table_simple_3_graded() -> list[FamilyEntry]:
    return [FamilyEntry(r["row"], r["family"], r["algebra"], r["root_system"], tuple(r["euler_labels"]),
                        r["g1_description"], bool(r["constructor_available"]))
            for r in _tables()["simple_3_graded"]]


def table_hermitian_tube() -> list[HermitianEntry]:
    return [HermitianEntry(r["algebra"], r["restricted_root"], r["complexification"], r["complex_root_system"],
                           tuple(r["symmetric_euler_labels"]))
            for r in _tables()["hermitian_tube_type"]]


def conformal_center_case(d: int) -> ConformalCenterCase:
    """Center data for the conformal group of d-dimensional Minkowski space."""
    if d < 2:
        raise MalformedInput("d must be at least 2")
    if d % 2 == 1:
        case = "a"
    elif d % 4 == 2:
        case = "b"
    else:
        case = "c"
    raw = _tables()["conformal_center_cases"][case]

    def grp(obj: dict) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(obj["description"], tuple(obj["invariant_factors"]))

    center_factors = tuple(raw["center"])
    center = FiniteAbelianGroup("Z_2" if center_factors else "{e}", center_factors)
    return ConformalCenterCase(d, case, raw["condition"], raw["group"], center,
                               grp(raw["z1"]), grp(raw["z2"]), grp(raw["z3"]))
