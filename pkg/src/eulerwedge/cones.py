"""Invariant convex cones and the timelike/spacelike classification of pairs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import numerics as nm
from .errors import AlgebraMismatch, ConeError, MalformedInput
from .liecore import AlgebraElement, LieAlgebra, bracket, direct_sum, sl2, sl2_elements
from .numerics import DEFAULT_TOL, Tolerance

__all__ = [
    "Sl2Cone",
    "ProductCone",
    "MinkowskiForward",
    "TrivialCone",
    "ConeClass",
    "sl2_cone_contains",
    "cone_contains",
    "classify_pair",
    "sl2_sum",
    "sl2_sum_element",
    "k_j_representative",
    "h_representative",
    "cone_from_json",
]


@dataclass(frozen=True)
class Sl2Cone:
    """``sign * C`` with ``C = {a^2 + bc <= 0, b >= c}`` for ``x = [[a, b], [c, -a]]``."""

    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise MalformedInput("Sl2Cone sign must be +1 or -1")

    def to_json(self) -> dict:
        return {"kind": "sl2", "sign": self.sign}


@dataclass(frozen=True)
class ProductCone:
    components: tuple

    def __init__(self, components: Sequence[Any]):
        object.__setattr__(self, "components", tuple(components))

    def to_json(self) -> dict:
        return {"kind": "product", "components": [c.to_json() for c in self.components]}


@dataclass(frozen=True)
class MinkowskiForward:
    """Closed forward light cone ``x_0 >= |x_vec|`` in R^dim."""

    dim: int

    def to_json(self) -> dict:
        return {"kind": "minkowski", "dim": self.dim}


@dataclass(frozen=True)
class TrivialCone:
    def to_json(self) -> dict:
        return {"kind": "trivial"}


Cone = Sl2Cone | ProductCone | MinkowskiForward | TrivialCone


class ConeClass(enum.Enum):
    POSITIVE_TIMELIKE = "positive-timelike"
    NEGATIVE_TIMELIKE = "negative-timelike"
    SPACELIKE = "spacelike"


def cone_from_json(obj: dict) -> Cone:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "sl2":
        return Sl2Cone(int(obj.get("sign", 1)))
    if kind == "product":
        return ProductCone([cone_from_json(c) for c in obj["components"]])
    if kind == "minkowski":
        return MinkowskiForward(int(obj["dim"]))
    if kind == "trivial":
        return TrivialCone()
    raise MalformedInput(f"unknown cone kind {kind!r}")


# sl2 and direct sums ------------------------------------------------------


@lru_cache(maxsize=None)
def sl2_sum(r: int) -> LieAlgebra:
    """Block-diagonal realization of the direct sum of r copies of sl2(R)."""
    if r < 1:
        raise MalformedInput("r must be positive")
    if r == 1:
        return sl2()
    return direct_sum([sl2()] * r, name=f"sl2R^{r}", family="sl2_sum_r")


def sl2_sum_element(parts: Sequence[AlgebraElement]) -> AlgebraElement:
    """Element of sl2_sum(r) from r elements of sl2(R)."""
    alg = sl2_sum(len(parts))
    coords: list = []
    for p in parts:
        if p.algebra != sl2():
            raise AlgebraMismatch("components must lie in sl2R")
        coords.extend(p.coords)
    return AlgebraElement(alg, np.array(coords, dtype=object if all(p.exact for p in parts) else float))


def blocks_of(x: AlgebraElement) -> list[np.ndarray]:
    """The 2x2 diagonal blocks of an element realized block-diagonally."""
    m = x.matrix
    n = m.shape[0]
    if n % 2:
        raise MalformedInput("expected a block-diagonal 2x2 realization")
    return [m[2 * i:2 * i + 2, 2 * i:2 * i + 2] for i in range(n // 2)]


def _le(a: Any, b: Any, slack: float) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a <= b
    return float(a) <= float(b) + slack


def _lt(a: Any, b: Any, slack: float) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a < b
    return float(a) < float(b) - slack


def _sl2_block_in_cone(m: np.ndarray, sign: int, interior: bool, tol: Tolerance) -> bool:
    a, b, c = m[0, 0] * sign, m[0, 1] * sign, m[1, 0] * sign
    exact = all(isinstance(v, Fraction) for v in (a, b, c))
    scale = 1.0 if exact else max(1.0, abs(float(a)), abs(float(b)), abs(float(c)))
    slack = 0.0 if exact else tol.abs_tol * scale ** 2 + tol.rel_tol * scale
    q = a * a + b * c
    if interior:
        return _lt(q, 0, slack) and _lt(c, b, slack)
    return _le(q, 0, slack) and _le(c, b, slack)


def sl2_cone_contains(x: AlgebraElement, boundary_tol: Tolerance = DEFAULT_TOL, interior: bool = False) -> bool:
    """``a^2 + bc <= 0`` and ``b >= c``; strict inequalities with ``interior``."""
    if x.algebra != sl2():
        raise AlgebraMismatch(f"sl2_cone_contains needs sl2R, got {x.algebra.name}")
    return _sl2_block_in_cone(x.matrix, 1, interior, boundary_tol)


def cone_contains(cone: Cone, x: Any, tol: Tolerance = DEFAULT_TOL, interior: bool = False) -> bool:
    """Membership of ``x`` (an AlgebraElement, or a vector for Minkowski cones)."""
    if isinstance(cone, MinkowskiForward):
        v = np.asarray(x.coords if isinstance(x, AlgebraElement) else x)
        if v.shape != (cone.dim,):
            raise MalformedInput(f"expected a vector of length {cone.dim}")
        if v.dtype == object and all(isinstance(t, Fraction) for t in v):
            x0 = v[0]
            s = sum(t * t for t in v[1:])
            if interior:
                return x0 > 0 and x0 * x0 > s
            return x0 >= 0 and x0 * x0 >= s
        fv = nm.to_float(v)
        norm = float(np.linalg.norm(fv[1:]))
        slack = tol.abs_tol + tol.rel_tol * max(abs(fv[0]), norm)
        if interior:
            return fv[0] > norm + slack
        return fv[0] >= norm - slack
    if isinstance(cone, TrivialCone):
        if isinstance(x, AlgebraElement):
            return x.is_zero(tol)
        return nm.is_zero(np.asarray(x), tol)
    if not isinstance(x, AlgebraElement):
        raise MalformedInput("sl2-type cones need an AlgebraElement")
    blocks = blocks_of(x)
    if isinstance(cone, Sl2Cone):
        if len(blocks) != 1:
            raise MalformedInput("Sl2Cone applied to a direct sum; use a ProductCone")
        return _sl2_block_in_cone(blocks[0], cone.sign, interior, tol)
    if isinstance(cone, ProductCone):
        if len(cone.components) != len(blocks):
            raise MalformedInput(f"product cone has {len(cone.components)} factors, element has {len(blocks)} blocks")
        for comp, blk in zip(cone.components, blocks):
            if isinstance(comp, Sl2Cone):
                if not _sl2_block_in_cone(blk, comp.sign, interior, tol):
                    return False
            elif isinstance(comp, TrivialCone):
                if not nm.is_zero(blk, tol):
                    return False
            else:
                raise MalformedInput("product cone factors must be sl2 or trivial cones")
        return True
    raise MalformedInput(f"unknown cone {cone!r}")


def default_cone(algebra: LieAlgebra) -> Cone:
    """C for sl2R and the product of copies of C for sl2R^r."""
    if algebra == sl2():
        return Sl2Cone(1)
    if algebra.family == "sl2_sum_r":
        return ProductCone([Sl2Cone(1)] * (algebra.size // 2))
    raise MalformedInput(f"no default cone for {algebra.name}")


def classify_pair(h: AlgebraElement, k: AlgebraElement, cone: Cone | None = None,
                  tol: Tolerance = DEFAULT_TOL) -> ConeClass:
    """Timelike when ``[h,k]`` lies in ``C`` or ``-C``, spacelike otherwise."""
    cone = cone or default_cone(h.algebra)
    z = bracket(h, k)
    pos = cone_contains(cone, z, tol)
    neg = cone_contains(cone, -z, tol)
    if pos and neg and not z.is_zero(tol):
        raise ConeError("cone is not pointed: a nonzero bracket lies in C and -C")
    if pos:
        return ConeClass.POSITIVE_TIMELIKE
    if neg:
        return ConeClass.NEGATIVE_TIMELIKE
    return ConeClass.SPACELIKE


def h_representative(r: int) -> AlgebraElement:
    """``(h0, ..., h0)`` in sl2R^r."""
    h0 = sl2_elements()["h0"]
    return sl2_sum_element([h0] * r)


def k_j_representative(r: int, j: int) -> AlgebraElement:
    """``(k0, ..., k0, -k0, ..., -k0)`` with j leading plus signs."""
    if not 1 <= r <= 8:
        raise MalformedInput("r must lie in 1..8")
    if not 0 <= j <= r:
        raise MalformedInput(f"j must lie in 0..{r}")
    k0 = sl2_elements()["k0"]
    return sl2_sum_element([k0] * j + [-k0] * (r - j))
