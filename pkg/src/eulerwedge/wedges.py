"""Abstract wedges, their order for SL2, and the regions attached to Euler elements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import numerics as nm
from .cones import Sl2Cone, TrivialCone, blocks_of, h_representative, sl2_sum, sl2_sum_element
from .covergroup import (ANGLE_TOL, CoveringElement, CoveringGroupTag, tag_by_name, tau_on_group)
from .errors import AlgebraMismatch, LiftError, MalformedInput, NonCentral, NotEuler
from .liecore import (AlgebraElement, EulerCertificate, adjoint_matrix, certify_euler, is_euler, sl2, tau_matrix)
from .numerics import DEFAULT_TOL, Tolerance

__all__ = [
    "WedgeGroup",
    "ExtendedElement",
    "AbstractWedge",
    "act",
    "complement",
    "twisted_complement",
    "leq_sl2",
    "in_compression_semigroup",
    "AffineEulerField",
    "minkowski_positivity_region",
    "Interval",
    "mobius",
    "interval_of_euler",
    "covering_interval_act",
    "product_wedge_region",
]

INF = math.inf


# extended group ------------------------------------------------------------


class WedgeGroup:
    """A covering group together with the involution of a reference Euler element."""

    def __init__(self, tag: CoveringGroupTag | str, h_ref: AlgebraElement | None = None):
        self.tag = tag_by_name(tag) if isinstance(tag, str) else tag
        self.algebra = sl2_sum(self.tag.blocks)
        h = h_ref if h_ref is not None else h_representative(self.tag.blocks)
        if h.algebra != self.algebra:
            raise AlgebraMismatch(f"reference element must lie in {self.algebra.name}")
        self.h_ref = certify_euler(h)
        self._tau = tau_matrix(self.h_ref)

    def tau(self, g: CoveringElement) -> CoveringElement:
        return tau_on_group(self.h_ref, g)

    def identity(self) -> "ExtendedElement":
        return ExtendedElement(self, CoveringElement.identity(self.tag), 0)

    def element(self, g: CoveringElement, flip: int = 0) -> "ExtendedElement":
        if g.tag != self.tag:
            raise AlgebraMismatch("element of another covering group")
        return ExtendedElement(self, g, int(flip) & 1)

    def base_wedge(self) -> "AbstractWedge":
        """``W0 = (h_ref, tau_ref)`` with the identity as witness."""
        return AbstractWedge(self.h_ref.element, ExtendedElement(self, CoveringElement.identity(self.tag), 1),
                             self.identity())


@dataclass(frozen=True, eq=False)
class ExtendedElement:
    """``(g, flip)`` standing for ``g tau^flip`` in the group extended by the involution."""

    group: WedgeGroup
    g: CoveringElement
    flip: int

    def _check(self, other: "ExtendedElement") -> None:
        if not isinstance(other, ExtendedElement) or other.group is not self.group:
            raise AlgebraMismatch("extended elements over different groups")

    def __mul__(self, other: "ExtendedElement") -> "ExtendedElement":
        self._check(other)
        right = self.group.tau(other.g) if self.flip else other.g
        return ExtendedElement(self.group, self.g * right, self.flip ^ other.flip)

    def inverse(self) -> "ExtendedElement":
        gi = self.g.inverse()
        return ExtendedElement(self.group, self.group.tau(gi) if self.flip else gi, self.flip)

    def equals(self, other: "ExtendedElement", tol: float = ANGLE_TOL) -> bool:
        self._check(other)
        return self.flip == other.flip and self.g.equals(other.g, tol)

    def is_identity(self, tol: float = ANGLE_TOL) -> bool:
        return self.equals(self.group.identity(), tol)

    def ad(self, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        """Automorphism ``Ad(g) tau^flip`` of the algebra."""
        a = adjoint_matrix(self.g.base, self.group.algebra, tol)
        return a @ nm.to_float(self.group._tau) if self.flip else a

    def twisted_ad(self, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        """``(-1)^flip Ad(g) tau^flip``: the action on Euler elements."""
        return -self.ad(tol) if self.flip else self.ad(tol)

    def to_json(self) -> dict:
        d = self.g.to_json()
        d["parity"] = self.flip
        return d


def _as_extended(group: WedgeGroup, g: Any) -> ExtendedElement:
    if isinstance(g, ExtendedElement):
        if g.group is not group:
            raise AlgebraMismatch("element of another wedge group")
        return g
    if isinstance(g, CoveringElement):
        return group.element(g, 0)
    raise MalformedInput("expected a CoveringElement or ExtendedElement")


# wedges ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AbstractWedge:
    """``(x, sigma)``; ``witness`` is a group element g with W = g.W0 when known."""

    x: AlgebraElement
    sigma: ExtendedElement
    witness: ExtendedElement | None = None

    @property
    def group(self) -> WedgeGroup:
        return self.sigma.group

    @property
    def parity(self) -> int:
        return self.sigma.flip

    def residuals(self, tol: Tolerance = DEFAULT_TOL) -> dict[str, float]:
        """``sigma^2 = e`` (angle and base) and ``Ad(sigma) = tau_x``."""
        sq = self.sigma * self.sigma
        ident = self.group.identity()
        sq_res = float(max(np.max(np.abs(sq.g.base - ident.g.base)),
                           np.max(np.abs(sq.g.angles)), float(sq.flip)))
        ad_res = float(np.max(np.abs(self.sigma.ad(tol) - nm.to_float(tau_matrix(self.x)))))
        return {"sigma_squared": sq_res, "ad_sigma": ad_res}

    def is_valid(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        if is_euler(self.x, tol) is None or self.sigma.flip != 1:
            return False
        return all(v <= 1e-8 for v in self.residuals(tol).values())

    def equals(self, other: "AbstractWedge", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.x.equals(other.x, tol) and self.sigma.equals(other.sigma)

    def to_json(self) -> dict:
        d = {"x": self.x.to_json(), "sigma": self.sigma.g.to_json(), "parity": self.sigma.flip}
        if self.witness is not None:
            d["witness"] = self.witness.to_json()
        return d


def act(g: CoveringElement | ExtendedElement, w: AbstractWedge, tol: Tolerance = DEFAULT_TOL) -> AbstractWedge:
    """``g.(x, sigma) = (Ad^eps(g) x, g sigma g^-1)``."""
    e = _as_extended(w.group, g)
    m = e.twisted_ad(tol)
    x = AlgebraElement(w.x.algebra, m @ nm.to_float(w.x.coords))
    sigma = e * w.sigma * e.inverse()
    witness = e * w.witness if w.witness is not None else None
    return AbstractWedge(x, sigma, witness)


def complement(w: AbstractWedge, tol: Tolerance = DEFAULT_TOL) -> AbstractWedge:
    """``W' = (-x, sigma)``, which is also ``sigma.W``."""
    witness = w.sigma * w.witness if w.witness is not None else None
    return AbstractWedge(-w.x, w.sigma, witness)


def twisted_complement(w: AbstractWedge, alpha: CoveringElement, tol: Tolerance = DEFAULT_TOL) -> AbstractWedge:
    """``(-x, alpha sigma)`` for central alpha with ``tau(alpha) = alpha^-1``."""
    group = w.group
    if alpha.tag != group.tag:
        raise AlgebraMismatch("alpha belongs to another covering group")
    if not alpha.is_central():
        raise NonCentral("alpha must be central")
    if not group.tau(alpha).equals(alpha.inverse()):
        raise MalformedInput("alpha must satisfy tau(alpha) = alpha^-1")
    a = group.element(alpha, 0)
    if a.is_identity():
        return complement(w, tol)
    return AbstractWedge(-w.x, a * w.sigma, None)


# order ---------------------------------------------------------------------


def _ge0(v: Any, slack: float) -> bool:
    if isinstance(v, Fraction):
        return v >= 0
    return float(v) >= -slack


def in_compression_semigroup(g: np.ndarray, cone: Sl2Cone | TrivialCone = Sl2Cone(1),
                             tol: Tolerance = DEFAULT_TOL) -> bool:
    """Membership of an SL2 matrix in ``exp(C+) G^{W0} exp(C-)`` for W0 = (h0, tau_h0).

    Writing g = [[a, b], [c, d]], the factorization
    ``exp(t e0) diag(1/d, d) exp(s f0)`` exists iff d != 0 and t = b/d, s = c/d;
    the cone fixes the allowed signs of t and s.
    """
    g = np.asarray(g)
    if g.shape != (2, 2):
        raise MalformedInput("expected a 2x2 matrix")
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    exact = all(isinstance(v, Fraction) for v in (a, b, c, d))
    if exact:
        if a * d - b * c != 1:
            raise MalformedInput("matrix is not in SL2")
        if d == 0:
            return False
        t, s = b / d, c / d
        slack = 0.0
    else:
        fa, fb, fc, fd = (float(v) for v in (a, b, c, d))
        scale = max(1.0, abs(fa), abs(fb), abs(fc), abs(fd))
        if abs(fa * fd - fb * fc - 1) > 1e-8 * scale ** 2:
            raise MalformedInput("matrix is not in SL2")
        if abs(fd) <= tol.abs_tol * scale:
            return False
        t, s = fb / fd, fc / fd
        slack = tol.abs_tol + tol.rel_tol * scale
    if isinstance(cone, TrivialCone):
        zero = (lambda v: v == 0) if exact else (lambda v: abs(v) <= slack)
        return zero(t) and zero(s)
    if not isinstance(cone, Sl2Cone):
        raise MalformedInput("the SL2 order needs an sl2 cone or the trivial cone")
    if cone.sign < 0:
        t, s = -t, -s
    return _ge0(t, slack) and _ge0(s, slack)


def _witness_matrix(w: Any) -> np.ndarray:
    if isinstance(w, AbstractWedge):
        if w.witness is None:
            raise MalformedInput("wedge has no group witness")
        w = w.witness
    if isinstance(w, ExtendedElement):
        if w.flip:
            raise MalformedInput("witness must lie in the identity coset")
        w = w.g
    if isinstance(w, CoveringElement):
        if w.tag.blocks != 1:
            raise MalformedInput("the SL2 order needs a single-block group")
        return w.base
    m = np.asarray(w)
    if m.shape != (2, 2):
        raise MalformedInput("witness must be a 2x2 matrix")
    return m


def leq_sl2(w1: Any, w2: Any, cone: Sl2Cone | TrivialCone = Sl2Cone(1), tol: Tolerance = DEFAULT_TOL) -> bool:
    """``W1 <= W2`` iff ``g2^-1 g1`` lies in the compression semigroup of W0.

    Arguments are wedges carrying witnesses, covering elements or SL2 matrices.
    """
    g1, g2 = _witness_matrix(w1), _witness_matrix(w2)
    if nm.is_exact(g1) and nm.is_exact(g2):
        g = nm.exact_dot(nm.inverse_exact(g2), g1)
    else:
        g = np.linalg.inv(nm.to_float(g2)) @ nm.to_float(g1)
    return in_compression_semigroup(g, cone, tol)


# Minkowski wedges ------------------------------------------------------------


@dataclass(frozen=True)
class AffineEulerField:
    """Vector field ``x -> A x + b`` from a Poincare algebra element."""

    linear: np.ndarray
    translation: np.ndarray

    @classmethod
    def from_element(cls, h: AlgebraElement) -> "AffineEulerField":
        if h.algebra.family != "poincare":
            raise AlgebraMismatch("expected an element of a poincare algebra")
        m = h.matrix
        d = m.shape[0] - 1
        return cls(m[:d, :d], m[:d, d])

    @property
    def dim(self) -> int:
        return self.linear.shape[0]

    def element(self) -> AlgebraElement:
        from .catalog import poincare

        m = np.zeros((self.dim + 1, self.dim + 1), dtype=self.linear.dtype)
        m[:self.dim, :self.dim] = self.linear
        m[:self.dim, self.dim] = self.translation
        return poincare(self.dim).from_matrix(m)

    def certify(self, tol: Tolerance = DEFAULT_TOL) -> EulerCertificate:
        return certify_euler(self.element(), tol)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return nm.dot(self.linear, np.asarray(x)) + self.translation


def rindler_boost(d: int) -> AffineEulerField:
    """``x -> (x1, x0, 0, ..., 0)``."""
    a = nm.exact_zeros((d, d))
    a[0, 1] = a[1, 0] = Fraction(1)
    return AffineEulerField(a, nm.exact_zeros((d,)))


def minkowski_positivity_region(h: AffineEulerField, x: Sequence[Any], tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``h(x)`` lies in the open forward light cone."""
    from .cones import MinkowskiForward, cone_contains

    v = np.asarray(x, dtype=object if all(isinstance(t, (int, Fraction)) for t in x) else float)
    if v.shape != (h.dim,):
        raise MalformedInput(f"point must have {h.dim} coordinates")
    if v.dtype == object:
        v = nm.exact_matrix([v])[0]
    return cone_contains(MinkowskiForward(h.dim), h(v), tol, interior=True)


# circle and covering-line intervals ------------------------------------------


def _on_circle(x: Any) -> np.ndarray:
    """Point of the unit circle for x in R u {inf} (stereographic, inf -> (-1, 0))."""
    if x in (INF, -INF):
        return np.array([-1.0, 0.0])
    f = float(x)
    return np.array([(1 - f * f) / (1 + f * f), 2 * f / (1 + f * f)])


@dataclass(frozen=True)
class Interval:
    """Open interval on the circle R u {inf} or on its covering line.

    Circle intervals run from ``a`` to ``b`` in the increasing direction and
    pass through infinity when ``a > b``; infinity is written ``-inf`` as a
    left end and ``inf`` as a right end.
    """

    model: str
    a: Any
    b: Any

    def __post_init__(self) -> None:
        if self.model not in ("circle", "line"):
            raise MalformedInput("interval model must be 'circle' or 'line'")
        if self.model == "line":
            if not all(math.isfinite(float(v)) for v in (self.a, self.b)):
                raise MalformedInput("covering-line intervals have finite ends")
            if not 0 < float(self.b) - float(self.a) < 2 * math.pi:
                raise MalformedInput("covering-line intervals need 0 < b - a < 2 pi")
            return
        a = -INF if self.a in (INF, -INF) else self.a
        b = INF if self.b in (INF, -INF) else self.b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if (a == -INF and b == INF) or a == b:
            raise MalformedInput("circle intervals must be non-empty and non-dense")

    @property
    def wraps(self) -> bool:
        return self.model == "circle" and self.a != -INF and self.b != INF and self.a > self.b

    def contains(self, x: Any) -> bool:
        if self.model == "line":
            return self.a < x < self.b
        if x in (INF, -INF):
            return self.wraps
        if self.wraps:
            return x > self.a or x < self.b
        return self.a < x < self.b

    def complement(self) -> "Interval":
        """Interior of the complement on the circle."""
        if self.model != "circle":
            raise MalformedInput("complement is defined on the circle")
        return Interval("circle", self.b, self.a)

    def close_to(self, other: "Interval", tol: float = 1e-9) -> bool:
        if self.model != other.model:
            return False
        if self.model == "line":
            return abs(float(self.a) - float(other.a)) <= tol and abs(float(self.b) - float(other.b)) <= tol
        return all(np.max(np.abs(_on_circle(p) - _on_circle(q))) <= tol
                   for p, q in ((self.a, other.a), (self.b, other.b)))

    def to_json(self) -> dict:
        def end(v: Any) -> Any:
            if v == INF:
                return "inf"
            if v == -INF:
                return "-inf"
            return str(v) if isinstance(v, Fraction) else nm.format_float(float(v))

        return {"model": self.model, "a": end(self.a), "b": end(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "Interval":
        def end(v: Any) -> Any:
            if isinstance(v, str) and v.replace("−", "-").strip() in ("inf", "+inf", "-inf"):
                return -INF if v.strip().startswith(("-", "−")) else INF
            return nm.parse_scalar(v)

        try:
            return cls(obj.get("model", "circle"), end(obj["a"]), end(obj["b"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad interval object: {exc}") from exc


def mobius(g: np.ndarray, x: Any) -> Any:
    """``(a x + b) / (c x + d)`` on R u {inf}; exact for rational input."""
    a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    exact = all(isinstance(v, Fraction) for v in (a, b, c, d)) and (x in (INF, -INF) or isinstance(x, Fraction))
    if x in (INF, -INF):
        if c == 0:
            return INF
        return a / c if exact else float(a) / float(c)
    den = c * x + d
    if (exact and den == 0) or (not exact and float(den) == 0.0):
        return INF
    return (a * x + b) / den if exact else (float(a) * float(x) + float(b)) / float(den)


def _sl2_block(h: AlgebraElement) -> np.ndarray:
    if h.algebra != sl2():
        raise AlgebraMismatch(f"expected an element of sl2R, got {h.algebra.name}")
    return h.matrix


def interval_of_euler(h: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> Interval:
    """Where the vector field ``beta + 2 alpha x - gamma x^2`` of h is positive."""
    m = _sl2_block(h)
    if is_euler(h, tol) is None:
        raise NotEuler("interval_of_euler needs an Euler element")
    alpha, beta, gamma = m[0, 0], m[0, 1], m[1, 0]
    exact = h.exact
    half = Fraction(1, 2) if exact else 0.5
    zero = (gamma == 0) if exact else abs(float(gamma)) <= tol.abs_tol
    if zero:
        root = -beta / (2 * alpha)
        if (alpha > 0) if exact else float(alpha) > 0:
            return Interval("circle", root, INF)
        return Interval("circle", -INF, root)
    r1, r2 = (alpha - half) / gamma, (alpha + half) / gamma
    lo, hi = (r1, r2) if r1 < r2 else (r2, r1)
    if (gamma > 0) if exact else float(gamma) > 0:
        return Interval("circle", lo, hi)
    return Interval("circle", hi, lo)


def interval_act(g: np.ndarray, interval: Interval) -> Interval:
    """Image of a circle interval under a Mobius transformation."""
    if interval.model != "circle":
        raise MalformedInput("interval_act works on circle intervals")
    return Interval("circle", mobius(g, interval.a), mobius(g, interval.b))


def _lift_point(g: CoveringElement, x: float, tol: Tolerance) -> float:
    """Continuous lift of the Mobius action of g to the covering line.

    Points of the line map to R u {inf} by ``x -> tan(x/2)``.  Writing
    g = u p with u a rotation, the positive factor moves points by less
    than pi and the rotation shifts by the lifted angle.
    """
    base = g.blocks[0]
    u = nm.polar_unitary(base, tol)
    p = u.T @ base
    v = p @ np.array([math.sin(x / 2), math.cos(x / 2)])
    y = 2 * math.atan2(v[0], v[1])
    y += 2 * math.pi * round((x - y) / (2 * math.pi))
    if abs(y - x) >= math.pi - 1e-9:
        raise LiftError("lift of the positive factor is ambiguous")
    theta = g.angles[0]
    # the angle of the stored block's polar factor, not its projective class
    theta_u = 2 * math.atan2(u[0, 1], u[0, 0])
    if abs(((theta - theta_u) + math.pi) % (2 * math.pi) - math.pi) > ANGLE_TOL:
        raise LiftError("rotation angle disagrees with the polar factor")
    return y + theta


def covering_interval_act(g: CoveringElement, interval: Interval, tol: Tolerance = DEFAULT_TOL) -> Interval:
    """Image of a covering-line interval under the lifted action of g."""
    if g.tag.blocks != 1:
        raise MalformedInput("covering-line action needs a single-block group")
    if interval.model != "line":
        raise MalformedInput("covering_interval_act works on covering-line intervals")
    return Interval("line", _lift_point(g, float(interval.a), tol), _lift_point(g, float(interval.b), tol))


def product_wedge_region(h: AlgebraElement | Sequence[AlgebraElement], tol: Tolerance = DEFAULT_TOL) -> tuple[Interval, ...]:
    """Product of the positivity intervals of the components of h in chiral coordinates."""
    if isinstance(h, AlgebraElement):
        if h.algebra == sl2():
            parts = [h]
        else:
            s = sl2()
            parts = [s.from_matrix(b) for b in blocks_of(h)]
            if h.algebra != sl2_sum(len(parts)):
                raise AlgebraMismatch(f"expected sl2R^r, got {h.algebra.name}")
    else:
        parts = list(h)
    return tuple(interval_of_euler(p, tol) for p in parts)
