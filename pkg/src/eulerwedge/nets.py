"""Finite net data and the property checker for wedge-indexed standard subspaces.

A net is a list of labelled entries, each a wedge (optional) with its
standard subspace.  Group elements are never inferred: every check reads
the matrices it needs from the supplied representation table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import numerics as nm
from .errors import MalformedInput, MissingData
from .modular import (AntiunitaryOp, RealSubspace, bgl_subspace, conjugate_subspace, containment_residual,
                      delta_power, intersection, is_cyclic, modular_data, symplectic_complement)
from .numerics import DEFAULT_TOL, Tolerance
from .wedges import AbstractWedge, leq_sl2

__all__ = ["NetEntry", "NetData", "NetConfig", "net_property_report", "bgl_net", "naturality_residual"]

PROPERTIES = ("Iso", "Cov", "SC", "CTL", "CTHD", "BW", "SS", "sampled-Reg", "MRef")


@dataclass(frozen=True, eq=False)
class NetEntry:
    label: str
    subspace: RealSubspace
    wedge: AbstractWedge | None = None


@dataclass(eq=False)
class NetData:
    """Entries plus the representation data the checks may ask for.

    ``rep`` maps group-element names to unitary matrices (or AntiunitaryOp
    for elements of the twisted coset).  ``covariance`` lists triples
    ``(g, i, j)`` asserting that entry j belongs to the wedge ``g.W_i``.
    ``order`` lists pairs ``(i, j)`` with ``W_i <= W_j``; pairs whose
    wedges carry witnesses are re-checked with the SL2 order.
    """

    entries: list[NetEntry]
    rep: dict[str, Any] = field(default_factory=dict)
    covariance: list[tuple[str, int, int]] = field(default_factory=list)
    order: list[tuple[int, int]] = field(default_factory=list)
    euler_generator: np.ndarray | None = None
    cone_generators: list[np.ndarray] = field(default_factory=list)
    twists: list[dict] = field(default_factory=list)

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        for i, e in enumerate(self.entries):
            if e.label == label:
                return i
        raise MissingData(f"no net entry labelled {label!r}")

    def group_element(self, name: str) -> Any:
        if name not in self.rep:
            raise MissingData(f"representation has no matrix for {name!r}")
        return self.rep[name]


@dataclass(frozen=True)
class NetConfig:
    checks: tuple[str, ...] = PROPERTIES
    bw_times: tuple[float, ...] = (1.0, -1.0, 0.37, -0.37)
    reg_sample: tuple[str, ...] = ()
    tol: float = 1e-8


def _apply(v: Any, h: RealSubspace) -> RealSubspace:
    return conjugate_subspace(v, h, verify=False)


def _result(ok: bool | None, residual: float, note: str = "") -> dict:
    out = {"pass": ok, "residual": nm.format_float(residual)}
    if note:
        out["note"] = note
    return out


def _base(net: NetData) -> RealSubspace:
    if not net.entries:
        raise MalformedInput("net has no entries")
    return net.entries[0].subspace


def _iso(net: NetData, cfg: NetConfig) -> dict:
    worst, ok = 0.0, True
    for i, j in net.order:
        wi, wj = net.entries[i].wedge, net.entries[j].wedge
        if wi is not None and wj is not None and wi.witness is not None and wj.witness is not None:
            if not leq_sl2(wi, wj):
                return _result(False, math.inf, f"recorded pair ({i},{j}) is not ordered")
        r = containment_residual(net.entries[i].subspace, net.entries[j].subspace)
        worst = max(worst, r)
        ok = ok and r <= cfg.tol
    return _result(ok, worst, "" if net.order else "no order pairs supplied")


def _cov(net: NetData, cfg: NetConfig) -> dict:
    worst = 0.0
    for g, i, j in net.covariance:
        image = _apply(net.group_element(g), net.entries[i].subspace)
        target = net.entries[j].subspace
        worst = max(worst, containment_residual(image, target), containment_residual(target, image))
    return _result(worst <= cfg.tol, worst, "" if net.covariance else "no covariance triples supplied")


def _sc(net: NetData, cfg: NetConfig) -> dict:
    worst = 0.0
    for x in net.cone_generators:
        a = -1j * np.asarray(x, dtype=complex)
        a = (a + a.conj().T) / 2
        worst = max(worst, max(0.0, -float(np.linalg.eigvalsh(a).min())))
    return _result(worst <= cfg.tol, worst, "" if net.cone_generators else "no cone samples supplied")


def _bw(net: NetData, cfg: NetConfig) -> dict:
    if net.euler_generator is None:
        raise MissingData("BW needs the euler_generator matrix")
    x = np.asarray(net.euler_generator, dtype=complex)
    delta = modular_data(_base(net)).delta
    worst = 0.0
    for t in cfg.bw_times:
        worst = max(worst, float(np.max(np.abs(nm.mat_exp(t * x) - delta_power(delta, -1j * t / (2 * math.pi))))))
    return _result(worst <= cfg.tol, worst)


def _twist_data(net: NetData, tw: dict) -> tuple[np.ndarray, RealSubspace]:
    z = net.group_element(tw["Z"])
    return np.asarray(z, dtype=complex), net.entries[net.index(tw["entry"])].subspace


def _ctl(net: NetData, cfg: NetConfig, equality: bool) -> dict:
    """``H(W0'^alpha) subset Z_alpha H(W0)'`` (equality for CTHD), with ``J Z J = Z^-1``."""
    if not net.twists:
        return _result(None, 0.0, "no twist data supplied")
    base = _base(net)
    j = modular_data(base).j
    worst, ok = 0.0, True
    for tw in net.twists:
        z, h_twisted = _twist_data(net, tw)
        target = _apply(z, symplectic_complement(base))
        r = containment_residual(h_twisted, target)
        if equality:
            r = max(r, containment_residual(target, h_twisted))
        zj = float(np.max(np.abs(j.conjugate_linear(z) - np.linalg.inv(z))))
        worst = max(worst, r, zj)
        ok = ok and r <= cfg.tol and zj <= cfg.tol
    return _result(ok, worst)


def _ss(net: NetData, cfg: NetConfig) -> dict:
    if not net.twists:
        return _result(None, 0.0, "no twist data supplied")
    worst = 0.0
    for tw in net.twists:
        z = np.asarray(net.group_element(tw["Z"]), dtype=complex)
        if "alpha" not in tw:
            raise MissingData("SS needs the group element alpha for every twist")
        ua = np.asarray(net.group_element(tw["alpha"]), dtype=complex)
        worst = max(worst, float(np.max(np.abs(z @ z - ua))))
    return _result(worst <= cfg.tol, worst)


def _reg(net: NetData, cfg: NetConfig) -> dict:
    k = _base(net)
    for name in cfg.reg_sample:
        k = intersection(k, _apply(net.group_element(name), _base(net)))
    return _result(is_cyclic(k), 0.0, f"intersection over {len(cfg.reg_sample)} sampled elements has dim {k.dim}")


def _mref(net: NetData, cfg: NetConfig) -> dict:
    """``U(tau_h) = Z_alpha J_{H(W0)}``; with no twists, ``Z = 1``."""
    tau = net.group_element("tau")
    if not isinstance(tau, AntiunitaryOp):
        raise MalformedInput("rep['tau'] must be antiunitary")
    j = modular_data(_base(net)).j
    zs = [np.asarray(net.group_element(tw["Z"]), dtype=complex) for tw in net.twists] or [np.eye(j.n)]
    worst = min(float(np.max(np.abs(tau.u - z @ j.u))) for z in zs)
    return _result(worst <= cfg.tol, worst)


def net_property_report(net: NetData, config: NetConfig = NetConfig()) -> dict:
    """Pass/fail with residuals for each requested property."""
    fns = {
        "Iso": lambda: _iso(net, config),
        "Cov": lambda: _cov(net, config),
        "SC": lambda: _sc(net, config),
        "CTL": lambda: _ctl(net, config, False),
        "CTHD": lambda: _ctl(net, config, True),
        "BW": lambda: _bw(net, config),
        "SS": lambda: _ss(net, config),
        "sampled-Reg": lambda: _reg(net, config),
        "MRef": lambda: _mref(net, config),
    }
    out = {}
    for name in config.checks:
        key = "sampled-Reg" if name in ("Reg", "sampled-Reg") else name
        if key not in fns:
            raise MalformedInput(f"unknown net property {name!r}")
        out[key] = fns[key]()
    return out


# BGL nets --------------------------------------------------------------------


def bgl_net(x: np.ndarray, j: AntiunitaryOp, group: dict[str, np.ndarray], tol: Tolerance = DEFAULT_TOL) -> NetData:
    """Net on the wedges ``g.W0`` built from ``(U(g) X U(g)*, U(g) J U(g)*)``.

    Entry 0 is W0; each named unitary adds one entry and one covariance
    triple.  The wedge subspaces are built independently from conjugated
    data, so the Cov check compares two different computations.
    """
    x = np.asarray(x, dtype=complex)
    entries = [NetEntry("W0", bgl_subspace(x, j, tol))]
    cov = []
    for name, u in group.items():
        u = np.asarray(u, dtype=complex)
        xg = u @ x @ u.conj().T
        jg = AntiunitaryOp(u @ j.u @ u.T)
        entries.append(NetEntry(name, bgl_subspace(xg, jg, tol)))
        cov.append((name, 0, len(entries) - 1))
    rep: dict[str, Any] = dict(group)
    rep["tau"] = j
    return NetData(entries, rep=rep, covariance=cov, euler_generator=x)


def naturality_residual(x: np.ndarray, j: AntiunitaryOp, phi: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> float:
    """Distance between ``H(phi X phi*, phi J phi*)`` and ``phi H(X, J)``."""
    phi = np.asarray(phi, dtype=complex)
    h = bgl_subspace(x, j, tol)
    moved = bgl_subspace(phi @ np.asarray(x, dtype=complex) @ phi.conj().T, AntiunitaryOp(phi @ j.u @ phi.T), tol)
    image = _apply(phi, h)
    return max(containment_residual(moved, image), containment_residual(image, moved))
