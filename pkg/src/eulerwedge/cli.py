"""Command-line front end.  Every verb reads JSON and writes JSON.

Exit codes: 0 success or property true, 1 property false, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import numerics as nm
from .catalog import (FAMILIES, algebra_by_name, conformal_center_case, realize, table_hermitian_tube,
                      table_simple_3_graded)
from .cones import Sl2Cone, sl2_sum_element, TrivialCone, classify_pair, cone_from_json, h_representative, k_j_representative
from .covergroup import CoveringElement, tag_by_name, z_subgroups, zeta
from .errors import EulerWedgeError, MalformedInput
from .liecore import AlgebraElement, grading_violations, is_euler, sl2_elements
from .modular import (AntiunitaryOp, RealSubspace, counterexample_family, is_cyclic, is_separating, is_standard,
                      modular_data, orthogonality_check, symplectic_complement)
from .nets import PROPERTIES, NetConfig, NetData, NetEntry, net_property_report
from .numerics import DEFAULT_TOL, Tolerance
from .verify import run_all
from .wedges import Interval, covering_interval_act, interval_of_euler, leq_sl2

TOL_ENV = "EULERWEDGE_TOL"


class _Usage(Exception):
    pass


# input helpers -------------------------------------------------------------


def _load(src: str) -> Any:
    """A JSON file path or inline JSON text."""
    text = src.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(src).read_text())


def _named(key: str) -> AlgebraElement | None:
    """``h0``, ``-k0`` or a comma list such as ``h0,-h0`` for a direct sum of sl2 copies."""
    named = sl2_elements()
    parts = []
    for tok in key.split(","):
        tok = tok.strip()
        sign = -1 if tok.startswith("-") else 1
        x = named.get(tok.lstrip("+-"))
        if x is None:
            return None
        parts.append(x if sign > 0 else -x)
    return parts[0] if len(parts) == 1 else sl2_sum_element(parts)


def _element(src: str, algebra: str | None = None) -> AlgebraElement:
    x = None if Path(src).exists() else _named(src.strip())
    if x is None:
        obj = _load(src)
        if algebra and isinstance(obj, dict) and "algebra" not in obj:
            obj = dict(obj, algebra=algebra)
        x = AlgebraElement.from_json(obj, algebra_by_name)
    if algebra and x.algebra != algebra_by_name(algebra):
        raise MalformedInput(f"element lies in {x.algebra.name}, not {algebra}")
    return x


def _matrix(src: str) -> np.ndarray:
    obj = _load(src)
    if isinstance(obj, list):
        return nm.exact_matrix(obj) if all(isinstance(v, (int, str)) for r in obj for v in r) else np.array(obj, float)
    if "base" in obj:
        return CoveringElement.from_json(obj).base
    return nm.matrix_from_json(obj)


def _witness(src: str) -> Any:
    obj = _load(src)
    if isinstance(obj, dict) and "tag" in obj:
        return CoveringElement.from_json(obj)
    return _matrix(src)


def _subspace(src: str) -> RealSubspace:
    return RealSubspace.from_json(_load(src))


def _tolerance(args: argparse.Namespace) -> Tolerance:
    value = args.tol if args.tol is not None else os.environ.get(TOL_ENV)
    if value is None:
        return DEFAULT_TOL
    t = float(value)
    return Tolerance(abs_tol=t, rel_tol=t)


# verbs ---------------------------------------------------------------------


def cmd_euler_check(args, tol) -> tuple[dict, int]:
    x = _element(args.element, args.algebra)
    cert = is_euler(x, tol)
    if cert is None:
        return {"euler": False}, 1
    bad = grading_violations(cert, tol)
    out: dict[str, Any] = {"euler": not bad}
    if args.details:
        out["grading_dims"] = {str(k): v for k, v in cert.grading_dims().items()}
    if bad:
        out["grading_violations"] = [list(p) for p in bad]
    return out, 0 if not bad else 1


def cmd_pair_classify(args, tol) -> tuple[dict, int]:
    if args.family:
        if args.family != "sl2_sum_r" or args.r is None or args.j is None:
            raise _Usage("pair classify --family sl2_sum_r needs --r and --j")
        h, k = h_representative(args.r), k_j_representative(args.r, args.j)
    else:
        if not (args.h and args.k):
            raise _Usage("pair classify needs --family/--r/--j or --h/--k")
        h, k = _element(args.h), _element(args.k)
    cone = cone_from_json(_load(args.cone)) if args.cone else None
    return {"class": classify_pair(h, k, cone, tol).value}, 0


def cmd_zeta(args, tol) -> tuple[dict, int]:
    tag = tag_by_name(args.group)
    z = zeta(tag, _element(args.h), _element(args.k), tol)
    out: dict[str, Any] = {"winding": [int(v) if float(v).is_integer() else float(v) for v in z.reported()]}
    if args.details:
        out.update(group=tag.name, center_coordinates=list(z.center_coords()), element=z.to_json())
    return out, 0


def cmd_zsub(args, tol) -> tuple[dict, int]:
    tag = tag_by_name(args.group)
    return dict({"group": tag.name}, **z_subgroups(tag, _element(args.h), tol).to_json()), 0


def cmd_order_test(args, tol) -> tuple[dict, int]:
    if args.trivial_cone:
        cone: Any = TrivialCone()
    else:
        cone = Sl2Cone(args.cone_sign)
    ok = leq_sl2(_witness(args.w1), _witness(args.w2), cone, tol)
    return {"leq": ok}, 0 if ok else 1


def cmd_interval(args, tol) -> tuple[dict, int]:
    if args.element:
        return interval_of_euler(_element(args.element, "sl2R"), tol).to_json(), 0
    if args.g and args.line:
        a, b = (float(nm.parse_scalar(v)) for v in args.line.split(","))
        g = CoveringElement.from_json(_load(args.g))
        return covering_interval_act(g, Interval("line", a, b), tol).to_json(), 0
    raise _Usage("interval needs --element, or --g with --line a,b")


def cmd_catalog_list(args, tol) -> tuple[dict, int]:
    out: dict[str, Any] = {"realizable_families": list(FAMILIES)}
    out["simple_3_graded"] = [asdict(e) for e in table_simple_3_graded()]
    out["hermitian_tube_type"] = [asdict(e) for e in table_hermitian_tube()]
    out["conformal_center_cases"] = {str(d): conformal_center_case(d).to_json() for d in (3, 4, 5)}
    return out, 0


def cmd_catalog_realize(args, tol) -> tuple[dict, int]:
    params = [int(p) for p in args.params.split(",")] if args.params else []
    real = realize(args.family, params)
    elems = []
    for label, cert in zip(real.labels, real.eulers):
        d = {"label": label, "element": cert.element.to_json(),
             "grading_dims": {str(k): v for k, v in cert.grading_dims().items()},
             "certified": not grading_violations(cert)}
        elems.append(d)
    return {"algebra": real.algebra.name, "dim": real.algebra.dim, "euler_elements": elems}, 0


def cmd_subspace_modular(args, tol) -> tuple[dict, int]:
    h = _subspace(args.subspace)
    flags = {"cyclic": is_cyclic(h), "separating": is_separating(h), "standard": is_standard(h)}
    if not flags["standard"]:
        return dict(flags), 1
    p = modular_data(h, tol)
    res = {k: nm.format_float(v) for k, v in p.residuals().items()}
    return dict(flags, delta=nm.matrix_to_json(p.delta), j=p.j.to_json(), residuals=res), 0


def cmd_subspace_complement(args, tol) -> tuple[dict, int]:
    return symplectic_complement(_subspace(args.subspace)).to_json(), 0


def cmd_subspace_orthogonal(args, tol) -> tuple[dict, int]:
    ok, res = orthogonality_check(_subspace(args.h1), _subspace(args.h2), tol=args.tol if args.tol is not None else args.orth_tol,
                                  report=True)
    return {"orthogonal": ok, "residual": nm.format_float(res)}, 0 if ok else 1


def cmd_counterexample(args, tol) -> tuple[dict, int]:
    if args.hgen:
        g = nm.to_float(_matrix(args.hgen))
    else:
        rng = np.random.default_rng(args.seed)
        a = rng.normal(size=(args.m, args.m))
        g = a + a.T
        g *= args.norm / max(np.linalg.norm(g, 2), 1e-12)
    c = counterexample_family(g, tol)
    ok = c.closed_form_residual < 1e-8 and c.orthogonality_residual < 1e-9
    return dict(c.to_json(), holds=ok), 0 if ok else 1


def _complex_matrix(obj: Any) -> np.ndarray:
    m = nm.matrix_from_json(obj)
    return np.asarray(nm.to_float(m) if m.dtype == object else m, dtype=complex)


def _rep_entry(v: Any) -> Any:
    if isinstance(v, dict) and "antiunitary" in v:
        return AntiunitaryOp(_complex_matrix(v["antiunitary"]))
    return _complex_matrix(v)


def net_from_json(obj: dict) -> tuple[NetData, NetConfig]:
    try:
        entries = [NetEntry(e["label"], RealSubspace.from_json(e["subspace"])) for e in obj["entries"]]
        rep = {k: _rep_entry(v) for k, v in obj.get("rep", {}).items()}
        cov = [(str(g), int(i), int(j)) for g, i, j in obj.get("covariance", [])]
        order = [(int(i), int(j)) for i, j in obj.get("order", [])]
        gen = obj.get("euler_generator")
        net = NetData(entries, rep=rep, covariance=cov, order=order,
                      euler_generator=_rep_entry(gen) if gen is not None else None,
                      cone_generators=[_rep_entry(c) for c in obj.get("cone_generators", [])],
                      twists=list(obj.get("twists", [])))
        cfg = NetConfig(checks=tuple(obj.get("checks", PROPERTIES)), reg_sample=tuple(obj.get("reg_sample", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise EulerWedgeError(f"bad net object: {exc}") from exc
    return net, cfg


def cmd_net_check(args, tol) -> tuple[dict, int]:
    net, cfg = net_from_json(_load(args.net))
    rep = net_property_report(net, cfg)
    ok = all(v["pass"] is not False for v in rep.values())
    return rep, 0 if ok else 1


def cmd_verify_all(args, tol) -> tuple[dict, int]:
    results = run_all()
    out = {"criteria": [r.to_json() for r in results], "all_pass": all(r.passed for r in results)}
    out["_table"] = "\n".join(r.line() for r in results)
    return out, 0 if out["all_pass"] else 1


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help=f"tolerance override (default from ${TOL_ENV})")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", default=None, help="write the result here instead of stdout")
    common.add_argument("--details", action="store_true", help="include auxiliary fields")

    p = argparse.ArgumentParser(prog="eulerwedge", description="Euler elements, wedges and standard subspaces.")
    verbs = p.add_subparsers(dest="verb", required=True)

    def group(name: str) -> argparse._SubParsersAction:
        sp = verbs.add_parser(name)
        return sp.add_subparsers(dest="sub", required=True)

    def leaf(parent, name: str, fn: Callable) -> argparse.ArgumentParser:
        sp = parent.add_parser(name, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    euler = group("euler")
    sp = leaf(euler, "check", cmd_euler_check)
    sp.add_argument("--algebra", default=None)
    sp.add_argument("--element", required=True)

    pair = group("pair")
    sp = leaf(pair, "classify", cmd_pair_classify)
    sp.add_argument("--family")
    sp.add_argument("--r", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--h")
    sp.add_argument("--k")
    sp.add_argument("--cone")

    sp = leaf(verbs, "zeta", cmd_zeta)
    sp.add_argument("--group", required=True)
    sp.add_argument("--h", required=True)
    sp.add_argument("--k", required=True)

    sp = leaf(verbs, "zsubgroups", cmd_zsub)
    sp.add_argument("--group", required=True)
    sp.add_argument("--h", required=True)

    order = group("order")
    sp = leaf(order, "test", cmd_order_test)
    sp.add_argument("--w1", required=True, help="witness g1 (matrix or covering element)")
    sp.add_argument("--w2", required=True)
    sp.add_argument("--cone-sign", type=int, choices=(1, -1), default=1)
    sp.add_argument("--trivial-cone", action="store_true")

    sp = leaf(verbs, "interval", cmd_interval)
    sp.add_argument("--element")
    sp.add_argument("--g")
    sp.add_argument("--line")

    cat = group("catalog")
    leaf(cat, "list", cmd_catalog_list)
    sp = leaf(cat, "realize", cmd_catalog_realize)
    sp.add_argument("--family", required=True)
    sp.add_argument("--params", default="")

    sub = group("subspace")
    sp = leaf(sub, "modular", cmd_subspace_modular)
    sp.add_argument("--subspace", required=True)
    sp = leaf(sub, "complement", cmd_subspace_complement)
    sp.add_argument("--subspace", required=True)
    sp = leaf(sub, "orthogonal", cmd_subspace_orthogonal)
    sp.add_argument("--h1", required=True)
    sp.add_argument("--h2", required=True)
    sp.add_argument("--orth-tol", type=float, default=1e-9)

    sp = leaf(verbs, "counterexample", cmd_counterexample)
    sp.add_argument("--hgen")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--norm", type=float, default=1.0)

    net = group("net")
    sp = leaf(net, "check", cmd_net_check)
    sp.add_argument("--net", required=True)

    ver = group("verify")
    leaf(ver, "all", cmd_verify_all)
    return p


def _jsonable(v: Any) -> Any:
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(nm.format_float(float(v)))
    if v is None or isinstance(v, str):
        return v
    return str(v)


def _table(obj: dict) -> str:
    if "_table" in obj:
        return obj["_table"]
    lines = []
    for k, v in obj.items():
        lines.append(f"{k:<24} {json.dumps(_jsonable(v)) if not isinstance(v, str) else v}")
    return "\n".join(lines)


def _emit(obj: dict, fmt: str, output: str | None) -> None:
    table = obj.get("_table")
    body = {k: v for k, v in obj.items() if k != "_table"}
    if fmt == "table":
        text = table if table is not None else _table(body)
    else:
        text = json.dumps(_jsonable(body), separators=(",", ":"), ensure_ascii=False, allow_nan=True)
    if output:
        Path(output).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _tolerance(args)
        out, code = args.fn(args, tol)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        _emit({"error": {"type": "usage", "message": str(exc)}}, "json", None)
        return 2
    except (EulerWedgeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, "json", None)
        return 2
    _emit(out, args.format, args.output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
