"""Command-line interface.

    shadowmgr verify {rack,qset,mgr,xset,cocycle,diagram} FILE
    shadowmgr build {rack,qset,mgr,xset,cocycle} RECIPE
    shadowmgr build diagram NAME
    shadowmgr invariant DIAGRAM COCYCLE [--gcd 3,6] [--arc A --q Q,...]
    shadowmgr repro TARGET...

Exit codes: 0 success or match, 1 verified false or mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .algebra import (
    AxiomError,
    MalformedTableError,
    Report,
    dihedral_quandle,
    qset_from_json,
    qset_to_json,
    rack_from_json,
    rack_to_json,
    ts_rack,
    verify_qset,
    verify_rack,
)
from .cocycles import check_mgr_2cocycle, check_rack_2cocycle, cochain_from_json, cochain_to_json
from .config import CocycleRecipe, RecipeError, RunConfig
from .diagram import describe, from_json, library, to_json, validate
from .invariants import Filters, phi
from .mgr import mgr_from_json, mgr_to_json, verify_mgr, verify_xset, xset_from_json, xset_to_json
from .repro import run_target

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(cfg: RunConfig, payload: dict[str, Any], text: str) -> None:
    out = json.dumps(payload, sort_keys=True, indent=1) if cfg.fmt == "json" else text
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(out + "\n")
    else:
        sys.stdout.write(out + "\n")


def _load_json(path: str) -> dict:
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _report_json(kind: str, rep: Report) -> dict[str, Any]:
    return {
        "kind": kind,
        "ok": rep.ok,
        "axiom": rep.axiom,
        "witness": None if rep.witness is None else [int(x) for x in rep.witness],
        "detail": rep.detail,
    }


def _algebra_for(theta, algebra_path: str | None):
    """(rack, qset) or (mgr, xset) for a cochain, from --algebra or its provenance."""
    if algebra_path:
        data = _load_json(algebra_path)
        if theta.flavor == "rack":
            q = qset_from_json(data)
            return q.rack, q
        x = xset_from_json(data)
        return x.mgr, x
    try:
        p = CocycleRecipe.from_provenance(theta.provenance).build()
    except (RecipeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot rebuild the algebra from provenance ({exc}); pass --algebra") from exc
    if theta.flavor == "rack":
        return p.rack, p.qset
    if p.mgr is None:
        raise UsageError("provenance has no MGR stage")
    return p.mgr, p.xset


def cmd_verify(cfg: RunConfig) -> int:
    kind, path = cfg.extra["kind"], cfg.inputs[0]
    data = _load_json(path)
    try:
        if kind == "rack":
            rep = verify_rack(data["table"])
        elif kind == "qset":
            rep = verify_qset(rack_from_json(data["meta"]["rack"]), data["table"])
        elif kind == "mgr":
            rep = verify_mgr(mgr_from_json(data))
        elif kind == "xset":
            m = mgr_from_json(data["meta"]["mgr"])
            rep = verify_mgr(m)
            rep = verify_xset(m, data["table"]) if rep else rep
        elif kind == "cocycle":
            theta = cochain_from_json(data)
            alg, act = _algebra_for(theta, cfg.extra.get("algebra"))
            rep = check_rack_2cocycle(theta, alg, act) if theta.flavor == "rack" else check_mgr_2cocycle(theta, alg, act)
        else:  # diagram
            d = from_json(data)
            rep = validate(d)
            if rep and cfg.fmt == "text":
                _emit(cfg, {}, describe(d))
                return EXIT_OK
    except AxiomError as exc:
        rep = Report(False, "axiom", None, str(exc))
    except MalformedTableError as exc:
        raise UsageError(f"malformed {kind}: {exc}") from exc
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed {kind} document: {exc}") from exc
    _emit(cfg, _report_json(kind, rep), f"{kind} {path}: {rep}")
    return EXIT_OK if rep else EXIT_FALSE


def _build_rack(spec: str):
    name, *args = spec.replace(" ", ":").split(":")
    try:
        if name == "dihedral" and len(args) == 1:
            return dihedral_quandle(int(args[0]))
        if name == "ts" and len(args) == 3:
            return ts_rack(*map(int, args))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return None


def cmd_build(cfg: RunConfig) -> int:
    what, spec = cfg.extra["what"], cfg.extra["spec"]
    if what == "diagram":
        try:
            d = library(spec)
        except KeyError as exc:
            raise UsageError(f"unknown diagram {spec!r}") from exc
        _emit(cfg, to_json(d), describe(d))
        return EXIT_OK
    if what == "rack":
        rack = _build_rack(spec)
        if rack is not None:
            doc = rack_to_json(rack)
            _emit(cfg, doc, json.dumps(doc, sort_keys=True))
            return EXIT_OK
    try:
        p = CocycleRecipe.parse(spec).build()
    except (RecipeError, ValueError) as exc:
        raise UsageError(f"bad recipe: {exc}") from exc
    if what in ("mgr", "xset") and p.mgr is None:
        raise UsageError("recipe has no mgr:K step")
    doc = {
        "rack": lambda: rack_to_json(p.rack),
        "qset": lambda: qset_to_json(p.qset),
        "mgr": lambda: mgr_to_json(p.mgr),
        "xset": lambda: xset_to_json(p.xset),
        "cocycle": lambda: cochain_to_json(p.theta),
    }[what]()
    size = doc.get("size", len(doc.get("op", [])))
    _emit(cfg, doc, f"{what} from {p.recipe.to_text()}: size {size}")
    return EXIT_OK


def _int_list(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _load_diagram(ref: str):
    if os.path.isfile(ref):
        try:
            return from_json(_load_json(ref))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"malformed diagram: {exc}") from exc
    try:
        return library(ref)
    except KeyError as exc:
        raise UsageError(f"{ref!r} is neither a file nor a library diagram") from exc


def cmd_invariant(cfg: RunConfig) -> int:
    d = _load_diagram(cfg.inputs[0])
    ref = cfg.inputs[1]
    if os.path.isfile(ref):
        try:
            theta = cochain_from_json(_load_json(ref))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"malformed cochain: {exc}") from exc
    else:
        try:
            theta = CocycleRecipe.parse(ref).build().theta
        except (RecipeError, ValueError) as exc:
            raise UsageError(f"bad recipe: {exc}") from exc
    if theta.flavor != "mgr":
        raise UsageError("the invariant needs an MGR cocycle (add an mgr:K step)")
    m, x = _algebra_for(theta, cfg.extra.get("algebra"))
    e = cfg.extra
    filters = Filters(_int_list(e.get("gcd")), e.get("arc"), _int_list(e.get("q")))
    if filters.arc_q is not None and filters.arc is None:
        raise UsageError("--q needs --arc")
    try:
        res = phi(d, theta, m, x, filters, threads=cfg.threads, debug=cfg.debug_assert)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = res.to_json(d.name, theta.provenance)
    if not cfg.timing:
        del payload["elapsed_ms"]
    text = f"Phi({d.name}) = {res.multiset} over {res.colorings} colorings"
    if cfg.timing:
        text += f" in {res.elapsed_ms:.1f} ms"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_repro(cfg: RunConfig) -> int:
    reports = []
    for target in cfg.inputs:
        try:
            reports.append(run_target(target, cfg.threads))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    payload = {"reports": [r.to_json(cfg.timing) for r in reports], "ok": all(r.ok for r in reports)}
    _emit(cfg, payload, "\n\n".join(r.text(cfg.timing) for r in reports))
    return EXIT_OK if payload["ok"] else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--debug-assert", action="store_true", help="check every weight is a cycle")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock times (output is then not reproducible)")

    parser = argparse.ArgumentParser(prog="shadowmgr", description="Shadow cocycle invariants of spatial surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the axioms of a stored object")
    p.add_argument("kind", choices=("rack", "qset", "mgr", "xset", "cocycle", "diagram"))
    p.add_argument("file")
    p.add_argument("--algebra", help="qset or xset file for a cochain whose provenance cannot be replayed")

    p = sub.add_parser("build", parents=[common], help="construct an object from a recipe")
    p.add_argument("what", choices=("rack", "qset", "mgr", "xset", "cocycle", "diagram"))
    p.add_argument("spec", nargs="+", help="recipe, dihedral:N, ts:N:T:S or a diagram name")

    p = sub.add_parser("invariant", parents=[common], help="compute the cocycle invariant of a diagram")
    p.add_argument("diagram", help="library name or diagram file")
    p.add_argument("cocycle", help="recipe or cochain file")
    p.add_argument("--gcd", help="allowed gcd values, e.g. 3,6")
    p.add_argument("--arc", type=int, help="marked arc")
    p.add_argument("--q", help="allowed Q-parts of the marked arc's colour")
    p.add_argument("--algebra", help="xset file for a cochain whose provenance cannot be replayed")

    p = sub.add_parser("repro", parents=[common], help="recompute published invariant values")
    p.add_argument("targets", nargs="+", metavar="TARGET", help="example-7-2 or lemma-7-3:F2|F3|F5:G")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    extra: dict[str, Any] = {}
    if ns.command == "verify":
        inputs = (ns.file,)
        extra = {"kind": ns.kind, "algebra": ns.algebra}
    elif ns.command == "build":
        inputs = ()
        extra = {"what": ns.what, "spec": " ".join(ns.spec)}
    elif ns.command == "invariant":
        inputs = (ns.diagram, ns.cocycle)
        extra = {"gcd": ns.gcd, "arc": ns.arc, "q": ns.q, "algebra": ns.algebra}
    else:
        inputs = tuple(ns.targets)
    if ns.out and not os.path.isdir(os.path.dirname(os.path.abspath(ns.out))):
        raise UsageError(f"output directory for {ns.out} does not exist")
    try:
        return RunConfig(ns.command, inputs, ns.out, ns.threads, ns.debug_assert, ns.format, ns.timing, extra)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


COMMANDS = {"verify": cmd_verify, "build": cmd_build, "invariant": cmd_invariant, "repro": cmd_repro}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
