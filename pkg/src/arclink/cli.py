"""Command-line interface: analyze, components, cusp, dual, quotient, inoue, check.

Exit codes: 0 success, 1 input error, 2 falsified mathematical identity
(the witness is printed).  JSON output is deterministic: same input,
byte-identical report.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .calculus import DltKind, DltModel, SingKind, minimal_dlt_model, minimal_log_resolution, singularity_class
from .components import ArcComponent, CuspLattice, EdgeTorus, SeifertWord, enumerate_components
from .cusp import CuspError, CuspSequence, check_duality, dual_sequence, enumerate_cusp_components, monodromy
from .graph_core import GraphError, PlumbingGraph, intersection_matrix, is_negative_definite, parse_plumbing
from .hjcf import Mat2
from .inoue import InoueError, inoue_cross_check, parse_field_file
from .quotient import ClosureError, builtin_generators, conjugacy_classes, group_closure, mckay_report, parse_group_file
from .checks import run_all_sweeps

SCHEMA = 1


class InputError(Exception):
    pass


class Falsified(Exception):
    pass


# -- serialization helpers ----------------------------------------------------


def _mat_json(m: Mat2) -> list[list[int]]:
    return [[m.p, m.q], [m.r, m.s]]


def _graph_json(g: PlumbingGraph) -> dict:
    return {
        "name": g.name,
        "vertices": [
            {"id": v.id, "euler": v.euler, "genus": v.genus}
            for v in sorted(g.vertices, key=lambda v: v.id)
        ],
        "edges": [list(e) for e in g.edges],
        "arrows": list(g.arrows),
    }


def _winding_json(w) -> dict:
    if isinstance(w, SeifertWord):
        return {"type": "seifert_word", "piece": w.piece, "word": w.render()}
    if isinstance(w, EdgeTorus):
        return {"type": "edge_torus", "chain": list(w.chain), "vector": list(w.vector)}
    assert isinstance(w, CuspLattice)
    return {"type": "cusp_lattice", "vector": list(w.vector)}


def _component_json(c: ArcComponent) -> dict:
    out = {
        "kind": c.kind.value,
        "location": [str(x) for x in c.location],
        "multiplicities": list(c.multiplicities),
    }
    if c.denominator is not None:
        out["denominator"] = c.denominator
        out["intersection_number"] = str(Fraction(c.multiplicities[0], c.denominator))
    out["winding"] = _winding_json(c.winding)
    out["homotopy"] = {"type": c.homotopy.kind.value, "description": c.homotopy.render()}
    return out


def _sing_json(cls) -> dict:
    out = {"kind": cls.kind.value, "description": cls.describe()}
    if cls.kind is SingKind.CYCLIC_QUOTIENT:
        out["m"], out["q"] = cls.m, cls.q
    elif cls.kind is SingKind.NONCYCLIC_QUOTIENT:
        out["alphas"] = list(cls.alphas)
    elif cls.kind is SingKind.CUSP:
        out["b_sequence"] = list(cls.b_sequence)
    return out


def write_dot(g: PlumbingGraph, path: str) -> None:
    lines = [f"graph {json.dumps(g.name)} {{"]
    for v in sorted(g.vertices, key=lambda v: v.id):
        lines.append(f'  {json.dumps(v.id)} [label="{v.id}\\ne={v.euler}, g={v.genus}"];')
    for u, v in g.edges:
        lines.append(f"  {json.dumps(u)} -- {json.dumps(v)};")
    for i, a in enumerate(g.arrows):
        lines.append(f'  "__arrow{i}" [shape=diamond, label=""];')
        lines.append(f'  {json.dumps(a)} -- "__arrow{i}";')
    lines.append("}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# -- analysis report ------------------------------------------------------------


def analysis_report(g: PlumbingGraph, bound: int) -> dict:
    if not g.is_connected():
        raise InputError("graph must be connected")
    neg_def = is_negative_definite(intersection_matrix(g))
    if not neg_def:
        raise InputError("intersection matrix is not negative definite")
    mlr = minimal_log_resolution(g)
    cls = singularity_class(mlr)
    model = minimal_dlt_model(mlr)
    report = {
        "schema": SCHEMA,
        "input": g.name,
        "negative_definite": neg_def,
        "singularity_class": _sing_json(cls),
        "minimal_log_resolution": _graph_json(mlr),
        "dlt_model": {
            "kind": model.kind.value,
            "residual": _graph_json(model.residual),
            "orbifold_points": [
                {"host": p.host, "m": p.m, "omega": p.omega, "leg": p.leg}
                for p in model.orbifold_points
            ],
        },
        "bound": bound,
    }
    report["components"] = _model_components_json(model, cls, bound)
    if cls.kind is SingKind.CUSP:
        dual = check_duality(CuspSequence(cls.b_sequence))
        report["duality"] = {
            "dual_sequence": list(dual_sequence(CuspSequence(cls.b_sequence)).b),
            "auto_dual": dual.is_auto_dual(),
            "mt_equals_tm_star": dual.t_identity_holds,
            "traces_equal": dual.traces_equal,
        }
        if not dual.ok:
            raise Falsified(f"MT = TM* failed for {cls.b_sequence}")
    return report


def _model_components_json(model: DltModel, cls, bound: int) -> list | dict:
    if model.kind is DltKind.MODEL:
        return [_component_json(c) for c in enumerate_components(model, bound)]
    if cls.kind is SingKind.CYCLIC_QUOTIENT:
        from .quotient import cyclic_quotient_components

        rows = cyclic_quotient_components(cls.m, cls.q, bound)
        return [
            {
                "kind": "cyclic_quotient_label",
                "intersection_number": str(r.label),
                "center": r.center.value,
                "model_arc": {"m1": r.m1, "c": r.c},
            }
            for r in rows
        ]
    return {
        "note": (
            "noncyclic quotient: components biject with the conjugacy classes "
            "of the finite local fundamental group; see the quotient subcommand"
        )
    }


# -- subcommands ------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _print_report(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
        return
    if args.quiet:
        return
    _pretty_report(report)


def _pretty_report(report: dict) -> None:
    print(f"input: {report['input']}")
    print(f"singularity class: {report['singularity_class']['description']}")
    print(f"negative definite: {report['negative_definite']}")
    model = report["dlt_model"]
    if model["kind"] == "self_dlt":
        print("minimal dlt modification: the singularity itself (quotient)")
    else:
        res = model["residual"]
        print(
            f"dlt model: {len(res['vertices'])} curve(s), "
            f"{len(model['orbifold_points'])} orbifold point(s)"
        )
        for p in model["orbifold_points"]:
            print(f"  orbifold point ({p['m']},{p['omega']}) on {p['host']} (leg {p['leg']})")
    comps = report["components"]
    if isinstance(comps, dict):
        print(comps["note"])
        return
    print(f"components (bound {report['bound']}): {len(comps)}")
    for c in comps:
        if c["kind"] == "cyclic_quotient_label":
            print(
                f"  {c['intersection_number']:>8}  {c['center']}  "
                f"model arc t -> (t^{c['model_arc']['m1']}, t^{c['model_arc']['c']})"
            )
        else:
            loc = ",".join(c["location"])
            mult = ",".join(str(m) for m in c["multiplicities"])
            extra = f" = {c['intersection_number']}" if "intersection_number" in c else ""
            print(f"  {c['kind']}[{loc}] mult ({mult}){extra}  {c['homotopy']['description']}")
    if "duality" in report:
        d = report["duality"]
        print(
            f"dual sequence: {','.join(map(str, d['dual_sequence']))}  "
            f"auto-dual: {d['auto_dual']}  MT=TM*: {d['mt_equals_tm_star']}"
        )


def cmd_analyze(args) -> int:
    g = parse_plumbing(_read(args.graph))
    report = analysis_report(g, args.bound)
    if args.dot:
        write_dot(g, args.dot)
    _print_report(report, args)
    return 0


def cmd_components(args) -> int:
    g = parse_plumbing(_read(args.graph))
    report = analysis_report(g, args.bound)
    out = {"schema": SCHEMA, "input": report["input"], "bound": args.bound,
           "components": report["components"]}
    if args.json:
        print(json.dumps(out, indent=2))
    elif not args.quiet:
        comps = out["components"]
        if isinstance(comps, dict):
            print(comps["note"])
        else:
            for c in comps:
                print(json.dumps(c))
    return 0


def _parse_seq(text: str) -> CuspSequence:
    try:
        return CuspSequence(tuple(int(tok) for tok in text.split(",")))
    except (ValueError, CuspError) as exc:
        raise InputError(f"bad cusp sequence {text!r}: {exc}") from None


def cmd_cusp(args) -> int:
    c = _parse_seq(args.seq)
    m = monodromy(c)
    dual = check_duality(c)
    comps = enumerate_cusp_components(c, args.bound)
    report = {
        "schema": SCHEMA,
        "sequence": list(c.b),
        "monodromy": _mat_json(m),
        "trace": m.trace(),
        "dual_sequence": list(dual_sequence(c).b),
        "auto_dual": dual.is_auto_dual(),
        "bound": args.bound,
        "components": [
            {
                "kind": comp.kind,
                "index": comp.index,
                "multiplicities": list(comp.multiplicities),
                "winding_vector": list(comp.vector),
            }
            for comp in comps
        ],
    }
    if args.json:
        print(json.dumps(report, indent=2))
    elif not args.quiet:
        print(f"monodromy {m}, trace {m.trace()}")
        print(f"dual sequence: {','.join(map(str, report['dual_sequence']))}")
        print(f"auto-dual: {report['auto_dual']}")
        print(f"fundamental-domain components, mass <= {args.bound}:")
        for comp in comps:
            mult = ",".join(map(str, comp.multiplicities))
            print(f"  {comp.kind}[{comp.index}] ({mult}) -> {comp.vector}")
    if not dual.ok:
        raise Falsified(f"MT = TM* failed for {c.b}")
    return 0


def cmd_dual(args) -> int:
    c = _parse_seq(args.seq)
    report = check_duality(c)
    out = {
        "schema": SCHEMA,
        "sequence": list(c.b),
        "rotated": list(report.sequence),
        "dual_sequence": list(dual_sequence(c).b),
        "dual_construction_order": list(report.dual),
        "m": _mat_json(report.m),
        "m_star": _mat_json(report.m_star),
        "mt_equals_tm_star": report.t_identity_holds,
        "traces_equal": report.traces_equal,
        "auto_dual": report.is_auto_dual(),
    }
    if args.json:
        print(json.dumps(out, indent=2))
    elif not args.quiet:
        print(f"dual of {','.join(map(str, c.b))}: {','.join(map(str, out['dual_sequence']))}")
        print(f"M = {report.m}, M* = {report.m_star}")
        print(f"MT = TM*: {report.t_identity_holds}; traces equal: {report.traces_equal}")
    if not report.ok:
        raise Falsified(f"duality identity failed for {c.b}: M={report.m}, M*={report.m_star}")
    return 0


def cmd_quotient(args) -> int:
    if args.builtin:
        try:
            gens = builtin_generators(args.builtin)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        try:
            gens = parse_group_file(_read(args.group))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        group = group_closure(gens)
    except ClosureError as exc:
        raise InputError(str(exc)) from None
    classes = conjugacy_classes(group)
    out = {
        "schema": SCHEMA,
        "order": group.order,
        "classes": classes.count,
        "class_sizes": [len(cl) for cl in classes.classes],
    }
    try:
        report = mckay_report(group)
        out["mckay"] = {
            "family": report.family,
            "nontrivial_classes": report.nontrivial_classes,
            "expected_exceptional_curves": report.expected_exceptional_curves,
            "matches": report.matches,
        }
    except ValueError as exc:
        out["mckay"] = {"error": str(exc)}
        report = None
    if args.json:
        print(json.dumps(out, indent=2))
    elif not args.quiet:
        if report is not None:
            print(report.render())
        else:
            print(f"order={group.order} classes={classes.count} (not an SL(2)-type catalog group)")
    if report is not None and not report.matches:
        raise Falsified("McKay class count does not match the exceptional-curve count")
    return 0


def cmd_inoue(args) -> int:
    try:
        data = parse_field_file(_read(args.field))
        report = inoue_cross_check(data.d, data.basis, data.u, args.bound)
    except InoueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        out = {
            "schema": SCHEMA,
            "d": report.d,
            "matrix": _mat_json(report.matrix),
            "sequence": list(report.sequence),
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks
            ],
            "passed": report.passed,
        }
        print(json.dumps(out, indent=2))
    elif not args.quiet:
        print(report.render())
    if not report.passed:
        fail = report.first_failure()
        raise Falsified(f"{fail.name}: {fail.detail}")
    return 0


def cmd_check(args) -> int:
    results = run_all_sweeps()
    if args.json:
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "sweeps": [
                        {"name": r.name, "passed": r.passed, "cases": r.cases, "witness": r.witness}
                        for r in results
                    ],
                    "passed": all(r.passed for r in results),
                },
                indent=2,
            )
        )
    elif not args.quiet:
        for r in results:
            print(r.render())
    failures = [r for r in results if not r.passed]
    if failures:
        raise Falsified(f"{failures[0].name}: {failures[0].witness}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arclink",
        description="Exact computations on resolution graphs of surface singularities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        if bound:
            p.add_argument("--bound", type=int, default=3, help="multiplicity bound (default 3)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--quiet", action="store_true", help="suppress normal output")

    p = sub.add_parser("analyze", help="full report for a plumbing graph file")
    p.add_argument("graph")
    p.add_argument("--dot", help="write a DOT rendering of the input graph")
    common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("components", help="component list for a plumbing graph file")
    p.add_argument("graph")
    common(p)
    p.set_defaults(fn=cmd_components)

    p = sub.add_parser("cusp", help="monodromy and fundamental-domain enumeration")
    p.add_argument("--seq", required=True, help="comma-separated b-sequence, e.g. 3,3,3")
    common(p)
    p.set_defaults(fn=cmd_cusp)

    p = sub.add_parser("dual", help="dual sequence and the MT = TM* verification")
    p.add_argument("--seq", required=True)
    common(p, bound=False)
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("quotient", help="conjugacy classes and McKay report")
    p.add_argument("--group", help="group file (quaternion or matrix generators)")
    p.add_argument("--builtin", help="builtin group: 2T, 2O, 2I, Q8, cyclic:m, bd:n")
    common(p, bound=False)
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("inoue", help="real quadratic cross-check of a cusp")
    p.add_argument("--field", required=True, help="field data file (d=, basis=, u=)")
    common(p)
    p.set_defaults(fn=cmd_inoue)

    p = sub.add_parser("check", help="run the exhaustive invariant sweeps")
    common(p, bound=False)
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "group", None) is None and getattr(args, "builtin", None) is None:
        if args.command == "quotient":
            print("error: quotient needs --group or --builtin", file=sys.stderr)
            return 1
    try:
        return args.fn(args)
    except (InputError, GraphError, CuspError, InoueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Falsified as exc:
        print(f"FALSIFIED: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
