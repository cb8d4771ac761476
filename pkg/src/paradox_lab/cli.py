"""Command line entry point.

Exit codes: 0 property holds / task done, 1 property fails, 2 usage or
internal error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import kernel
from .cells import classify_cell, find_diamonds, find_yablo_cells, is_ycs
from .certify import CERTIFIED, certify_paradoxical, chain_failure, check_yablo_condition
from .constructions import make_construction, parse_pattern_rule
from .constructions.rules import ValuationRule
from .dot import export_dot
from .dsl import parse_dsl, render_dsl
from .errors import MixedSigns, ParadoxLabError, ParseError
from .graph import REMAINDER, RESTRICTED, truncate
from .paths import find_paths, negation_type
from .solver import RESTRICTED_CAVEAT, Clamp, search_escape, solve, verify_rule

OK, FAIL, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, obj, text_lines):
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _load(args, need_depth=True):
    """(graph, window or None, clamps) from a DSL file or a generator."""
    if getattr(args, "file", None) and getattr(args, "gen", None):
        raise UsageError("give either a DSL file or --gen, not both")
    if getattr(args, "file", None):
        graph, clamps = parse_dsl(_read(args.file))
        return graph, None, clamps
    if not getattr(args, "gen", None):
        raise UsageError("a DSL file or --gen is required")
    if need_depth and args.depth is None:
        raise UsageError("--depth is required with --gen")
    gen = make_construction(args.gen)
    graph, win = truncate(gen, args.depth, getattr(args, "mode", None) or REMAINDER)
    return graph, win, []


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_gen(args):
    gen = make_construction(args.construction)
    graph, _ = truncate(gen, args.depth, args.mode)
    if args.output and args.output.endswith(".dot"):
        text = export_dot(graph, gen.name)
    else:
        text = render_dsl(graph)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_check_sat(args):
    graph, _, clamps = _load(args)
    clamps = list(clamps) + [Clamp.parse(c) for c in args.clamp or []]
    out = solve(graph, clamps, kernel_budget(args))
    rep = out.to_json()
    rep["mode"] = args.mode if args.gen else "file"
    lines = [f"status: {out.status}"]
    if out.model is not None:
        lines.append("model: " + " ".join(f"{k}={'T' if v else 'F'}" for k, v in out.model.items()))
    if out.core is not None:
        lines.append("core: " + " ".join(out.core))
    if args.gen and args.mode == RESTRICTED:
        rep["note"] = RESTRICTED_CAVEAT
        lines.append("note: " + RESTRICTED_CAVEAT)
    _emit(args, rep, lines)
    return OK if out.status != "unknown" else FAIL


def kernel_budget(args):
    return getattr(args, "budget", None)


def _rule(gen, name) -> ValuationRule:
    rules = gen.escape_rules()
    if name in rules:
        return rules[name]
    if name == "all-false":
        return ValuationRule.constant(name, False)
    if name == "all-true":
        return ValuationRule.constant(name, True)
    if "=" in name:
        return parse_pattern_rule(name)
    known = ", ".join(sorted(set(rules) | {"all-false", "all-true"}))
    raise UsageError(f"unknown rule {name!r} (known: {known}, or pattern like 'x:*=F')")


def cmd_check_rule(args):
    gen = make_construction(args.gen)
    rep = verify_rule(gen, _rule(gen, args.rule), args.depth)
    lines = [f"rule {rep.rule} at depth {rep.depth}: {rep.checked} nodes checked, "
             f"{len(rep.violations)} violations"]
    lines += [f"  {v.node}: assigned {v.assigned}, formula gives {v.computed}" for v in rep.violations]
    _emit(args, rep.to_json(), lines)
    return OK if rep.ok else FAIL


def cmd_check_escape(args):
    gen = make_construction(args.gen)
    rep = search_escape(gen, args.depth, kernel_budget(args))
    lines = [f"{rep.construction} depth {rep.depth}: {rep.verdict}",
             f"  root=F: {rep.root_false.status}", f"  root=T: {rep.root_true.status}",
             f"note: {rep.note}"]
    _emit(args, rep.to_json(), lines)
    return OK


def cmd_certify(args):
    gen = make_construction(args.gen)
    rep = certify_paradoxical(gen, args.depth, budget=kernel_budget(args))
    lines = [f"{rep.construction} depth {rep.depth}: {rep.verdict}"]
    if rep.rule:
        lines.append(f"  rule: {rep.rule}")
    if rep.reason:
        lines.append(f"  reason: {rep.reason}")
    lines.append(f"caveat: {rep.caveat}")
    _emit(args, rep.to_json(), lines)
    return OK if rep.verdict == CERTIFIED else FAIL


def cmd_paths(args):
    graph, _ = parse_dsl(_read(args.file))
    for n in (args.src, args.dst):
        if n not in graph:
            raise UsageError(f"unknown node {n}")
    ps = find_paths(graph, args.src, args.dst, args.max_len)
    _emit(args, {"paths": [p.to_json() for p in ps]}, [f"{p.value} {p}" for p in ps])
    return OK


def cmd_cells(args):
    graph, _ = parse_dsl(_read(args.file))
    cells = find_yablo_cells(graph)
    rows = []
    for c in cells:
        closed, missing = is_ycs(graph, c.head, c.knee)
        rows.append({"head": c.head, "knee": c.knee, "foot": c.foot, "ycs": closed, "missing": missing})
    classes = {n: classify_cell(graph, n).value for n in graph.interior()}
    lines = [f"{r['head']} -o {r['knee']} -o {r['foot']}" + (" (YCS)" if r["ycs"] else "") for r in rows]
    lines += [f"{n}: {c}" for n, c in classes.items()]
    _emit(args, {"cells": rows, "classes": classes}, lines)
    return OK


def cmd_diamonds(args):
    graph, _ = parse_dsl(_read(args.file))
    ds = find_diamonds(graph)
    _emit(args, {"diamonds": [d._asdict() for d in ds], "count": len(ds)},
          [f"{d.head} -o {d.knee_neg} -o {d.meet}, {d.head} -o {d.knee_pos} -> {d.meet}" for d in ds]
          + [f"{len(ds)} diamonds"])
    return OK


def cmd_negtype(args):
    graph, _ = parse_dsl(_read(args.file))
    for n in (args.src, args.dst):
        if n not in graph:
            raise UsageError(f"unknown node {n}")
    try:
        t = negation_type(graph, args.src, args.dst)
    except MixedSigns as exc:
        _emit(args, {"type": None, "error": str(exc)}, [f"mixed signs: {exc}"])
        return FAIL
    _emit(args, {"type": t}, [f"type: {t}" if t is not None else "no negation structure"])
    return OK if t is not None else FAIL


def cmd_condition_yablo(args):
    chain = [c.strip() for c in args.chain.split(",") if c.strip()]
    if len(chain) < 2:
        raise UsageError("--chain needs at least two nodes")
    if args.gen:
        gen = make_construction(args.gen)
        if args.depth is None:
            graph_or_gen = gen
        else:
            graph_or_gen, _ = truncate(gen, args.depth, RESTRICTED)
    else:
        graph_or_gen, _, _ = _load(args, need_depth=False)
    w = check_yablo_condition(graph_or_gen, chain, args.max_len)
    if w is None:
        pair = chain_failure(graph_or_gen, chain, args.max_len)
        _emit(args, {"witness": None, "failingPair": list(pair) if pair else None},
              [f"no negative path from {chain[pair[0]]} to {chain[pair[1]]}" if pair else "no witness"])
        return FAIL
    _emit(args, {"witness": w.to_json()},
          [f"{i},{j}: {p}" for (i, j), p in sorted(w.paths.items())])
    return OK


def cmd_export_dot(args):
    graph, _ = parse_dsl(_read(args.file))
    text = export_dot(graph)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return OK


def _fmt(p):
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paradox-lab", description="Analyse signed reference graphs.")
    ap.add_argument("--backend", choices=kernel.BACKENDS, help="solver kernel (default: fastest available)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="materialize a construction window")
    p.add_argument("construction")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=(REMAINDER, RESTRICTED), default=REMAINDER)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    check = sub.add_parser("check", help="satisfiability, rules and escapes")
    csub = check.add_subparsers(dest="check", required=True)
    p = csub.add_parser("sat")
    p.add_argument("file", nargs="?")
    p.add_argument("--gen")
    p.add_argument("--depth", type=int)
    p.add_argument("--mode", choices=(REMAINDER, RESTRICTED), default=REMAINDER)
    p.add_argument("--clamp", action="append")
    p.add_argument("--budget", type=int)
    _fmt(p)
    p.set_defaults(func=cmd_check_sat)
    p = csub.add_parser("rule")
    p.add_argument("--gen", required=True)
    p.add_argument("--rule", required=True)
    p.add_argument("--depth", type=int, required=True)
    _fmt(p)
    p.set_defaults(func=cmd_check_rule)
    p = csub.add_parser("escape")
    p.add_argument("--gen", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int)
    _fmt(p)
    p.set_defaults(func=cmd_check_escape)

    p = sub.add_parser("certify", help="paradoxicality certificate")
    p.add_argument("--gen", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int)
    _fmt(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("paths", help="enumerate paths between two nodes")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--max-len", type=int, default=8)
    _fmt(p)
    p.set_defaults(func=cmd_paths)

    for name, fn in (("cells", cmd_cells), ("diamonds", cmd_diamonds)):
        p = sub.add_parser(name)
        p.add_argument("file")
        _fmt(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("negtype", help="negation type between two nodes")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    _fmt(p)
    p.set_defaults(func=cmd_negtype)

    p = sub.add_parser("condition-yablo", help="negative paths along a chain")
    p.add_argument("file", nargs="?")
    p.add_argument("--gen")
    p.add_argument("--depth", type=int)
    p.add_argument("--chain", required=True)
    p.add_argument("--max-len", type=int, default=6)
    _fmt(p)
    p.set_defaults(func=cmd_condition_yablo)

    p = sub.add_parser("export", help="export a DSL graph")
    esub = p.add_subparsers(dest="export", required=True)
    p = esub.add_parser("dot")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    if args.backend:
        kernel.use_backend(args.backend)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except ParadoxLabError as exc:
        # structural violations in the input graph
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAIL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
