"""Command-line front end: check, solve, generate, verify, transform.

Exit status: 0 feasible/valid, 1 infeasible/invalid, 2 error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .decompositions import is_chordal, parse_cw_expression, parse_td, serialize_cw_expression
from .errors import OrientdError, ValidationError
from .gadgets import (
    block_gadget,
    clause_gadget,
    cw_hardness_instance,
    format_roles,
    or_gadget,
    parse_cnf,
    parse_mcis,
    reduce_dominating_set,
    reduce_ds_chordal,
    reduce_is_chordal,
    seth_instance,
)
from .graph import (
    CapacitatedInstance,
    format_witness,
    parse_graph_text,
    parse_instance,
    parse_witness,
    random_capacities,
    random_chordal,
    random_graph,
    serialize_instance,
)
from .orientation import Orientation, feasible_orientation, verify_solution
from .solvers import brute_force, lift_solution, saturate, solve
from .solvers.brute import DEFAULT_GUARD
from .solvers.dispatch import STRATEGIES

log = logging.getLogger("orientd")

OK, NO, ERROR = 0, 1, 2
FAMILIES = ("ds", "is-chordal", "ds-chordal", "seth", "cw-hardness", "clause", "or", "block", "random")


class UsageError(OrientdError):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_instance(path, d: int | None = None, k: int | None = None) -> CapacitatedInstance:
    """Read a ``p orient`` instance or a plain DIMACS graph (which needs ``d``)."""
    text = _read(path)
    header = next((ln.split() for ln in text.splitlines() if ln.startswith("p ")), None)
    if header is not None and len(header) > 1 and header[1] == "orient":
        inst = parse_instance(text)
        if d is not None and d != inst.d:
            if inst.is_uniform:
                inst = CapacitatedInstance.uniform(inst.graph, d, inst.budget)
            elif max(inst.capacities, default=0) > d:
                raise UsageError(f"--d {d} is below an explicit capacity of {path}")
            else:
                inst = CapacitatedInstance(inst.graph, d, inst.capacities, inst.budget)
    else:
        if d is None:
            raise UsageError(f"{path} is a plain graph; pass --d")
        inst = CapacitatedInstance.uniform(parse_graph_text(text), d)
    if k is not None:
        inst = inst.with_budget(k)
    return inst


def _threshold(value: str | None):
    if value is None:
        return "default"
    if value == "inf":
        return "inf"
    try:
        t = int(value)
    except ValueError:
        raise UsageError(f"--threshold takes an integer or 'inf', not {value!r}") from None
    return t


class Output:
    """Writes either to stdout or into files under ``--out``."""

    def __init__(self, out_dir: str | None):
        self.dir = Path(out_dir) if out_dir else None
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str) -> None:
        if self.dir is None:
            sys.stdout.write(text)
        else:
            path = self.dir / name
            path.write_text(text, encoding="utf-8")
            print(f"c wrote {name} {path}")


def _witness_text(deleted, orientation) -> str:
    return format_witness(deleted, orientation.arcs if orientation is not None else ())


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    inst = load_instance(args.instance, args.d)
    o = feasible_orientation(inst.graph, inst.capacities)
    out = Output(args.out)
    if o is None:
        print("result infeasible 0")
        return NO
    print("result feasible 0")
    indeg = o.in_degrees
    if inst.n:
        print(f"c in-degree min {min(indeg)} max {max(indeg)}")
    out.emit("witness.txt", _witness_text((), o))
    return OK


def cmd_solve(args) -> int:
    inst = load_instance(args.instance, args.d, args.k)
    if args.solver == "cw" and args.cw is None:
        raise UsageError("--solver cw needs --cw FILE")
    if args.solver in ("brute", "chordal") and (args.td or args.cw):
        raise UsageError(f"--solver {args.solver} takes no decomposition or expression")
    td = expr = None
    if args.td:
        td, td_n = parse_td(_read(args.td))
        if td_n != inst.n:
            raise UsageError(f"decomposition covers {td_n} vertices, instance has {inst.n}")
    if args.cw:
        expr = parse_cw_expression(_read(args.cw))
        if expr.n != inst.n:
            raise UsageError(f"expression introduces {expr.n} vertices, instance has {inst.n}")
    threshold = _threshold(args.threshold)
    target = inst
    smap = None
    if args.saturate is not None:
        if td is not None or expr is not None:
            raise UsageError("--saturate cannot be combined with --td or --cw")
        target, smap = saturate(inst, args.saturate)
    res = solve(target, args.solver, td=td, expr=expr, threshold=threshold, guard=args.guard,
                budget=target.budget)
    if smap is not None:
        res = lift_solution(res, smap, inst, target)
    if args.cross_validate:
        guard = DEFAULT_GUARD if args.guard is None else args.guard
        if inst.n <= guard:
            ref = brute_force(inst, guard=guard, budget=inst.budget)
            if (ref.feasible, ref.optimum) != (res.feasible, res.optimum):
                raise OrientdError(
                    f"cross-validation failed: {res.strategy} gives {res.result_line()!r}, "
                    f"brute force gives {ref.result_line()!r}")
            print("c cross-validated against brute force")
        else:
            print(f"c cross-validation skipped: n={inst.n} above guard {guard}")
    print(res.result_line())
    print(f"c strategy {res.strategy}")
    if not res.feasible:
        return NO
    if not res.witness_complete:
        print("c witness incomplete: deletion set only")
    Output(args.out).emit("witness.txt", _witness_text(res.deletion, res.orientation))
    return OK


def _generate(args):
    """Returns (instance, roles, target or None, extra files)."""
    fam = args.family
    extra = {}
    if fam in ("ds", "is-chordal", "ds-chordal"):
        if args.graph is None:
            raise UsageError(f"generate {fam} needs --graph FILE")
        g = parse_graph_text(_read(args.graph))
        if fam == "ds":
            red = reduce_dominating_set(g)
            inst = red.instance if args.k is None else red.instance.with_budget(args.k)
            return inst, red.roles, args.k, extra
        if args.k is None:
            raise UsageError(f"generate {fam} needs --k")
        red = (reduce_is_chordal if fam == "is-chordal" else reduce_ds_chordal)(g, args.k)
        return red.instance, red.roles, red.target, extra
    if fam == "seth":
        if args.cnf is None:
            raise UsageError("generate seth needs --cnf FILE")
        inst, target, layout = seth_instance(parse_cnf(_read(args.cnf)), _need(args.d, "--d"),
                                             args.p, args.sections)
        p = layout.params
        extra["params.txt"] = (f"n {p.n}\nm {p.m}\nd {p.d}\np {p.p}\ngamma {p.gamma}\nt {p.t}\n"
                               f"sections {p.sections}\ntarget {target}\n")
        return inst, layout.roles(), target, extra
    if fam == "cw-hardness":
        if args.mcis is None:
            raise UsageError("generate cw-hardness needs --mcis FILE")
        inst, target, expr, layout = cw_hardness_instance(parse_mcis(_read(args.mcis)), args.truncated)
        tag = "c nonconforming: guard sets truncated\n" if args.truncated else ""
        extra["expression.cw"] = tag + f"c labels {layout.labels_used}\n" + serialize_cw_expression(expr)
        return inst, layout.roles(), target, extra
    if fam == "clause":
        h = clause_gadget(_need(args.n, "--n"))
        return h.instance, h.roles, 2 * args.n, extra
    if fam == "or":
        h = or_gadget(_need(args.d, "--d"), args.endpoint_cap)
        return h.instance, h.roles, 1, extra
    if fam == "block":
        h = block_gadget(_need(args.d, "--d"))
        return h.instance, h.roles, None, extra
    # random
    n = _need(args.n, "--n")
    d = _need(args.d, "--d")
    g = random_chordal(n, args.edge_prob, args.seed) if args.chordal else random_graph(n, args.edge_prob, args.seed)
    caps = random_capacities(n, d, args.seed) if args.random_caps else (d,) * n
    return CapacitatedInstance(g, d, tuple(caps), args.k), {}, args.k, extra


def _need(value, flag):
    if value is None:
        raise UsageError(f"this family needs {flag}")
    return value


def cmd_generate(args) -> int:
    inst, roles, target, extra = _generate(args)
    if args.saturate is not None:
        inst, smap = saturate(inst, args.saturate)
        extra["saturation.txt"] = smap.to_text()
    out = Output(args.out)
    if target is not None:
        print(f"c target {target}")
    out.emit("instance.txt", serialize_instance(inst))
    if roles and out.dir is not None:
        out.emit("roles.txt", format_roles(roles))
    for name, text in extra.items():
        if out.dir is not None:
            out.emit(name, text)
    return OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance, args.d, args.k)
    deleted, arcs = parse_witness(_read(args.witness), inst.n)
    try:
        verdict = verify_solution(inst, deleted, Orientation(inst.n, tuple(arcs)))
    except ValidationError as exc:
        print(f"invalid {exc}")
        return NO
    if verdict:
        print(f"valid deletions {len(deleted)}")
        return OK
    print(f"invalid {verdict.message}")
    return NO


def cmd_transform(args) -> int:
    inst = load_instance(args.instance, args.d, args.k)
    if args.saturate is None:
        raise UsageError("transform needs --saturate D")
    out_inst, smap = saturate(inst, args.saturate)
    if is_chordal(inst.graph):
        print(f"c chordal input, chordal output: {str(is_chordal(out_inst.graph)).lower()}")
    out = Output(args.out)
    out.emit("instance.txt", serialize_instance(out_inst))
    if out.dir is not None:
        out.emit("saturation.txt", smap.to_text())
    return OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orientd", description="Exact d-orientable vertex deletion.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance file (p orient) or plain DIMACS graph")
        p.add_argument("--d", type=int, help="in-degree bound (required for plain graphs)")
        p.add_argument("--k", type=int, help="deletion budget")
        p.add_argument("--out", help="write output files into this directory")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("check", help="decide orientability without deletions")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="minimum deletion set with a witness")
    common(p)
    p.add_argument("--solver", choices=STRATEGIES, default="auto")
    p.add_argument("--td", help="tree decomposition (PACE .td)")
    p.add_argument("--cw", help="clique-width expression")
    p.add_argument("--threshold", help="large-class threshold for the expression DP: N or inf")
    p.add_argument("--saturate", type=int, metavar="D", help="solve the saturated instance and lift")
    p.add_argument("--cross-validate", action="store_true", help="compare with brute force when n <= guard")
    p.add_argument("--guard", type=int, help=f"brute-force size limit (default {DEFAULT_GUARD}, <0 disables)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="emit a gadget, reduction or random instance")
    p.add_argument("family", choices=FAMILIES)
    common(p, instance=False)
    p.add_argument("--graph", help="source graph for ds, is-chordal, ds-chordal")
    p.add_argument("--cnf", help="DIMACS CNF for seth")
    p.add_argument("--p", type=int, default=1, help="blocks per group for seth")
    p.add_argument("--sections", type=int, help="column sections for seth")
    p.add_argument("--mcis", help="multicolored instance for cw-hardness")
    p.add_argument("--truncated", action="store_true", help="cw-hardness with guard sets of size 2n+1")
    p.add_argument("--n", type=int, help="clause size, or vertex count for random")
    p.add_argument("--endpoint-cap", type=int, default=0, help="endpoint capacity for or")
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--chordal", action="store_true", help="random chordal graph")
    p.add_argument("--random-caps", action="store_true", help="random capacities in [0, d]")
    p.add_argument("--saturate", type=int, metavar="D")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a witness against an instance")
    common(p)
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="saturate capacities to a uniform bound")
    common(p)
    p.add_argument("--saturate", type=int, metavar="D")
    p.set_defaults(func=cmd_transform)
    return ap


def main(argv=None) -> int:
    level = os.environ.get("ORIENTD_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args)
    except OrientdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
