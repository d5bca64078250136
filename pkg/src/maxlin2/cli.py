"""Command-line front end.

Exit status: 0 Yes/success, 1 No, 2 usage or parse error, 3 precondition
violation, 4 internal witness check failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import gf2
from .errors import ParseError, PreconditionError
from .graphapps import NEQ, count_satisfied, max_cut_assignment, balanced_subgraph_assignment, parse_graph
from .linsystem import LinearSystem, excess, format_lin2, lift_assignment, parse_lin2, reduce
from .pseudobool import evaluate, lower_bound, parse_pbf
from .solver import (
    Kernel,
    Verdict,
    guaranteed_excess_assignment,
    kernelize,
    kernelize_r,
    solve,
    solve_search_tree,
)
from .testkit import RandomSpec, brute_force_max_excess, random_instance, tight_instance

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class WitnessCheckError(RuntimeError):
    pass


def _fmt(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def _witness(names: Sequence[str], x: Sequence[int]) -> dict[str, int]:
    return {name: int(v) for name, v in zip(names, x)}


class Report:
    def __init__(self, command: str, text: str | None = None):
        self.fields: dict[str, Any] = {"command": command}
        if text is not None:
            self.fields["input_sha256"] = hashlib.sha256(text.encode()).hexdigest()

    def __setitem__(self, key: str, value: Any) -> None:
        self.fields[key] = value

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({k: _fmt(v) for k, v in self.fields.items()}) + "\n"
        lines = []
        for k, v in self.fields.items():
            if isinstance(v, dict):
                v = " ".join(f"{a}={b:+d}" for a, b in v.items())
            elif isinstance(v, bool):
                v = "yes" if v else "no"
            lines.append(f"{k}: {_fmt(v)}")
        return "\n".join(lines) + "\n"


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise WitnessCheckError(f"witness re-validation failed: {what}")


def _verdict_fields(rep: Report, s: LinearSystem, text: str, v: Verdict, k: int) -> int:
    rep["answer"] = v.answer
    if v.answer:
        value = excess(parse_lin2(text), v.witness)
        _check(value >= 2 * k and value == v.achieved_excess, f"excess {value} < 2k={2 * k}")
        rep["excess"] = value
        rep["witness"] = _witness(s.var_names, v.witness)
    rep["regime"] = v.stats.regime
    rep["vars_before"] = v.stats.vars_before
    rep["vars_after"] = v.stats.vars_after
    rep["nodes"] = v.stats.nodes
    return EXIT_YES if v.answer else EXIT_NO


def cmd_solve(args, text):
    s = parse_lin2(text)
    rep = Report("solve", text)
    rep["k"] = args.k
    code = _verdict_fields(rep, s, text, solve(s, args.k, parallel=args.parallel), args.k)
    return rep, code


def cmd_search(args, text):
    s = parse_lin2(text)
    rep = Report("search", text)
    rep["k"] = args.k
    v = solve_search_tree(s, args.k, parallel=args.parallel)
    v.stats.vars_after = v.stats.vars_before
    return rep, _verdict_fields(rep, s, text, v, args.k)


def cmd_kernelize(args, text):
    s = parse_lin2(text)
    rep = Report("kernelize", text)
    rep["k"] = args.k
    if args.r is not None:
        rep["r"] = args.r
        out = kernelize_r(s, args.k, args.r)
    else:
        out = kernelize(s, args.k)
    if isinstance(out, Kernel):
        rep["outcome"] = "kernel"
        rep["regime"] = out.regime.value
        rep["vars_before"] = s.n_vars
        rep["vars_after"] = out.system.n_vars
        rep["equations_after"] = len(out.system)
        rep["kernel_vars"] = " ".join(out.system.var_names) or "-"
        if args.output:
            Path(args.output).write_text(
                format_lin2(out.system, [f"kernel of {args.input} for k={args.k}"])
            )
            rep["written"] = args.output
        return rep, EXIT_YES
    rep["outcome"] = "solved"
    return rep, _verdict_fields(rep, s, text, out.verdict, args.k)


def cmd_excess(args, text):
    s = parse_lin2(text)
    rep = Report("excess", text)
    red, log = reduce(s)
    rep["k"] = args.k
    rep["vars_after"] = red.n_vars
    x = lift_assignment(log, guaranteed_excess_assignment(red, args.k, args.r))
    value = excess(parse_lin2(text), x)
    bound = args.k * red.min_weight
    _check(value >= bound, f"excess {value} < k*w_min={bound}")
    rep["guarantee"] = bound
    rep["excess"] = value
    rep["witness"] = _witness(s.var_names, x)
    return rep, EXIT_YES


def cmd_pb_bound(args, text):
    f = parse_pbf(text)
    rep = Report("pb-bound", text)
    res = lower_bound(f)
    value = evaluate(parse_pbf(text), res.witness)
    _check(value >= res.bound, f"f(witness)={value} < bound {res.bound}")
    rep["degree"] = f.degree
    rep["rank"] = res.rank_used
    rep["k_star"] = res.k_star
    rep["bound"] = res.bound
    rep["value"] = value
    rep["witness"] = _witness([f"x{i}" for i in range(1, f.n_vars + 1)], res.witness)
    return rep, EXIT_YES


def _cut_report(name, text, res, g):
    rep = Report(name, text)
    recount = count_satisfied(parse_graph(text), res.coloring)
    _check(recount == res.satisfied and recount >= res.guarantee, "satisfied count below guarantee")
    rep["vertices"] = g.n_vertices
    rep["edges"] = g.m
    rep["cut" if name == "maxcut" else "satisfied"] = res.satisfied
    rep["guarantee"] = res.guarantee
    rep["certified"] = res.certified
    rep["coloring"] = _witness([f"v{i}" for i in range(1, g.n_vertices + 1)], res.coloring)
    return rep


def cmd_maxcut(args, text):
    g = parse_graph(text)
    return _cut_report("maxcut", text, max_cut_assignment(g), g), EXIT_YES


def cmd_balance(args, text):
    g = parse_graph(text)
    return _cut_report("balance", text, balanced_subgraph_assignment(g), g), EXIT_YES


def cmd_oracle(args, text):
    s = parse_lin2(text)
    rep = Report("oracle", text)
    value, x = brute_force_max_excess(s)
    rep["max_excess"] = value
    rep["witness"] = _witness(s.var_names, x)
    return rep, EXIT_YES


def cmd_gen(args, text):
    if args.kind == "tight":
        s = tight_instance(args.kappa, args.r)
        comment = f"tight instance kappa={args.kappa} r={args.r}"
    else:
        s = random_instance(RandomSpec(args.n, args.m, args.r, args.max_weight, args.seed))
        comment = f"random n={args.n} m={args.m} r={args.r} max_weight={args.max_weight} seed={args.seed}"
    body = format_lin2(s, [comment])
    if args.output:
        Path(args.output).write_text(body)
        rep = Report("gen")
        rep["kind"] = args.kind
        rep["written"] = args.output
        rep["vars"] = s.n_vars
        rep["equations"] = len(s)
        return rep, EXIT_YES
    return body, EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxlin2", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, func, help_, k=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if k:
            sp.add_argument("--k", type=int, required=True)
        sp.add_argument("input")
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (
        ("solve", cmd_solve, "kernelize then search (exact decision)"),
        ("search", cmd_search, "bounded search tree directly"),
    ):
        sp = with_input(name, func, help_, k=True)
        sp.add_argument("--parallel", action="store_true")
    sp = with_input("kernelize", cmd_kernelize, "variable kernel (with --r: (2k-1)r kernel)", k=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("-o", "--output")
    sp = with_input("excess", cmd_excess, "assignment with excess >= k*w_min", k=True)
    sp.add_argument("--r", type=int)
    with_input("pb-bound", cmd_pb_bound, "rank lower bound on max of a pseudo-boolean function")
    with_input("maxcut", cmd_maxcut, "Edwards-Erdos bipartition")
    with_input("balance", cmd_balance, "balanced subgraph coloring")
    with_input("oracle", cmd_oracle, "brute-force maximum excess")

    gen = sub.add_parser("gen", parents=[common], help="instance generators")
    gsub = gen.add_subparsers(dest="kind", required=True)
    t = gsub.add_parser("tight", parents=[common])
    t.add_argument("--kappa", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("-o", "--output")
    r = gsub.add_parser("random", parents=[common])
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--r", type=int, required=True)
    r.add_argument("--max-weight", type=int, default=1)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen, input=None)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        text = Path(args.input).read_text() if args.input else None
        out, code = args.func(args, text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated ({exc.condition}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except WitnessCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if isinstance(out, Report):
        if args.timing:
            out["wall_time_s"] = f"{time.perf_counter() - start:.6f}"
        out = out.render(args.json)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
