"""Command line front end.

Exit codes: 0 success, 1 verification or contract failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import amf, delayed, mixext, oracles, rmp, subst
from .graph import FAMILIES, Coloring, OrderedGraph, format_graph, generate, parse_graph, product_coloring
from .suites import SUITES, run_suite

SCHEMA = 1
METHODS = ("exact", "cograph", "amf", "quotient", "subst", "mixedext")


class UsageError(Exception):
    pass


class ContractError(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


def _emit(payload: dict, as_json: bool, text: str, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _read_graph(path: str) -> OrderedGraph:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    try:
        g = generate(args.family, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(format_graph(g), args.out)
    return 0


def cmd_decompose(args) -> int:
    g = _read_graph(args.file)
    if g.n == 0:
        raise UsageError("graph has no vertices")
    t, ng = delayed.build_delayed_tree(g, split=args.split)
    if args.kind == "delayed":
        nodes = delayed.tree_to_json(t, ng)
        payload = {"kind": "delayed", "n": g.n, "levels": len(t.levels), "nodes": nodes}
        lines = [f"delayed tree: {len(nodes)} nodes, {len(t.levels)} levels"]
        for x in nodes:
            lines.append(f"  node {x['id']} depth {x['depth']} [{x['lo']},{x['hi']}) children {x['children']} g-edges {x['g_edges']}")
    else:
        trees = {}
        lines = []
        for name, parity in (("odd", 1), ("even", 0)):
            st = delayed.delayed_to_subst_trees(t, delayed.restrict_to_parity(t, ng, parity), parity)
            trees[name] = subst.tree_to_json(st)
            lines.append(f"{name} side: {st.size} nodes, depth {subst.depth_info(st).tree_depth}")
        payload = {"kind": "subst", "n": g.n, "trees": trees}
    _emit(payload, args.json, "\n".join(lines))
    return 0


def _color(g: OrderedGraph, args) -> tuple[Coloring, dict]:
    method = args.method
    if method == "exact":
        chi, c = oracles.exact_chromatic_number(g)
        return c, {"chi": chi}
    if method == "cograph":
        try:
            return amf.color_cograph(g), {}
        except amf.NotCographError as exc:
            raise ContractError(str(exc)) from None
    if method == "amf":
        if args.d is None:
            if g.n > oracles.ORDERING_LIMIT:
                raise UsageError(f"-d is required above n={oracles.ORDERING_LIMIT}")
            inst, order = amf.amf_instance_from_oracle(g)
        else:
            inst, order = amf.AmfInstance(g, args.d), tuple(range(g.n))
            if args.strict:
                try:
                    inst.certify()
                except amf.MissingCertificate as exc:
                    raise ContractError(str(exc)) from None
        try:
            c, rep = amf.color_amf(inst, strict=args.strict, check_claims=args.check_claims, seed=args.seed)
        except (amf.NotCographError, amf.ClaimFailure) as exc:
            raise ContractError(f"ordering is not {inst.d}-almost mixed free: {exc}") from None
        back = [0] * g.n
        for i, v in enumerate(order):
            back[v] = c[i]
        return Coloring(tuple(back)), {"accounting": rep.as_dict(), "ordering": list(order)}
    if method == "quotient":
        if not args.partition:
            raise UsageError("--partition is required for method quotient")
        p = _parse_partition(args.partition, g)
        check = rmp.validate_rmp(g, p)
        if not check.ok:
            raise ContractError("invalid RMP", {"violation": check.as_dict()})
        q = rmp.quotient(g, p)
        chi, qc = oracles.exact_chromatic_number(q)
        return rmp.lift_quotient_coloring(g, p, qc), {"quotient_chi": chi, "partition": p.format()}
    if method == "subst":
        t, ng = delayed.build_delayed_tree(g)
        sides, reports = [], {}
        for name, parity in (("odd", 1), ("even", 0)):
            st = delayed.delayed_to_subst_trees(t, delayed.restrict_to_parity(t, ng, parity), parity)
            c, rep = subst.color_substitution(st, subst.graph_base(st, lambda h: oracles.exact_chromatic_number(h)[1].colors))
            sides.append(c)
            reports[name] = rep.as_dict()
        return product_coloring(*sides).dense(), {"sides": reports}
    if method == "mixedext":
        c, rep = mixext.color_mixed_extension(g)
        return c, rep.as_dict()
    raise UsageError(f"unknown method {method!r}")


def _parse_partition(text: str, g: OrderedGraph) -> rmp.RMPartition:
    try:
        p = rmp.RMPartition.parse(text)
    except (ValueError, rmp.RmpError) as exc:
        raise UsageError(f"bad partition literal: {exc}") from None
    if p.bounds()[0] != 0 or p.bounds()[-1] != g.n:
        raise UsageError(f"partition must cover vertices 0..{g.n - 1}")
    return p


def cmd_color(args) -> int:
    g = _read_graph(args.file)
    c, extra = _color(g, args)
    from .graph import is_proper

    proper = is_proper(g, c.colors)
    omega = oracles.clique_number(g) if g.n <= oracles.CLIQUE_LIMIT else None
    payload = {"method": args.method, "n": g.n, "colors": list(c.colors), "palette": c.palette_size, "omega": omega, "proper": proper, **extra}
    _emit(payload, args.json, f"method {args.method}: {c.palette_size} colors, omega {omega}, proper {proper}\n" + " ".join(map(str, c.colors)))
    return 0 if proper else 1


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = run_suite(args.suite, args.max_n, args.samples, args.seed, args.jobs)
    payload = {"max_n": args.max_n, "samples": args.samples, "seed": args.seed, **res.as_dict()}
    status = "PASS" if res.passed else "FAIL"
    text = f"{status} {args.suite}: {res.cases - len(res.failures)}/{res.cases} cases"
    for case, msg in res.failures[:10]:
        text += f"\n  {list(case)}: {msg}"
    _emit(payload, args.json, text)
    return 0 if res.passed else 1


def cmd_quotient(args) -> int:
    g = _read_graph(args.file)
    p = _parse_partition(args.partition, g)
    check = rmp.validate_rmp(g, p)
    if not check.ok:
        raise ContractError("invalid RMP", {"violation": check.as_dict()})
    q = rmp.quotient(g, p)
    if args.out:
        _write(format_graph(q), args.out)
    w = oracles.clique_number(g)
    payload = {"partition": p.format(), "n": q.n, "edges": [list(e) for e in q.edges()], "omega_g": w, "omega_quotient": oracles.clique_number(q)}
    text = format_graph(q) if not args.out else f"quotient with {q.n} vertices written to {args.out}"
    _emit(payload, args.json, text)
    return 0


# ---------------------------------------------------------------- parser


def _env_seed() -> int:
    raw = os.environ.get("TWWCHI_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"TWWCHI_SEED must be an integer, got {raw!r}") from None


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twwchi", description="Decompositions, mixed minors and colorings of ordered graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph from a named family")
    p.add_argument("family", help=f"one of {', '.join(FAMILIES)}")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="dump the delayed tree or its odd/even substitution trees")
    p.add_argument("file")
    p.add_argument("--kind", choices=("delayed", "subst"), default="delayed")
    p.add_argument("--split", choices=tuple(delayed.SPLIT_RULES), default="midpoint")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("color", help="color a graph and report the palette")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("-d", type=int, help="almost mixed free parameter of the given ordering")
    p.add_argument("--partition", help="RMP literal such as 0-0,1-2,3-5")
    p.add_argument("--strict", action="store_true", help="certify the ordering and fail on any falsified claim")
    p.add_argument("--check-claims", action="store_true")
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="run a lemma verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quotient", help="contract the parts of a right module partition")
    p.add_argument("file")
    p.add_argument("partition")
    p.add_argument("-o", "--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quotient)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser(_env_seed()).parse_args(argv)
        if getattr(args, "d", None) is not None and args.d < 2:
            raise UsageError("-d must be at least 2")
        if getattr(args, "jobs", 1) < 1 or getattr(args, "max_n", 1) < 1 or getattr(args, "samples", 0) < 0:
            raise UsageError("--jobs and --max-n must be positive, --samples non-negative")
        return args.func(args)
    except UsageError as exc:
        print(f"twwchi: error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"twwchi: {exc}", file=sys.stderr)
        if exc.payload and getattr(args, "json", False):
            _emit({"error": str(exc), **exc.payload}, True, "")
        return 1
    except oracles.OracleLimitError as exc:
        print(f"twwchi: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
