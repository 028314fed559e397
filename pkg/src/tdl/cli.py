"""Command-line front end.  Every subcommand is a thin wrapper over a library call.

Exit status: 0 success, 1 domain/capacity error, 2 validation or verification
failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Callable, Sequence

from tdl.codecs import parse_graph, sniff_format, to_json_obj
from tdl.constructions import (TreeDecomposition, build_gadget, build_lower_bound_graph,
                               label_str, verify_gadget_properties, verify_tree_decomposition)
from tdl.counting import count_copies, count_images, enumerate_images
from tdl.errors import ConsistencyError, DomainError, TdlError, ValidationError
from tdl.extraction import ExtractionFailure, extract_witness
from tdl.fit import run_fit
from tdl.forest import Forest, alpha_s
from tdl.graph import Graph, density
from tdl.models import find_pq_model, flap_number
from tdl.shortcuts import (BipartiteModel, ShortcutSystem, build_low_degree_square, expand,
                           transfer_model, validate_shortcut_system, verify_model)

EXIT_OK, EXIT_DOMAIN, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


# -- I/O helpers ----------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str) -> Graph:
    text = _read_text(path)
    return parse_graph(text.strip(), sniff_format(text))


def load_forest(path: str) -> Forest:
    return Forest.from_graph(load_graph(path))


def load_json(path: str) -> object:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def _emit(args, obj: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        for line in lines:
            print(line)


# -- subcommands ----------------------------------------------------------------

def cmd_alpha(args) -> int:
    res = alpha_s(load_forest(args.forest), args.s)
    _emit(args, {"value": res.value, "witness": res.witness, "low_degree_set": res.low_degree_set},
          [f"alpha_{args.s} = {res.value}", f"witness: {res.witness}", f"low-degree set: {res.low_degree_set}"])
    return EXIT_OK


def cmd_count(args) -> int:
    t, g = load_forest(args.pattern), load_graph(args.host)
    rep = count_copies(t, g, threads=args.threads)
    _emit(args, {"images": rep.images, "copies": rep.copies, "automorphisms": rep.automorphisms},
          [f"images: {rep.images}", f"copies: {rep.copies}", f"automorphisms: {rep.automorphisms}"])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    t, g = load_forest(args.pattern), load_graph(args.host)
    images = enumerate_images(t, g, args.cap)
    total = count_images(t, g, threads=args.threads).images
    _emit(args, {"images": [list(e.assignment) for e in images], "total": total,
                 "truncated": total > len(images)},
          [" ".join(map(str, e.assignment)) for e in images]
          + ([f"... {total - len(images)} more"] if total > len(images) else []))
    return EXIT_OK


def cmd_construct(args) -> int:
    inst = build_lower_bound_graph(load_forest(args.forest), args.s, args.n)
    obj = {"graph": to_json_obj(inst.graph), "decomposition": inst.decomposition.to_json_obj(),
           "stable_set": inst.stable_set, "m": inst.m, "k": inst.k,
           "copy_lower_bound": inst.copy_lower_bound()}
    if args.out:
        Path(args.out).write_text(json.dumps(to_json_obj(inst.graph)))
    if args.td_out:
        Path(args.td_out).write_text(json.dumps(inst.decomposition.to_json_obj()))
    _emit(args, obj, [f"vertices: {inst.graph.n}", f"edges: {inst.graph.edge_count}",
                      f"stable set: {inst.stable_set}", f"m = {inst.m}, k = {inst.k}",
                      f"width: {inst.decomposition.width}",
                      f"copies >= {inst.copy_lower_bound()}"])
    return EXIT_OK


def cmd_verify_td(args) -> int:
    g = load_graph(args.graph)
    td = TreeDecomposition.from_json_obj(load_json(args.td))
    check = verify_tree_decomposition(g, td)
    _emit(args, {"valid": check.valid, "width": check.width, "violation": check.violation},
          [f"valid, width {check.width}" if check else f"invalid: {check.violation}"])
    return EXIT_OK if check else EXIT_INVALID


def cmd_gadget(args) -> int:
    h = load_graph(args.h)
    gad = build_gadget(h, args.s, args.t)
    obj = {"gadget": gad.to_json_obj()}
    lines = [f"vertices: {gad.graph.n}", f"edges: {gad.graph.edge_count}"]
    status = EXIT_OK
    if args.verify:
        rep = verify_gadget_properties(h, args.s, args.t)
        obj["report"] = {"s_prime": rep.s_prime, "contraction_ok": rep.contraction_ok,
                         "degrees_ok": rep.degrees_ok, "min_degree_ok": rep.min_degree_ok,
                         "diameter_ok": rep.diameter_ok, "failures": rep.failures, "ok": rep.ok}
        lines += [f"s' = {rep.s_prime}", f"contraction: {rep.contraction_ok}",
                  f"degrees: {rep.degrees_ok}", f"min degree: {rep.min_degree_ok}",
                  f"diameter: {rep.diameter_ok}"] + [f"failure: {f}" for f in rep.failures]
        status = EXIT_OK if rep.ok else EXIT_INVALID
    _emit(args, obj, lines)
    return status


def cmd_witness(args) -> int:
    t, g = load_forest(args.pattern), load_graph(args.host)
    images = enumerate_images(t, g, args.cap)
    try:
        res = extract_witness(t, args.s, args.t, g, images)
    except ExtractionFailure as exc:
        _emit(args, {"found": False, "stage": exc.stage, "required": exc.required,
                     "available": exc.available, "message": str(exc)}, [f"no witness: {exc}"])
        return EXIT_DOMAIN
    obj = {"found": True, **res.to_json_obj()}
    lines = [f"subtree vertices: {res.subtree_vertices}", f"kernel preimage: {res.kernel_preimage}"]
    ids = res.subtree_vertices
    lines += [f"{label_str((k, ids[a], i))} -> {hv}" for (k, a, i), hv in res.embedding.items()]
    _emit(args, obj, lines)
    return EXIT_OK


def _load_system(args) -> ShortcutSystem:
    return ShortcutSystem.from_json_obj(load_graph(args.graph), load_json(args.paths))


def cmd_shortcut(args) -> int:
    sysm = _load_system(args)
    prof = validate_shortcut_system(sysm)
    gp = expand(sysm)
    obj = {"k": prof.max_length, "d_plain": prof.max_internal_load, "d_star": prof.max_m_set,
           "unique_endpoint_pairs": prof.unique_endpoint_pairs, "expanded": to_json_obj(gp)}
    _emit(args, obj, [f"k = {prof.max_length}", f"d (internal load) = {prof.max_internal_load}",
                      f"d* (|M_v|) = {prof.max_m_set}", f"G^P edges: {gp.edge_count}"])
    return EXIT_OK


def cmd_square(args) -> int:
    g = load_graph(args.graph)
    sq, sysm = build_low_degree_square(g, args.d)
    obj = {"graph": to_json_obj(sq), "system": sysm.to_json_obj(),
           "density": str(density(sq)), "base_density": str(density(g))}
    _emit(args, obj, [f"edges: {g.edge_count} -> {sq.edge_count}",
                      f"density: {density(g)} -> {density(sq)}"])
    return EXIT_OK


def cmd_transfer(args) -> int:
    sysm = _load_system(args)
    model = BipartiteModel.from_json_obj(load_json(args.model))
    out = transfer_model(sysm, model, args.s, args.t, args.p, args.q, args.k, args.d)
    _emit(args, out.to_json_obj(), [f"left: {list(out.left)}", f"right: {list(out.right)}"])
    return EXIT_OK


def cmd_find_model(args) -> int:
    g = load_graph(args.graph)
    res = find_pq_model(g, args.s, args.t, args.p, args.q, args.budget)
    obj = {"status": res.status, "nodes": res.nodes,
           "model": res.model.to_json_obj() if res.model else None}
    lines = [f"status: {res.status} ({res.nodes} nodes)"]
    if res.model:
        if not verify_model(g, res.model, args.s, args.t, args.p, args.q):
            raise ConsistencyError("search returned an invalid model")
        lines += [f"left: {list(res.model.left)}", f"right: {list(res.model.right)}"]
    _emit(args, obj, lines)
    return EXIT_DOMAIN if res.status == "unknown" else EXIT_OK


def cmd_flap(args) -> int:
    res = flap_number(load_graph(args.graph), args.s)
    wit = [{"a": sorted(x.a_vertices), "b": sorted(x.b_vertices)} for x in res.witness]
    _emit(args, {"value": res.value, "witness": wit},
          [f"f_{args.s} = {res.value}"] + [f"A={w['a']} B={w['b']}" for w in wit])
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        ns = [int(x) for x in args.n.split(",") if x]
    except ValueError:
        raise DomainError(f"bad --n list {args.n!r}") from None
    rep = run_fit(load_forest(args.forest), args.s, ns, args.tolerance, args.time_budget, args.threads)
    lines = ["n\tcopies"] + [f"{n}\t{c}" for n, c in rep.points]
    lines += [f"slope {rep.slope:.4f}, target {rep.target}, tolerance {rep.tolerance}"
              + (" (partial)" if rep.partial else "")]
    _emit(args, rep.to_json_obj(), lines)
    return EXIT_OK if rep.within_tolerance else EXIT_INVALID


# -- parser -------------------------------------------------------------------------

def _default_threads() -> int:
    raw = os.environ.get("TDL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for any randomized step")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default $TDL_THREADS or 1)")

    parser = _Parser(prog="tdl", description="Forest counting in sparse graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("alpha", cmd_alpha, "alpha_s of a forest")
    p.add_argument("--forest", required=True)
    p.add_argument("--s", type=int, required=True)

    for name, fn, help in (("count", cmd_count, "count images and copies"),
                           ("enumerate", cmd_enumerate, "list images")):
        p = add(name, fn, help)
        p.add_argument("--pattern", required=True)
        p.add_argument("--host", required=True)
        if name == "enumerate":
            p.add_argument("--cap", type=int, default=1000)

    p = add("construct", cmd_construct, "blow-up lower-bound instance")
    p.add_argument("--forest", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="write the graph JSON here")
    p.add_argument("--td-out", help="write the tree decomposition JSON here")

    p = add("verify-td", cmd_verify_td, "check a tree decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("--td", required=True)

    p = add("gadget", cmd_gadget, "build the gadget graph")
    p.add_argument("--h", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--verify", action="store_true")

    p = add("witness", cmd_witness, "extract a gadget witness from images")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--cap", type=int, default=10000, help="max images to enumerate")

    p = add("shortcut", cmd_shortcut, "profile and expand a shortcut system")
    p.add_argument("--graph", required=True)
    p.add_argument("--paths", required=True)

    p = add("square", cmd_square, "low-degree square G^(d)")
    p.add_argument("--graph", required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("transfer", cmd_transfer, "transfer a model from G^P to G")
    p.add_argument("--graph", required=True)
    p.add_argument("--paths", required=True)
    p.add_argument("--model", required=True)
    for flag in ("s", "t", "p", "q", "k", "d"):
        p.add_argument(f"--{flag}", type=int, required=True)

    p = add("find-model", cmd_find_model, "search for a (p,q)-model of K_{s,t}")
    p.add_argument("--graph", required=True)
    for flag in ("s", "t", "p", "q"):
        p.add_argument(f"--{flag}", type=int, required=True)
    p.add_argument("--budget", type=int, default=1_000_000)

    p = add("flap", cmd_flap, "flap number f_s")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)

    p = add("fit", cmd_fit, "fit the counting exponent")
    p.add_argument("--forest", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", required=True, help="comma-separated, increasing")
    p.add_argument("--tolerance", type=float, default=0.2)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    return parser


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    if args.threads is None:
        args.threads = _default_threads()
    random.seed(args.seed)
    try:
        return args.func(args)
    except (DomainError, ExtractionFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValidationError, ConsistencyError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TdlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(dispatch())
