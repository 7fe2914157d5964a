"""The ``wg`` command line tool.

Exit codes: 0 success, 1 unusable input (flags, file syntax), 2 verification
mismatch, 3 violated precondition.  Every output is a deterministic function
of the input file, the flags, and the seed; WG_MAX_N (default 100000) guards
against accidentally huge runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from .errors import (
    DegenerateInputError,
    InstanceParseError,
    NotConvexError,
    NotPermutationError,
    PerturbationFailedError,
    WitnessGraphError,
)
from .geometry import PointConfig, PositionClass
from .instances import (
    InstanceFile,
    gen_convex,
    gen_figure1,
    gen_grid,
    gen_necklace,
    gen_random,
    gen_square_rows,
    gen_uniqueness_gadget,
    _scalar_str,
)
from .order_graph import is_permutation_graph, normalize_edges, sg_realize
from .render import render_svg
from .square_graph import (
    _require_axis_distinct,
    sg_neg_certificate,
    sg_neg_graph,
    sg_pos_certificate,
    sg_pos_naive,
    sg_pos_pair_oracle,
    sg_pos_sensitive,
)
from .stabbing import (
    stab_disks,
    stab_disks_convex,
    stab_squares,
    verify_discrimination,
)
from .tree_realization import Tree, realize_tree
from .witness_delaunay import (
    _require_delaunay_class,
    empty_disk_through,
    wdg_naive,
    wdg_pair_oracle,
    wdg_sweep,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VERIFY = 2
EXIT_PRECONDITION = 3

_DEFAULT_MAX_N = 100000


class _CliError(Exception):
    """Failure with a chosen exit code; the message goes to stderr."""

    def __init__(self, exit_code: int, message: str):
        self.exit_code = exit_code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2); route flag mistakes to the parse exit code
    def error(self, message):
        raise _CliError(EXIT_PARSE, f"PARSE: {message}")


def _max_n() -> int:
    raw = os.environ.get("WG_MAX_N", "")
    if not raw:
        return _DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise _CliError(EXIT_PARSE, f"PARSE: WG_MAX_N is not an integer: {raw!r}")


def _guard_size(count: int) -> None:
    cap = _max_n()
    if count > cap:
        raise _CliError(
            EXIT_PRECONDITION,
            f"PRECONDITION: instance size {count} exceeds WG_MAX_N={cap}",
        )


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"PARSE: cannot read {path}: {exc}")


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_instance(path: str) -> InstanceFile:
    inst = InstanceFile.from_text(_read_text(path))
    _guard_size(len(inst.config.vertices) + len(inst.config.witnesses))
    return inst


# -- compute -------------------------------------------------------------


def _oracle_edges(cfg: PointConfig, kind: str) -> frozenset:
    P, W = cfg.vertices, cfg.witnesses
    n = len(P)
    if kind == "wdg":
        _require_delaunay_class(cfg)
        pair = lambda i, j: wdg_pair_oracle(P[i], P[j], W)
    elif kind == "sgpos":
        _require_axis_distinct(cfg)
        pair = lambda i, j: sg_pos_pair_oracle(P[i], P[j], W)
    else:
        return sg_neg_graph(cfg)
    return frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n) if pair(i, j)
    )


def _compute_edges(cfg: PointConfig, kind: str, algorithm: str) -> frozenset:
    if kind == "wdg":
        if algorithm == "naive":
            return wdg_naive(cfg).edges
        if algorithm == "sweep":
            return wdg_sweep(cfg).edges
    elif kind == "sgpos":
        if algorithm == "naive":
            return sg_pos_naive(cfg).edges
        if algorithm == "sweep":
            return sg_pos_sensitive(cfg).edges
    elif kind == "sgneg":
        if algorithm == "sweep":
            raise _CliError(EXIT_PARSE, "PARSE: sgneg has no sweep algorithm")
        if algorithm == "naive":
            return sg_neg_graph(cfg)
    return _oracle_edges(cfg, kind)


def _certificate_lines(cfg: PointConfig, kind: str, edges) -> list[str]:
    P, W = cfg.vertices, cfg.witnesses
    out = []
    for i, j in sorted(edges):
        if kind == "wdg":
            d = empty_disk_through(P[i], P[j], W)
            if d is None:
                raise WitnessGraphError(f"no certificate disk for edge {i} {j}")
            out.append(
                f"cert {i} {j} disk {_scalar_str(d.center.x)}"
                f" {_scalar_str(d.center.y)} {_scalar_str(d.radius_sq)}"
            )
        else:
            find = sg_pos_certificate if kind == "sgpos" else sg_neg_certificate
            s = find(P[i], P[j], W)
            if s is None:
                raise WitnessGraphError(f"no certificate square for edge {i} {j}")
            out.append(
                f"cert {i} {j} square {_scalar_str(s.corner.x)}"
                f" {_scalar_str(s.corner.y)} {_scalar_str(s.side)}"
            )
    return out


def _dot_text(name: str, n: int, edges) -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(n)]
    lines += [f"  {i} -- {j};" for i, j in sorted(edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_compute(args) -> int:
    inst = _load_instance(args.instance)
    cfg = inst.config
    edges = _compute_edges(cfg, args.graph, args.algorithm)
    if args.verify:
        want = _oracle_edges(cfg, args.graph)
        if edges != want:
            extra = sorted(edges - want)
            missing = sorted(want - edges)
            print(
                f"VERIFY: {args.graph} {args.algorithm} disagrees with the"
                f" pair oracle; extra={extra} missing={missing}",
                file=sys.stderr,
            )
            return EXIT_VERIFY
    if args.format == "dot":
        if args.certify:
            raise _CliError(EXIT_PARSE, "PARSE: --certify requires --format edges")
        text = _dot_text(args.graph, len(cfg.vertices), edges)
    else:
        lines = [f"{i} {j}" for i, j in sorted(edges)]
        if args.certify:
            lines += _certificate_lines(cfg, args.graph, edges)
        text = "\n".join(lines) + "\n" if lines else ""
    _write_out(text, args.out)
    return EXIT_OK


# -- generate ------------------------------------------------------------


def _parse_int_list(raw: str, flag: str) -> list[int]:
    if not raw.strip():
        return []
    try:
        return [int(tok) for tok in raw.replace(",", " ").split()]
    except ValueError:
        raise _CliError(EXIT_PARSE, f"PARSE: {flag} expects comma-separated integers")


def _cmd_generate(args) -> int:
    kind = args.kind
    need = lambda flag, val: val if val is not None else _missing(kind, flag)
    if kind == "random":
        n = need("--n", args.n)
        nw = args.witnesses if args.witnesses is not None else n
        _guard_size(n + nw)
        pc = PositionClass(args.position_class)
        inst = gen_random(n, nw, args.seed, position_class=pc, coord=args.coord)
    elif kind == "convex":
        n = need("--n", args.n)
        _guard_size(n)
        inst = gen_convex(n, args.seed, coord=args.coord)
    elif kind == "grid":
        rows = need("--rows", args.rows)
        cols = need("--cols", args.cols)
        _guard_size(rows * cols)
        inst = gen_grid(rows, cols, args.seed)
    elif kind == "necklace":
        n = need("--n", args.n)
        _guard_size(n)
        inst = gen_necklace(n)
    elif kind == "square_rows":
        t = need("--t", args.t)
        _guard_size(4 * t * t + t)
        inst = gen_square_rows(t)
    elif kind == "uniqueness_gadget":
        values = _parse_int_list(need("--values", args.values), "--values")
        if not values:
            raise _CliError(EXIT_PARSE, "PARSE: --values must name at least one integer")
        _guard_size(len(values))
        inst = gen_uniqueness_gadget(values)
    else:  # figure1
        inst = gen_figure1()
    _write_out(inst.to_text(), args.out)
    return EXIT_OK


def _missing(kind: str, flag: str):
    raise _CliError(EXIT_PARSE, f"PARSE: generate {kind} requires {flag}")


# -- stab ----------------------------------------------------------------

_STAB = {
    "disks": (stab_disks, "L2"),
    "disks_convex": (stab_disks_convex, "L2"),
    "squares": (stab_squares, "LINF"),
}


def _cmd_stab(args) -> int:
    inst = _load_instance(args.instance)
    build, metric_name = _STAB[args.metric]
    result = build(list(inst.config.vertices))
    verified = verify_discrimination(result, metric=metric_name)
    bound = _scalar_str(result.bound)
    print(
        f"witnesses: {result.witness_count} <= bound {bound};"
        f" verified: {'true' if verified else 'false'}"
    )
    if args.out:
        out = InstanceFile(
            result.config,
            metadata={"generator": f"stab_{args.metric}", "bound": bound},
        )
        out.save(args.out)
    return EXIT_OK if verified else EXIT_VERIFY


# -- realize -------------------------------------------------------------


def _load_graph_file(path: str) -> tuple[int, list[tuple[int, int]], int]:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise _CliError(EXIT_PARSE, f"PARSE: graph file is not valid JSON: {exc}")
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int):
        raise _CliError(EXIT_PARSE, "PARSE: graph file needs an integer field 'n'")
    n = doc["n"]
    root = doc.get("root", 0)
    edges = []
    for row in doc.get("edges", []):
        ok = (
            isinstance(row, (list, tuple))
            and len(row) == 2
            and all(isinstance(v, int) and 0 <= v < n for v in row)
            and row[0] != row[1]
        )
        if not ok:
            raise _CliError(EXIT_PARSE, f"PARSE: bad edge row {row!r}")
        edges.append((row[0], row[1]))
    if n < 1 or not isinstance(root, int) or not 0 <= root < n:
        raise _CliError(EXIT_PARSE, "PARSE: graph file has no valid vertex range")
    return n, edges, root


_TREE_DEPTH_CAP = 200


def _tree_height(t: Tree) -> int:
    def depth(v: int) -> int:
        d = 0
        while t.parent[v] is not None:
            v = t.parent[v]
            d += 1
        return d

    return max(depth(v) for v in range(t.n))


def _cmd_realize(args) -> int:
    n, edges, root = _load_graph_file(args.graph_file)
    _guard_size(n)
    if args.kind == "tree":
        try:
            tree = Tree.from_edges(n, edges, root)
        except ValueError as exc:
            raise _CliError(EXIT_PRECONDITION, f"PRECONDITION: {exc}")
        if _tree_height(tree) > _TREE_DEPTH_CAP:
            raise _CliError(
                EXIT_PRECONDITION,
                f"PRECONDITION: tree height exceeds {_TREE_DEPTH_CAP};"
                " coordinates would be astronomically large",
            )
        drawing = realize_tree(tree)
        vm = drawing.vertex_map
        want = frozenset(
            (vm[a], vm[b]) if vm[a] < vm[b] else (vm[b], vm[a]) for a, b in edges
        )
        got = wdg_naive(drawing.config).edges
        inst = InstanceFile(
            drawing.config,
            metadata={"generator": "realize_tree", "vertex_map": list(vm)},
        )
        label = "tree"
    else:
        cfg = sg_realize(n, edges)
        want = normalize_edges(edges)
        got = sg_pos_naive(cfg).edges
        inst = InstanceFile(cfg, metadata={"generator": "realize_permutation"})
        label = "permutation graph"
    if got != want:
        print(
            f"VERIFY: recomputed graph differs; extra={sorted(got - want)}"
            f" missing={sorted(want - got)}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    print(f"realized {label} on {n} vertices; verification: ok")
    if args.out:
        inst.save(args.out)
    return EXIT_OK


# -- render --------------------------------------------------------------


def _parse_edge_lines(text: str, n: int) -> list[tuple[int, int]]:
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise _CliError(EXIT_PARSE, f"PARSE: edge line {lineno}: {line!r}")
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < n and 0 <= j < n and i != j):
            raise _CliError(EXIT_PARSE, f"PARSE: edge line {lineno} out of range")
        edges.append((i, j) if i < j else (j, i))
    return edges


def _cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    if args.graph != "none" and args.edges:
        raise _CliError(EXIT_PARSE, "PARSE: pass either --graph or --edges, not both")
    if args.edges:
        edges = _parse_edge_lines(_read_text(args.edges), len(inst.config.vertices))
    elif args.graph != "none":
        edges = sorted(_compute_edges(inst.config, args.graph, "naive"))
    else:
        edges = []
    _write_out(render_svg(inst, edges), args.out)
    return EXIT_OK


# -- bench ---------------------------------------------------------------


def _cmd_bench(args) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes")
    seeds = _parse_int_list(args.seeds, "--seeds")
    if sizes:
        _guard_size(max(sizes))
    try:
        records = bench_mod.run_suite(args.suite, sizes, seeds, verify=args.verify)
    except ValueError as exc:
        raise _CliError(EXIT_PARSE, f"PARSE: {exc}")
    _write_out(bench_mod.to_csv(records), args.out)
    return EXIT_OK


# -- wiring --------------------------------------------------------------


def _build_parser() -> _Parser:
    top = _Parser(prog="wg", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute a witness graph of an instance")
    p.add_argument("instance", help="instance file, or - for stdin")
    p.add_argument("--graph", choices=["wdg", "sgpos", "sgneg"], default="wdg")
    p.add_argument(
        "--algorithm", choices=["naive", "sweep", "oracle"], default="naive"
    )
    p.add_argument("--verify", action="store_true", help="cross-check via the pair oracle")
    p.add_argument("--certify", action="store_true", help="emit per-edge certificates")
    p.add_argument("--format", choices=["edges", "dot"], default="edges")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("generate", help="write a deterministic instance file")
    p.add_argument(
        "kind",
        choices=[
            "random",
            "convex",
            "grid",
            "necklace",
            "square_rows",
            "uniqueness_gadget",
            "figure1",
        ],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--witnesses", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--position-class",
        choices=[PositionClass.GENERAL_DELAUNAY.value, PositionClass.GENERAL_AXIS.value],
        default=PositionClass.GENERAL_DELAUNAY.value,
    )
    p.add_argument("--coord", type=int, default=10**6)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--values", help="comma-separated integers for the gadget")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("stab", help="construct a discriminating witness set")
    p.add_argument("instance")
    p.add_argument("--metric", choices=sorted(_STAB), default="disks")
    p.add_argument("--out", help="write the stabbed instance here")
    p.set_defaults(handler=_cmd_stab)

    p = sub.add_parser("realize", help="draw a tree or permutation graph as a witness graph")
    p.add_argument("graph_file", help='JSON {"n": int, "edges": [[i, j], ...]}')
    p.add_argument("--kind", choices=["tree", "permutation"], default="tree")
    p.add_argument("--out", help="write the realized instance here")
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser("render", help="render an instance as SVG")
    p.add_argument("instance")
    p.add_argument("--graph", choices=["none", "wdg", "sgpos", "sgneg"], default="none")
    p.add_argument("--edges", help="file of 'i j' lines to draw instead")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("bench", help="run a benchmark suite, emit CSV")
    p.add_argument("--suite", choices=sorted(bench_mod.SUITES), required=True)
    p.add_argument("--sizes", default="", help="comma-separated sizes")
    p.add_argument("--seeds", default="0", help="comma-separated seeds")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_bench)

    return top


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return args.handler(args)
    except _CliError as exc:
        print(f"wg: {exc}", file=sys.stderr)
        return exc.exit_code
    except InstanceParseError as exc:
        print(f"wg: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        DegenerateInputError,
        NotConvexError,
        NotPermutationError,
        PerturbationFailedError,
    ) as exc:
        print(f"wg: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except WitnessGraphError as exc:
        print(f"wg: internal check failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"wg: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
