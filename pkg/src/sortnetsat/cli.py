"""Command-line interface.

Subcommands: ``prefixes``, ``encode``, ``solve``, ``optimize``, ``verify``,
``render``, ``solver-build``.  The external solver command comes from
``--solver``, the SORTNETSAT_SOLVER environment variable, or the bundled
CDCL solver compiled on first use.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from sortnetsat import csolver
from sortnetsat.encoding import EncodeOptions, build_instance
from sortnetsat.networks import Network, is_sorting_network
from sortnetsat.render import render_svg
from sortnetsat.search import ResultCatalog, optimize, run_task, SearchTask
from sortnetsat.solving import SAT, SolverConfig, default_config, emit_dimacs, solve
from sortnetsat.words import (
    count_prefixes,
    format_sentence,
    generate_prefixes,
    parse_sentence,
)


def _encode_options(args: argparse.Namespace) -> EncodeOptions:
    return EncodeOptions(
        redundant_sorts=not args.no_redundant_sorts,
        last_layer=not args.no_last_layer,
        sigma1=not args.no_sigma1,
        sigma2=not args.no_sigma2,
        sigma3=not args.no_sigma3,
        only_unsorted=not args.all_inputs,
    ).with_prefix(args.prefix)


def _add_encode_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prefix", help="two-layer prefix sentence, e.g. '(012,12211221c)'")
    p.add_argument("--no-redundant-sorts", action="store_true")
    p.add_argument("--no-last-layer", action="store_true")
    p.add_argument("--no-sigma1", action="store_true")
    p.add_argument("--no-sigma2", action="store_true")
    p.add_argument("--no-sigma3", action="store_true")
    p.add_argument("--all-inputs", action="store_true", help="encode sorted inputs too")


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    if getattr(args, "backend", "auto") == "builtin":
        return SolverConfig("builtin", timeout=args.timeout)
    if getattr(args, "solver", None):
        return SolverConfig("external", args.solver, timeout=args.timeout)
    return default_config(timeout=args.timeout)


def cmd_prefixes(args: argparse.Namespace) -> int:
    if args.count_only:
        print(count_prefixes(args.n, args.variant))
        return 0
    ps = generate_prefixes(args.n, args.variant)
    for sentence in ps.sentences:
        print(format_sentence(sentence))
    print(f"count: {len(ps)} (n={ps.n}, variant={ps.variant})")
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    formula, vm = build_instance(args.n, args.d, args.s, _encode_options(args))
    text = emit_dimacs(formula)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {formula.num_vars} vars, {len(formula.clauses)} clauses to {args.output}")
    else:
        sys.stdout.write(text)
    if args.map:
        Path(args.map).write_text(vm.dump_map())
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    task = SearchTask(
        args.n, args.d, args.s,
        prefix=parse_sentence(args.prefix) if args.prefix else None,
        options=_encode_options(args).with_prefix(None),
        config=_solver_config(args),
    )
    catalog = ResultCatalog(args.catalog) if args.catalog else None
    res = run_task(task, catalog)
    print(f"status: {res.status} ({res.solver}, {res.wall_time:.2f}s)")
    if res.network is not None:
        trimmed = res.network.trimmed()
        print(f"witness: size={trimmed.size} depth={trimmed.depth}")
        if args.output:
            Path(args.output).write_text(res.network.to_json() + "\n")
            print(f"wrote witness to {args.output}")
    return 0 if res.status in (SAT, "UNSAT") else 3


def cmd_optimize(args: argparse.Namespace) -> int:
    if args.mode == "size" and args.depth is None:
        raise SystemExit("optimize --mode size needs --depth")
    if args.mode == "depth" and args.size is None:
        raise SystemExit("optimize --mode depth needs --size")
    mode = {
        "size": "min_size_given_depth",
        "depth": "min_depth_given_size",
        "pareto": "pareto",
    }[args.mode]
    catalog = ResultCatalog(args.catalog) if args.catalog else None
    claim = optimize(
        args.n,
        mode,
        depth=args.depth,
        size=args.size,
        config=_solver_config(args),
        prefixes=args.prefixes,
        catalog=catalog,
        jobs=args.jobs,
    )
    print(claim.summary())
    if claim.note:
        print(claim.note)
    for k, (net, prefix) in enumerate(zip(claim.witnesses, claim.witness_prefixes)):
        t = net.trimmed()
        tag = f" prefix={format_sentence(prefix)}" if prefix else ""
        print(f"witness[{k}]: size={t.size} depth={t.depth}{tag}")
    if args.save_witness and claim.witnesses:
        Path(args.save_witness).write_text(claim.witnesses[0].to_json() + "\n")
        print(f"wrote witness to {args.save_witness}")
    return 0 if claim.proven else 3


def cmd_verify(args: argparse.Namespace) -> int:
    net = Network.from_json(Path(args.network).read_text())
    ok = is_sorting_network(net)
    trimmed = net.trimmed()
    verdict = "is a sorting network" if ok else "does NOT sort"
    print(f"{args.network}: n={net.n} size={net.size} depth={trimmed.depth}: {verdict}")
    return 0 if ok else 1


def cmd_render(args: argparse.Namespace) -> int:
    net = Network.from_json(Path(args.network).read_text())
    svg = render_svg(net)
    Path(args.output).write_text(svg)
    print(f"wrote {args.output}")
    return 0


def cmd_solver_build(args: argparse.Namespace) -> int:
    path = csolver.ensure_built()
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortnetsat",
        description="size-depth optimal sorting networks via SAT",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prefixes", help="emit a complete two-layer prefix set")
    p.add_argument("n", type=int)
    p.add_argument("--variant", default="Tprime", choices=["H", "T", "Tprime", "G"])
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_prefixes)

    p = sub.add_parser("encode", help="emit the DIMACS CNF for (n, d, s)")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("s", type=int)
    _add_encode_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--map", help="write the variable map file here")
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("solve", help="build and solve one instance")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("s", type=int)
    _add_encode_flags(p)
    p.add_argument("--backend", default="auto", choices=["auto", "builtin"])
    p.add_argument("--solver", help="external solver command template with {cnf}")
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--catalog")
    p.add_argument("-o", "--output", help="write the witness network JSON here")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("optimize", help="prove an optimality claim")
    p.add_argument("n", type=int)
    p.add_argument("--mode", required=True, choices=["size", "depth", "pareto"])
    p.add_argument("--depth", type=int, help="fixed depth for --mode size")
    p.add_argument("--size", type=int, help="fixed size for --mode depth")
    p.add_argument("--prefixes", default="auto", choices=["auto", "none", "tprime"])
    p.add_argument("--backend", default="auto", choices=["auto", "builtin"])
    p.add_argument("--solver")
    p.add_argument("--timeout", type=float, default=3600.0)
    p.add_argument("--catalog")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--save-witness")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("verify", help="check a network JSON file sorts")
    p.add_argument("network")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", help="draw a network JSON file as SVG")
    p.add_argument("network")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("solver-build", help="compile the bundled CDCL solver")
    p.set_defaults(fn=cmd_solver_build)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
