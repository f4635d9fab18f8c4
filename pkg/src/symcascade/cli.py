"""Command-line interface.

Subcommands: ``gen`` (write a generated graph as edge-list text),
``simulate`` (Monte Carlo cascade estimates), ``exact`` (exact
probability matrix), ``matrix-estimate`` (random matrix-product
estimates), and ``verify symmetry|transpose|consistency``.

Reports are JSON by default; matrix-valued results can also be emitted
as bare CSV.  Exit status: 0 on success/pass, 1 on verification
failure, 2 on usage or input errors.  Floats are serialized with 17
significant digits so values round-trip exactly, and identical
configurations (including seeds) produce byte-identical output.
"""

import argparse
import math
import sys

from .cascade import estimate_activation_rows
from .exact import DEFAULT_EXACT_CAP, ExactCapError, exact_activation_matrix
from .graph import (
    UNIFORM_RANDOM,
    EdgeListError,
    Graph,
    generate_er_graph,
    parse_edge_list,
)
from .matrix import estimate_by_products
from .verify import check_exact_symmetry, check_mc_consistency, check_transpose_identity

__all__ = ["main", "entry"]

_USAGE_ERROR = 2
_VERIFY_FAILURE = 1


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value in report: {x}")
    return format(x, ".17g")


def _to_json(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_format_float(value))
    elif isinstance(value, str):
        out.append(
            '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
        )
    elif isinstance(value, dict):
        out.append("{")
        for k, v in value.items():
            if out[-1] != "{":
                out.append(", ")
            _to_json(str(k), out)
            out.append(": ")
            _to_json(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for v in value:
            if out[-1] != "[":
                out.append(", ")
            _to_json(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


def dumps_report(report: dict) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    out: list[str] = []
    _to_json(report, out)
    return "".join(out)


def _matrix_csv(rows: list[list[float]]) -> str:
    return "\n".join(",".join(_format_float(x) for x in row) for row in rows) + "\n"


def _cells_to_matrices(cells) -> tuple[list[list[float]], ...]:
    point = [[c.point for c in row] for row in cells]
    low = [[c.ci_low for c in row] for row in cells]
    high = [[c.ci_high for c in row] for row in cells]
    return point, low, high


def _parse_gen_spec(spec: str) -> tuple[int, float, float | str]:
    parts = spec.split(":")
    if len(parts) != 4 or parts[0] != "er":
        raise ValueError(
            f"bad generator spec {spec!r}; expected er:<n>:<density>:<p|uniform>"
        )
    n = int(parts[1])
    density = float(parts[2])
    prob: float | str
    if parts[3] in ("uniform", UNIFORM_RANDOM):
        prob = UNIFORM_RANDOM
    else:
        prob = float(parts[3])
    return n, density, prob


def _load_graph(args) -> Graph:
    if args.graph is not None:
        with open(args.graph, "r", encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    n, density, prob = _parse_gen_spec(args.gen)
    return generate_er_graph(n, density, prob, args.seed)


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="edge-list file path")
    source.add_argument(
        "--gen", help="generator spec er:<n>:<density>:<p|uniform>", metavar="SPEC"
    )


def _add_common(parser: argparse.ArgumentParser, trials_help: str) -> None:
    parser.add_argument("--n", type=int, required=True, help="number of steps")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--trials", type=int, default=10000, help=trials_help)
    parser.add_argument(
        "--confidence", type=float, default=0.95, help="confidence level"
    )
    parser.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcascade",
        description="Cascade simulation and activation-probability symmetry checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph and print its edge list")
    p_gen.add_argument("--gen", required=True, metavar="SPEC")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", help="write to file instead of stdout")

    p_sim = sub.add_parser("simulate", help="Monte Carlo cascade estimates")
    _add_graph_source(p_sim)
    _add_common(p_sim, "cascade trials per seed row")

    p_exact = sub.add_parser("exact", help="exact probability matrix")
    _add_graph_source(p_exact)
    p_exact.add_argument("--n", type=int, required=True)
    p_exact.add_argument("--seed", type=int, default=0)
    p_exact.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP)
    p_exact.add_argument("--format", choices=("json", "csv"), default="json")

    p_mat = sub.add_parser(
        "matrix-estimate", help="estimates from random matrix products"
    )
    _add_graph_source(p_mat)
    _add_common(p_mat, "matrix chain samples")

    p_verify = sub.add_parser("verify", help="symmetry verification")
    v_sub = p_verify.add_subparsers(dest="check", required=True)

    v_sym = v_sub.add_parser("symmetry", help="exact symmetry of the matrix")
    _add_graph_source(v_sym)
    v_sym.add_argument("--n", type=int, required=True)
    v_sym.add_argument("--seed", type=int, default=0)
    v_sym.add_argument("--tol", type=float, default=1e-9)
    v_sym.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP)
    v_sym.add_argument("--format", choices=("json",), default="json")

    v_tr = v_sub.add_parser("transpose", help="per-sample chain reversal identity")
    _add_graph_source(v_tr)
    v_tr.add_argument("--n", type=int, required=True)
    v_tr.add_argument("--seed", type=int, default=0)
    v_tr.add_argument("--trials", type=int, default=10000, help="chain samples")
    v_tr.add_argument("--format", choices=("json",), default="json")

    v_cons = v_sub.add_parser("consistency", help="Monte Carlo vs exact values")
    _add_graph_source(v_cons)
    v_cons.add_argument("--n", type=int, required=True)
    v_cons.add_argument("--seed", type=int, default=0)
    v_cons.add_argument("--trials", type=int, default=10000)
    v_cons.add_argument("--confidence", type=float, default=0.99)
    v_cons.add_argument("--exact-cap", type=int, default=DEFAULT_EXACT_CAP)
    v_cons.add_argument(
        "--min-coverage",
        type=float,
        default=0.95,
        help="required CI coverage fraction for each estimator",
    )
    v_cons.add_argument("--format", choices=("json",), default="json")

    return parser


def _report_shell(command: str, g: Graph, n: int, seed: int) -> dict:
    return {
        "command": command,
        "graph": {"nodes": g.node_count, "edges": g.edge_count},
        "n": n,
        "seed": seed,
        "results": None,
        "pass": None,
    }


def _emit(args, report: dict, csv_matrix: list[list[float]] | None, out) -> None:
    if getattr(args, "format", "json") == "csv":
        out.write(_matrix_csv(csv_matrix))
    else:
        out.write(dumps_report(report) + "\n")


def _run_gen(args, out) -> int:
    n, density, prob = _parse_gen_spec(args.gen)
    g = generate_er_graph(n, density, prob, args.seed)
    text = g.serialize()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _run_simulate(args, out) -> int:
    g = _load_graph(args)
    cells = estimate_activation_rows(g, args.n, args.trials, args.seed, args.confidence)
    point, low, high = _cells_to_matrices(cells)
    report = _report_shell("simulate", g, args.n, args.seed)
    report["results"] = {
        "trials": args.trials,
        "confidence": args.confidence,
        "point": point,
        "ci_low": low,
        "ci_high": high,
    }
    _emit(args, report, point, out)
    return 0


def _run_exact(args, out) -> int:
    g = _load_graph(args)
    matrix = exact_activation_matrix(g, args.n, exact_cap=args.exact_cap)
    values = [[float(x) for x in row] for row in matrix.values]
    report = _report_shell("exact", g, args.n, args.seed)
    report["results"] = {"exact_cap": args.exact_cap, "values": values}
    _emit(args, report, values, out)
    return 0


def _run_matrix_estimate(args, out) -> int:
    g = _load_graph(args)
    cells = estimate_by_products(g, args.n, args.trials, args.seed, args.confidence)
    point, low, high = _cells_to_matrices(cells)
    report = _report_shell("matrix-estimate", g, args.n, args.seed)
    report["results"] = {
        "samples": args.trials,
        "confidence": args.confidence,
        "order": "forward",
        "point": point,
        "ci_low": low,
        "ci_high": high,
    }
    _emit(args, report, point, out)
    return 0


def _run_verify(args, out) -> int:
    g = _load_graph(args)
    if args.check == "symmetry":
        rep = check_exact_symmetry(g, args.n, tol=args.tol, exact_cap=args.exact_cap)
        results = rep.to_dict()
        passed = rep.passed
        command = "verify symmetry"
    elif args.check == "transpose":
        rep = check_transpose_identity(g, args.n, args.trials, args.seed)
        results = rep.to_dict()
        passed = rep.passed
        command = "verify transpose"
    else:
        rep = check_mc_consistency(
            g,
            args.n,
            args.trials,
            args.confidence,
            args.seed,
            exact_cap=args.exact_cap,
        )
        results = rep.to_dict()
        results["min_coverage"] = args.min_coverage
        passed = (
            rep.coverage_cascade >= args.min_coverage
            and rep.coverage_matrix >= args.min_coverage
        )
        command = "verify consistency"
    report = _report_shell(command, g, args.n, args.seed)
    report["results"] = results
    report["pass"] = passed
    _emit(args, report, None, out)
    return 0 if passed else _VERIFY_FAILURE


def main(argv: list[str] | None = None, out=None) -> int:
    """Run the CLI; returns the process exit status."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        if args.command == "gen":
            return _run_gen(args, out)
        if args.command == "simulate":
            return _run_simulate(args, out)
        if args.command == "exact":
            return _run_exact(args, out)
        if args.command == "matrix-estimate":
            return _run_matrix_estimate(args, out)
        return _run_verify(args, out)
    except (EdgeListError, ExactCapError) as exc:
        print(f"symcascade: error: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    except (ValueError, OSError) as exc:
        print(f"symcascade: error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
