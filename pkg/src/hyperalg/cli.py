"""``hyperalg`` command line.

Hypermatrix results go to stdout as HMX, structured results as JSON lines
(each embedding the run configuration), counts as bare integers. Errors are
reported on stderr as a single JSON object and a nonzero exit status.
"""
from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .fixtures import fixture_hash
from .graphs import Graph, distinguish, hypergraph_invariant, inflate, load_graph, random_graph
from .hypermatrix import Hypermatrix, dumps, load, random_hypermatrix
from .koenig import count_glued, count_k_complexes, count_tetrahedra
from .powers import (
    TernaryTree,
    ch_coefficients,
    default_max_degree,
    enumerate_powers_first,
    evaluate_tree,
    fuss_catalan_closed,
    fuss_catalan_count,
    power_sequence_second,
    span_dimension,
)
from .product import (
    Convention,
    bm_product,
    bm_product_naive,
    general_bm_product,
    general_bm_product_naive,
)
from .scalars import EXACT, Backend, default_prime

PUBLIC_COMMANDS = (
    "product", "power", "span", "ch", "tetra", "inflate",
    "invariant", "distinguish", "fuss-catalan", "bench",
)


@dataclass(frozen=True)
class RunConfig:
    backend: str
    convention: str
    semantics: str
    formulation: str
    seed: int
    out: str | None

    @classmethod
    def from_args(cls, args, backend: Backend | None) -> RunConfig:
        return cls(
            backend=backend.describe() if backend is not None else "auto",
            convention=args.convention,
            semantics=args.semantics,
            formulation=args.formulation,
            seed=args.seed,
            out=args.out,
        )


def _version() -> str:
    return f"hyperalg {__version__} (fixtures {fixture_hash()})"


def _backend(args, auto: bool = False) -> Backend | None:
    if args.backend is None:
        return None if auto else EXACT
    return Backend.parse(args.backend, args.prime if args.prime is not None else default_prime())


def _record(args, backend, payload: dict) -> str:
    payload = dict(payload)
    payload["config"] = asdict(RunConfig.from_args(args, backend))
    return json.dumps(payload, sort_keys=True)


def _read_hmx(path: str, backend: Backend | None = None) -> Hypermatrix:
    A = load(path)
    return A if backend is None else A.to_backend(backend)


def _read_graph(path: str, args) -> Graph:
    fmt = args.format
    if fmt is None:
        fmt = "graph6" if path.endswith((".g6", ".graph6")) else "edgelist"
    text = Path(path).read_text(encoding="ascii")
    return load_graph(text, fmt, undirected=args.undirected)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _parse_at(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected r,g,b")
    return tuple(int(p) for p in parts)


# -- subcommands -----------------------------------------------------------------


def cmd_product(args) -> str:
    backend = _backend(args)
    ops = [_read_hmx(p, backend) for p in args.operands]
    if args.background == "delta":
        out = bm_product(ops)
    else:
        out = general_bm_product(ops, _read_hmx(args.background, backend), args.convention)
    return dumps(out)


def cmd_power(args) -> str:
    A = _read_hmx(args.hypermatrix, _backend(args))
    if args.formulation == "first":
        if args.tree is None:
            raise ValueError("--tree is required for the first formulation")
        return dumps(evaluate_tree(A, TernaryTree.from_preorder(args.tree)))
    if args.index is None:
        raise ValueError("--index is required for the second formulation")
    return dumps(power_sequence_second(A, args.index + 1, args.convention)[-1])


def cmd_span(args) -> str:
    backend = _backend(args)
    A = _read_hmx(args.hypermatrix, backend)
    n = A.side
    if args.formulation == "first":
        degree = args.max_degree if args.max_degree is not None else default_max_degree(n)
        terms = [t for _, t in enumerate_powers_first(A, degree)]
        extra = {"max_degree": degree}
    else:
        count = args.terms if args.terms is not None else n**3
        terms = power_sequence_second(A, count, args.convention)
        extra = {}
    payload = {"dim": span_dimension(terms), "n": n, "terms": len(terms), **extra}
    return _record(args, backend, payload)


def cmd_ch(args) -> str:
    backend = _backend(args)
    A = _read_hmx(args.hypermatrix, backend)
    vec = ch_coefficients(A, args.formulation, backend, args.convention)
    return _record(args, backend, vec.as_record())


def cmd_tetra(args) -> str:
    A = _read_hmx(args.hypermatrix)
    if args.glued is not None or args.k is not None:
        if args.at is None:
            raise ValueError("--at r,g,b is required with --glued or --k")
        if args.k is not None:
            return str(count_k_complexes(A, args.k, *args.at))
        return str(count_glued(A, args.glued, *args.at))
    return str(count_tetrahedra(A))


def cmd_inflate(args) -> str:
    G = _read_graph(args.graph, args)
    return dumps(inflate(G, args.semantics))


def cmd_invariant(args) -> str:
    backend = _backend(args, auto=True)
    G = _read_graph(args.graph, args)
    rep = hypergraph_invariant(
        G, args.semantics, args.formulation, args.convention, backend, name=Path(args.graph).name
    )
    return _record(args, rep.backend, rep.as_record(timing=args.timings))


def cmd_distinguish(args) -> str:
    backend = _backend(args, auto=True)
    G1 = _read_graph(args.graph1, args)
    G2 = _read_graph(args.graph2, args)
    verdict, r1, r2 = distinguish(
        G1, G2,
        names=(Path(args.graph1).name, Path(args.graph2).name),
        semantics=args.semantics,
        formulation=args.formulation,
        convention=args.convention,
        backend=backend,
    )
    reports = [r.as_record(timing=args.timings) for r in (r1, r2) if r is not None]
    used = r1.backend if r1 is not None else backend
    return _record(args, used, {"verdict": verdict, "reports": reports})


def cmd_fuss_catalan(args) -> str:
    count = fuss_catalan_count(args.degree)
    if count != fuss_catalan_closed(args.degree):
        raise ArithmeticError("recurrence and closed form disagree")
    return str(count)


def _timed(fn, repetitions: int):
    times, result = [], None
    for _ in range(repetitions):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, {"min_s": min(times), "median_s": statistics.median(times)}


def cmd_bench(args) -> str:
    rng = random.Random(args.seed)
    backend = _backend(args)
    n = args.size
    A = random_hypermatrix(rng, (n, n, n), values=(-2, -1, 0, 1, 2), backend=backend)
    if args.workload == "product":
        B = random_hypermatrix(rng, (n, n, n), values=(-2, -1, 0, 1, 2), backend=backend)
        kernel, tk = _timed(lambda: (bm_product([A, A, A]), general_bm_product([A, A, A], B, args.convention)), args.repetitions)
        oracle, to = _timed(lambda: (bm_product_naive([A, A, A]), general_bm_product_naive([A, A, A], B, args.convention)), args.repetitions)
        if kernel != oracle:
            raise AssertionError("kernel and naive oracle disagree")
        payload = {"workload": "product", "size": n, "kernel": tk, "oracle": to, "identical": True}
    elif args.workload == "span":
        if args.hypermatrix is not None:
            A = _read_hmx(args.hypermatrix, backend)
            n = A.side
        terms, tg = _timed(lambda: power_sequence_second(A, n**3, args.convention), args.repetitions)
        dim, tr = _timed(lambda: span_dimension(terms), args.repetitions)
        payload = {"workload": "span", "size": n, "dim": dim, "generate": tg, "rank": tr}
    else:
        raise ValueError(f"unknown workload {args.workload!r}")
    return _record(args, backend, payload)


def cmd_gen(args) -> str:
    rng = random.Random(args.seed)
    if args.kind == "hypermatrix":
        return dumps(random_hypermatrix(rng, (args.size,) * 3))
    G = random_graph(rng, args.size, args.density, undirected=True)
    lines = [f"vertices {G.n}"] + [f"{u} {v}" for u, v in sorted(G.edges) if u < v]
    return "\n".join(lines) + "\n"


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "modp"), default=None,
                        help="scalar backend (default: exact; invariants pick by size)")
    common.add_argument("--prime", type=int, default=None, help="modulus for --backend modp")
    common.add_argument("--convention", choices=[c.value for c in Convention], default="literal")
    common.add_argument("--formulation", choices=("first", "second"), default="second")
    common.add_argument("--semantics", choices=("walks", "paths"), default="walks")
    common.add_argument("--paths-only", dest="semantics", action="store_const", const="paths")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write primary output here instead of stdout")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in reports")
    graph_opts = argparse.ArgumentParser(add_help=False)
    graph_opts.add_argument("--format", choices=("edgelist", "graph6"), default=None)
    graph_opts.add_argument("--undirected", action="store_true", help="symmetrize edge lists")

    parser = argparse.ArgumentParser(prog="hyperalg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True, metavar="{" + ",".join(PUBLIC_COMMANDS) + "}")

    p = sub.add_parser("product", parents=[common], help="BM product of HMX operands")
    p.add_argument("--background", default="delta", help="HMX file or 'delta'")
    p.add_argument("operands", nargs="+")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("power", parents=[common], help="a single power of a hypermatrix")
    p.add_argument("--tree", help="preorder string such as PAAPAAA (first formulation)")
    p.add_argument("--index", type=int, help="sequence index k of A^[k] (second formulation)")
    p.add_argument("hypermatrix")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("span", parents=[common], help="span dimension of a power family")
    p.add_argument("--terms", type=int, help="second formulation: number of terms (default n^3)")
    p.add_argument("--max-degree", type=int, help="first formulation: highest odd degree")
    p.add_argument("hypermatrix")
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("ch", parents=[common], help="Cayley-Hamilton coefficients")
    p.add_argument("hypermatrix")
    p.set_defaults(func=cmd_ch)

    p = sub.add_parser("tetra", parents=[common], help="tetrahedral complex counts")
    p.add_argument("--glued", choices=("first", "second", "third"))
    p.add_argument("--k", type=int, help="count k-tetrahedral complexes")
    p.add_argument("--at", type=_parse_at, help="r,g,b")
    p.add_argument("hypermatrix")
    p.set_defaults(func=cmd_tetra)

    p = sub.add_parser("inflate", parents=[common, graph_opts], help="path adjacency hypermatrix")
    p.add_argument("graph")
    p.set_defaults(func=cmd_inflate)

    p = sub.add_parser("invariant", parents=[common, graph_opts], help="inflation invariant report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("distinguish", parents=[common, graph_opts], help="compare two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("fuss-catalan", parents=[common], help="number of powers of an odd degree")
    p.add_argument("degree", type=int)
    p.set_defaults(func=cmd_fuss_catalan)

    p = sub.add_parser("bench", parents=[common], help="kernel vs naive timings")
    p.add_argument("--workload", choices=("product", "span"), default="product")
    p.add_argument("--size", type=_positive_int, default=3)
    p.add_argument("--repetitions", type=_positive_int, default=3)
    p.add_argument("--hypermatrix", default=None, help="span workload: HMX input instead of a random one")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", parents=[common])
    p.add_argument("kind", choices=("hypermatrix", "graph"))
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.func(args)
    except Exception as exc:  # every failure becomes one machine-readable line
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return 1
    if not output.endswith("\n"):
        output += "\n"
    if args.out:
        Path(args.out).write_text(output, encoding="ascii")
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
