"""Command-line interface.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input or
usage error, 3 internal certificate.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Callable

import numpy as np

from . import formats as fmt
from .augmentation import realize
from .engine import EngineStats, list_color_elementary, omega_of, verify_coloring
from .errors import CertificateError, InvalidInput
from .gallai import is_elementary, verify_bicoloring
from .galvin import is_proper_edge_coloring, list_edge_color
from .generators import (
    GENERAL,
    MATCHING,
    PeculiarSpec,
    named_graph,
    peculiar_graph,
    random_bipartite_multigraph,
    random_presentation,
)
from .oracle import EXHAUSTIVE, SAMPLED, choosability_check, chromatic_number_exact, is_list_colorable_exact

OK, NEGATIVE, USAGE, CERTIFICATE = 0, 1, 2, 3
SEED_ENV = "ELEMENTUM_SEED"

log = logging.getLogger("elementum")


def _emit(doc: Any) -> None:
    sys.stdout.write(fmt.dumps(doc))


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        raise InvalidInput(f"--seed is required (or set {SEED_ENV})")
    try:
        return int(env)
    except ValueError as exc:
        raise InvalidInput(f"{SEED_ENV} must be an integer") from exc


def cmd_recognize(args: argparse.Namespace) -> int:
    g = fmt.graph_from_doc(fmt.read_document(args.graph))
    result = is_elementary(g)
    if args.dot:
        sys.stdout.write(fmt.to_dot(g, tags=result.bicoloring))
    elif result:
        _emit(fmt.bicoloring_to_doc(result.bicoloring))
    else:
        _emit(fmt.witness_to_doc(result.odd_gallai_cycle))
    return OK if result else NEGATIVE


def cmd_color(args: argparse.Namespace) -> int:
    p = fmt.presentation_from_doc(fmt.read_document(args.presentation))
    lists = fmt.lists_from_doc(fmt.read_document(args.lists))
    omega = omega_of(p)
    n = realize(p)[0].n
    short = [v for v in range(n) if len(lists.get(v, ())) < omega]
    if short:
        msg = f"lists of vertices {short} are missing or shorter than omega={omega}"
        _emit({"error": msg, "omega": omega})
        print(f"error: {msg}", file=sys.stderr)
        return USAGE
    stats = EngineStats()
    try:
        c = list_color_elementary(p, lists, stats)
    finally:
        if args.log_retries:
            print(json.dumps({"omega": omega, **stats.summary()}), file=sys.stderr)
    _emit(fmt.coloring_to_doc(c))
    return OK


def cmd_edge_color(args: argparse.Namespace) -> int:
    b = fmt.multigraph_from_doc(fmt.read_document(args.multigraph))
    lists = fmt.lists_from_doc(fmt.read_document(args.lists))
    _emit(fmt.coloring_to_doc(list_edge_color(b, lists)))
    return OK


def cmd_generate(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "multigraph":
        b = random_bipartite_multigraph(args.left, args.right, args.m, args.max_mult, _seed(args))
        _emit(fmt.multigraph_to_doc(b))
        return OK
    if kind == "presentation":
        seed = _seed(args)
        b = random_bipartite_multigraph(args.left, args.right, args.m, args.max_mult, seed)
        p = random_presentation(b, args.h, seed, args.shape, args.max_side)
        if args.dot:
            sys.stdout.write(fmt.to_dot(realize(p)[0]))
        else:
            _emit(fmt.presentation_to_doc(p))
        return OK
    if kind == "lists":
        if args.presentation:
            p = fmt.presentation_from_doc(fmt.read_document(args.presentation))
            n, size = realize(p)[0].n, omega_of(p)
        elif args.graph:
            g = fmt.graph_from_doc(fmt.read_document(args.graph))
            n, size = g.n, None
        else:
            raise InvalidInput("generate lists needs --presentation or --graph")
        size = args.size or size
        if size is None:
            raise InvalidInput("--size is required with --graph")
        universe = args.universe or 3 * size
        if universe < size:
            raise InvalidInput("universe smaller than list size")
        rng = np.random.default_rng(_seed(args))
        lists = {v: [int(c) for c in rng.choice(universe, size=size, replace=False)] for v in range(n)}
        _emit(fmt.lists_to_doc(lists))
        return OK
    if kind == "peculiar":
        spec = PeculiarSpec.smallest()
        if args.spec:
            doc = fmt.read_document(args.spec)
            try:
                spec = PeculiarSpec(
                    tuple(doc["a_sizes"]),
                    tuple(doc["b_sizes"]),
                    tuple(doc["q_sizes"]),
                    tuple(frozenset(tuple(pr) for pr in rem) for rem in doc["removed"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidInput(f"malformed peculiar spec: {exc!r}") from exc
        g = peculiar_graph(spec)
    else:
        g = named_graph(args.name)
    sys.stdout.write(fmt.to_dot(g) if args.dot else fmt.dumps(fmt.graph_to_doc(g)))
    return OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = fmt.graph_from_doc(fmt.read_document(args.graph))
    if args.what == "chromatic":
        _emit({"chromatic_number": chromatic_number_exact(g)})
        return OK
    if args.what == "list":
        c = is_list_colorable_exact(g, fmt.lists_from_doc(fmt.read_document(args.lists)))
        if c is None:
            _emit({"colorable": False})
            return NEGATIVE
        _emit({"colorable": True, **fmt.coloring_to_doc(c)})
        return OK
    seed = _seed(args) if args.mode == SAMPLED else 0
    verdict = choosability_check(
        g, args.k, args.universe, args.mode, args.trials, seed, jobs=args.jobs
    )
    doc = verdict.to_document()
    if verdict.mode == EXHAUSTIVE:
        doc["scope"] = f"within universe of {verdict.universe_size} colors"
    _emit(doc)
    return OK if verdict.holds else NEGATIVE


def cmd_verify(args: argparse.Namespace) -> int:
    if args.graph:
        g = fmt.graph_from_doc(fmt.read_document(args.graph))
    elif args.presentation:
        g = realize(fmt.presentation_from_doc(fmt.read_document(args.presentation)))[0]
    elif args.multigraph:
        g = None
        b = fmt.multigraph_from_doc(fmt.read_document(args.multigraph))
    else:
        raise InvalidInput("verify needs --graph, --presentation or --multigraph")
    if args.bicoloring:
        if g is None:
            raise InvalidInput("bicolorings are verified against --graph or --presentation")
        ok = verify_bicoloring(g, fmt.bicoloring_from_doc(fmt.read_document(args.bicoloring)))
    elif args.coloring:
        c = fmt.coloring_from_doc(fmt.read_document(args.coloring))
        lists = fmt.lists_from_doc(fmt.read_document(args.lists)) if args.lists else None
        if g is None:
            ok = is_proper_edge_coloring(b, c) and (
                lists is None or all(c[e] in lists.get(e, ()) for e in c)
            )
        else:
            if lists is None:
                lists = {v: [c[v]] for v in c}
            ok = verify_coloring(g, lists, c)
    else:
        ok = True  # the input document parsed and satisfied every invariant
    _emit({"valid": ok})
    return OK if ok else NEGATIVE


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep the format uniform
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="elementum", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("recognize", help="decide elementaryness of a graph file")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true", help="emit DOT with pink/green edges")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("color", help="list-color a presentation from omega-lists")
    p.add_argument("presentation")
    p.add_argument("lists")
    p.add_argument("--log-retries", action="store_true", help="print engine statistics on stderr")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("edge-color", help="list edge coloring of a bipartite multigraph")
    p.add_argument("multigraph")
    p.add_argument("lists")
    p.set_defaults(func=cmd_edge_color)

    p = sub.add_parser("generate", help="emit generated graphs, presentations or lists")
    p.add_argument("kind", choices=["multigraph", "presentation", "lists", "peculiar", "named"])
    p.add_argument("name", nargs="?", default="claw", help="graph name for 'named'")
    p.add_argument("--seed", type=int)
    p.add_argument("--left", type=int, default=4)
    p.add_argument("--right", type=int, default=4)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--max-mult", type=int, default=2)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--shape", choices=[GENERAL, MATCHING], default=GENERAL)
    p.add_argument("--max-side", type=int, default=3)
    p.add_argument("--presentation", help="presentation file (for 'lists')")
    p.add_argument("--graph", help="graph file (for 'lists')")
    p.add_argument("--size", type=int, help="list size (default omega of the presentation)")
    p.add_argument("--universe", type=int, help="color universe size (default 3 x list size)")
    p.add_argument("--spec", help="peculiar spec file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="brute-force checks")
    p.add_argument("what", choices=["chromatic", "list", "choosability"])
    p.add_argument("graph")
    p.add_argument("lists", nargs="?")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--universe", type=int)
    p.add_argument("--mode", choices=[EXHAUSTIVE, SAMPLED], default=EXHAUSTIVE)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a coloring or bicoloring document")
    p.add_argument("--graph")
    p.add_argument("--presentation")
    p.add_argument("--multigraph")
    p.add_argument("--lists")
    p.add_argument("--coloring")
    p.add_argument("--bicoloring")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.command == "oracle" and args.what == "list" and not args.lists:
        print("error: oracle list needs a lists file", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CertificateError as exc:
        _emit(exc.to_document())
        print(f"certificate: {exc}", file=sys.stderr)
        return CERTIFICATE


if __name__ == "__main__":
    sys.exit(main())
