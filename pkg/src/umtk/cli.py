"""Command-line front end.

Every subcommand reads JSON space/tree documents and writes JSON or DOT to
stdout (or ``--out``). Decision subcommands put the verdict in the exit code
so they compose in shell pipelines: 0 = positive / success, 1 = negative,
2 = input or usage error, 3 = internal verification failure. Witness output
goes to stdout only; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .balls import (
    ball_preserving_bijection,
    ballean_to_json,
    enumerate_balls,
    hasse_diagram,
    hasse_digraph_iso,
    hasse_iso_to_json,
    hasse_to_dot,
    hasse_to_json,
)
from .classify import classify_space
from .diametrical import (
    diametrical_graph,
    graph_to_dot,
    multipartite_parts,
    partition_to_json,
)
from .errors import (
    FormatError,
    NotIsomorphicError,
    NotMultipartiteError,
    NotUltrametricError,
    UmtkError,
    VerificationFailedError,
)
from .generators import GenConfig, random_semimetric, random_ultrametric
from .reptree import (
    RepTree,
    build_tree,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    validate_tree,
)
from .similarity import (
    decide_isometry,
    decide_weak_similarity,
    weak_sim_witness_to_json,
)
from .spaces import (
    FiniteSemimetricSpace,
    diameter,
    format_rational,
    is_ultrametric,
    parse_rational,
    space_from_json,
    space_to_text,
    spectrum,
)
from .suites import run_all
from .treecanon import rooted_tree_iso_map


def _use_color() -> bool:
    mode = os.environ.get("UMTK_COLOR", "auto")
    if mode == "never":
        return False
    return sys.stderr.isatty()


def _diag(message: str) -> None:
    prefix = "\x1b[31merror:\x1b[0m" if _use_color() else "error:"
    print(f"{prefix} {message}", file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_json(doc: object, out: str | None) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", out)


def _load_json(path: str) -> object:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def _load_space(path: str) -> FiniteSemimetricSpace:
    return space_from_json(_load_json(path))


def _load_tree(path: str, labeled: bool) -> RepTree:
    """Space documents yield their representing tree; raw tree documents are
    taken as-is (and must carry labels when ``labeled``)."""
    doc = _load_json(path)
    if isinstance(doc, dict) and "points" in doc:
        return build_tree(space_from_json(doc))
    tree = tree_from_json(doc)
    if labeled:
        validate_tree(tree, labeled=True)
    return tree


def _node_paths(tree: RepTree) -> dict[int, str]:
    paths: dict[int, str] = {}

    def walk(node, path: str) -> None:
        paths[id(node)] = path
        for k, child in enumerate(node.children):
            walk(child, f"{path}.{k}" if path else str(k))

    walk(tree.root, "")
    return paths


# --- subcommand handlers --------------------------------------------------


def _cmd_validate(args) -> int:
    space = _load_space(args.space)
    _emit_json(
        {
            "valid": True,
            "points": len(space),
            "ultrametric": is_ultrametric(space),
            "diameter": format_rational(diameter(space)),
        },
        args.out,
    )
    return 0


def _cmd_spectrum(args) -> int:
    space = _load_space(args.space)
    _emit_json({"spectrum": [format_rational(v) for v in spectrum(space)]}, args.out)
    return 0


def _cmd_diametric(args) -> int:
    space = _load_space(args.space)
    graph = diametrical_graph(space)
    if args.dot:
        _emit(graph_to_dot(graph), args.out)
        return 0
    try:
        parts = multipartite_parts(graph)
    except NotMultipartiteError as exc:
        _diag(f"NotMultipartite: {exc}")
        return 1
    _emit_json(partition_to_json(parts), args.out)
    return 0


def _cmd_tree(args) -> int:
    tree = build_tree(_load_space(args.space))
    if args.dot:
        _emit(tree_to_dot(tree), args.out)
    else:
        _emit_json(tree_to_json(tree), args.out)
    return 0


def _cmd_tree_iso(args) -> int:
    t1 = _load_tree(args.a, args.labeled)
    t2 = _load_tree(args.b, args.labeled)
    try:
        psi = rooted_tree_iso_map(t1, t2, respect_labels=args.labeled)
    except NotIsomorphicError:
        _diag("trees are not isomorphic")
        return 1
    p1 = _node_paths(t1)
    p2 = _node_paths(t2)
    _emit_json(
        {
            "isomorphic": True,
            "labeled": args.labeled,
            "map": {p1[id(a)]: p2[id(b)] for a, b in psi.items()},
        },
        args.out,
    )
    return 0


def _cmd_isometric(args) -> int:
    x = _load_space(args.a)
    y = _load_space(args.b)
    witness = decide_isometry(x, y)
    if witness is None:
        _diag("spaces are not isometric")
        return 1
    _emit_json({"phi": {p: witness.phi[p] for p in x.points}}, args.out)
    return 0


def _cmd_weaksim(args) -> int:
    x = _load_space(args.a)
    y = _load_space(args.b)
    witness = decide_weak_similarity(x, y)
    if witness is None:
        _diag("spaces are not weakly similar")
        return 1
    _emit_json(weak_sim_witness_to_json(witness, x.points), args.out)
    return 0


def _cmd_classify(args) -> int:
    _emit_json(classify_space(_load_space(args.space)).to_json(), args.out)
    return 0


def _cmd_ballean(args) -> int:
    _emit_json(ballean_to_json(enumerate_balls(_load_space(args.space))), args.out)
    return 0


def _cmd_hasse(args) -> int:
    diagram = hasse_diagram(enumerate_balls(_load_space(args.space)))
    if args.dot:
        _emit(hasse_to_dot(diagram), args.out)
    else:
        _emit_json(hasse_to_json(diagram), args.out)
    return 0


def _cmd_hasse_iso(args) -> int:
    hx = hasse_diagram(enumerate_balls(_load_space(args.a)))
    hy = hasse_diagram(enumerate_balls(_load_space(args.b)))
    iso = hasse_digraph_iso(hx, hy)
    if iso is None:
        _diag("Hasse diagrams are not isomorphic")
        return 1
    _emit_json(hasse_iso_to_json(iso), args.out)
    return 0


def _cmd_ballpreserving(args) -> int:
    x = _load_space(args.a)
    y = _load_space(args.b)
    mapping = ball_preserving_bijection(x, y)
    if mapping is None:
        _diag("no ball-preserving bijection exists")
        return 1
    _emit_json({"phi": {p: mapping[p] for p in x.points}}, args.out)
    return 0


def _cmd_gen(args) -> int:
    pool = tuple(parse_rational(part) for part in args.pool.split(","))
    force = None if args.force_class == "any" else args.force_class
    config = GenConfig(seed=args.seed, n=args.n, spectrum_pool=pool, force_class=force)
    if args.semimetric:
        space = random_semimetric(config)
    else:
        space = random_ultrametric(config)
    _emit(space_to_text(space), args.out)
    return 0


def _cmd_check(args) -> int:
    if args.trials == "default":
        trials: int | None = None
    else:
        try:
            trials = int(args.trials)
        except ValueError:
            _diag(f"--trials expects an integer or 'default', got {args.trials!r}")
            return 2
        if trials < 1:
            _diag("--trials must be positive")
            return 2
    results = run_all(seed=args.seed, trials=trials, max_n=args.max_n)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    total = sum(r.trials for r in results)
    if failed:
        print(f"{len(failed)} of {len(results)} suites FAILED ({total} trials)")
        return 3
    print(f"all {len(results)} suites passed ({total} trials)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umtk",
        description="Structural equivalences of finite semimetric and ultrametric spaces.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, *, spaces=0, dot=False):
        sub = subs.add_parser(name, help=help_text)
        if spaces == 1:
            sub.add_argument("space", help="space document (JSON)")
        elif spaces == 2:
            sub.add_argument("a", help="first document (JSON)")
            sub.add_argument("b", help="second document (JSON)")
        if dot:
            sub.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
        sub.add_argument("--out", help="write output to this file instead of stdout")
        sub.set_defaults(handler=handler)
        return sub

    add("validate", _cmd_validate, "check a space document and report basic facts", spaces=1)
    add("spectrum", _cmd_spectrum, "list the distance values of a space", spaces=1)
    add("diametric", _cmd_diametric, "multipartite parts of the diametrical graph", spaces=1, dot=True)
    add("tree", _cmd_tree, "representing tree of an ultrametric space", spaces=1, dot=True)
    tree_iso = add("tree-iso", _cmd_tree_iso, "rooted tree isomorphism (accepts space or tree documents)", spaces=2)
    tree_iso.add_argument("--labeled", action="store_true", help="labels must match exactly")
    add("isometric", _cmd_isometric, "decide isometry of two spaces", spaces=2)
    add("weaksim", _cmd_weaksim, "decide weak similarity of two spaces", spaces=2)
    add("classify", _cmd_classify, "tree-structural class report of an ultrametric space", spaces=1)
    add("ballean", _cmd_ballean, "list all balls of a space", spaces=1)
    add("hasse", _cmd_hasse, "Hasse diagram of the ballean under inclusion", spaces=1, dot=True)
    add("hasse-iso", _cmd_hasse_iso, "decide Hasse diagram isomorphism", spaces=2)
    add("ballpreserving", _cmd_ballpreserving, "decide existence of a ball-preserving bijection", spaces=2)

    gen = add("gen", _cmd_gen, "generate a random space document")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, default=5, help="number of points")
    gen.add_argument("--pool", default="1,2,3,4,5,6", help="comma-separated distance pool")
    gen.add_argument(
        "--class",
        dest="force_class",
        choices=("R", "Rtilde", "D", "T", "any"),
        default="any",
        help="force a tree-structural class",
    )
    gen.add_argument("--semimetric", action="store_true", help="drop the ultrametric constraint")

    check = subs.add_parser("check", help="run the self-checking property suites")
    check.add_argument("--trials", default="default", help="trials per suite, or 'default'")
    check.add_argument("--max-n", type=int, default=None, help="cap the point count")
    check.add_argument("--seed", type=int, default=0)
    check.set_defaults(handler=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (None, 0):
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except NotUltrametricError as exc:
        _diag(f"NotUltrametric: {exc}")
        return 2
    except VerificationFailedError as exc:
        _diag(f"VerificationFailed: {exc}")
        return 3
    except (FormatError, UmtkError) as exc:
        _diag(f"{type(exc).__name__}: {exc}")
        return 2
    except json.JSONDecodeError as exc:
        _diag(f"invalid JSON: {exc}")
        return 2
    except OSError as exc:
        _diag(str(exc))
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
