"""Command line interface: ``crossflip <command> ...``."""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import constructions, fixtures
from .balance import Coloring, find_coloring, format_coloring, is_proper, parse_coloring
from .core import (Complex, barycentric_subdivision, cross_polytope_boundary, is_pseudomanifold,
                   standard_sphere)
from .errors import CrossflipError
from .flips import flip_catalog
from .formats import format_facets, format_report, load_edges, parse_facets
from .search import explore_flip_graph, reduce
from .topology import (betti_f2, classify_surface, is_normal_pseudomanifold, singular_faces,
                       verify_shelling)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _read_input(source: str) -> tuple[Complex, list[frozenset], fixtures.Fixture | None]:
    if source.startswith("fixture:"):
        fx = fixtures.get(source.split(":", 1)[1])
        cx, order = fx.load_with_order()
        return cx, order, fx
    if source == "-":
        cx, order = parse_facets(sys.stdin.read())
    else:
        cx, order = parse_facets(Path(source).read_text())
    return cx, order, None


def _read_edges(source: str) -> list[frozenset]:
    if source.startswith("fixture:"):
        return fixtures.get(source.split(":", 1)[1]).knot_edges()
    return load_edges(source)


def _read_coloring(path: str | None, cx: Complex) -> Coloring | None:
    if path is None:
        return None
    return parse_coloring(Path(path).read_text().splitlines(), cx.dim + 1)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- reduce ------------------------------------------------------------------------

def _reduce_one(job):
    cx, coloring, budget, seed, protect, burst, target, time_limit, debug = job
    state = reduce(cx, coloring, budget=budget, seed=seed, constraints=protect,
                   upflip_burst=burst, target_f0=target, time_limit=time_limit, debug=debug)
    return seed, state.best, state.best_coloring, state.complex, state.log_text(), state.steps


def cmd_reduce(args) -> int:
    cx, _, _ = _read_input(args.input)
    coloring = _read_coloring(args.coloring, cx)
    protect = _read_edges(args.protect) if args.protect else []
    seeds = [args.seed + i for i in range(max(1, args.restarts))]
    jobs = [(cx, coloring, args.budget, s, protect, args.upflip_burst, args.target_f0,
             args.time_limit, args.debug) for s in seeds]
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            runs = list(pool.map(_reduce_one, jobs))
    else:
        runs = [_reduce_one(j) for j in jobs]
    seed, best, best_col, final, log, steps = min(runs, key=lambda r: (r[1].num_vertices, r[0]))
    if args.out:
        Path(args.out).write_text(format_facets(best))
    if args.coloring_out:
        Path(args.coloring_out).write_text(format_coloring(best_col))
    if args.log:
        Path(args.log).write_text(log)
    report = format_report([
        ("input_f_vector", cx.f_vector),
        ("seed", seed),
        ("steps", steps),
        ("best_f_vector", best.f_vector),
        ("final_f_vector", final.f_vector),
        ("best_betti_f2", betti_f2(best).betti),
        ("input_betti_f2", betti_f2(cx).betti),
    ])
    _emit(report, None)
    if args.report:
        Path(args.report).write_text(report)
    return EXIT_OK


# -- flipgraph ---------------------------------------------------------------------

def cmd_flipgraph(args) -> int:
    cx, _, _ = _read_input(args.input)
    coloring = _read_coloring(args.coloring, cx)
    graph = explore_flip_graph(cx, coloring, f0_cap=args.cap, sufficient_only=args.sufficient,
                               max_nodes=args.max_nodes)
    if args.dot:
        _emit(graph.to_dot(), args.dot)
    ranks = graph.ranks()
    items = [("nodes", len(graph.nodes)), ("edges", len(graph.edges))]
    items += [(f"rank_{f0}", len(keys)) for f0, keys in ranks.items()]
    if args.dot != "-":
        _emit(format_report(items), None)
    return EXIT_OK


# -- check -------------------------------------------------------------------------

def check_report(cx: Complex, coloring: Coloring | None = None, order=None,
                 protect=None, fixture: fixtures.Fixture | None = None) -> tuple[list, bool]:
    """Items for the ``check`` report and whether every requested check passed."""
    ok = True
    items: list = [("f_vector", cx.f_vector), ("dim", cx.dim), ("pure", cx.is_pure)]
    if coloring is None and cx.is_pure:
        coloring = find_coloring(cx)
        balanced = coloring is not None
    else:
        balanced = coloring is not None and is_proper(cx, coloring)
        if not balanced:
            ok = False
    items.append(("balanced", balanced))
    if balanced:
        items.append(("class_sizes", tuple(sorted(coloring.class_sizes))))
    pm = cx.is_pure and is_pseudomanifold(cx)
    items.append(("pseudomanifold", pm))
    items.append(("normal_pseudomanifold", pm and is_normal_pseudomanifold(cx)))
    betti = betti_f2(cx)
    items.append(("betti_f2", betti.betti))
    items.append(("euler", betti.euler))
    if cx.dim == 2 and cx.is_pure:
        edges, verts = singular_faces(cx)
        items.append(("singular_edges", len(edges)))
        items.append(("singular_vertices", len(verts)))
        if not edges and not verts:
            try:
                s = classify_surface(cx)
                items.append(("surface", s.name))
                items.append(("orientable", s.orientable))
            except CrossflipError:
                items.append(("surface", "none"))
    if order is not None:
        valid = verify_shelling(cx, order)
        items.append(("shelling", "valid" if valid else "invalid"))
        ok &= valid
    if protect is not None:
        present = all(cx.contains_face(e) for e in protect)
        items.append(("protected_edges", len(protect)))
        items.append(("protected_present", present))
        ok &= present
    if fixture is not None:
        match = (cx.f_vector == fixture.f_vector and betti.betti == fixture.betti)
        items.append(("fixture_expected_match", match))
        ok &= match
    return items, ok


def cmd_check(args) -> int:
    cx, order, fx = _read_input(args.input)
    coloring = _read_coloring(args.coloring, cx)
    shelling = None
    if args.shelling:
        if args.shelling == "input":
            shelling = order
        else:
            shelling = _read_input(args.shelling)[1]
    protect = _read_edges(args.protect) if args.protect else None
    items, ok = check_report(cx, coloring, shelling, protect, fx)
    _emit(format_report(items), None)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# -- fvector / subdivide / construct / catalog -------------------------------------------

def cmd_fvector(args) -> int:
    cx, _, _ = _read_input(args.input)
    for _ in range(args.subdivide):
        cx = barycentric_subdivision(cx)
    _emit(format_report([("f_vector", cx.f_vector)]), None)
    return EXIT_OK


def cmd_subdivide(args) -> int:
    cx, _, _ = _read_input(args.input)
    for _ in range(args.times):
        cx = barycentric_subdivision(cx)
    _emit(format_facets(cx), args.out)
    return EXIT_OK


def build_recipe(recipe: str, base: Complex | None = None) -> tuple[Complex, dict[str, int]]:
    parts = recipe.split(":")
    head = parts[0]
    if head == "cross-polytope" and len(parts) == 2:
        return cross_polytope_boundary(int(parts[1])), {}
    if head == "simplex" and len(parts) == 2:
        return standard_sphere(int(parts[1])), {}
    if head == "stacked" and len(parts) == 3:
        d, n = int(parts[1]), int(parts[2])
        if n % d or n // d < 2:
            raise ValueError("stacked:d:n needs n a multiple of d with n >= 2d")
        return constructions.stacked_cross_polytopal_sphere(d, n // d - 1)[0], {}
    if head == "s2xs1-12":
        cx, _, names = constructions.s2_twisted_s1_12()
        return cx, names
    if head == "s2xs1-16":
        cx, _, names = constructions.s2_times_s1_16()
        return cx, names
    if head == "bundle2" and len(parts) == 2:
        cx, _, names = constructions.build_bundle_double(parts[1])
        return cx, names
    if head == "rp2-6":
        return constructions.rp2_6(), {}
    if head == "torus-9":
        return constructions.torus_9()[0], {}
    if head == "suspend" and len(parts) == 2:
        if base is None:
            raise ValueError("suspend:k needs --input")
        return constructions.suspension_tower(base, int(parts[1])), {}
    raise ValueError(f"unknown recipe {recipe!r}")


RECIPES = ("cross-polytope:d", "simplex:d", "stacked:d:n", "s2xs1-12", "s2xs1-16",
           "bundle2:twisted", "bundle2:orientable", "rp2-6", "torus-9", "suspend:k")


def cmd_construct(args) -> int:
    base = _read_input(args.input)[0] if args.input else None
    cx, names = build_recipe(args.recipe, base)
    header = [f"recipe {args.recipe}"]
    header += [f"map {n} = {v}" for n, v in sorted(names.items(), key=lambda kv: (kv[1], kv[0]))]
    _emit(format_facets(cx, header=header), args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    lines = []
    for fx in fixtures.catalog():
        items = [(f"{fx.name}.file", fx.filename), (f"{fx.name}.f_vector", fx.f_vector),
                 (f"{fx.name}.betti_f2", fx.betti), (f"{fx.name}.shelling_order", fx.shelling)]
        if fx.knot_file:
            items.append((f"{fx.name}.protect", fx.knot_file))
        items.append((f"{fx.name}.provenance", fx.provenance))
        lines.append(format_report(items))
    if args.flips is not None:
        for t in flip_catalog(args.flips):
            lines.append(format_report([
                (f"flip.{t.template_id}", f"{t.kind} reverse={t.reverse_id} "
                                          f"f={','.join(map(str, t.phi.f_vector))} "
                                          f"sufficient={'true' if t.sufficient else 'false'}")]))
    _emit("".join(lines), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossflip",
                                description="Balanced triangulations and basic cross-flips.")
    sub = p.add_subparsers(dest="command", required=True)
    input_help = "facet file, '-' for stdin, or fixture:NAME"

    r = sub.add_parser("reduce", help="greedy vertex reduction by cross-flips")
    r.add_argument("--input", required=True, help=input_help)
    r.add_argument("--coloring", help="vertex:color lines; found automatically if omitted")
    r.add_argument("--budget", type=int, default=500)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--restarts", type=int, default=1, help="independent runs on seeds seed, seed+1, ...")
    r.add_argument("--threads", type=int, default=1, help="worker processes for --restarts")
    r.add_argument("--upflip-burst", type=int, default=3)
    r.add_argument("--protect", help="edge file (or fixture:NAME) whose edges must survive")
    r.add_argument("--target-f0", type=int)
    r.add_argument("--time-limit", type=float)
    r.add_argument("--out", help="write the smallest complex found")
    r.add_argument("--coloring-out")
    r.add_argument("--log", help="write the flip log")
    r.add_argument("--report", help="also write the key=value report here")
    r.add_argument("--debug", action="store_true", help="verify the embedding cache every step")
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("flipgraph", help="explore the cross-flip graph up to isomorphism")
    g.add_argument("--input", required=True, help=input_help)
    g.add_argument("--coloring")
    g.add_argument("--cap", type=int, default=14, help="no up-flips from complexes with f0 >= cap")
    g.add_argument("--sufficient", action="store_true", help="use only the sufficient flips")
    g.add_argument("--max-nodes", type=int)
    g.add_argument("--dot", help="DOT output file, '-' for stdout")
    g.set_defaults(func=cmd_flipgraph)

    c = sub.add_parser("check", help="report invariants of a complex")
    c.add_argument("--input", required=True, help=input_help)
    c.add_argument("--coloring")
    c.add_argument("--shelling", help="facet file giving the order, or 'input' for the input order")
    c.add_argument("--protect", help="edge file (or fixture:NAME) that must be present")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("fvector", help="print the f-vector")
    f.add_argument("--input", required=True, help=input_help)
    f.add_argument("--subdivide", type=int, nargs="?", const=1, default=0,
                   help="take the barycentric subdivision first (optionally k times)")
    f.set_defaults(func=cmd_fvector)

    s = sub.add_parser("subdivide", help="barycentric subdivision")
    s.add_argument("--input", required=True, help=input_help)
    s.add_argument("--times", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_subdivide)

    k = sub.add_parser("construct", help="build a complex from a recipe")
    k.add_argument("--recipe", required=True, help="one of: " + ", ".join(RECIPES))
    k.add_argument("--input", help="base complex for suspend:k")
    k.add_argument("--out")
    k.set_defaults(func=cmd_construct)

    cat = sub.add_parser("catalog", help="list bundled fixtures")
    cat.add_argument("--flips", type=int, metavar="D", help="also list the flip templates in dimension D")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CrossflipError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
