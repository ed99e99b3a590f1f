"""Command-line front end: every experiment, reproducible, to JSON/CSV.

Each subcommand maps 1:1 onto a library operation.  Reports are
self-describing: the full parameter set (including budgets and seeds)
is embedded, and rerunning the same configuration yields byte-identical
output.  Exit codes: 0 success, 2 argument errors, 3 precondition
violations, 4 budget/resource errors.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import arith, equidist, lattice, modq_graph, nbwalk, walk
from .config import Budgets
from .errors import BudgetError, PreconditionError
from .quaternion import LETTER_NAMES

SCHEMA_ID = "linnik-report-v1"


def _parse_triple(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_float_triple(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return tuple(float(p) for p in parts)


def _parse_cap(text):
    head, _, rho = text.rpartition(":")
    if not head:
        raise argparse.ArgumentTypeError(f"expected cx,cy,cz:rho, got {text!r}")
    return _parse_float_triple(head), float(rho)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report to this path")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json",
        help="output format (csv is a flat projection)",
    )
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap (also LINNIK_THREADS)")
    common.add_argument("--budget-enum", type=int, default=None)
    common.add_argument("--budget-pairs", type=int, default=None)
    common.add_argument("--budget-paths", type=int, default=None)
    common.add_argument("--budget-dense", type=int, default=None)

    parser = argparse.ArgumentParser(
        prog="linnik",
        description="Experiments on integer points of spheres x^2+y^2+z^2=d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("enumerate", help="list H_d")
    p.add_argument("--d", type=int, required=True)

    p = add_parser("orbits", help="SO3(Z) orbits of H_d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--even-only", action="store_true")

    p = add_parser("trajectory", help="centered trajectory segment")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--start", type=_parse_triple, required=True)
    p.add_argument("--len", dest="half_length", type=int, required=True)

    p = add_parser("period", help="return time to the starting orbit")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--start", type=_parse_triple, required=True)

    p = add_parser("shadowing", help="word agreement vs 5-adic congruence")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=_parse_triple, required=True)
    p.add_argument("--x2", type=_parse_triple, required=True)
    p.add_argument("--len", dest="half_length", type=int, required=True)

    p = add_parser("sigma", help="pairs with equal truncated trajectories mod q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--len", dest="half_length", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add_parser("graph", help="export the sphere mod q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add_parser("spectrum", help="adjacency spectrum of the sphere mod q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add_parser("arc-spectrum", help="arc-graph spectral transfer check")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-power", type=int, default=12)

    p = add_parser("walk-ld", help="large-deviation statistics of walks")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--len", dest="half_length", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--mu", type=float, required=True,
                   help="target-set density")
    p.add_argument("--target-seed", type=int, required=True,
                   help="seed selecting the pseudo-random target set")
    p.add_argument("--mode", choices=("exhaustive", "sampled"),
                   default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = add_parser("basic-lemma", help="pairs of H_d with a given dot product")
    p.add_argument("--d", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--e", type=int)
    group.add_argument("--histogram", action="store_true")

    p = add_parser("pall", help="embeddings of a binary form into three squares")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)

    p = add_parser("class-group", help="reduced forms of a discriminant")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--disc", type=int)
    group.add_argument("--d", type=int,
                       help="use the field discriminant for sqrt(-d)")

    p = add_parser("perp", help="orthogonal-complement forms of H_d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--point", type=_parse_triple, default=None)

    p = add_parser("cardinality", help="|H_d| against 24h/12h")
    p.add_argument("--d", type=int, required=True)

    p = add_parser("dev-q", help="fiber deviations of reduction mod q")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=float, default=None)

    p = add_parser("caps", help="spherical-cap deviations")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--center", type=_parse_float_triple)
    group.add_argument("--centers", type=int)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eta", type=float, default=None)

    p = add_parser("hecke", help="tree layer over a point")
    p.add_argument("--start", type=_parse_triple, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cap", type=_parse_cap, action="append", default=[],
                   help="cx,cy,cz:rho (repeatable)")
    p.add_argument("--emit-nodes", action="store_true")

    return parser


def _budgets_from_args(args):
    return Budgets.from_env(
        enum_cap=args.budget_enum,
        pair_budget=args.budget_pairs,
        path_budget=args.budget_paths,
        dense_cap=args.budget_dense,
        threads=args.threads,
    )


def _run_enumerate(args, budgets):
    d = args.d
    representable = lattice.legendre_representable(d)
    points = lattice.enumerate_hd(d, budgets)
    note = "" if representable else "Legendre-excluded: d = 4^a(8b-1)"
    return {
        "count": len(points),
        "legendre_representable": representable,
        "note": note,
        "points": [list(p) for p in points],
    }


def _run_orbits(args, budgets):
    points = lattice.enumerate_hd(args.d, budgets)
    orbits = lattice.so3z_orbits(points, even_only=args.even_only)
    return {
        "orbit_count": len(orbits),
        "orbits": [
            {"representative": list(o[0]), "size": len(o)} for o in orbits
        ],
    }


def _run_trajectory(args, budgets):
    seg = walk.extend_trajectory(args.start, args.half_length, args.d)
    return {
        "points": [list(p) for p in seg.points],
        "letters": [LETTER_NAMES[w] for w in seg.letters],
        "center_index": seg.center,
    }


def _run_period(args, budgets):
    return {"period": walk.orbit_period(args.start, args.d, budgets)}


def _run_shadowing(args, budgets):
    words_agree, congruent = walk.shadowing_check(
        args.x, args.x2, args.half_length, args.d
    )
    return {
        "words_agree": words_agree,
        "congruent": congruent,
        "shadowing_consistent": words_agree == congruent,
    }


def _run_sigma(args, budgets):
    return {
        "sigma": walk.sigma_count(args.d, args.half_length, args.q, budgets)
    }


def _run_graph(args, budgets):
    g = modq_graph.build_graph(args.d, args.q)
    return modq_graph.graph_json_dict(g)


def _spectrum_dict(report):
    return {
        "eigenvalues": list(report.eigenvalues),
        "gap": report.gap,
        "second_largest_abs": report.second_largest_abs,
        "connected": report.connected,
        "bipartite": report.bipartite,
        "ramanujan": report.ramanujan,
    }


def _run_spectrum(args, budgets):
    g = modq_graph.build_graph(args.d, args.q)
    return _spectrum_dict(modq_graph.adjacency_spectrum(g, budgets))


def _run_arc_spectrum(args, budgets):
    g = modq_graph.build_graph(args.d, args.q)
    report = modq_graph.adjacency_spectrum(g, budgets)
    ag = nbwalk.arc_graph(g)
    mat = ag.adjacency()
    trace1 = int(np.trace(mat)) / 5.0
    trace2 = int(np.trace(mat @ mat)) / 25.0
    base = np.array(report.eigenvalues) / 6.0
    predicted = nbwalk.predicted_arc_spectrum(
        base, g.n_vertices, ag.n_arcs, arc_trace1=trace1, arc_trace2=trace2
    )
    discrepancy = nbwalk.power_trace_check(ag, predicted, args.max_power, budgets)
    old = predicted[: 2 * g.n_vertices]
    return {
        "arc_count": ag.n_arcs,
        "old_space_roots": [[z.real, z.imag] for z in old],
        "multiplicity_plus_fifth": int((predicted[2 * g.n_vertices:].real > 0).sum()),
        "multiplicity_minus_fifth": int((predicted[2 * g.n_vertices:].real < 0).sum()),
        "max_power": args.max_power,
        "max_trace_discrepancy": discrepancy,
    }


def _run_walk_ld(args, budgets):
    g = modq_graph.build_graph(args.d, args.q)
    target = nbwalk.random_target(g, args.mu, args.target_seed)
    report = nbwalk.large_deviation_stats(
        g, target, args.half_length, args.epsilon, mode=args.mode,
        n_samples=args.samples, seed=args.seed, budgets=budgets,
    )
    out = report.to_json_dict()
    out["target_seed"] = args.target_seed
    return out


def _run_basic_lemma(args, budgets):
    if args.histogram:
        hist = arith.dot_histogram(args.d, budgets)
        nonzero = {
            str(e - args.d): int(c) for e, c in enumerate(hist.tolist()) if c
        }
        return {
            "histogram": nonzero,
            "total_pairs": int(hist.sum()),
        }
    return {"e": args.e, "count": arith.dot_pair_count(args.d, args.e, budgets)}


def _run_pall(args, budgets):
    return {"count": arith.pall_count(args.a, args.b, args.c, budgets)}


def _run_class_group(args, budgets):
    disc = args.disc if args.disc is not None else arith.fundamental_disc_for(args.d)
    group = arith.class_group(disc)
    return {
        "disc": disc,
        "h": group.order,
        "cyclic": group.is_cyclic(),
        "forms": [list(f) for f in group.forms],
        "two_torsion": [list(f) for f in group.two_torsion()],
    }


def _run_perp(args, budgets):
    if args.point is not None:
        form = arith.perp_form(args.point, args.d)
        return {"form": list(form), "disc": form.discriminant()}
    points = lattice.enumerate_hd(args.d, budgets)
    even = args.d % 4 != 3
    orbits = lattice.so3z_orbits(points, even_only=even)
    fibers = {}
    for orbit in orbits:
        form = arith.perp_form(orbit[0], args.d)
        fibers.setdefault(form, 0)
        fibers[form] += 1
    return {
        "classes": len(orbits),
        "image_size": len(fibers),
        "fiber_sizes": sorted(fibers.values()),
        "forms": [list(f) for f in sorted(fibers)],
    }


def _run_cardinality(args, budgets):
    check = arith.verify_cardinality(args.d, budgets)
    return {
        "hd": check.hd,
        "h": check.h,
        "multiplier": check.multiplier,
        "relation_holds": check.relation_holds,
    }


def _run_dev_q(args, budgets):
    stats = equidist.dev_mod_q(args.d, args.q, threshold=args.delta, budgets=budgets)
    return stats.to_json_dict()


def _run_caps(args, budgets):
    if args.center is not None:
        dev = equidist.cap_deviation(args.d, args.center, args.rho, budgets)
        return {"center": list(args.center), "rho": args.rho, "deviation": dev}
    if args.seed is None or args.eta is None:
        raise PreconditionError("--centers mode requires --seed and --eta")
    stats = equidist.cap_stats(
        args.d, args.rho, args.centers, args.seed, args.eta, budgets
    )
    return stats.to_json_dict()


def _run_hecke(args, budgets):
    nodes = equidist.hecke_layer(args.start, args.depth, budgets)
    out = equidist.hecke_dedup_report(nodes)
    out["depth"] = args.depth
    out["norm"] = sum(v * v for v in args.start) * 25**args.depth
    if args.cap:
        out["cap_discrepancies"] = equidist.hecke_equidist_check(
            args.start, args.depth, args.cap, budgets
        )
    if args.emit_nodes:
        out["nodes"] = [list(n.vector) for n in nodes]
    return out


_HANDLERS = {
    "enumerate": _run_enumerate,
    "orbits": _run_orbits,
    "trajectory": _run_trajectory,
    "period": _run_period,
    "shadowing": _run_shadowing,
    "sigma": _run_sigma,
    "graph": _run_graph,
    "spectrum": _run_spectrum,
    "arc-spectrum": _run_arc_spectrum,
    "walk-ld": _run_walk_ld,
    "basic-lemma": _run_basic_lemma,
    "pall": _run_pall,
    "class-group": _run_class_group,
    "perp": _run_perp,
    "cardinality": _run_cardinality,
    "dev-q": _run_dev_q,
    "caps": _run_caps,
    "hecke": _run_hecke,
}


def _params_dict(args, budgets):
    skip = {"output", "format", "command"}
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        if isinstance(value, tuple):
            value = list(value)
        if isinstance(value, list) and value and isinstance(value[0], tuple):
            value = [list(v) for v in value]
        params[key] = value
    params["budgets"] = {
        "enum_cap": budgets.enum_cap,
        "pair_budget": budgets.pair_budget,
        "path_budget": budgets.path_budget,
        "dense_cap": budgets.dense_cap,
        "threads": budgets.threads,
    }
    return params


def _flatten_rows(result):
    """CSV projection: one row per list entry when the result has a
    single table-like field, else a single row of scalars."""
    for key in ("cells", "orbits", "points", "edges", "nodes"):
        if key in result and isinstance(result[key], list) and result[key]:
            rows = []
            for entry in result[key]:
                if isinstance(entry, dict):
                    rows.append(
                        {
                            k: (" ".join(map(str, v)) if isinstance(v, list) else v)
                            for k, v in entry.items()
                        }
                    )
                else:
                    rows.append({key: " ".join(map(str, entry))})
            return rows
    return [
        {
            k: (" ".join(map(str, v)) if isinstance(v, list) else v)
            for k, v in result.items()
            if not isinstance(v, dict)
        }
    ]


def render_report(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = _flatten_rows(report["result"])
    fieldnames = sorted({k for row in rows for k in row})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    budgets = _budgets_from_args(args)
    try:
        result = _HANDLERS[args.command](args, budgets)
    except BudgetError as err:
        print(f"budget error: {err}", file=sys.stderr)
        return 4
    except PreconditionError as err:
        print(f"precondition error: {err}", file=sys.stderr)
        return 3
    report = {
        "schema": SCHEMA_ID,
        "command": args.command,
        "params": _params_dict(args, budgets),
        "result": result,
    }
    text = render_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
