"""Batch front end: reproduce the experiment tables, verify the facet
battery, generate random instances, and convert between graph formats.

Verbs: coloring, matching, facets, gen, convert. Flags win over the
optional JSON config file; TOTMATCH_INSTANCES overrides the default
instance directory, and --instances overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor

from . import coloring as tc
from . import matching as tm
from .cutloop import CutLoopConfig, run_cut_loop
from .errors import FixtureMissingError, NodeLimitExceededError, TotmatchError
from .graph import (
    instances_dir,
    load_dimacs,
    load_graph6,
    named_graph,
    random_cubic,
    random_gnp,
    save_dimacs,
    save_graph6,
)
from .lab import run_battery

FAMILY_SETS = {
    "basic": (),
    "clique": ("clique",),
    "cycle": ("cycle",),
    "even-clique": ("even-clique",),
    "all": ("clique", "cycle", "even-clique"),
}


def resolve_instance(spec, instances=None):
    """Instance spec -> Graph: a named graph, a file path, or a fixture
    name looked up in the instance directory."""
    if os.path.exists(spec):
        return _load_graph_file(spec)
    try:
        return named_graph(spec, instances=instances)
    except FixtureMissingError:
        raise
    except TotmatchError:
        pass
    base = instances_dir(instances)
    for ext in (".dimacs", ".col", ".g6"):
        path = os.path.join(base, spec + ext)
        if os.path.exists(path):
            return _load_graph_file(path)
    raise FixtureMissingError(f"no such instance {spec!r} (searched {base})")


def _load_graph_file(path):
    if path.endswith((".g6", ".graph6")):
        with open(path) as f:
            line = f.readline()
        g = load_graph6(line)
        g.name = os.path.splitext(os.path.basename(path))[0]
        return g
    return load_dimacs(path)


def _emit_table(header, rows, fmt, out):
    if fmt == "markdown":
        out.write("| " + " | ".join(header) + " |\n")
        out.write("|" + "|".join("---" for _ in header) + "|\n")
        for row in rows:
            out.write("| " + " | ".join(str(c) for c in row) + " |\n")
    else:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(c) for c in row) + "\n")


def _fmt(x, digits=4):
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.{digits}f}"
    return str(x)


# ---------------------------------------------------------------------------
# coloring


def coloring_row(spec, instances, with_mip, mip_time_limit, coloring_out=None):
    g = resolve_instance(spec, instances)
    start = time.perf_counter()
    delta = g.max_degree()
    lp = tc.assignment_lp(g)
    sc_lp, iters, _master = tc.covering_colgen(g)
    chi = None
    if with_mip:
        try:
            chi, colors = tc.assignment_mip(g, time_limit=mip_time_limit)
        except NodeLimitExceededError as exc:
            warnings.warn(f"{g.name}: exact chi_T hit its limit ({exc})")
            chi = None
        else:
            if coloring_out and chi is not None:
                os.makedirs(coloring_out, exist_ok=True)
                tc.write_coloring(
                    os.path.join(coloring_out, f"{g.name}.coloring"), g, colors
                )
    runtime = time.perf_counter() - start
    gtype = ""
    if chi is not None:
        gtype = "Type-1" if chi == delta + 1 else "Type-2"
    return [
        g.name, g.n, g.m, gtype, delta, _fmt(chi), _fmt(lp, 2), _fmt(sc_lp, 4),
        iters, _fmt(runtime, 2),
    ]


def _coloring_worker(args):
    return coloring_row(*args)


def cmd_coloring(args, out):
    header = ["name", "n", "m", "type", "delta", "chiT", "LP", "SCLP", "iters",
              "runtime"]
    tasks = []
    for spec in args.instance:
        try:
            resolve_instance(spec, args.instances)
        except FixtureMissingError as exc:
            warnings.warn(f"skipping {spec!r}: {exc}")
            continue
        tasks.append((spec, args.instances, args.mip, args.mip_time_limit,
                      args.coloring_out))
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_coloring_worker, tasks))
    else:
        rows = [coloring_row(*t) for t in tasks]
    if not args.runtime:
        header = header[:-1]
        rows = [r[:-1] for r in rows]
    _emit_table(header, rows, args.format, out)
    return 0


# ---------------------------------------------------------------------------
# matching


def matching_row(spec, instances, set_name, max_rounds):
    g = resolve_instance(spec, instances)
    start = time.perf_counter()
    nu = tm.matching_number(g)
    alpha = tm.stable_set_number(g)
    cfg = CutLoopConfig(
        families=FAMILY_SETS[set_name], max_rounds=max_rounds, compute_nu_t=True
    )
    report = run_cut_loop(g, tm.WeightVector.unit(g), cfg)
    runtime = time.perf_counter() - start
    return [
        g.name, set_name, g.n, g.m, nu, alpha, report.nu_t,
        _fmt(report.final_bound, 4), _fmt(report.gap_percent, 2),
        len(report.cuts), report.rounds, _fmt(runtime, 2),
    ]


def _matching_worker(args):
    return matching_row(*args)


def cmd_matching(args, out):
    header = ["name", "families", "n", "m", "nu", "alpha", "nuT", "bound", "gap",
              "cuts", "rounds", "runtime"]
    set_names = []
    for name in args.families.split("/"):
        name = name.strip()
        if name not in FAMILY_SETS:
            raise TotmatchError(
                f"unknown family set {name!r}; pick from {sorted(FAMILY_SETS)}"
            )
        set_names.append(name)
    tasks = []
    for spec in args.instance:
        try:
            resolve_instance(spec, args.instances)
        except FixtureMissingError as exc:
            warnings.warn(f"skipping {spec!r}: {exc}")
            continue
        for set_name in set_names:
            tasks.append((spec, args.instances, set_name, args.max_rounds))
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_matching_worker, tasks))
    else:
        rows = [matching_row(*t) for t in tasks]
    if not args.runtime:
        header = header[:-1]
        rows = [r[:-1] for r in rows]
    _emit_table(header, rows, args.format, out)
    return 0


# ---------------------------------------------------------------------------
# facets


def cmd_facets(args, out):
    entries, dims, ok = run_battery()
    for g, d, good in dims:
        out.write(
            f"dimension {g.name}: n+m={g.num_elements} affine_dim={d} "
            f"{'ok' if good else 'FAIL'}\n"
        )
    for entry in entries:
        verdict = entry.check.report(entry.label)
        expect = f" [expected {entry.expect}]" if entry.expect else " [informational]"
        status = "ok" if entry.passed else "FAIL"
        out.write(f"{verdict}{expect} {status}\n")
    out.write("battery: %s\n" % ("all passed" if ok else "FAILURES"))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# gen / convert


def cmd_gen(args, out):
    os.makedirs(args.out, exist_ok=True)
    seeds = [int(s) for s in args.seeds.split(",")]
    for seed in seeds:
        if args.kind == "cubic":
            g = random_cubic(args.n, seed)
            name = f"cubic_n{args.n}_s{seed}"
        else:
            g = random_gnp(args.n, args.p, seed)
            name = f"gnp_n{args.n}_p{args.p:g}_s{seed}"
        path = os.path.join(args.out, name + ".dimacs")
        save_dimacs(g, path)
        out.write(f"wrote {path} (n={g.n}, m={g.m})\n")
    return 0


def cmd_convert(args, out):
    g = _load_graph_file(args.input)
    if args.to == "dimacs":
        save_dimacs(g, args.output)
    else:
        with open(args.output, "w") as f:
            f.write(save_graph6(g) + "\n")
    out.write(f"wrote {args.output} (n={g.n}, m={g.m})\n")
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


def build_parser():
    parser = argparse.ArgumentParser(
        prog="totmatch",
        description="Total coloring / total matching bound experiments",
    )
    parser.add_argument("--config", help="JSON config file; flags win over it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--instances", default=None,
                       help="instance directory (default: $TOTMATCH_INSTANCES or ./instances)")
        p.add_argument("--format", choices=("csv", "markdown"), default=None)
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--runtime", action=argparse.BooleanOptionalAction,
                       default=None,
                       help="include the runtime column (omit for byte-stable files)")

    p = sub.add_parser("coloring", help="assignment LP vs covering colgen per instance")
    common(p)
    p.add_argument("--instance", "-i", action="append", default=None, required=False)
    p.add_argument("--mip", action="store_true", default=None,
                   help="also compute exact chi_T by the assignment MIP")
    p.add_argument("--mip-time-limit", type=float, default=None)
    p.add_argument("--coloring-out", default=None,
                   help="directory for v/e <id> <color> files (needs --mip)")

    p = sub.add_parser("matching", help="cut-loop upper bounds per instance")
    common(p)
    p.add_argument("--instance", "-i", action="append", default=None)
    p.add_argument("--families", default=None,
                   help="family sets separated by '/', e.g. basic/clique/cycle/all")
    p.add_argument("--max-rounds", type=int, default=None)

    p = sub.add_parser("facets", help="run the polyhedral verification battery")
    common(p)

    p = sub.add_parser("gen", help="write random instances to disk")
    p.add_argument("--kind", choices=("cubic", "gnp"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--seeds", default="0")
    p.add_argument("--out", default="instances")

    p = sub.add_parser("convert", help="convert between graph6 and DIMACS")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--to", choices=("dimacs", "graph6"), required=True)
    return parser


DEFAULTS = {
    "format": "csv",
    "jobs": 1,
    "runtime": True,
    "instance": [],
    "mip": False,
    "mip_time_limit": None,
    "coloring_out": None,
    "families": "basic",
    "max_rounds": 50,
}


def _merge_config(args):
    config = {}
    if getattr(args, "config", None):
        with open(args.config) as f:
            config = json.load(f)
    for key, default in DEFAULTS.items():
        if not hasattr(args, key):
            continue
        if getattr(args, key) is None:
            setattr(args, key, config.get(key.replace("_", "-"), config.get(key, default)))
    return args


def main(argv=None):
    args = build_parser().parse_args(argv)
    args = _merge_config(args)
    out = sys.stdout
    close = False
    if args.command in ("coloring", "matching", "facets") and getattr(
        args, "output", None
    ):
        out = open(args.output, "w")
        close = True
    try:
        handler = {
            "coloring": cmd_coloring,
            "matching": cmd_matching,
            "facets": cmd_facets,
            "gen": cmd_gen,
            "convert": cmd_convert,
        }[args.command]
        return handler(args, out)
    except TotmatchError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
