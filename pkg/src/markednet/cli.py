"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (message on stderr), 2 on a
usage error. Standard output carries JSON, or CSV with ``--format csv``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import gallery
from .checks import run_checks
from .generators import random_gainy_network
from .errors import MarkedNetworkError
from .network import dump_network, parse_network, validate
from .polyhedra import LatticeBox, chain_hrep, lattice_points, mc_volume, ord_hrep
from .rational import fmt, parse_rational
from .transfer import phi, phi_op, point_to_json, psi
from .walks import enumerate_mw, sigma


class UsageError(Exception):
    pass


def parse_point(text: str) -> dict:
    """``"v=1/2,w=3"`` -> ``{"v": Fraction(1, 2), "w": Fraction(3)}``."""
    point = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad coordinate {item!r}; expected name=p/q")
        try:
            point[name.strip()] = parse_rational(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return point


def parse_box(text: str, dims) -> LatticeBox:
    """``"v=0..2,w=-1..3"``; every coordinate must be given."""
    bounds = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        name, sep, rng = item.partition("=")
        lo, dots, hi = rng.partition("..")
        if not sep or not dots:
            raise UsageError(f"bad box entry {item!r}; expected name=lo..hi")
        try:
            bounds[name.strip()] = (int(lo), int(hi))
        except ValueError:
            raise UsageError(f"bad box bounds in {item!r}") from None
    if set(bounds) != set(dims):
        raise UsageError(f"box must give bounds for exactly {', '.join(dims)}")
    return LatticeBox(tuple(dims), [bounds[d][0] for d in dims], [bounds[d][1] for d in dims])


def _load(path):
    return parse_network(Path(path).read_text(encoding="utf-8"))


def _hrep_table(poly):
    return [list(poly.dims) + ["rhs", "why"]] + [
        [fmt(a) for a in r.coeffs] + [fmt(r.rhs), r.why] for r in poly.rows
    ]


def _point_table(point):
    return [["node", "value"]] + [[k, v] for k, v in point.items()]


def _form_json(form, order):
    return {"coeffs": {v: fmt(form.coeffs[v]) for v in order if v in form.coeffs}, "constant": fmt(form.constant)}


# --------------------------------------------------------------------------
# subcommands; each returns (payload, csv table, exit code)


def cmd_classify(args):
    report = validate(_load(args.file))
    payload = report.to_json()
    table = [["edges", "nodes", "weight", "kind"]] + [
        [" ".join(map(str, c.edges)), " ".join(c.nodes), fmt(c.weight), c.kind.value]
        for c in report.cycle_class.cycles
    ]
    return payload, table, 0


def cmd_hrep(args):
    net = _load(args.file)
    poly = ord_hrep(net) if args.command == "ord" else chain_hrep(net)
    return poly.to_json(), _hrep_table(poly), 0


def cmd_map(args):
    net = _load(args.file)
    fn = {"phi": phi, "psi": psi, "phiop": phi_op}[args.command]
    point = point_to_json(fn(net, parse_point(args.point)))
    return point, _point_table(point), 0


def cmd_walks(args):
    net = _load(args.file)
    walks = []
    for w in enumerate_mw(net, args.source):
        walks.append({**w.to_json(), "sigma": _form_json(sigma(net, w), net.unmarked)})
    table = [["kind", "path", "cycle", "sigma"]] + [
        [w["kind"], " ".join(map(str, w["path"])), " ".join(map(str, w["cycle"])), json.dumps(w["sigma"])]
        for w in walks
    ]
    return {"from": args.source, "walks": walks}, table, 0


def cmd_check(args):
    if args.file == "random":
        net, _ = random_gainy_network(args.seed)
    else:
        net = _load(args.file)
    box = parse_box(args.box, net.unmarked) if args.box else None
    report = run_checks(net, samples=args.samples, seed=args.seed, box=box)
    table = [["check", "ok"]] + [[r.name, str(r.ok).lower()] for r in report.results]
    return report.to_json(), table, 0 if report.ok else 1


def _which(net, which):
    return ord_hrep(net) if which == "ord" else chain_hrep(net)


def cmd_lattice(args):
    net = _load(args.file)
    poly = _which(net, args.which)
    pts = lattice_points(poly, parse_box(args.box, net.unmarked))
    table = [list(poly.dims)] + [[str(p[d]) for d in poly.dims] for p in pts]
    return {"count": len(pts), "points": [{k: str(v) for k, v in p.items()} for p in pts]}, table, 0


def cmd_volume(args):
    net = _load(args.file)
    est = mc_volume(_which(net, args.which), parse_box(args.box, net.unmarked), args.samples, args.seed)
    payload = {"volume": est.volume, "stderr": est.stderr, "hits": est.hits, "samples": est.samples}
    return payload, [list(payload), list(payload.values())], 0


def cmd_gallery(args):
    name = args.name
    if name in gallery.EXAMPLE_NAMES:
        net = gallery.paper_example(name)
    elif name == "cayley":
        net = gallery.cayley_network(args.n)
    elif name == "chain":
        net = gallery.poset_to_network(gallery.chain_poset(args.n))
    elif name == "antichain":
        net = gallery.poset_to_network(gallery.antichain_poset(args.n))
    else:
        raise UsageError(f"unknown gallery instance {name!r}")
    text = dump_network(net)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        payload = {"name": name, "written": args.out}
    else:
        payload = {"name": name, "network": text}
    return payload, [list(payload), list(payload.values())], 0


def cmd_plot(args):
    from .plot import plot_network

    net = _load(args.file)
    plot_network(net, args.out, samples=args.samples, seed=args.seed)
    payload = {"written": args.out}
    return payload, [["written"], [args.out]], 0


GALLERY_NAMES = gallery.EXAMPLE_NAMES + ("cayley", "chain", "antichain")


def build_parser():
    parser = argparse.ArgumentParser(prog="markednet", description="Analyse marked networks and the transfer map between their Ord and Chain polyhedra.")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    # accepted after the subcommand too; SUPPRESS keeps the global value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="cycle classification and sink/source flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    for name in ("ord", "chain"):
        p = sub.add_parser(name, parents=[common], help=f"H-representation of {name.capitalize()}")
        p.add_argument("file")
        p.set_defaults(func=cmd_hrep)

    for name in ("phi", "psi", "phiop"):
        p = sub.add_parser(name, parents=[common], help=f"apply {name} to a point")
        p.add_argument("file")
        p.add_argument("--point", required=True, help="v=p/q,w=p/q,...")
        p.set_defaults(func=cmd_map)

    p = sub.add_parser("walks", parents=[common], help="paths and monocycles from a node, with their forms")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True)
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("check", parents=[common], help="sampled invariant suite")
    p.add_argument("file", help='network file, or "random" for a generated gainy network chosen by --seed')
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", help="sampling box v=lo..hi,...")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lattice", parents=[common], help="integer points in a box")
    p.add_argument("file")
    p.add_argument("--box", required=True)
    p.add_argument("--which", choices=("ord", "chain"), default="ord")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("volume", parents=[common], help="Monte-Carlo volume in a box")
    p.add_argument("file")
    p.add_argument("--box", required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--which", choices=("ord", "chain"), default="ord")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("gallery", parents=[common], help="emit a named network")
    p.add_argument("name", choices=GALLERY_NAMES)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("plot", parents=[common], help="SVG of network, Ord and phi(Ord) (two unmarked nodes)")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, table, code = args.func(args)
    except UsageError as exc:
        print(f"markednet: usage error: {exc}", file=stderr)
        return 2
    except (MarkedNetworkError, OSError) as exc:
        print(f"markednet: error: {exc}", file=stderr)
        return 1
    if args.format == "csv":
        csv.writer(stdout, lineterminator="\n").writerows(table)
    else:
        json.dump(payload, stdout, indent=2)
        stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
