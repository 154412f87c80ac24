"""Command line front end: homology tables, verification, Jones polynomial.

Every command reads its diagram from --pd, which accepts an inline PD
string ("X[1,2,2,1]"), the name of a built-in diagram ("trefoil"), or
@path to read the PD string from a file.  Debug dumps go to stderr so
--json output stays parseable.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

import argparse
import json
import sys

from .bridge import run_verification
from .diagram import (
    BUILTIN_DIAGRAMS,
    InconsistentOrientation,
    MalformedPd,
    UnrealizablePlanarity,
    VirtualCrossingRejected,
    builtin,
    parse_pd,
)
from .khcube import jones_string, kh_homology
from .krcube import KrCube, kr_homology

_PD_ERRORS = (
    MalformedPd,
    InconsistentOrientation,
    VirtualCrossingRejected,
    UnrealizablePlanarity,
)


class InputError(Exception):
    pass


def load_diagram(spec):
    if spec.startswith("@"):
        try:
            with open(spec[1:]) as fh:
                text = fh.read()
        except OSError as e:
            raise InputError("cannot read %s: %s" % (spec[1:], e))
        return parse_pd(text)
    if spec in BUILTIN_DIAGRAMS:
        return builtin(spec)
    return parse_pd(spec)


def _jsonable(detail):
    try:
        json.dumps(detail)
        return detail
    except TypeError:
        return str(detail)


def _emit_table(table, checks, as_json):
    if as_json:
        report = {"table": table.rows(), "poincare": table.poincare()}
        if checks:
            report["checks"] = [
                {
                    "name": c["name"],
                    "status": c["status"],
                    "detail": _jsonable(c.get("detail", "")),
                }
                for c in checks
            ]
        print(json.dumps(report))
        return
    rows = table.rows()
    print("  i    j  dim")
    for i, j, dim in rows:
        print("%3d  %3d  %3d" % (i, j, dim))
    print("poincare: %s" % table.poincare())
    for c in checks:
        line = "%s: %s" % (c["name"], c["status"])
        if c.get("detail"):
            line += "  (%s)" % (c["detail"],)
        print(line)


def cmd_kh(args):
    d = load_diagram(args.pd)
    _emit_table(kh_homology(d), [], args.json)
    return 0


def cmd_kr(args):
    d = load_diagram(args.pd)
    cube = KrCube(d)
    if args.dump_mf:
        for vp, rv in sorted(cube.vertices.items()):
            print("vertex %s" % (vp,), file=sys.stderr)
            print(rv.mf0.dump(), file=sys.stderr)
    if args.dump_reduction:
        for vp, rv in sorted(cube.vertices.items()):
            print("vertex %s" % (vp,), file=sys.stderr)
            for line in rv.trace:
                print("  %s" % line, file=sys.stderr)
    checks = []
    if args.oracle_edges:
        bad = 0
        n = 0
        for vp, j in cube.edges():
            n += 1
            if cube.edge_matrix(vp, j) != cube.oracle_matrix(vp, j):
                bad += 1
        detail = (
            "all %d edges agree" % n
            if not bad
            else "%d of %d edges disagree" % (bad, n)
        )
        checks.append(
            {
                "name": "oracle edges",
                "status": "pass" if not bad else "fail",
                "detail": detail,
            }
        )
    _emit_table(kr_homology(d, cube), checks, args.json)
    return 0 if all(c["status"] == "pass" for c in checks) else 1


def cmd_verify(args):
    d = load_diagram(args.pd)
    base_points = None
    if args.base_points:
        try:
            base_points = tuple(
                int(x) for x in args.base_points.split(",") if x.strip()
            )
        except ValueError:
            raise InputError(
                "--base-points wants comma separated mark numbers"
            )
    rep = run_verification(d, base_points=base_points, trials=args.tau_trials)
    if args.json:
        print(
            json.dumps(
                {
                    "checks": [
                        {
                            "name": c["name"],
                            "status": c["status"],
                            "detail": _jsonable(c.get("detail", "")),
                        }
                        for c in rep["checks"]
                    ]
                }
            )
        )
    else:
        for c in rep["checks"]:
            line = "%-4s %s" % (c["status"].upper(), c["name"])
            if c.get("detail"):
                line += "  %s" % (c["detail"],)
            print(line)
    return 0 if rep["status"] == "pass" else 1


def cmd_jones(args):
    d = load_diagram(args.pd)
    s = jones_string(d)
    print(json.dumps({"jones": s}) if args.json else s)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="kr2kh",
        description="Khovanov and sl2 Khovanov-Rozansky homology of links, "
        "with a machine check that the two agree.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--pd",
            required=True,
            metavar="PD",
            help="inline PD code, builtin name (%s), or @file"
            % ", ".join(sorted(BUILTIN_DIAGRAMS)),
        )
        p.add_argument(
            "--json", action="store_true", help="emit a JSON report"
        )

    p = sub.add_parser("kh", help="ordinary cube homology table")
    common(p)
    p.set_defaults(fn=cmd_kh)

    p = sub.add_parser("kr", help="matrix factorization cube homology table")
    common(p)
    p.add_argument(
        "--oracle-edges",
        action="store_true",
        help="recompute every edge map by full transport and compare",
    )
    p.add_argument(
        "--dump-mf",
        action="store_true",
        help="print each vertex factorization to stderr",
    )
    p.add_argument(
        "--dump-reduction",
        action="store_true",
        help="print each vertex reduction trace to stderr",
    )
    p.set_defaults(fn=cmd_kr)

    p = sub.add_parser("verify", help="run the full isomorphism check")
    common(p)
    p.add_argument(
        "--tau-trials",
        type=int,
        default=4000,
        metavar="N",
        help="path budget for the tau multipath check (default 4000)",
    )
    p.add_argument(
        "--base-points",
        default=None,
        metavar="MARKS",
        help="comma separated base point marks, one per link component",
    )
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("jones", help="Kauffman bracket state sum")
    common(p)
    p.set_defaults(fn=cmd_jones)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _PD_ERRORS as e:
        print("error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
