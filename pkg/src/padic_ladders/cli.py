"""Command-line front end: tables, ladder/half-log export, decomposition,
point counting, and the verification suite.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 failed verification.
Output is machine-first JSON (or CSV where stated) on stdout or --out;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from .checks import CheckConfig, default_configs, run_suite
from .coleman import KERNEL_COSET_NOTE, LambdaPair, decompose
from .curves import CurveData, count_points, is_supersingular
from .errors import PadicLaddersError
from .ladders import half_logs, ladder, ladder_infinity
from .series import LambdaElement, PowerSeries
from .trace import delta_table

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _cmd_table(args) -> int:
    rows = delta_table(args.p, args.ap, args.imin, args.imax)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["i", "y", "y_prime", "rendered"])
        for r in rows:
            writer.writerow([r.i, r.y, r.y_prime, r.rendered])
        _write(buf.getvalue(), args.out)
    else:
        payload = {
            "p": args.p,
            "ap": args.ap,
            "rows": [
                {"i": r.i, "y": r.y, "yp": r.y_prime, "rendered": r.rendered}
                for r in rows
            ],
        }
        _write(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_ladder(args) -> int:
    if args.level == "infinity":
        if args.cap is None or args.prec is None:
            raise UsageError("--cap and --prec are required at level infinity")
        m = ladder_infinity(args.p, args.ap, args.index, args.cap, args.prec)
    else:
        m = ladder(args.p, args.ap, int(args.level), args.index, args.cap)
    _write(json.dumps(m.to_json(), indent=2), args.out)
    return EXIT_OK


def _cmd_halflog(args) -> int:
    pair = half_logs(args.p, args.ap, args.cap, args.prec)
    _write(json.dumps(pair.to_json(), indent=2), args.out)
    return EXIT_OK


def _read_pair(path: str, p: int, level: int) -> LambdaPair:
    with open(path) as fh:
        data = json.load(fh)
    first = data.get("first", data.get("theta"))
    second = data.get("second", data.get("upsilon"))
    if first is None or second is None:
        raise UsageError("input JSON needs first/second (or theta/upsilon) series")
    mk = lambda d: LambdaElement(p, level, PowerSeries.from_json(dict(d, p=p)))
    return LambdaPair(mk(first), mk(second))


def _cmd_decompose(args) -> int:
    pair = _read_pair(args.infile, args.p, args.level)
    result = decompose(args.p, args.ap, args.level, pair.first, pair.second)
    payload = {
        "p": args.p,
        "ap": args.ap,
        "level": args.level,
        "theta": result.first.to_json(),
        "upsilon": result.second.to_json(),
        "kernel_coset_note": KERNEL_COSET_NOTE,
    }
    _write(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_ap(args) -> int:
    curve = CurveData(args.a1, args.a2, args.a3, args.a4, args.a6)
    count = count_points(curve, args.p)
    payload = {
        "p": args.p,
        "count": count,
        "ap": args.p + 1 - count,
        "supersingular": is_supersingular(curve, args.p),
    }
    _write(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.p is not None or args.ap is not None:
        if args.p is None or args.ap is None:
            raise UsageError("--p and --ap must be given together")
        configs = [
            CheckConfig(
                args.p, args.ap, n_max=args.nmax, cap=args.cap, prec=args.prec,
                trials=args.trials,
            )
        ]
    else:
        configs = [
            CheckConfig(c.p, c.ap, n_max=args.nmax, cap=args.cap, prec=args.prec,
                        trials=args.trials)
            for c in default_configs()
        ]
    reports = run_suite(configs)
    for r in reports:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name} (p={r.config.get('p')}, ap={r.config.get('ap')})"
        print(line)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
    failed = [r for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


class UsageError(Exception):
    pass


def _level_arg(value: str):
    return value if value == "infinity" else int(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-ladders",
        description="Supersingular trace ladders, half-logarithms, and decomposition",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="delta-coefficient table rows")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--ap", type=int, required=True)
    t.add_argument("--imin", type=int, required=True)
    t.add_argument("--imax", type=int, required=True)
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.add_argument("--out")
    t.set_defaults(fn=_cmd_table)

    l = sub.add_parser("ladder", help="finite or infinity-level ladder matrix")
    l.add_argument("--p", type=int, required=True)
    l.add_argument("--ap", type=int, required=True)
    l.add_argument("--level", type=_level_arg, required=True,
                   help="integer level or 'infinity'")
    l.add_argument("--index", type=int, required=True)
    l.add_argument("--cap", type=int)
    l.add_argument("--prec", type=int)
    l.add_argument("--out")
    l.set_defaults(fn=_cmd_ladder)

    h = sub.add_parser("halflog", help="half-logarithm pair")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--ap", type=int, required=True)
    h.add_argument("--cap", type=int, required=True)
    h.add_argument("--prec", type=int, required=True)
    h.add_argument("--out")
    h.set_defaults(fn=_cmd_halflog)

    d = sub.add_parser("decompose", help="invert the ladder map on a pair")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--ap", type=int, required=True)
    d.add_argument("--level", type=int, required=True)
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--out")
    d.set_defaults(fn=_cmd_decompose)

    a = sub.add_parser("ap", help="trace of Frobenius by point counting")
    for name in ("a1", "a2", "a3", "a4", "a6"):
        a.add_argument(f"--{name}", type=int, default=0)
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--out")
    a.set_defaults(fn=_cmd_ap)

    v = sub.add_parser("verify", help="run the identity-check suite")
    v.add_argument("--all", action="store_true",
                   help="run every check (the default; kept for scripts)")
    v.add_argument("--p", type=int)
    v.add_argument("--ap", type=int)
    v.add_argument("--nmax", type=int, default=3)
    v.add_argument("--cap", type=int, default=24)
    v.add_argument("--prec", type=int, default=5)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--out")
    v.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PadicLaddersError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
