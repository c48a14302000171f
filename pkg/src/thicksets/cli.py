"""thicksets command line.

Exit codes: 0 verified or decided, 1 refuted (with witness), 2 unresolved
within bounds, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import __version__, nilpower, presburger, rotation, vdw
from .config import ConfigError, load_config
from .report import (EXIT_OK, EXIT_REFUTED, EXIT_UNRESOLVED, EXIT_USAGE, check, parse_alpha, report_generic,
                     report_heis, report_hom, report_parse, report_rotation, report_thick, report_vdw)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _triple(text: str) -> tuple[int, int, int]:
    vals = _int_list(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("expected x,y,z")
    return tuple(vals)


def _span(text: str) -> range:
    """'a:b', inclusive."""
    try:
        a, b = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}") from None
    return range(a, b + 1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thicksets", description="Thick sets, Bohr sets and power subgroups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="key = value config file (default: $THICKSETS_CONFIG)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, help="override the configured seed")
    p.add_argument("--check-cert", metavar="FILE", help="re-validate a JSON report ('-' for stdin)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("parse", help="parse and normalise a Presburger set")
    s.add_argument("--set", required=True, dest="expr")

    s = sub.add_parser("thick", help="decide thickness of a Presburger set")
    s.add_argument("--set", required=True, dest="expr")

    s = sub.add_parser("generic", help="decide genericity of a Presburger set")
    s.add_argument("--set", required=True, dest="expr")

    s = sub.add_parser("rotation", help="Bohr sets of a surd rotation of Z")
    s.add_argument("--alpha", default="sqrt2")
    s.add_argument("--t", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--member", type=int)
    g.add_argument("--thickness", action="store_true")
    g.add_argument("--witnesses", type=int, metavar="M")
    s.add_argument("--window", type=int, help="empirical thickness window radius")

    s = sub.add_parser("vdw", help="certified covering with no subgroup in P^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--variant", type=int, choices=(1, 2), default=1)
    s.add_argument("--M", type=int, default=100)

    s = sub.add_parser("heis", help="power subgroups of the Heisenberg group")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--member", type=_triple, metavar="X,Y,Z")
    s.add_argument("--malcev", action="store_true")
    s.add_argument("--radius", type=int, default=5)

    s = sub.add_parser("hom", help="dense homomorphisms into the circle")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--group", help="Z^r+Z/c+... (default Z)")
    g.add_argument("--torsion", type=_int_list, metavar="C1,C2,...")
    s.add_argument("--eps", action="append", help="density threshold (repeatable)")
    s.add_argument("--pairs", type=int, default=10**4)

    s = sub.add_parser("sweep", help="CSV data")
    s.add_argument("--kind", required=True, choices=("bohr_membership", "generation_profile", "witness_table"))
    s.add_argument("--alpha", default="sqrt2")
    s.add_argument("--t", default="1/3")
    s.add_argument("--range", type=_span, default=range(-100, 101), dest="span")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--M", type=int, default=100)
    s.add_argument("--out", help="write CSV here instead of stdout")
    return p


def sweep_rows(args, config) -> tuple[list[str], list[dict]]:
    if args.kind == "bohr_membership":
        h = vdw._hom_for(parse_alpha(args.alpha))
        X = rotation.BohrSet(h, Fraction(args.t))
        cols = ["n", "value", "distance", "member", "distance_approx"]
        return cols, list(rotation.bohr_sweep_rows(X, args.span))
    if args.kind == "generation_profile":
        prof = nilpower.steps_to_generate(args.n, args.radius)
        return ["factors", "count"], list(prof.histogram_rows())
    h = vdw._hom_for(parse_alpha(args.alpha))
    X = rotation.BohrSet(h, Fraction(args.t))
    table = rotation.max_subgroup_witnesses(X, args.M, config.witness_bound)
    rows = []
    for m in range(1, args.M + 1):
        k = table.entries.get(m)
        v = h.value(k * m) if k else None
        rows.append({"m": m, "k": k if k else "", "value": str(v) if v is not None else "",
                     "value_approx": f"{v.approx():.6f}" if v is not None else ""})
    return ["m", "k", "value", "value_approx"], rows


def write_csv(cols, rows, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writeheader()
    for r in rows:
        w.writerow(r)


def _check_cert(path: str, fmt: str) -> int:
    try:
        fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
        with fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"cannot read certificate: {e}", file=sys.stderr)
        return EXIT_USAGE
    ok, detail = check(doc)
    if fmt == "json":
        print(json.dumps({"valid": ok, "detail": detail, "type": doc.get("cert", {}).get("type")}, sort_keys=True))
    else:
        print(f"{'valid' if ok else 'INVALID'}: {detail}")
    return EXIT_OK if ok else EXIT_REFUTED


def _join_negative(argv: list[str]) -> list[str]:
    # "--range -5:5" would read -5:5 as a flag
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--range", "--member") and i + 1 < len(argv) and argv[i + 1][:1] == "-":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        if args.check_cert:
            return _check_cert(args.check_cert, args.format)
        if not args.command:
            raise UsageError(parser.format_usage() + "thicksets: error: a subcommand or --check-cert is required")
        config = load_config(args.config)
        if args.seed is not None:
            config = type(config)(**{**config.as_dict(), "seed": args.seed})
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"thicksets: config error: {e}", file=sys.stderr)
        return EXIT_USAGE

    t0 = time.perf_counter()
    try:
        if args.command == "sweep":
            cols, rows = sweep_rows(args, config)
            if args.out:
                with open(args.out, "w", newline="", encoding="utf-8") as fh:
                    write_csv(cols, rows, fh)
            else:
                write_csv(cols, rows, sys.stdout)
            return EXIT_OK
        r = _run(args, config)
    except presburger.ParseError as e:
        print(f"thicksets: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, rotation.PreconditionError) as e:
        print(f"thicksets: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (rotation.Unresolved, vdw.CoveringError) as e:
        print(json.dumps({"command": args.command, "verdict": "unresolved", "detail": str(e)}, sort_keys=True))
        return EXIT_UNRESOLVED
    r.timings = {"seconds": round(time.perf_counter() - t0, 3)}
    print(r.render(args.format))
    return r.exit_code


def _run(args, config):
    c = args.command
    if c == "parse":
        return report_parse(args.expr, config)
    if c == "thick":
        return report_thick(args.expr, config)
    if c == "generic":
        return report_generic(args.expr, config)
    if c == "rotation":
        return report_rotation(args.alpha, args.t, config, member=args.member, thickness=args.thickness,
                               window=args.window, witnesses=args.witnesses)
    if c == "vdw":
        return report_vdw(args.n, args.variant, config, M=args.M)
    if c == "heis":
        return report_heis(args.n, config, member=args.member, malcev=args.malcev, radius=args.radius)
    if c == "hom":
        return report_hom(config, group=args.group, torsion=args.torsion, eps=args.eps, pairs=args.pairs)
    raise UsageError(f"unknown command {c}")


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
