"""Command line front end.

Subcommands: roots, weyl, stab, quantum-matrix, hecke-apply, verify.  Output
is either aligned text or JSON of the shape {"header": ..., "data": ...}
with canonical polynomial strings; the stab JSON doubles as the cache file
format.  Exit codes: 0 success, 64 usage problems, 65 non-finite Cartan
data, and for verify the number of the first failing suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import InputError, NonFiniteTypeError
from .rootsys import Weight, builtin_cartan, cartan_from_file, root_system
from .parabolic import parabolic
from .stable import CHAMBERS, PLUS, stable_tables, table_payload
from .quantum import quantum_matrix
from .hecke import bmo_operator, demazure_lusztig, pcon_operator
from .verify import run_all

USAGE_ERROR = 64
NONFINITE_ERROR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(sub):
    sub.add_argument("--type", help="built-in Cartan type, e.g. A3 or G2")
    sub.add_argument("--cartan-file",
                     help="file with the rank and then the Cartan matrix rows")
    sub.add_argument("--parabolic", default="empty",
                     help="comma separated simple root indices, or 'empty'")
    sub.add_argument("--cache-dir",
                     help="directory for restriction table caches")
    sub.add_argument("--format", choices=("json", "table"), default="table")


def build_parser() -> _Parser:
    parser = _Parser(prog="qstab")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("roots", help="positive roots and coroots")
    _add_common(sub)

    sub = subs.add_parser("weyl", help="Weyl group and coset representatives")
    _add_common(sub)

    sub = subs.add_parser("stab", help="stable basis restriction table")
    _add_common(sub)
    sub.add_argument("--chamber", choices=CHAMBERS, default=PLUS)

    sub = subs.add_parser("quantum-matrix",
                          help="divisor quantum multiplication matrix")
    _add_common(sub)
    sub.add_argument("--weight", required=True,
                     help="fundamental weight coordinates, e.g. 0,1,0")
    sub.add_argument("--part",
                     choices=("classical", "quantum", "total"),
                     default="total")

    sub = subs.add_parser("hecke-apply",
                          help="apply a Hecke-side operator to a polynomial")
    _add_common(sub)
    sub.add_argument("--weight", required=True)
    sub.add_argument("--input", required=True,
                     help="polynomial in a1..ar, h and the q variables")
    sub.add_argument("--operator", required=True,
                     help="dl:<i>, bmo, or pcon")

    sub = subs.add_parser("verify", help="run the invariant suites")
    _add_common(sub)
    sub.add_argument("--degree", type=int, default=2,
                     help="degree bound for the operator crosschecks")
    return parser


def _parse_subset(text: str):
    text = text.strip()
    if text in ("", "empty", "none"):
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad parabolic subset {text!r}") from None


def _parse_weight(text: str) -> Weight:
    try:
        return Weight(tuple(Fraction(x) for x in text.split(",")))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weight coordinates {text!r}") from None


def _resolve(args):
    if args.cartan_file:
        datum = cartan_from_file(args.cartan_file)
    elif args.type:
        datum = builtin_cartan(args.type)
    else:
        raise UsageError("need --type or --cartan-file")
    rs = root_system(datum)
    P = parabolic(rs, _parse_subset(args.parabolic))
    return rs, P


def _header(args, **extra):
    rs, P = _resolve(args)
    head = {
        "command": args.command,
        "cartan": [list(row) for row in rs.cartan.entries],
        "parabolic": sorted(P.subset),
    }
    head.update(extra)
    return head


def _emit(args, obj, table_lines):
    if args.format == "json":
        print(json.dumps(obj, indent=1, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _cmd_roots(args):
    rs, P = _resolve(args)
    data = {
        "count": len(rs.positive_roots),
        "positive_roots": [list(g.coords) for g in rs.positive_roots],
        "coroots": [list(rs.coroot_coords(g)) for g in rs.positive_roots],
    }
    lines = [f"positive roots: {data['count']}"]
    width = 3 * rs.rank
    for g in rs.positive_roots:
        coords = " ".join(f"{c:>2}" for c in g.coords)
        cov = " ".join(f"{c:>2}" for c in rs.coroot_coords(g))
        lines.append(f"  {coords:<{width}}  coroot  {cov}")
    _emit(args, {"header": _header(args), "data": data}, lines)
    return 0


def _cmd_weyl(args):
    rs, P = _resolve(args)
    reps = P.minimal_representatives()
    data = {
        "order": rs.weyl_order(),
        "levi_order": len(P.levi_weyl_elements()),
        "cosets": len(reps),
        "minimal_representatives": [
            {"word": ("".join(map(str, w.word)) or "e"), "length": w.length}
            for w in reps
        ],
    }
    lines = [
        f"group order {data['order']}, levi order {data['levi_order']}, "
        f"{data['cosets']} cosets",
    ]
    for item in data["minimal_representatives"]:
        lines.append(f"  {item['word']:<12} length {item['length']}")
    _emit(args, {"header": _header(args), "data": data}, lines)
    return 0


def _cmd_stab(args):
    rs, P = _resolve(args)
    tables = stable_tables(P, cache_dir=args.cache_dir)
    payload = table_payload(tables, args.chamber)
    lines = [f"chamber {args.chamber}"]
    for ckey, row in payload["data"].items():
        for pkey, text in row.items():
            lines.append(f"  [{ckey}, {pkey}]  {text}")
    _emit(args, payload, lines)
    return 0


def _cmd_quantum_matrix(args):
    rs, P = _resolve(args)
    lam = _parse_weight(args.weight)
    tables = stable_tables(P, cache_dir=args.cache_dir)
    op = quantum_matrix(tables, lam)
    matrix = {
        "classical": op.classical,
        "quantum": op.quantum,
        "total": op.total,
    }[args.part]
    field = tables.field
    rows = {}
    for (r, c), val in matrix.entries.items():
        rows.setdefault(r.key, {})[c.key] = field.to_string(val)
    data = {
        "points": [fp.key for fp in tables.points],
        "rows": {k: dict(sorted(v.items())) for k, v in sorted(rows.items())},
    }
    head = _header(args, weight=[str(c) for c in lam.coords], part=args.part)
    lines = [f"part {args.part}, weight {args.weight}"]
    for rkey, row in data["rows"].items():
        for ckey, text in row.items():
            lines.append(f"  [{rkey}, {ckey}]  {text}")
    _emit(args, {"header": head, "data": data}, lines)
    return 0


def _cmd_hecke_apply(args):
    rs, P = _resolve(args)
    lam = _parse_weight(args.weight)
    tables = stable_tables(P, cache_dir=args.cache_dir)
    field = tables.field
    f = field.parse(args.input)
    name = args.operator.strip()
    if name.startswith("dl:"):
        try:
            i = int(name[3:])
        except ValueError:
            raise UsageError(f"bad operator {name!r}") from None
        result = field.rat(demazure_lusztig(field, rs, i, f))
    elif name == "bmo":
        result = bmo_operator(tables, lam, f)
    elif name == "pcon":
        result = pcon_operator(tables, lam, f)
    else:
        raise UsageError(f"unknown operator {name!r}")
    text = field.to_string(result)
    head = _header(args, weight=[str(c) for c in lam.coords],
                   operator=name, input=args.input)
    _emit(args, {"header": head, "data": {"result": text}}, [text])
    return 0


def _cmd_verify(args):
    rs, P = _resolve(args)
    tables = stable_tables(P, cache_dir=args.cache_dir)
    code, lines = run_all(tables, degree=args.degree)
    if args.format == "json":
        head = _header(args, degree=args.degree)
        data = {"exit_code": code, "report": lines}
        print(json.dumps({"header": head, "data": data}, indent=1,
                         sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


_COMMANDS = {
    "roots": _cmd_roots,
    "weyl": _cmd_weyl,
    "stab": _cmd_stab,
    "quantum-matrix": _cmd_quantum_matrix,
    "hecke-apply": _cmd_hecke_apply,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return USAGE_ERROR
    except NonFiniteTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NONFINITE_ERROR
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
