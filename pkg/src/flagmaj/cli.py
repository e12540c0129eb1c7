"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical disagreement or conjecture
failure, 2 a usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

from . import theorems
from .classes import ClassSpec, Mode, distribution, mask_to_set
from .perm import (
    GroupKind,
    InvalidWindow,
    NotInD,
    StatKind,
    descent_data_A,
    descent_set_B,
    flag_major,
    flag_major_alt,
    flag_major_D,
    length_B,
    length_B_doubled,
    negatives,
    parse_window,
    window_inv,
)
from .qseries import BadSet

FORMATS = ("text", "json", "csv")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _set_text(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_stats(window_text: str, fmt: str = "text") -> str:
    try:
        sigma = parse_window(window_text)
    except InvalidWindow as exc:
        raise UsageError(f"invalid window: {exc}") from exc
    des_a, n_des_a, maj_a = descent_data_A(sigma)
    neg_set, neg = negatives(sigma)
    des_b = descent_set_B(sigma)
    stats = {
        "window": str(sigma),
        "n": sigma.n,
        "inv": window_inv(sigma),
        "Des_A": sorted(des_a),
        "des_A": n_des_a,
        "maj_A": maj_a,
        "Neg": sorted(neg_set),
        "neg": neg,
        "Des_B": sorted(des_b),
        "des_B": len(des_b),
        "len_B": length_B(sigma),
        "len_B_doubled": length_B_doubled(sigma),
        "fmaj": flag_major(sigma),
        "fmaj_alt": flag_major_alt(sigma),
    }
    if neg % 2 == 0:
        stats["fmaj_D"] = flag_major_D(sigma)
    if fmt == "json":
        return _dump(stats)
    flat = {k: (_set_text(v) if isinstance(v, list) else v) for k, v in stats.items()}
    if fmt == "csv":
        return _csv(list(flat), [list(flat.values())])
    return "\n".join(f"{k}={v}" for k, v in flat.items())


def _closed_form(spec: ClassSpec, stat: StatKind):
    if spec.mode is not Mode.SUBSET:
        return None
    if spec.group is GroupKind.TYPE_B and stat in (StatKind.LEN_B, StatKind.FMAJ):
        if spec.last is None:
            return theorems.rhs_subFSB(spec.n, spec.M)
        return theorems.rhs_t51(spec.n, spec.M, spec.last)
    if spec.group is GroupKind.TYPE_A and stat in (StatKind.INV, StatKind.MAJ_A) and spec.last is None:
        return theorems.delta_multinomial(spec.n, spec.M)
    return None


def cmd_dist(spec_text: str, stat_name: str = "LEN_B", method: str = "shuffle",
             check: bool = False, fmt: str = "text") -> tuple[str, int]:
    try:
        spec = ClassSpec.parse(spec_text)
        stat = StatKind.lookup(stat_name)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    if _closed_form(spec, stat) is None and method == "closed":
        raise UsageError(f"no closed form for {stat.name} on '{spec}'")
    methods = ["brute", "shuffle"] + (["closed"] if _closed_form(spec, stat) is not None else [])
    wanted = methods if check else [method]
    results = {}
    try:
        for m in wanted:
            results[m] = _closed_form(spec, stat) if m == "closed" else distribution(spec, stat, m)
    except NotInD as exc:
        raise UsageError(str(exc)) from exc
    poly = results[method]
    agree = len(set(results.values())) == 1
    code = EXIT_OK if agree else EXIT_FAIL
    if fmt == "json":
        out = {"spec": str(spec), "stat": stat.name, "method": method,
               "polynomial": poly.to_json(), "text": str(poly)}
        if check:
            out["methods"] = {m: str(p) for m, p in results.items()}
            out["agree"] = agree
        return _dump(out), code
    if fmt == "csv":
        rows = [[str(spec), stat.name, m, str(p)] for m, p in results.items()]
        return _csv(["spec", "stat", "method", "polynomial"], rows), code
    if not check:
        return str(poly), code
    lines = [f"{m}: {p}" for m, p in results.items()]
    lines.append("agree" if agree else "DISAGREE")
    return "\n".join(lines), code


def _render_reports(reports, fmt: str, timing: bool) -> str:
    if fmt == "json":
        return _dump([r.to_json(timing) for r in reports])
    if fmt == "csv":
        rows = []
        for r in reports:
            d = r.to_json(timing)
            rows.append([d["theorem_id"], d["params"], d["status"], len(d["witnesses"]),
                         d["elapsed_ms"], d["witnesses"][0] if d["witnesses"] else ""])
        return _csv(["theorem_id", "params", "status", "witnesses", "elapsed_ms", "first_witness"], rows)
    lines = []
    for r in reports:
        tail = f" ({r.to_json(timing)['elapsed_ms']} ms)" if timing else ""
        lines.append(f"{r.theorem_id} {r.status} {r.params}{tail}")
        lines.extend(f"  witness: {w}" for w in r.witnesses)
        lines.extend(f"  note: {w}" for w in r.notes)
    return "\n".join(lines)


def cmd_verify(ids, n_max=None, n_min=None, fmt="text", workers=1, timing=True) -> tuple[str, int]:
    keys = [k.strip().upper() for part in ids for k in part.split(",") if k.strip()]
    unknown = [k for k in keys if k not in theorems.REGISTRY]
    if unknown or not keys:
        raise UsageError(f"unknown theorem id(s): {', '.join(unknown) or '(none given)'}; "
                         f"known: {', '.join(theorems.REGISTRY)}")
    reports = []
    for k in keys:
        top = n_max if n_max is not None else min(6, theorems.REGISTRY[k].max_n)
        try:
            reports.append(theorems.verify(k, top, n_min, workers=workers))
        except theorems.RangeTooLarge as exc:
            raise UsageError(str(exc)) from exc
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    return _render_reports(reports, fmt, timing), code


def cmd_conjecture(which: str, n_max=None, fmt="text", workers=1, timing=True) -> tuple[str, int]:
    try:
        if which == "cf2":
            report = theorems.conjecture_cf2(15 if n_max is None else n_max)
        elif which == "classes":
            report = theorems.conjecture_equal_classes(5 if n_max is None else n_max, workers)
        else:
            raise UsageError(f"unknown conjecture {which!r}")
    except (theorems.RangeTooLarge, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return _render_reports([report], fmt, timing), EXIT_OK if report.passed else EXIT_FAIL


def cmd_table(n: int, fmt: str = "csv") -> str:
    if not 0 <= n <= 30:
        raise UsageError("table needs 0 <= n <= 30")
    masks = sorted(range(1 << n), key=lambda s: (bin(s).count("1"), sorted(mask_to_set(s))))
    rows = [(n, _set_text(mask_to_set(s)), theorems.rhs_subFSB(n, mask_to_set(s))) for s in masks]
    if fmt == "json":
        return _dump([{"n": a, "M": sorted(mask_to_set(s)), "polynomial": p.to_json(), "text": str(p)}
                      for (a, _, p), s in zip(rows, masks)])
    if fmt == "text":
        return "\n".join(f"n={a} M={m}: {p}" for a, m, p in rows)
    return _csv(["n", "M", "polynomial"], [[a, m, str(p)] for a, m, p in rows])


_WINDOW_ARG = re.compile(r"^-\d+(,-?\d+)+$")


def _fix_argv(argv):
    # argparse would read "-3,1,-6" as an option; move such tokens behind "--"
    windows = [a for a in argv if _WINDOW_ARG.match(a)]
    if not windows or "--" in argv:
        return argv
    return [a for a in argv if not _WINDOW_ARG.match(a)] + ["--"] + windows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagmaj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default="text"):
        p.add_argument("--format", choices=FORMATS, default=default)

    p = sub.add_parser("stats", help="all statistics of one signed permutation")
    p.add_argument("window", help='comma-separated window, e.g. "-3,1,-6,2,-4,-5"')
    common(p)

    p = sub.add_parser("dist", help="distribution of a statistic over a descent class")
    p.add_argument("spec", help='class spec, e.g. "n=2 M={0} mode=subset last=-1"')
    p.add_argument("--stat", default="LEN_B")
    p.add_argument("--method", choices=("brute", "shuffle", "closed"), default="shuffle")
    p.add_argument("--check", action="store_true", help="run every applicable method and compare")
    common(p)

    for name, help_text in (("verify", "verify identities by exhaustive computation"),
                            ("conjecture", "unimodality/symmetry sweeps")):
        p = sub.add_parser(name, help=help_text)
        if name == "verify":
            p.add_argument("ids", nargs="+", help="theorem ids, comma or space separated")
            p.add_argument("--n-min", type=int)
        else:
            p.add_argument("which", choices=("cf2", "classes"))
        p.add_argument("--n-max", type=int)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")
        common(p)

    p = sub.add_parser("table", help="closed-form subset-class polynomials for every M")
    p.add_argument("n", type=int)
    common(p, default="csv")
    return parser


def main(argv=None) -> int:
    argv = _fix_argv(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        if args.command == "stats":
            out, code = cmd_stats(args.window, args.format), EXIT_OK
        elif args.command == "dist":
            out, code = cmd_dist(args.spec, args.stat, args.method, args.check, args.format)
        elif args.command == "verify":
            out, code = cmd_verify(args.ids, args.n_max, args.n_min, args.format,
                                   max(1, args.threads), not args.no_timing)
        elif args.command == "conjecture":
            out, code = cmd_conjecture(args.which, args.n_max, args.format,
                                       max(1, args.threads), not args.no_timing)
        else:
            out, code = cmd_table(args.n, args.format), EXIT_OK
    except (UsageError, BadSet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
