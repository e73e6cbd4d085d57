"""Command-line front end.

Exit codes: 0 for success (all identities match, member found, round trips
hold), 1 for a mathematical failure (mismatch, non-member, violation), 2
for usage or configuration errors.  The data stream (stdout or --out) is
byte-deterministic for identical invocations; progress and timing go to
stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import identities, sip
from .partitions import (
    CapExceeded,
    Partition,
    PartitionError,
    class_members,
    parse_partition,
    partition_str,
    stats_of,
    weight_cap,
    ferrers_compose,
    ferrers_decompose,
)
from .series import series_text, series_truncate


def _emit(args, text: str) -> None:
    # Buffered per invocation; main() flushes to stdout or --out in one write.
    args._lines.append(text)


def _diag(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _resolve_cap(args) -> int:
    return args.cap if getattr(args, "cap", None) else weight_cap()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.all and args.id:
        _diag("error: pass either --id or --all, not both")
        return 2
    if args.all:
        ids = identities.identity_ids()
    elif args.id:
        ids = list(args.id)
    else:
        _diag("error: verify needs --id or --all")
        return 2
    for identity_id in ids:
        if identity_id not in identities.CATALOG:
            _diag(f"error: unknown identity {identity_id!r}")
            return 2
    if args.order < 1:
        _diag("error: --order must be positive")
        return 2

    reports = []
    for identity_id in sorted(ids):
        _diag(f"verifying {identity_id} through q^{args.order} ...")
        try:
            rep = identities.verify(identity_id, args.order)
        except CapExceeded as exc:
            _diag(f"error: {identity_id}: {exc} (raise --cap or SIPVERIFY_CAP)")
            return 2
        _diag(f"  {rep.status} ({rep.millis} ms)")
        reports.append(rep)

    if args.format == "json":
        _emit(args, _json_dumps([identities.report_json_obj(r) for r in reports]))
    else:
        for rep in reports:
            if rep.matched:
                _emit(args, f"{rep.id}: MATCH through q^{rep.order}")
            else:
                m = rep.mismatch
                _emit(args, f"{rep.id}: MISMATCH at q^{m.q_exponent} "
                            f"between {m.between[0]} and {m.between[1]}: "
                            f"{m.lhs.text()} vs {m.rhs.text()}")
    return 0 if all(r.matched for r in reports) else 1


def cmd_enumerate(args) -> int:
    cap = _resolve_cap(args)
    try:
        spec = sip.get_class(args.klass)
    except sip.UnknownClass as exc:
        _diag(f"error: {exc}")
        return 2
    if args.n < 0 or args.n > cap:
        _diag(f"error: --n must lie in [0, {cap}] (cap)")
        return 2
    members = class_members(spec, args.n, cap=cap)
    if args.format == "json":
        rows = []
        for p in members:
            row: dict = {"partition": partition_str(p)}
            if args.with_stats:
                row["stats"] = stats_of(p).__dict__
            rows.append(row)
        _emit(args, _json_dumps(rows))
        return 0
    for p in members:
        line = partition_str(p)
        if args.with_stats:
            st = stats_of(p)
            line += "  " + " ".join(f"{k}={v}" for k, v in st.__dict__.items())
        _emit(args, line)
    return 0


def cmd_decompose(args) -> int:
    try:
        spec = sip.get_class(args.klass)
    except sip.UnknownClass as exc:
        _diag(f"error: {exc}")
        return 2
    try:
        p = parse_partition(args.parts)
    except PartitionError as exc:
        _diag(f"error: {exc}")
        return 2
    try:
        b, pi = sip.sip_decompose(spec.id, p)
    except sip.NotAMember as exc:
        _diag(f"not a member: {exc.explanation}")
        if args.format == "json":
            _emit(args, _json_dumps({"status": "not-member", "rule": exc.explanation}))
        return 1
    except (sip.DecompositionError, sip.BasisUndefined) as exc:
        _diag(f"decomposition failed: {exc}")
        return 1
    if args.format == "json":
        _emit(args, _json_dumps({
            "status": "ok",
            "class": spec.id,
            "partition": partition_str(p),
            "basis": partition_str(b),
            "pi": list(pi),
        }))
    else:
        _emit(args, f"basis: {partition_str(b)}")
        _emit(args, f"pi: {','.join(str(d) for d in pi)}")
    return 0


def cmd_bijection(args) -> int:
    cap = _resolve_cap(args)
    if args.max < 0 or args.max > cap:
        _diag(f"error: --max must lie in [0, {cap}] (cap)")
        return 2
    odd = sip.get_class("odd")
    checked = 0
    failures = 0
    for w in range(args.max + 1):
        for p in class_members(odd, w, cap=cap):
            n, right, below = ferrers_decompose(p)
            rebuilt = ferrers_compose(n, right, below)
            weight_ok = n * (2 * n + 1) + right.weight + below.weight == p.weight
            if rebuilt != p or not weight_ok:
                failures += 1
                _diag(f"round-trip failed for {partition_str(p)}: "
                      f"n={n} right={partition_str(right)} below={partition_str(below)}")
            checked += 1
    if failures:
        _emit(args, f"checked {checked} partitions, {failures} failures")
        return 1
    _emit(args, f"checked {checked} partitions, all round-trip")
    return 0


def cmd_sip_check(args) -> int:
    cap = _resolve_cap(args)
    try:
        spec = sip.get_class(args.klass)
    except sip.UnknownClass as exc:
        _diag(f"error: {exc}")
        return 2
    if args.max < 0 or args.max > cap:
        _diag(f"error: --max must lie in [0, {cap}] (cap)")
        return 2
    try:
        report = sip.verify_sip_property(spec, args.max)
    except sip.BasisUndefined as exc:
        _diag(f"error: {exc}")
        return 2
    if args.format == "json":
        _emit(args, _json_dumps({
            "class": report.class_id,
            "max_weight": report.max_weight,
            "members_checked": report.members_checked,
            "recompositions_checked": report.recompositions_checked,
            "violations": list(report.violations),
        }))
    else:
        _emit(args, f"class {report.class_id}: checked {report.members_checked} members "
                    f"and {report.recompositions_checked} recompositions up to weight "
                    f"{report.max_weight}: {len(report.violations)} violations")
        for v in report.violations:
            _emit(args, f"  {v}")
    return 0 if report.ok else 1


def cmd_basis(args) -> int:
    try:
        basis = sip.enumerate_basis(args.klass, args.length, args.max_part)
    except sip.UnknownClass as exc:
        _diag(f"error: {exc}")
        return 2
    except sip.BasisUndefined as exc:
        _diag(f"error: {exc}")
        return 2
    if args.format == "json":
        _emit(args, _json_dumps([partition_str(b) for b in basis]))
    else:
        for b in basis:
            _emit(args, partition_str(b))
    return 0


def cmd_table(args) -> int:
    if args.id not in identities.CATALOG:
        _diag(f"error: unknown identity {args.id!r}")
        return 2
    if args.order < 1:
        _diag("error: --order must be positive")
        return 2
    try:
        lhs = series_truncate(identities.build_side(args.id, "LHS", args.order), args.order)
        rhs = series_truncate(identities.build_side(args.id, "RHS", args.order), args.order)
    except CapExceeded as exc:
        _diag(f"error: {exc} (raise --cap or SIPVERIFY_CAP)")
        return 2
    lo = min(lhs.min_order, rhs.min_order, *(lhs.support() + rhs.support() + [0]))
    if args.format == "json":
        rows = [{"q": k,
                 "lhs": lhs.coefficient(k).text(),
                 "rhs": rhs.coefficient(k).text()}
                for k in range(lo, args.order + 1)]
        _emit(args, _json_dumps({"id": args.id, "order": args.order,
                                 "vars": list(lhs.vars.names), "rows": rows}))
    else:
        _emit(args, f"{args.id} through q^{args.order}")
        for k in range(lo, args.order + 1):
            _emit(args, f"q^{k}: {lhs.coefficient(k).text()} | {rhs.coefficient(k).text()}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sp, fmt: bool = True) -> None:
    if fmt:
        sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", metavar="PATH", default=None,
                    help="write the report to PATH instead of stdout")
    sp.add_argument("--cap", type=int, default=None,
                    help="weight cap for enumerations (default 60, or SIPVERIFY_CAP)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sipverify",
        description="Exact verification of separable-partition-class identities",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="verify catalog identities coefficient by coefficient")
    sp.add_argument("--id", action="append", help="identity id (repeatable)")
    sp.add_argument("--all", action="store_true", help="verify the whole catalog")
    sp.add_argument("--order", type=int, default=40, help="truncation order (default 40)")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="list the members of a class at one weight")
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--n", type=int, required=True, help="weight")
    sp.add_argument("--with-stats", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("decompose", help="split a member into basis + multiples of the modulus")
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--parts", required=True, help="partition, e.g. 12,9,5,1 or 7~,4,1")
    _add_common(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("bijection", help="round-trip the odd-parts rectangle bijection")
    sp.add_argument("--max", type=int, required=True, help="largest weight to check")
    _add_common(sp, fmt=False)
    sp.set_defaults(func=cmd_bijection, format="text")

    sp = sub.add_parser("sip-check", help="audit the separable-class properties")
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--max", type=int, required=True, help="largest weight to audit")
    _add_common(sp)
    sp.set_defaults(func=cmd_sip_check)

    sp = sub.add_parser("basis", help="list basis partitions of one length")
    sp.add_argument("--class", dest="klass", required=True)
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--max-part", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("table", help="print both sides of an identity per q-order")
    sp.add_argument("--id", required=True)
    sp.add_argument("--order", type=int, default=12)
    _add_common(sp)
    sp.set_defaults(func=cmd_table)

    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    args._lines = []
    cap = getattr(args, "cap", None)
    saved_cap = os.environ.get("SIPVERIFY_CAP")
    if cap is not None:
        if cap < 1:
            _diag("error: --cap must be positive")
            return 2
        os.environ["SIPVERIFY_CAP"] = str(cap)  # reaches the enumeration oracles
    try:
        code = args.func(args)
    except CapExceeded as exc:
        _diag(f"error: {exc}")
        return 2
    finally:
        if cap is not None:
            if saved_cap is None:
                os.environ.pop("SIPVERIFY_CAP", None)
            else:
                os.environ["SIPVERIFY_CAP"] = saved_cap
    if args._lines:
        payload = "\n".join(args._lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
    return code


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
