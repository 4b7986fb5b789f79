"""Command-line interface.

Exit codes: 0 success, 2 usage, 3 mathematical refusal, 4 budget exceeded,
5 identity failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import brieskorn, identities, obstruction, orbit_model
from .exact_arith import DomainError, format_rational, rational_to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REFUSAL = 3
EXIT_BUDGET = 4
EXIT_IDENTITY = 5

FORMAT_ENV = "BRIESKORN_MEC_FORMAT"
FORMATS = ("table", "json", "csv")
METHODS = ("closed", "oracle", "engine", "all")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, ASCII only."""
    return json.dumps(obj, sort_keys=True, indent=2)


def parse_exponents(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated positive integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected comma-separated positive integers, got {text!r}")
    return values


# ---------------------------------------------------------------------------
# Report construction


def mec_routes(
    exponents: Sequence[int], method: str, oracle_cap: int, jobs: int = 1
) -> tuple[dict[str, Fraction], dict[str, str]]:
    """Return ``(values, skipped)`` for the requested route(s).

    Refusals of a single explicit route propagate as :class:`DomainError`.
    Under ``all``, an oracle over the cap is skipped and reported instead.
    """
    values: dict[str, Fraction] = {}
    skipped: dict[str, str] = {}
    if method in ("closed", "all"):
        values["closed"] = brieskorn.mec_closed_form(exponents)
    if method in ("engine", "all"):
        values["engine"] = brieskorn.mec_via_engine(exponents)
    if method in ("oracle", "all"):
        try:
            values["oracle"] = brieskorn.mec_bruteforce(exponents, cap=oracle_cap, jobs=jobs)
        except DomainError as exc:
            if method == "oracle" or str(exc) != brieskorn.ORACLE_TOO_LARGE:
                raise
            skipped["oracle"] = str(exc)
    return values, skipped


def build_report(
    exponents: Sequence[int],
    method: str = "closed",
    oracle_cap: int = brieskorn.DEFAULT_ORACLE_CAP,
    jobs: int = 1,
    timing: bool = False,
    strict: bool = False,
) -> dict:
    """Everything known about one tuple, as a JSON-ready dict.

    With ``strict`` a refusal in the mean Euler characteristic routes raises;
    otherwise it is recorded under ``mec.error``.
    """
    started = time.perf_counter()
    exps = tuple(exponents)
    report: dict[str, Any] = {"input": {"exponents": list(exps), "method": method}}
    prof = brieskorn.validate(exps)
    report["profile"] = prof.to_json()

    inv: dict[str, Any] = {"unit_fraction_sum": rational_to_json(brieskorn.unit_fraction_sum(exps))}
    inv["mu_p"] = rational_to_json(brieskorn.principal_maslov(exps))
    if prof.pairwise_coprime:
        inv["mu_p_symmetric"] = brieskorn.principal_maslov_symmetric(exps)
    try:
        inv["index_sign"] = brieskorn.index_sign(exps).value
    except DomainError as exc:
        inv["index_sign"] = None
        inv["index_sign_error"] = str(exc)
    report["invariants"] = inv

    mec: dict[str, Any] = {}
    try:
        values, skipped = mec_routes(exps, method, oracle_cap, jobs)
    except DomainError as exc:
        if strict:
            raise
        mec = {"error": str(exc), "routes": {}, "agreement": None, "value": None}
    else:
        distinct = set(values.values())
        mec = {
            "routes": {k: rational_to_json(v) for k, v in values.items()},
            "skipped": skipped,
            "agreement": len(distinct) == 1,
            "value": rational_to_json(next(iter(distinct))) if len(distinct) == 1 else None,
        }
    report["mec"] = mec
    report["verdict"] = obstruction.classify_displaceability(exps).to_json()
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 6)
    return report


def _fraction(obj: dict | None) -> str:
    if obj is None:
        return "-"
    return format_rational(Fraction(obj["num"], obj["den"]))


def _exps_str(exps: Iterable[int]) -> str:
    return ",".join(str(a) for a in exps)


def render_report_table(report: dict) -> str:
    prof = report["profile"]
    inv = report["invariants"]
    mec = report["mec"]
    lines = [
        f"exponents          {_exps_str(prof['exponents'])}",
        f"n / dimension      {prof['n']} / {prof['dimension']}",
        f"pairwise coprime   {prof['pairwise_coprime']}",
        f"unit exponent      {prof['has_unit_exponent']}",
        f"homeomorphic S^{prof['dimension']:<3} {prof['homeomorphic_to_sphere']}",
        f"sum 1/a_j          {_fraction(inv['unit_fraction_sum'])}",
        f"mu_P (lcm form)    {_fraction(inv['mu_p'])}",
    ]
    if "mu_p_symmetric" in inv:
        lines.append(f"mu_P (symmetric)   {inv['mu_p_symmetric']}")
    lines.append(f"index sign         {inv['index_sign'] or inv.get('index_sign_error')}")
    if "error" in mec:
        lines.append(f"mec                refused: {mec['error']}")
    else:
        for route, value in mec["routes"].items():
            lines.append(f"mec [{route:<6}]       {_fraction(value)}")
        for route, why in mec.get("skipped", {}).items():
            lines.append(f"mec [{route:<6}]       skipped: {why}")
        lines.append(f"agreement          {mec['agreement']}")
    verdict = report["verdict"]
    lines.append(f"verdict            {verdict['label']}")
    for r in verdict["reasons"]:
        lines.append(f"  - {r['rule']}: {r['citation']}")
    if "timing_seconds" in report:
        lines.append(f"time               {report['timing_seconds']}s")
    return "\n".join(lines)


CSV_FIELDS = ("exponents", "n", "pairwise_coprime", "unit_fraction_sum", "mu_p", "index_sign", "mec", "agreement", "verdict")


def report_csv_row(report: dict) -> dict[str, Any]:
    mec = report["mec"]
    return {
        "exponents": _exps_str(report["profile"]["exponents"]),
        "n": report["profile"]["n"],
        "pairwise_coprime": report["profile"]["pairwise_coprime"],
        "unit_fraction_sum": _fraction(report["invariants"]["unit_fraction_sum"]),
        "mu_p": _fraction(report["invariants"]["mu_p"]),
        "index_sign": report["invariants"]["index_sign"],
        "mec": _fraction(mec.get("value")),
        "agreement": mec.get("agreement"),
        "verdict": report["verdict"]["label"],
    }


def _csv(rows: Iterable[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


def _emit(out, text: str) -> None:
    out.write(text + "\n")


def _refuse(out, command: str, exc: Exception, exps: Sequence[int] | None = None) -> int:
    payload = {"error": {"command": command, "kind": "refusal", "message": str(exc)}}
    if exps is not None:
        payload["error"]["exponents"] = list(exps)
    _emit(out, dumps(payload))
    return EXIT_REFUSAL


# ---------------------------------------------------------------------------
# Subcommands


def cmd_mec(args, out) -> int:
    try:
        report = build_report(args.exponents, args.method, args.oracle_cap, args.jobs, args.timing, strict=True)
    except DomainError as exc:
        return _refuse(out, "mec", exc, args.exponents)
    if args.method == "all" and not report["mec"]["agreement"]:
        # three-way agreement is asserted, a mismatch is a refusal to report a value
        _emit(out, dumps({"error": {"command": "mec", "kind": "disagreement", "routes": report["mec"]["routes"]}}))
        return EXIT_REFUSAL
    _render(out, args.format, [report])
    return EXIT_OK


def cmd_classify(args, out) -> int:
    try:
        report = build_report(args.exponents, "closed", args.oracle_cap, timing=args.timing)
    except DomainError as exc:
        return _refuse(out, "classify", exc, args.exponents)
    _render(out, args.format, [report])
    return EXIT_OK


def _render(out, fmt: str, reports: list[dict]) -> None:
    if fmt == "json":
        for r in reports:
            _emit(out, dumps(r))
    elif fmt == "csv":
        _emit(out, _csv((report_csv_row(r) for r in reports), CSV_FIELDS))
    else:
        _emit(out, "\n\n".join(render_report_table(r) for r in reports))


def cmd_orbits(args, out) -> int:
    try:
        strata = orbit_model.enumerate_orbit_spaces(args.exponents)
    except DomainError as exc:
        return _refuse(out, "orbits", exc, args.exponents)
    rows = [s.to_json() for s in strata]
    if args.format == "json":
        _emit(out, dumps({"exponents": list(args.exponents), "orbit_spaces": rows}))
    elif args.format == "csv":
        fields = ("support", "period", "manifold_dim", "equivariant_euler", "multiplicity", "degree_parity")
        _emit(out, _csv(({**r, "support": " ".join(map(str, r["support"]))} for r in rows), fields))
    else:
        _emit(out, f"{'support':<16} {'period':>8} {'dim':>4} {'chi_S1':>6} {'phi':>8} {'parity':>6}")
        for r in rows:
            sup = "{" + ",".join(map(str, r["support"])) + "}"
            _emit(
                out,
                f"{sup:<16} {r['period']:>8} {r['manifold_dim']:>4} {r['equivariant_euler']:>6} "
                f"{r['multiplicity']:>8} {r['degree_parity']:>6}",
            )
    return EXIT_OK


def cmd_phi(args, out) -> int:
    """Compare the counting definition with the product formula per stratum."""
    try:
        strata = orbit_model.enumerate_orbit_spaces(args.exponents)
    except DomainError as exc:
        return _refuse(out, "phi", exc, args.exponents)
    full = tuple(range(len(args.exponents)))
    rows = []
    for s in strata:
        if args.support is not None and s.support != tuple(sorted(args.support)):
            continue
        counted = 1 if s.support == full else orbit_model.stratum_phi_count(args.exponents, s, strata)
        rows.append(
            {
                "support": list(s.support),
                "period": s.period,
                "phi_count": counted,
                "phi_product": orbit_model.phi_product_formula(args.exponents, s.support),
                "principal": s.support == full,
            }
        )
    if args.support is not None and not rows:
        return _refuse(out, "phi", DomainError(f"no stratum with support {sorted(args.support)}"), args.exponents)
    if args.format == "json":
        _emit(out, dumps({"exponents": list(args.exponents), "strata": rows}))
    elif args.format == "csv":
        fields = ("support", "period", "phi_count", "phi_product", "principal")
        _emit(out, _csv(({**r, "support": " ".join(map(str, r["support"]))} for r in rows), fields))
    else:
        _emit(out, f"{'support':<16} {'period':>8} {'count':>8} {'product':>8}")
        for r in rows:
            sup = "{" + ",".join(map(str, r["support"])) + "}"
            note = "  (principal: appears once)" if r["principal"] else ""
            _emit(out, f"{sup:<16} {r['period']:>8} {r['phi_count']:>8} {r['phi_product']:>8}{note}")
    return EXIT_OK


def cmd_maslov(args, out) -> int:
    exps = args.exponents
    try:
        prof = brieskorn.validate(exps)
        mu = brieskorn.principal_maslov(exps)
    except DomainError as exc:
        return _refuse(out, "maslov", exc, exps)
    payload: dict[str, Any] = {
        "exponents": list(exps),
        "mu_p": rational_to_json(mu),
        "mu_p_symmetric": brieskorn.principal_maslov_symmetric(exps) if prof.pairwise_coprime else None,
        "unit_fraction_sum": rational_to_json(brieskorn.unit_fraction_sum(exps)),
    }
    try:
        payload["index_sign"] = brieskorn.index_sign(exps).value
    except DomainError as exc:
        payload["index_sign"] = None
        payload["error"] = str(exc)
    if args.format == "json":
        _emit(out, dumps(payload))
    elif args.format == "csv":
        row = {
            "exponents": _exps_str(exps),
            "mu_p": _fraction(payload["mu_p"]),
            "mu_p_symmetric": payload["mu_p_symmetric"],
            "unit_fraction_sum": _fraction(payload["unit_fraction_sum"]),
            "index_sign": payload["index_sign"],
        }
        _emit(out, _csv([row], list(row)))
    else:
        _emit(out, f"mu_P (lcm form)      {_fraction(payload['mu_p'])}")
        if payload["mu_p_symmetric"] is not None:
            _emit(out, f"mu_P (symmetric)     {payload['mu_p_symmetric']}")
        _emit(out, f"sum 1/a_j            {_fraction(payload['unit_fraction_sum'])}")
        _emit(out, f"index sign           {payload['index_sign'] or payload['error']}")
    return EXIT_REFUSAL if payload["index_sign"] is None else EXIT_OK


def cmd_identities(args, out) -> int:
    reports = [
        identities.sweep_f(args.f_max),
        identities.sweep_reduction(args.n, args.tuple_max),
        identities.sweep_unit_fraction(args.n, args.tuple_max),
    ]
    witness = identities.unit_fraction_sum_check((2, 3, 6))
    rows = [r.to_json() for r in reports]
    if args.format == "json":
        _emit(out, dumps({"reports": rows, "non_coprime_witness": witness.to_json()}))
    elif args.format == "csv":
        _emit(
            out,
            _csv(
                ({**r, "counterexample": json.dumps(r["counterexample"])} for r in rows),
                ("name", "tested_range", "checked", "passed", "counterexample"),
            ),
        )
    else:
        for r in reports:
            status = "PASS" if r.passed else f"FAIL counterexample={r.counterexample}"
            _emit(out, f"{status:<6} {r.name}  [{r.tested_range}, {r.checked} checked]")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_IDENTITY


def scan_tuples(n: int, max_exponent: int, min_exponent: int = 1, all_orderings: bool = False) -> Iterable[tuple[int, ...]]:
    for t in identities.coprime_tuples(n + 1, max_exponent, min_exponent):
        if all_orderings:
            yield from sorted(set(itertools.permutations(t)))
        else:
            yield t


def _scan_one(job: tuple[tuple[int, ...], str, int]) -> dict:
    exps, method, cap = job
    return build_report(exps, method, cap)


def run_scan(
    n: int,
    max_exponent: int,
    *,
    min_exponent: int = 1,
    method: str = "closed",
    oracle_cap: int = brieskorn.DEFAULT_ORACLE_CAP,
    jobs: int = 1,
    all_orderings: bool = False,
    index: str | None = None,
    budget: int | None = None,
) -> tuple[list[dict], dict]:
    """Reports in lexicographic tuple order plus a summary dict."""
    tuples = []
    truncated = False
    for t in scan_tuples(n, max_exponent, min_exponent, all_orderings):
        if index is not None and brieskorn.unit_fraction_sum(t) != 1:
            if brieskorn.index_sign(t).value != index:
                continue
        if budget is not None and len(tuples) >= budget:
            truncated = True
            break
        tuples.append(t)
    work = [(t, method, oracle_cap) for t in tuples]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_scan_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        reports = [_scan_one(w) for w in work]

    labels = Counter(r["verdict"]["label"] for r in reports)
    half = Fraction((-1) ** (n + 1), 2)
    hits = [r for r in reports if r["mec"].get("value") is not None and _as_fraction(r["mec"]["value"]) == half]
    summary = {
        "summary": {
            "n": n,
            "max": max_exponent,
            "tuples": len(reports),
            "labels": dict(sorted(labels.items())),
            "half_hits": len(hits),
            "half_hits_with_unit_exponent": sum(1 for r in hits if r["profile"]["has_unit_exponent"]),
            "disagreements": sum(1 for r in reports if r["mec"].get("agreement") is False),
            "truncated": truncated,
        }
    }
    return reports, summary


def _as_fraction(obj: dict) -> Fraction:
    return Fraction(obj["num"], obj["den"])


def cmd_scan(args, out) -> int:
    if args.n < 2 or args.max < 2:
        _emit(sys.stderr, "error: scan requires --n >= 2 and --max >= 2")
        return EXIT_USAGE
    reports, summary = run_scan(
        args.n,
        args.max,
        min_exponent=args.min,
        method=args.method,
        oracle_cap=args.oracle_cap,
        jobs=args.jobs,
        all_orderings=args.all_orderings,
        index=args.index,
        budget=args.budget,
    )
    if args.format == "json":
        # JSON lines: one compact report per tuple, then the summary
        for r in reports:
            _emit(out, json.dumps(r, sort_keys=True))
        _emit(out, json.dumps(summary, sort_keys=True))
    elif args.format == "csv":
        _emit(out, _csv((report_csv_row(r) for r in reports), CSV_FIELDS))
    else:
        _emit(out, f"{'exponents':<20} {'sum 1/a':>12} {'mu_P':>10} {'mec':>14}  verdict")
        for r in reports:
            row = report_csv_row(r)
            _emit(out, f"{row['exponents']:<20} {row['unit_fraction_sum']:>12} {row['mu_p']:>10} {row['mec']:>14}  {row['verdict']}")
        s = summary["summary"]
        labels = ", ".join(f"{k}={v}" for k, v in s["labels"].items())
        _emit(
            out,
            f"summary: {s['tuples']} tuples; {labels}; mec=(-1)^(n+1)/2 hits={s['half_hits']} "
            f"(with unit exponent: {s['half_hits_with_unit_exponent']})",
        )
    if summary["summary"]["truncated"]:
        _emit(sys.stderr, f"warning: budget of {args.budget} tuples exhausted; output is partial")
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "table")
    if default_format not in FORMATS:
        default_format = "table"

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=default_format)
    common.add_argument("--oracle-cap", type=int, default=brieskorn.DEFAULT_ORACLE_CAP)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in reports")

    parser = argparse.ArgumentParser(
        prog="brieskorn-mec",
        description="Exact contact invariants of Brieskorn manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mec", parents=[common], help="mean Euler characteristic")
    p.add_argument("exponents", type=parse_exponents)
    p.add_argument("--method", choices=METHODS, default="all")
    p.set_defaults(func=cmd_mec)

    p = sub.add_parser("classify", parents=[common], help="displaceability verdict")
    p.add_argument("exponents", type=parse_exponents)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbits", parents=[common], help="periodic orbit strata")
    p.add_argument("exponents", type=parse_exponents)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("phi", parents=[common], help="stratum multiplicities, definition vs product")
    p.add_argument("exponents", type=parse_exponents)
    p.add_argument("--support", type=lambda s: tuple(int(x) for x in s.split(",")), default=None)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("maslov", parents=[common], help="principal Maslov index and index sign")
    p.add_argument("exponents", type=parse_exponents)
    p.set_defaults(func=cmd_maslov)

    p = sub.add_parser("identities", parents=[common], help="combinatorial identity sweeps")
    p.add_argument("--f-max", type=int, default=60)
    p.add_argument("--tuple-max", type=int, default=20)
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("scan", parents=[common], help="scan a family of exponent tuples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--min", type=int, default=1)
    p.add_argument("--method", choices=METHODS, default="closed")
    p.add_argument("--index", choices=("positive", "negative"), default=None)
    p.add_argument("--all-orderings", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="maximum number of tuples")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "f_max", 1) < 1 or getattr(args, "tuple_max", 1) < 1 or args.jobs < 1:
        _emit(sys.stderr, "error: bounds must be at least 1")
        return EXIT_USAGE
    return args.func(args, out)


if __name__ == "__main__":
    sys.exit(main())
