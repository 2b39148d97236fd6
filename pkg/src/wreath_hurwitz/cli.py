"""Command-line interface.

Exit status: 0 when every requested check passes, 1 on a disagreement or a
failed identity, 2 on usage or budget errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import cutjoin, elsv, enumeration, kp, schur
from .enumeration import HurwitzTable, profiles_in_box, profiles_up_to
from .partitions import gen_colored_partitions
from .report import CheckReport, combine
from .serialize import dumps, rational_to_json, rows_to_csv, scalar_to_json
from .wreath import DEFAULT_BUDGET, BudgetExceeded, class_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fracs(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from exc


def _orders(args, m: int) -> tuple[int, ...]:
    orders = args.orders if args.orders is not None else [2] * m
    if len(orders) == 1:
        orders = orders * m
    if len(orders) != m or any(o < 0 for o in orders):
        raise UsageError(f"--orders needs {m} nonnegative entries")
    return tuple(orders)


def _emit(args, payload, csv_rows=None, csv_fields=None, pretty: str | None = None) -> None:
    if args.format == "json":
        text = dumps(payload)
    elif args.format == "csv":
        if csv_rows is None:
            raise UsageError("this command has no CSV form")
        text = rows_to_csv(csv_rows, csv_fields)
    else:
        text = pretty if pretty is not None else dumps(payload)
        if not text.endswith("\n"):
            text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_classes(args) -> int:
    rows = [
        {"colored_partition": str(cp), "class_size": class_size(cp)}
        for cp in gen_colored_partitions(args.m, args.n)
    ]
    pretty = "\n".join(f"{r['colored_partition']:>20}  {r['class_size']}" for r in rows)
    pretty += f"\n{len(rows)} classes, total size {sum(r['class_size'] for r in rows)}"
    _emit(args, {"m": args.m, "n": args.n, "classes": rows}, rows, ["colored_partition", "class_size"], pretty)
    return EXIT_OK


def _engine_table(
    engine: str, m: int, max_n: int, orders: Sequence[int], budget: int = DEFAULT_BUDGET
) -> HurwitzTable:
    profiles = profiles_in_box(orders)
    if engine == "enumeration":
        return enumeration.enumeration_table(m, max_n, profiles, budget=budget)
    if engine == "cutjoin":
        return cutjoin.evolve(m, max_n, orders).table(profiles)
    if engine == "schur":
        return schur.closed_form_H(m, max_n, orders)
    raise UsageError(f"unknown engine {engine!r}")


def cmd_hurwitz(args) -> int:
    m, n = args.m, args.n
    orders = _orders(args, m)
    engines = args.engines or list(enumeration.ENGINES)
    for e in engines:
        if e not in enumeration.ENGINES:
            raise UsageError(f"unknown engine {e!r}; choose from {', '.join(enumeration.ENGINES)}")
    tables = {e: _engine_table(e, m, n, orders, args.budget) for e in engines}
    first = tables[engines[0]]
    diffs = {e: first.diff(tables[e]) for e in engines[1:]}
    agree = not any(diffs.values())
    payload = {
        "m": m,
        "max_n": n,
        "orders": list(orders),
        "tables": {e: t.to_json() for e, t in tables.items()},
        "diff": diffs,
        "agree": agree,
    }
    rows = [r for t in tables.values() for r in t.rows()]
    for r in rows:
        r["profile"] = " ".join(map(str, r["profile"]))
    lines = [f"{'profile':>12}  {'class':>16}  value"]
    for r in first.rows():
        if r["numerator"] != "0":
            lines.append(
                f"{' '.join(map(str, r['profile'])):>12}  {r['colored_partition']:>16}  "
                f"{Fraction(int(r['numerator']), int(r['denominator']))}"
            )
    lines.append(f"engines {', '.join(engines)}: {'agree' if agree else 'DISAGREE'}")
    _emit(args, payload, rows, ["profile", "colored_partition", "numerator", "denominator", "engine"], "\n".join(lines))
    return EXIT_OK if agree else EXIT_FAIL


def cmd_cj_matrix(args) -> int:
    m, n, i = args.m, args.n, args.index
    if not 0 <= i < m:
        raise UsageError(f"--index must lie in 0..{m - 1}")
    mat = cutjoin.cj_matrix(m, n, i)
    labels = [str(cp) for cp in gen_colored_partitions(m, n)]
    rows = mat.to_rows()
    payload = {
        "m": m,
        "n": n,
        "index": i,
        "basis": labels,
        "rows": [[scalar_to_json(x) for x in row] for row in rows],
    }
    csv_rows = [{"row": labels[r], **{labels[c]: str(rows[r][c]) for c in range(len(labels))}} for r in range(len(labels))]
    width = max(len(x) for x in labels)
    pretty = "\n".join(
        f"{labels[r]:>{width}}  " + " ".join(f"{str(x):>5}" for x in rows[r]) for r in range(len(labels))
    )
    _emit(args, payload, csv_rows, ["row"] + labels, pretty)
    return EXIT_OK


def cmd_genfun(args) -> int:
    m = args.m
    orders = _orders(args, m)
    H = cutjoin.evolve(m, args.max_degree, orders)
    check = H.check_cut_and_join()
    table = H.table()
    payload = {"table": table.to_json(), "cut_and_join": check.to_json()}
    rows = table.rows()
    for r in rows:
        r["profile"] = " ".join(map(str, r["profile"]))
    pretty = "\n".join(
        f"{r['profile']:>12}  {r['colored_partition']:>16}  {r['numerator']}/{r['denominator']}"
        for r in rows
        if r["numerator"] != "0"
    )
    pretty += "\n" + check.line()
    _emit(args, payload, rows, ["profile", "colored_partition", "numerator", "denominator", "engine"], pretty)
    return EXIT_OK if check.passed else EXIT_FAIL


def _verify_reports(args) -> list[CheckReport]:
    m, n = args.m, args.n
    reports = []
    reports.append(combine("class algebra vs operators", [cutjoin.verify_diagram(m, k) for k in range(1, n + 1)]))
    reports.append(combine("commuting operators", [cutjoin.commutators_vanish(m, k) for k in range(1, n + 1)]))
    reports.append(combine("DFT operator identities", [cutjoin.verify_dft_identities(m, k) for k in range(1, n + 1)]))
    reports.append(
        combine(
            "Schur eigenvectors" + (" (stated c0)" if args.stated_c0 else ""),
            [schur.verify_eigenbasis(m, k, corrected=not args.stated_c0) for k in range(1, n + 1)],
        )
    )
    reports.append(combine("Cauchy identity", [schur.cauchy_check(m, k) for k in range(1, n + 1)]))
    orders = (min(n, 3),) * m
    t_enum = enumeration.enumeration_table(m, n, profiles_in_box(orders), budget=args.budget)
    t_cj = cutjoin.evolve(m, n, orders).table()
    t_schur = schur.closed_form_H(m, n, orders)
    d = t_enum.diff(t_cj) + t_enum.diff(t_schur)
    reports.append(CheckReport("three engines agree", not d, len(t_enum.entries), d))
    betas = [Fraction(1, k + 1) for k in range(m)]
    reports.append(
        combine(
            "KP residuals" + (" (perturbed)" if args.perturb else ""),
            [kp.kp_check(m, a, betas, 3, args.kp_degree, perturb=args.perturb) for a in range(m)],
        )
    )
    elsv_n = min(n, 3)
    elsv_orders = (3,) + (1,) * (m - 1)
    reports.append(elsv.reduction_check(m, elsv_n, elsv_orders))
    return reports


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    ok = all(r.passed for r in reports)
    payload = {"m": args.m, "n": args.n, "passed": ok, "checks": [r.to_json() for r in reports]}
    rows = [{"check": r.name, "passed": r.passed, "checked": r.checked} for r in reports]
    _emit(args, payload, rows, ["check", "passed", "checked"], "\n".join(r.line() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_kp_check(args) -> int:
    m = args.m
    betas = args.betas or [Fraction(1, k + 1) for k in range(m)]
    if len(betas) != m:
        raise UsageError(f"--betas needs {m} values")
    order = args.orders[0] if args.orders else 3
    reports = [
        kp.kp_check(m, a, betas, order, args.max_degree, args.convention, args.perturb) for a in range(m)
    ]
    ok = all(r.passed for r in reports)
    rows = [{"check": r.name, "passed": r.passed} for r in reports]
    _emit(args, {"passed": ok, "checks": [r.to_json() for r in reports]}, rows, ["check", "passed"],
          "\n".join(r.line() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_elsv_check(args) -> int:
    m = args.m
    orders = _orders(args, m)
    reports = [
        elsv.reduction_check(m, args.max_degree, orders),
        elsv.exp_log_check(m, args.max_degree, orders),
        elsv.beta_k_scaling_check(m, args.max_degree, orders),
    ]
    if m > 1:
        reports.append(elsv.euler_weight_check(m, args.max_degree, orders[1:]))
    ok = all(r.passed for r in reports)
    rows = [{"check": r.name, "passed": r.passed, "checked": r.checked} for r in reports]
    _emit(args, {"passed": ok, "checks": [r.to_json() for r in reports]}, rows, ["check", "passed", "checked"],
          "\n".join(r.line() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wreath-hurwitz", description="Exact Hurwitz numbers of G(m,1,n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_default=3):
        p.add_argument("--m", type=int, required=True, help="number of colors (m >= 1)")
        p.add_argument("--n", type=int, default=n_default, help="degree, or largest degree")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
        return p

    common(sub.add_parser("classes", help="conjugacy classes with their sizes")).set_defaults(func=cmd_classes)

    p = common(sub.add_parser("hurwitz", help="Hurwitz numbers from the selected engines"))
    p.add_argument("--orders", type=_ints, help="largest n_i per reflection class (one value or m values)")
    p.add_argument("--engines", type=lambda s: [x for x in s.split(",") if x])
    p.set_defaults(func=cmd_hurwitz)

    p = common(sub.add_parser("cj-matrix", help="cut-and-join matrix on the degree-n component"))
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(func=cmd_cj_matrix)

    p = common(sub.add_parser("genfun", help="generating function by cut-and-join evolution"))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--orders", type=_ints)
    p.set_defaults(func=cmd_genfun)

    p = common(sub.add_parser("verify", help="run the structural checks on a small grid"))
    p.add_argument("--perturb", action="store_true", help="perturb the KP input (negative control)")
    p.add_argument("--stated-c0", action="store_true", help="use the quoted c0 formula instead of the operator eigenvalue")
    p.add_argument("--kp-degree", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("kp-check", help="KP residuals per u-family"))
    p.add_argument("--max-degree", type=int, default=8, help="time weight to check")
    p.add_argument("--orders", type=_ints, help="eps order (first entry)")
    p.add_argument("--betas", type=_fracs, help="ray direction beta_i = c_i eps")
    p.add_argument("--convention", choices=kp.TIME_CONVENTIONS, default=kp.DEFAULT_CONVENTION)
    p.add_argument("--perturb", action="store_true")
    p.set_defaults(func=cmd_kp_check)

    p = common(sub.add_parser("elsv-check", help="reduction of log H to classical Hurwitz numbers"))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--orders", type=_ints)
    p.set_defaults(func=cmd_elsv_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.m < 1 or args.n < 0:
        print("error: need m >= 1 and n >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
