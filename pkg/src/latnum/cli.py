"""Command line entry point ``latnum``.

Exit status: 0 when every requested check holds, 2 when some check fails,
1 on usage, input or cost-guard errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bodies, bounds, classify, davenport
from .exact import fraction_str
from .io import dumps, load_body, polytope_to_json, report_json, to_jsonable
from .lattice import count
from .polytope import polar, volume

MAX_DAVENPORT_DIM = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_gens(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in part.replace(",", " ").split()] for part in text.split(";") if part.strip()]
    except ValueError:
        raise UsageError(f"cannot parse generators {text!r}; use 'a,b;c,d'") from None


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in columns})
    return buf.getvalue()


def _flat(x) -> str:
    if isinstance(x, dict):
        return f"{x['coeff']}*pi^{x['pi_power']}"
    return str(x)


# --- subcommands ----------------------------------------------------------------

def cmd_count(args):
    c = count(load_body(args.body))
    doc = {"total": c.total, "interior": c.interior, "boundary": c.boundary}
    return 0, doc, [doc], ["total", "interior", "boundary"]


def cmd_volume(args):
    p = load_body(args.body)
    doc = {"dim": p.dim, "volume": fraction_str(volume(p))}
    return 0, doc, [doc], ["dim", "volume"]


def cmd_polar(args):
    q = polar(load_body(args.body))
    doc = polytope_to_json(q)
    return 0, doc, [{"vertex": ";".join(",".join(v) for v in doc["vertices"])}], ["vertex"]


def cmd_davenport(args):
    K = load_body(args.body)
    n = K.ambient_dim
    if n > MAX_DAVENPORT_DIM:
        raise UsageError(f"davenport is capped at dimension {MAX_DAVENPORT_DIM}")
    gens = _parse_gens(args.gens) if args.gens else [[int(i == j) for j in range(n)] for i in range(n)]
    if len(gens) != n or any(len(g) != n for g in gens):
        raise UsageError(f"need {n} generators of length {n}")
    try:
        P = davenport.ParallelepipedSpec(gens)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dec = davenport.volume_polynomial(K, P)
    chk = davenport.davenport_bound_check(K, P, dec)
    coeffs = {"{" + ",".join(str(j + 1) for j in J) + "}": fraction_str(c) for J, c in dec.coefficients.items()}
    doc = {"coefficients": coeffs, "lhs": fraction_str(chk.lhs), "rhs": fraction_str(chk.rhs),
           "holds": chk.holds, "equality": chk.equality, "characterized": chk.characterized}
    rows = [{"J": k, "coefficient": v} for k, v in coeffs.items()]
    return (0 if chk.holds and chk.consistent else 2), doc, rows, ["J", "coefficient"]


def _verify_one(task):
    label, spec_or_body, suite = task
    K = load_body(spec_or_body) if isinstance(spec_or_body, str) else spec_or_body
    reports, skipped = bounds.run_suite(K, suite)
    return label, [report_json(r) for r in reports], skipped


def cmd_verify(args):
    tasks = [(b, b, args.suite) for b in (args.body or [])]
    if args.corpus:
        tasks += [("@" + b, "@" + b, args.suite) for b in bodies.BUILTIN_CORPUS]
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            dim = rng.choice(args.dims)
            K = bodies.random_symmetric_lattice_polytope(rng, dim, args.coord)
            tasks.append((f"random[{i}]:dim{dim}", K, args.suite))
    if not tasks:
        raise UsageError("verify needs --body, --corpus or --random")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_verify_one, tasks))
    else:
        results = [_verify_one(t) for t in tasks]
    doc, rows, ok = [], [], True
    for label, reps, skipped in results:
        ok &= all(r["holds"] for r in reps)
        doc.append({"body": label, "reports": reps, "skipped": [{"check": n, "reason": why} for n, why in skipped]})
        for r in reps:
            rows.append({"body": label, "name": r["name"], "lhs": _flat(r["lhs"]), "rhs": _flat(r["rhs"]),
                         "holds": r["holds"], "equality": r["equality"],
                         "slack": None if r["slack"] is None else _flat(r["slack"])})
    out = {"all_hold": ok, "bodies": doc}
    return (0 if ok else 2), out, rows, ["body", "name", "lhs", "rhs", "holds", "equality", "slack"]


def cmd_report(args):
    if not (args.asymptotics or args.recurrence is not None or args.g_monotonicity is not None):
        raise UsageError("report needs --asymptotics, --recurrence K or --g-monotonicity K")
    doc, rows, cols, status = {}, [], [], 0
    if args.asymptotics:
        try:
            eps = Fraction(args.epsilon)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad epsilon {args.epsilon!r}") from None
        if not 0 < eps <= 1:
            raise UsageError("epsilon must lie in (0, 1]")
        rep = bounds.asymptotic_report(args.n_max, eps)
        table = []
        for r in rep.rows:
            table.append({"n": r.n, "ratio": fraction_str(r.ratio), "ratio_approx": r.ratio_approx,
                          "szego_approx": r.szego_approx, "threshold": fraction_str(r.threshold),
                          "crosses": r.crosses, "gs_root_approx": r.gs_root_approx, "gs_crosses": r.gs_crosses})
        doc["asymptotics"] = {"epsilon": fraction_str(eps), "first_crossing": rep.first_crossing,
                              "first_gs_crossing": rep.first_gs_crossing, "rows": table}
        rows, cols = table, list(table[0]) if table else []
    if args.recurrence is not None:
        audit = bounds.laguerre_recurrence_audit(args.recurrence)
        table = [{"k": a.k, "direct": fraction_str(a.direct), "stated": fraction_str(a.stated),
                  "discrepancy": fraction_str(a.discrepancy)} for a in audit]
        doc["recurrence"] = table
        if not rows:
            rows, cols = table, ["k", "direct", "stated", "discrepancy"]
    if args.g_monotonicity is not None:
        reps = bounds.g_monotonicity_check(args.g_monotonicity)
        doc["g_monotonicity"] = [report_json(r) for r in reps]
        if not all(r.holds for r in reps):
            status = 2
        if not rows:
            rows = [{"name": r.name, "holds": r.holds} for r in reps]
            cols = ["name", "holds"]
    return status, doc, rows, cols


def cmd_search(args):
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint FILE")
    try:
        classify._cost_guard(args.dim, args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.interior is not None and not args.checkpoint:
        recs = list(classify.enumerate_cs_polytopes(args.dim, args.bound, args.interior))
        keep = {r.form.hash for r in recs}
    else:
        keep = None
    state = None
    if args.resume:
        state = classify.load_checkpoint(args.checkpoint)
    res = classify.maximize_gs_product(args.dim, args.bound, checkpoint=state,
                                       checkpoint_path=args.checkpoint, max_steps=args.max_steps)
    ranking = [r for r in res.ranking if keep is None or r.form.hash in keep]
    if args.interior is not None and keep is None:
        ranking = [r for r in ranking if count(r.representative).interior == args.interior]
    classes = [{"hash": r.form.hash, "name": r.name, "value": fraction_str(r.value),
                "vertices": polytope_to_json(r.representative)["vertices"]} for r in ranking]
    doc = {"dim": args.dim, "bound": args.bound, "complete": res.complete, "processed": res.processed,
           "scope": f"classes with a representative inside [-{args.bound},{args.bound}]^{args.dim}",
           "skipped_no_interior_origin": res.skipped_no_interior_origin,
           "top": classes[0] if classes else None, "classes": classes}
    rows = [{"hash": c["hash"], "name": c["name"], "value": c["value"]} for c in classes]
    return 0, doc, rows, ["hash", "name", "value"]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="latnum", description="Exact lattice point and volume inequalities for rational polytopes.")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("count", parents=[common], help="lattice points in a body")
    s.add_argument("--body", required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("volume", parents=[common], help="exact volume")
    s.add_argument("--body", required=True)
    s.set_defaults(func=cmd_volume)

    s = sub.add_parser("polar", parents=[common], help="polar body")
    s.add_argument("--body", required=True)
    s.set_defaults(func=cmd_polar)

    s = sub.add_parser("davenport", parents=[common], help="Davenport decomposition and bound")
    s.add_argument("--body", required=True)
    s.add_argument("--gens", help="generators 'a,b;c,d' (default: unit cell)")
    s.set_defaults(func=cmd_davenport)

    s = sub.add_parser("verify", parents=[common], help="run inequality checks")
    s.add_argument("--suite", default="all", choices=("all",) + tuple(bounds.SUITES))
    s.add_argument("--body", action="append")
    s.add_argument("--corpus", action="store_true", help="add the built-in bodies")
    s.add_argument("--random", type=int, default=0, help="add N random symmetric lattice polytopes")
    s.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    s.add_argument("--coord", type=int, default=6)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="tables: asymptotics, recurrence audit, g monotonicity")
    s.add_argument("--asymptotics", action="store_true")
    s.add_argument("--n-max", type=int, default=60)
    s.add_argument("--epsilon", default="1")
    s.add_argument("--recurrence", type=int, metavar="K")
    s.add_argument("--g-monotonicity", type=int, metavar="K")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("search", parents=[common], help="exhaustive class search")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--interior", type=int)
    s.add_argument("--checkpoint")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--max-steps", type=int)
    s.set_defaults(func=cmd_search)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        status, doc, rows, cols = args.func(args)
    except UsageError as exc:
        print(f"latnum: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"latnum: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        out.write(_csv(rows, cols))
    else:
        out.write(dumps(to_jsonable(doc)) + "\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
