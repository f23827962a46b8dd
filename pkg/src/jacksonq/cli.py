"""Command line interface: ``jacksonq {eval,check,scan,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 non-convergence, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from jacksonq.geomclass import (
    ConditionId,
    HypothesisError,
    Property,
    alpha_threshold,
    corollary_flags,
    kappa_closed_bound,
    p0_alpha_bound,
    p0_certifies,
    positivity_condition,
)
from jacksonq.hardy import hadamard_sup_bound, hardy_classify, theorem7_verdict
from jacksonq.qbessel import FamilyKind, eval_jackson, eval_series, series_h
from jacksonq.qcore import ConvergenceError, QDomain, Tolerance
from jacksonq import suites

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4

SCAN_COLUMNS = (
    ["q", "nu"]
    + [c.value for c in ConditionId]
    + ["alpha_star_starlike", "alpha_star_convex", "p0_bound", "hardy_basis"]
)


class UsageError(Exception):
    """Invalid parameters; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


def fmt(x) -> str:
    """12 significant digits; empty for None."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return f"{x:.12g}"


def _json_num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"range must look like lo:hi, got {text!r}")
    if hi < lo:
        raise UsageError(f"range {text!r} has hi < lo")
    return lo, hi


def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise UsageError(f"config line without '=': {raw.strip()!r}")
                out[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    return out


def make_tolerance(args) -> Tolerance:
    cutoff, max_terms = Tolerance().term_cutoff, Tolerance().max_terms
    if getattr(args, "config", None):
        cfg = read_config(args.config)
        try:
            cutoff = float(cfg.get("term_cutoff", cfg.get("tol", cutoff)))
            max_terms = int(cfg.get("max_terms", max_terms))
        except ValueError as exc:
            raise UsageError(f"bad config value: {exc}")
    if getattr(args, "tol", None) is not None:
        cutoff = args.tol
    if getattr(args, "max_terms", None) is not None:
        max_terms = args.max_terms
    try:
        return Tolerance(cutoff, max_terms)
    except ValueError as exc:
        raise UsageError(str(exc))


def make_domain(q: float, nu: float) -> QDomain:
    try:
        return QDomain(q, nu)
    except ValueError as exc:
        raise UsageError(str(exc))


def check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha < 1.0:
        raise UsageError("alpha must lie in [0,1)")


def _complex_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _fmt_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 or math.isnan(z.imag) else "-"
    return f"{z.real:.12g}{sign}{abs(z.imag):.12g}i"


# ---------------------------------------------------------------- eval


def cmd_eval(args, out) -> int:
    tol = make_tolerance(args)
    qd = make_domain(args.q, args.nu)
    kind = FamilyKind(args.kind)
    z = complex(args.z, args.z_imag)
    if args.which == "normalized":
        if abs(z) > 1.0:
            raise UsageError("normalized evaluation requires |z| <= 1")
        s = series_h(kind, qd, tol)
        value = complex(eval_series(s, z))
        error = s.tail_bound
    else:
        est = eval_jackson(kind, qd, z, tol)
        value, error = complex(est.value), est.error
    if args.json:
        payload = {
            "command": "eval",
            "kind": kind.value,
            "q": qd.q,
            "nu": qd.nu,
            "z": _complex_dict(z),
            "which": args.which,
            "value": _complex_dict(value),
            "error_bound": error,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"value = {_fmt_complex(value)}\n")
        out.write(f"error_bound = {error:.12g}\n")
    return EXIT_OK


# ---------------------------------------------------------------- check


def certificate_table(kind: FamilyKind, qd: QDomain, alpha: float, beta: float) -> dict:
    """Every condition, threshold and derived verdict for one parameter point."""
    pos = positivity_condition(kind, qd)
    conditions = [pos.as_dict()]
    thresholds = {"alpha_star_starlike": None, "alpha_star_convex": None, "p0_bound": None}
    dependent = [
        (Property.STARLIKE, "alpha_star_starlike"),
        (Property.CONVEX, "alpha_star_convex"),
    ]
    if pos.holds:
        for prop, key in dependent:
            conditions.append(kappa_closed_bound(kind, prop, qd, alpha).as_dict())
            th = alpha_threshold(kind, prop, qd)
            thresholds[key] = {"value": _json_num(th.value), "direction_valid": th.direction_valid, "note": th.note}
        conditions.append(p0_certifies(kind, qd, alpha).as_dict())
        p0 = p0_alpha_bound(kind, qd)
        thresholds["p0_bound"] = {"value": p0.value, "direction_valid": True, "note": p0.note}
    else:
        ids = {
            FamilyKind.SECOND: ("StarlikeBound2", "ConvexBound2", "P0Bound2"),
            FamilyKind.THIRD: ("StarlikeBound3", "ConvexBound3", "P0Bound3"),
        }[kind]
        for cid in ids:
            conditions.append({"condition_id": cid, "lhs_value": None, "bound": None,
                               "relation": None, "holds": None, "status": "unclassified"})
    conditions.extend(r.as_dict() for r in corollary_flags(qd))

    hardy = hardy_classify(kind, qd, alpha).as_dict()

    try:
        bound = hadamard_sup_bound(kind, qd)
        hadamard_row = {"certified": True, "sup_bound": bound,
                        "assumption": "f in R (Re f' > 0)", "conclusion": "h*f is in H^inf and in R",
                        "failed": None}
    except HypothesisError as exc:
        hadamard_row = {"certified": False, "sup_bound": None, "assumption": "f in R (Re f' > 0)",
                        "conclusion": None, "failed": exc.condition}

    try:
        cert = theorem7_verdict(kind, qd, alpha, beta)
        conv_row = {"certified": True, "beta": beta, "gamma": cert.gamma,
                    "assumption": cert.assumption, "conclusion": cert.conclusion, "failed": None}
    except HypothesisError as exc:
        conv_row = {"certified": False, "beta": beta, "gamma": None,
                    "assumption": f"f in R0({beta:g})", "conclusion": None, "failed": exc.condition}

    return {
        "command": "check",
        "kind": kind.value,
        "q": qd.q,
        "nu": qd.nu,
        "alpha": alpha,
        "conditions": conditions,
        "thresholds": thresholds,
        "hardy": hardy,
        "hadamard_bounded": hadamard_row,
        "hadamard_order": conv_row,
    }


def _render_check(table: dict, out) -> None:
    out.write(f"kind={table['kind']} q={fmt(table['q'])} nu={fmt(table['nu'])} alpha={fmt(table['alpha'])}\n")
    out.write(f"{'condition':<16}{'lhs':>22}  verdict\n")
    for row in table["conditions"]:
        if row["holds"] is None:
            verdict, lhs = "unclassified", ""
        else:
            verdict = "holds" if row["holds"] else "fails"
            lhs = fmt(row["lhs_value"])
        out.write(f"{row['condition_id']:<16}{lhs:>22}  {verdict}\n")
    for key, th in table["thresholds"].items():
        if th is None:
            out.write(f"{key:<22}unclassified\n")
        else:
            extra = "" if th["direction_valid"] else "  (no order certified)"
            if th["note"] and th["direction_valid"]:
                extra = f"  ({th['note']})"
            out.write(f"{key:<22}{fmt(th['value'])}{extra}\n")
    h = table["hardy"]
    if h["kind"] == "finite_exponent":
        out.write(f"hardy                 H^{fmt(h['exponent'])} [{h['basis']}]\n")
    elif h["kind"] == "infinity":
        out.write(f"hardy                 H^inf [{h['basis']}]\n")
    else:
        out.write(f"hardy                 unclassified ({h['basis']})\n")
    hb = table["hadamard_bounded"]
    if hb["certified"]:
        out.write(f"hadamard_bounded      certified, |h*f| <= {fmt(hb['sup_bound'])} given {hb['assumption']}\n")
    else:
        out.write(f"hadamard_bounded      not certified ({hb['failed']} fails)\n")
    ho = table["hadamard_order"]
    if ho["certified"]:
        out.write(f"hadamard_order        gamma = {fmt(ho['gamma'])} given {ho['assumption']}\n")
    else:
        out.write(f"hadamard_order        not certified ({ho['failed']} fails)\n")


def cmd_check(args, out) -> int:
    make_tolerance(args)
    qd = make_domain(args.q, args.nu)
    check_alpha(args.alpha)
    if not args.beta < 1.0:
        raise UsageError("beta must be < 1")
    table = certificate_table(FamilyKind(args.kind), qd, args.alpha, args.beta)
    if args.json:
        out.write(json.dumps(table) + "\n")
    else:
        _render_check(table, out)
    return EXIT_OK


# ---------------------------------------------------------------- scan


def scan_row(kind: FamilyKind, q: float, nu: float, alpha: float) -> list[str]:
    """One ScanRecord as CSV cells."""
    qd = QDomain(q, nu)
    flags = {}
    for k in suites.KINDS:
        pos = positivity_condition(k, qd)
        flags[pos.condition_id.value] = pos.holds
        sfx = "2" if k is FamilyKind.SECOND else "3"
        for prop, name in ((Property.STARLIKE, "StarlikeBound"), (Property.CONVEX, "ConvexBound")):
            flags[name + sfx] = kappa_closed_bound(k, prop, qd, alpha).holds if pos.holds else None
        flags["P0Bound" + sfx] = p0_certifies(k, qd, alpha).holds if pos.holds else None
    for r in corollary_flags(qd):
        flags[r.condition_id.value] = r.holds
    star = convex = p0 = None
    if positivity_condition(kind, qd).holds:
        ts = alpha_threshold(kind, Property.STARLIKE, qd)
        tc = alpha_threshold(kind, Property.CONVEX, qd)
        star = ts.value if ts.direction_valid else None
        convex = tc.value if tc.direction_valid else None
        p0 = p0_alpha_bound(kind, qd).value
    hardy = hardy_classify(kind, qd, alpha)
    basis = hardy.basis if hardy.kind.value != "unclassified" else "unclassified"
    return [fmt(q), fmt(nu)] + [fmt(flags[c.value]) for c in ConditionId] + [fmt(star), fmt(convex), fmt(p0), basis]


def _scan_chunk(task):
    kind, q, nus, alpha = task
    return [scan_row(FamilyKind(kind), q, nu, alpha) for nu in nus]


def scan_csv(kind: FamilyKind, q_range, nu_range, steps: int, alpha: float = 0.0, workers: int = 1) -> str:
    """Render the full scan grid as CSV text, rows sorted by (q, nu)."""
    qs = np.linspace(q_range[0], q_range[1], steps)
    nus = np.linspace(nu_range[0], nu_range[1], steps)
    tasks = [(kind.value, float(q), [float(v) for v in nus], alpha) for q in qs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_chunk, tasks))
    else:
        chunks = [_scan_chunk(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for rows in chunks:
        writer.writerows(rows)
    return buf.getvalue()


def cmd_scan(args, out) -> int:
    make_tolerance(args)
    kind = FamilyKind(args.kind)
    q_range = parse_range(args.q)
    nu_range = parse_range(args.nu)
    for q in q_range:
        if not 0.0 < q < 1.0:
            raise UsageError("q must lie in (0,1)")
    for nu in nu_range:
        if not nu > -1.0:
            raise UsageError("nu must be greater than -1")
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    check_alpha(args.alpha)
    if args.workers < 1:
        raise UsageError("workers must be >= 1")
    text = scan_csv(kind, q_range, nu_range, args.steps, args.alpha, args.workers)
    if args.output in (None, "-"):
        out.write(text)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"jacksonq: cannot write {args.output}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_IO
    if args.json and args.output not in (None, "-"):
        rows = args.steps * args.steps
        out.write(json.dumps({"command": "scan", "output": args.output, "rows": rows,
                              "columns": SCAN_COLUMNS}) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- verify


def cmd_verify(args, out) -> int:
    make_tolerance(args)
    if args.samples < 1:
        raise UsageError("samples must be >= 1")
    names = args.family or list(suites.FAMILIES)
    for n in names:
        if n not in suites.FAMILIES:
            raise UsageError(f"unknown family {n!r}; choose from {', '.join(suites.FAMILIES)}")
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(suites.run_family, names, [args.seed] * len(names),
                                    [args.samples] * len(names)))
    else:
        results = [suites.run_family(n, args.seed, args.samples) for n in names]
    passed = all(r.passed for r in results)
    if args.json:
        payload = {
            "command": "verify",
            "seed": args.seed,
            "samples": args.samples,
            "passed": passed,
            "families": [
                {
                    "name": r.name,
                    "checked": r.checked,
                    "violations": r.violations,
                    "worst": _json_num(r.worst),
                    "passed": r.passed,
                }
                for r in results
            ],
        }
        out.write(json.dumps(payload) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status} {r.name}: checked={r.checked} violations={r.violations} worst={r.worst:.3g}\n")
        out.write(f"{'PASS' if passed else 'FAIL'} overall\n")
    return EXIT_OK if passed else EXIT_VERIFY


# ---------------------------------------------------------------- wiring


def _global_options(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="emit one JSON object instead of text")
    parser.add_argument("--config", metavar="PATH", default=default, help="key=value file with tolerance overrides")
    parser.add_argument("--tol", type=float, default=default, help="series term cutoff (default 1e-16)")
    parser.add_argument("--max-terms", type=int, default=default, help="series term limit (default 512)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jacksonq", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    _global_options(common, suppress=True)

    def kind_q_nu(p):
        p.add_argument("--kind", choices=[k.value for k in FamilyKind], required=True)
        p.add_argument("--q", type=float, required=True)
        p.add_argument("--nu", type=float, required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate J^(k) or the normalized h^(k)")
    kind_q_nu(p)
    p.add_argument("--z", type=float, required=True, help="real part of z")
    p.add_argument("--z-imag", type=float, default=0.0, help="imaginary part of z")
    p.add_argument("--which", choices=["raw", "normalized"], default="normalized")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="certificate table for one parameter point")
    kind_q_nu(p)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0, help="order of f in R0(beta) for the convolution row")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="CSV of certificates over a (q, nu) grid")
    p.add_argument("--kind", choices=[k.value for k in FamilyKind], required=True)
    p.add_argument("--q", required=True, metavar="LO:HI")
    p.add_argument("--nu", required=True, metavar="LO:HI")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0, help="order used for the bound flags")
    p.add_argument("--output", "-o", default=None, help="CSV path (default stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run the randomized oracle suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--family", action="append", help="restrict to a family (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 2, --help exits 0
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    for name in ("json", "config", "tol", "max_terms"):
        if not hasattr(args, name):
            setattr(args, name, False if name == "json" else None)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"jacksonq: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"jacksonq: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OSError as exc:
        print(f"jacksonq: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
