"""``mdist`` command-line interface.

Every command prints one JSON document (``"schema": 1``) except
``trajectory``, which writes CSV unless ``--json`` is given.  Exit codes:
0 ok, 2 usage error, 3 numeric failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import counting, moments
from .distfun import distance, parse_kind
from .errors import BudgetExceeded, MdistError, NumericFailure, UsageError
from .exactalg import as_fraction
from .forms import QuadratureSpec
from .polyroots import Polynomial, roots

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_BUDGET = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# output helpers


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return f'"{x}"'
    if x == 0:
        return "0.0"
    out = format(x, ".17g")
    if "e" not in out and "." not in out:
        out += ".0"
    return out


def rational(q) -> dict:
    q = as_fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def dumps(obj, indent: int = 0) -> str:
    """JSON with floats at 17 significant digits; keys keep insertion order."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, Fraction):
        return dumps(rational(obj), indent)
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _json_str(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def emit(record: dict) -> None:
    sys.stdout.write(dumps({"schema": SCHEMA, **record}) + "\n")


# ---------------------------------------------------------------------------
# argument parsing helpers


def _coeffs(text: str) -> list:
    try:
        vals = [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient list {text!r}") from exc
    if not vals:
        raise UsageError("empty coefficient list")
    return [int(v) if v.denominator == 1 else v for v in vals]


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


def parse_grid(text: str) -> list[Fraction]:
    """``a:b:step`` (inclusive, exact rational steps) or a comma list."""
    if ":" not in text:
        return [_rational(x) for x in text.split(",") if x.strip()]
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("grid must look like a:b:step")
    a, b, h = (_rational(p) for p in parts)
    if h <= 0 or b < a:
        raise UsageError("grid needs step > 0 and a <= b")
    n = int((b - a) / h)
    return [a + k * h for k in range(n + 1)]


def _int_count(text: str) -> int:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad count {text!r}") from exc
    if v != int(v) or v < 1:
        raise argparse.ArgumentTypeError("count must be a positive integer")
    return int(v)


def _spec(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.tol) if args.tol else QuadratureSpec()


def _threads(args) -> int:
    return args.threads or counting.default_threads()


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    kind = parse_kind(args.kind)
    coeffs = _coeffs(args.poly)
    p = Polynomial(coeffs)
    if p.is_zero:
        raise UsageError("the zero polynomial has no roots to evaluate")
    rs = roots(p, tol=args.tol) if args.tol else roots(p)
    rts = sorted(rs.roots.tolist(), key=lambda z: (z.real, z.imag))
    emit({
        "command": "eval",
        "kind": kind.name,
        "distance": distance(kind, p),
        "roots": [[z.real, z.imag] for z in rts],
    })
    return EXIT_OK


def _factor_list(factors) -> list:
    return [{"coeffs": [str(c) for c in coeffs], "multiplicity": m} for coeffs, m in factors]


def cmd_moment(args) -> int:
    kind = parse_kind(args.kind)
    N = args.N
    rec = {"command": "moment", "type": args.type, "kind": kind.name, "N": N, "route": args.route}
    if args.route == "closed":
        form = moments.closed_form(args.type, kind, N)
        body = form.expand()
        rec.update({
            "form": str(form),
            "constant": form.constant,
            "pi_power": form.pi_power,
            "numerator_factors": _factor_list(form.numerator),
            "denominator_factors": _factor_list(form.denominator),
            "numerator": [str(c) for c in body.numerator_coeffs()],
            "denominator": [str(c) for c in body.denominator_coeffs()],
        })
        if args.s is not None:
            c, k = form.exact_value(_rational(args.s))
            rec["value"] = {
                "pi_power": k,
                "value_times_pi^-k": str(c),
                "rational": c,
                "float": float(c) * math.pi ** k,
            }
        emit(rec)
        return EXIT_OK
    if args.s is None:
        raise UsageError("numeric routes need --s")
    s = float(_rational(args.s))
    spec = _spec(args)
    if args.route == "oracle":
        fn = moments.rootspace_oracle_F if args.type == "F" else moments.rootspace_oracle_H
        val, err = fn(kind, s, N, spec), None
    elif args.route == "det":
        if args.type != "F":
            raise UsageError("the determinant route applies to F only")
        val, err = moments.F_numeric_det_route(kind, s, N, spec=spec, return_error=True)
    else:
        fn = moments.F_numeric if args.type == "F" else moments.H_numeric
        val, err = fn(kind, s, N, spec=spec, return_error=True)
    rec.update({"s": s, "value": float(val), "error": None if err is None else float(err)})
    emit(rec)
    return EXIT_OK


def cmd_volume(args) -> int:
    kind = parse_kind(args.kind)
    rec = {"command": "volume", "kind": kind.name, "N": args.N, "field": args.field,
           "route": args.route}
    if args.route == "mc":
        if args.field != "real":
            raise UsageError("the Monte Carlo route covers the real star body only")
        est = counting.mc_star_volume(kind, args.N, args.samples, args.seed, threads=_threads(args))
        rec.update({"value": est.value, "std_error": est.std_error,
                    "ci95": [est.value - 1.96 * est.std_error, est.value + 1.96 * est.std_error],
                    "samples": est.samples, "seed": est.seed})
    else:
        fn = moments.star_volume_real if args.field == "real" else moments.star_volume_complex
        val = fn(kind, args.N, route=args.route, spec=_spec(args))
        if isinstance(val, moments.PiMultiple):
            rec.update({"value": {"pi_power": val.pi_power, "value_times_pi^-k": str(val.coefficient),
                                  "rational": val.coefficient}, "float": float(val)})
        elif isinstance(val, Fraction):
            rec.update({"value": val, "float": float(val)})
        else:
            rec["value"] = float(val)
    emit(rec)
    return EXIT_OK


def cmd_count(args) -> int:
    rep = counting.enumerate_reciprocal(args.N, args.T, threads=_threads(args), force=args.force)
    emit({
        "command": "count",
        "N": rep.N,
        "T": rep.T,
        "exact": rep.exact_count,
        "predicted": rep.predicted,
        "leading_coefficient": rep.predicted_leading,
        "by_degree": {str(k): v for k, v in sorted(rep.by_degree.items())},
    })
    return EXIT_OK


def _trajectory_rows(points) -> list[tuple]:
    rows = [(p.t, p.feature, p.index, p.location.real, p.location.imag) for p in points]
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return rows


def cmd_trajectory(args) -> int:
    ts = parse_grid(args.t)
    if args.type == "H":
        pts = moments.trajectory_H(args.N, ts)
    else:
        pts = moments.trajectory_F(args.N, ts, _spec(args), threads=_threads(args))
    rows = _trajectory_rows(pts)
    if args.json:
        text = dumps({"schema": SCHEMA, "command": "trajectory", "type": args.type, "N": args.N,
                      "rows": [{"t": float(t), "feature": f, "index": i, "re_s": re, "im_s": im}
                               for t, f, i, re, im in rows]}) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "feature", "index", "re_s", "im_s"])
        for t, f, i, re, im in rows:
            w.writerow([fmt_float(float(t)), f, i, fmt_float(re), fmt_float(im)])
        text = buf.getvalue()
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES

    checks = SUITES[args.suite](args)
    ok = all(c.passed for c in checks)
    emit({
        "command": "verify",
        "suite": args.suite,
        "passed": ok,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks],
    })
    return EXIT_OK if ok else EXIT_NUMERIC


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdist", description="Multiplicative distance functions on polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol=True):
        sp.add_argument("--json", action="store_true", help="JSON output (default for all but trajectory)")
        sp.add_argument("--threads", type=int, default=None, help="worker budget (default: MDIST_THREADS or cores)")
        if tol:
            sp.add_argument("--tol", type=float, default=None, help="relative tolerance")

    sp = sub.add_parser("eval", help="evaluate a distance function on a polynomial")
    sp.add_argument("--kind", required=True, help="mahler | reciprocal | trec:<p/q>")
    sp.add_argument("--poly", required=True, help="coefficients, leading first, comma separated")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("moment", help="moment functions H_N and F_N")
    sp.add_argument("--type", choices=["H", "F"], required=True)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--route", choices=["closed", "numeric", "det", "oracle"], default="closed")
    sp.add_argument("--s", default=None, help="evaluation point (rational string)")
    common(sp)
    sp.set_defaults(func=cmd_moment)

    sp = sub.add_parser("volume", help="star body volumes")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--field", choices=["real", "complex"], default="real")
    sp.add_argument("--route", choices=["closed", "numeric", "mc"], default="closed")
    sp.add_argument("--samples", type=_int_count, default=10 ** 6)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("count", help="count reciprocal integer polynomials")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--force", action="store_true", help="lift the work budget")
    common(sp, tol=False)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("trajectory", help="zeros and poles along the t-reciprocal family")
    sp.add_argument("--type", choices=["H", "F"], required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--t", required=True, help="a:b:step or comma list")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    common(sp)
    sp.set_defaults(func=cmd_trajectory)

    sp = sub.add_parser("verify", help="run a self-check suite")
    sp.add_argument("--suite", choices=["table", "pfaffian", "routes", "axioms"], required=True)
    sp.add_argument("--N", type=int, default=3)
    common(sp, tol=False)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        parser.error("--threads must be positive")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"mdist: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as exc:
        print(f"mdist: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericFailure, MdistError, ArithmeticError) as exc:
        print(f"mdist: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
