"""Command-line front end: ``hbl norm | verify | sweep | gen``.

Exit codes: 0 success, 1 usage or domain error or a failed check,
2 quadrature non-convergence.
"""

import argparse
from contextlib import nullcontext
import csv
import json
import sys

from ._validation import DomainError, NonConvergenceError
from .disc_core import BlaschkeProduct, random_blaschke
from .norms import (
    I_integral,
    a1_seminorm,
    bergman_norm,
    besov_seminorm,
    bloch_norm,
    bmoa_upper,
    garsia_seminorm,
)
from .rational_fn import RationalFunction
from .verify import (
    CHECKS,
    check_afp_scaling,
    check_critical_alpha,
    check_dolzhenko_sharpness,
    check_peller_small_p,
    fit_exponent,
    run_check,
    run_manifest,
)

EXIT_OK, EXIT_FAIL, EXIT_NONCONVERGED = 0, 1, 2
REPORT_FIELDS = ["name", "instance", "lhs", "rhs", "margin", "pass"]
NORM_FIELDS = ["value", "p", "alpha", "kind", "error_estimate"]


class UsageError(Exception):
    pass


def parse_ns(text):
    """``"2..256"`` -> powers of two in ``[2, 256]``; ``"2,4,8"`` -> that list."""
    text = text.strip()
    if ".." in text:
        lo, hi = (int(x) for x in text.split("..", 1))
        if lo < 1 or hi < lo:
            raise UsageError(f"bad range {text!r}")
        out, k = [], 1
        while k <= hi:
            if k >= lo:
                out.append(k)
            k *= 2
        return out
    return [int(x) for x in text.split(",") if x.strip()]


def load_instance(path):
    if path is None:
        raise UsageError("--in is required")
    with open(path) as fh:
        data = json.load(fh)
    if "zeros" in data:
        return BlaschkeProduct.from_dict(data)
    if "numerator" in data:
        return RationalFunction.from_dict(data)
    raise UsageError("instance JSON needs 'zeros' or 'numerator'")


def _open_out(path):
    if path in (None, "-"):
        return nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _write_rows(out, fields, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])


def run_norm(args):
    f = load_instance(args.input)
    space, p, alpha, tol = args.space, args.p, args.alpha, args.tol
    if space == "bergman":
        rep = bergman_norm(f, p, alpha, tol=tol)
    elif space == "a1":
        rep = a1_seminorm(f, p, alpha, tol=tol)
    elif space == "besov":
        rep = besov_seminorm(f, p, order=args.order, tol=tol)
    elif space == "bloch":
        rep = bloch_norm(f)
    elif space == "bmoa":
        rep = bmoa_upper(f)
    elif space == "garsia":
        rep = garsia_seminorm(f)
    else:
        if not isinstance(f, BlaschkeProduct):
            raise UsageError("--space I needs a Blaschke product instance")
        rep = I_integral(f, p, alpha, tol=tol)
    d = rep.to_dict()
    with _open_out(args.out) as out:
        if args.format == "json":
            out.write(json.dumps(d) + "\n")
        else:
            _write_rows(out, NORM_FIELDS, [[d[k] for k in NORM_FIELDS]])
    return EXIT_OK if rep.converged else EXIT_NONCONVERGED


def _check_params(args):
    params = {}
    for key in ("n", "p", "alpha", "radius", "trials", "eps", "r", "family", "kind", "tol"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.ns is not None:
        params["ns"] = parse_ns(args.ns)
    return params


def run_verify(args):
    if args.manifest:
        with open(args.manifest) as fh:
            reports = run_manifest(json.load(fh))
    else:
        if args.check is None:
            raise UsageError("--check or --manifest is required")
        if args.check not in CHECKS:
            raise UsageError(f"unknown check {args.check!r}; known: {', '.join(sorted(CHECKS))}")
        reports = run_check(args.check, _check_params(args), args.seed)
    with _open_out(args.out) as out:
        if args.format == "json":
            for r in reports:
                out.write(r.to_json() + "\n")
        else:
            _write_rows(out, REPORT_FIELDS,
                        [[r.name, r.instance, r.lhs, r.rhs, r.margin, r.passed] for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cumulative_exponents(xs, ys):
    out = []
    for k in range(1, len(xs) + 1):
        if k < 3:
            out.append("")
        else:
            out.append(fit_exponent(xs[:k], ys[:k])[0])
    return out


def run_sweep(args):
    if args.ns is None:
        raise UsageError("--ns is required")
    ns = parse_ns(args.ns)
    if len(ns) < 3:
        raise UsageError("degenerate fit: need at least 3 sweep points")
    p = args.p
    if args.sweep == "afp":
        res = check_afp_scaling(p, ns, args.family, args.seed, args.radius, args.tol)
    elif args.sweep == "critical":
        res = check_critical_alpha(p, args.eps, ns, tol=min(args.tol, 1e-10))
    elif args.sweep == "peller_small_p":
        res = check_peller_small_p(p, ns, args.family, args.seed, args.radius, args.tol)
    else:
        res = check_dolzhenko_sharpness(p, args.r, ns, tol=min(args.tol, 1e-10))
    xs, ys = list(res.xs), list(res.ys)
    with _open_out(args.out) as out:
        if args.format == "json":
            d = {"xs": xs, "ys": ys, "fitted_exponent": res.fitted_exponent,
                 "exponent_ci": res.exponent_ci, "target": res.target, "pass": res.passed,
                 "reports": [r.to_dict() for r in res.all_reports()]}
            out.write(json.dumps(d) + "\n")
        else:
            rows = [[n, y, c] for n, y, c in zip(xs, ys, _cumulative_exponents(xs, ys))]
            rows.append(["fit", res.fitted_exponent, res.exponent_ci])
            _write_rows(out, ["n", "value", "cumulative_exponent"], rows)
    return EXIT_OK if res.passed else EXIT_FAIL


def run_gen(args):
    n = args.n
    if n is None or n < 0:
        raise UsageError("--n must be a nonnegative integer")
    if args.kind == "monomial":
        B = BlaschkeProduct.monomial(n)
    elif args.kind == "mobius_power":
        r = args.r if args.r is not None else args.radius
        if r is None:
            raise UsageError("--r is required for mobius_power")
        if not 0.0 <= r < 1.0:
            raise UsageError("--r must lie in [0, 1)")
        B = BlaschkeProduct.mobius_power(n, r)
    else:
        radius = 0.9 if args.radius is None else args.radius
        B = random_blaschke(n, radius, args.seed)
    with _open_out(args.out) as out:
        out.write(B.to_json() + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="hbl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--tol", type=float, default=1e-9)

    sp = sub.add_parser("norm", help="compute one norm of an instance")
    sp.add_argument("--space", required=True,
                    choices=["bergman", "a1", "besov", "bloch", "bmoa", "garsia", "I"])
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--order", type=int, default=None, help="Besov derivative order")
    sp.add_argument("--in", dest="input", required=True)
    common(sp)
    sp.set_defaults(func=run_norm)

    sp = sub.add_parser("verify", help="run a named check or a manifest")
    sp.add_argument("--check", default=None)
    sp.add_argument("--manifest", default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--radius", type=float, default=None)
    sp.add_argument("--eps", type=float, default=None)
    sp.add_argument("--r", type=float, default=None)
    sp.add_argument("--ns", default=None)
    sp.add_argument("--family", default=None)
    sp.add_argument("--kind", default=None, help="Dolzhenko sub-check: growth, extension, sharpness")
    common(sp)
    sp.set_defaults(func=run_verify, tol=None)

    sp = sub.add_parser("sweep", help="scaling sweep over degrees")
    sp.add_argument("--sweep", required=True, choices=["afp", "critical", "dolzhenko", "peller_small_p"])
    sp.add_argument("--p", type=float, default=2.0)
    sp.add_argument("--ns", default=None)
    sp.add_argument("--eps", type=float, default=0.5)
    sp.add_argument("--family", default="monomial", choices=["monomial", "random", "mobius_power"])
    sp.add_argument("--radius", type=float, default=0.9)
    sp.add_argument("--r", type=float, default=0.9)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=run_sweep)

    sp = sub.add_parser("gen", help="write an instance JSON")
    sp.add_argument("--kind", required=True, choices=["blaschke", "monomial", "mobius_power"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radius", type=float, default=None)
    sp.add_argument("--r", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=run_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_FAIL
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"hbl: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (UsageError, DomainError, OSError, ValueError, KeyError) as exc:
        print(f"hbl: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
