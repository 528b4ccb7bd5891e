"""anacalc: certified calculus on function names from the command line.

Every printed value carries its error bar: `value +- 2^-n` means the
true result lies within 2**-n of the printed dyadic.  Results re-check
their own certificates (enclosure widths, tail bounds) before printing.

Exit codes: 0 ok, 2 bad descriptor/arguments, 3 resource cap exhausted,
4 I/O or empty sweep.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bench as benchmod
from .analytic01 import a_diff, a_eval, a_integrate, a_max, to_alpha, to_beta, to_gamma
from .dyadic import Dyadic, RealName, SeqName, ZERO, fraction_to_dyadic
from .encodings import BINARY, UNARY, hex_dump, wrap_advice, bin_encode
from .entire import EntireName, e_diff, e_eval, e_max_segment, e_restrict
from .errors import DecodeError, DomainError, InvalidNameError, ResourceError
from .fixtures import analytic_fixture, gevrey_fixture, series_fixture
from .gevrey import (
    empirical_lambda,
    g_diff,
    g_eval,
    g_integrate,
    g_max,
    gamma_to_lambda,
    lambda_to_gamma,
)
from .powerseries import PiSeries, ps_diff, ps_eval, ps_integrate, ps_max
from . import refcheck
from .socomplexity import sop_deg, sop_eval, sop_format, sop_parse

SERIES = {"zero", "geometric", "exp-series"}
ANALYTIC = {"exp", "pole"}
GEVREY = {"bump"}
ENTIRE = {"exp-entire", "zero-entire"}

# hand-calibrated header constants for the empirical lambda route
EMPIRICAL_C = {"bump": 2, "gpeak": 1, "exp": 2}


def parse_point(text: str) -> Fraction:
    s = text.strip()
    if "*2^" in s:
        return Dyadic.parse(s).to_fraction()
    if "/" in s:
        p, q = s.split("/", 1)
        return Fraction(int(p), int(q))
    return Fraction(s)


def parse_interval(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError("interval must be a,b")
    return parse_point(parts[0]), parse_point(parts[1])


def fixture_kind(name: str) -> str:
    if name in SERIES:
        return "series"
    if name in ANALYTIC or name.startswith("gauss:"):
        return "analytic"
    if name in GEVREY or name.startswith("gpeak:"):
        return "gevrey"
    if name in ENTIRE:
        return "entire"
    raise DomainError(f"unknown fixture {name!r}")


def load_series_descriptor(path: str) -> PiSeries:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError:
        raise
    except json.JSONDecodeError as exc:
        raise DecodeError(f"descriptor is not valid JSON: {exc}")
    if doc.get("kind") != "pi":
        raise DecodeError("descriptor kind must be 'pi'")
    coeffs = doc.get("coeffs")
    if coeffs in ("exp", "geometric", "zero"):
        return series_fixture("exp-series" if coeffs == "exp" else coeffs)
    if coeffs != "explicit":
        raise DecodeError(f"unknown coefficient scheme {coeffs!r}")
    try:
        values = [Dyadic.parse(v) for v in doc["values"]]
        K = int(doc["K"])
        A = int(doc["A"])
    except (KeyError, ValueError) as exc:
        raise DecodeError(f"bad explicit descriptor: {exc}")
    if not doc.get("exact", True):
        raise DecodeError("explicit coefficients must be flagged exact")

    def q(j: int, n: int):
        return (values[j] if j < len(values) else ZERO), ZERO

    return PiSeries(SeqName(q, tag="explicit"), K, A)


def entire_fixture(name: str) -> EntireName:
    if name == "exp-entire":
        return EntireName.exp()
    if name == "zero-entire":
        return EntireName.zero()
    raise DomainError(f"unknown entire fixture {name!r}")


def render(value: Dyadic, n: int) -> str:
    digits = max(4, (n * 302) // 1000 + 2)
    return f"{value.decimal(digits)} +- 2^-{n}"


def _gauss_name(args) -> str:
    if args.fixture == "gauss" and args.K is not None and args.k is not None:
        return f"gauss:{args.K},{args.k}"
    return args.fixture


def _gevrey_lambda(name: str):
    g = gevrey_fixture(name)
    c = EMPIRICAL_C["gpeak" if name.startswith("gpeak:") else name]
    return empirical_lambda(g, c)


def cmd_eval(args) -> int:
    n = args.bits
    x = parse_point(args.point)
    if args.descriptor:
        f = load_series_descriptor(args.descriptor)
        kind = "series"
        name = args.descriptor
    else:
        name = _gauss_name(args)
        kind = fixture_kind(name)
    if kind == "series":
        if not args.descriptor:
            f = series_fixture(name)
        re, im = ps_eval(f, RealName.from_fraction(x), n)
        out = render(re, n) if im.is_zero() else f"{render(re, n)} + i {render(im, n)}"
        print(out)
        if args.dump_name:
            payload = bin_encode(paper_integer(re, n))
            word = wrap_advice(wrap_advice(payload, f.A, BINARY), f.K, UNARY)
            for line in hex_dump(word):
                print(line)
    elif kind == "analytic":
        f = analytic_fixture(name)
        re, im = a_eval(f, RealName.from_fraction(x), n)
        print(render(re, n))
    elif kind == "gevrey":
        lam = _gevrey_lambda(name)
        print(render(g_eval(lam, fraction_to_dyadic(x, n + 8), n), n))
    else:
        f = entire_fixture(name)
        zb = args.zbound if args.zbound else max(1, abs(x.numerator // x.denominator) + 1)
        re, im = e_eval(f, RealName.from_fraction(x), zb, n)
        print(render(re, n))
    return 0


def paper_integer(x: Dyadic, n: int) -> int:
    """The integer a with |x - a / 2^(n+1)| <= 2^-n (conformance form)."""
    scaled = x.scale2(n + 1)
    return scaled.round_nearest(-1).floor_int()


def cmd_max(args) -> int:
    n = args.bits
    u, v = parse_interval(args.interval)
    name = _gauss_name(args)
    kind = fixture_kind(name)
    un, vn = RealName.from_fraction(u), RealName.from_fraction(v)
    if kind == "series":
        f = series_fixture(name)
        val = ps_max(f, un, vn, n, mode=args.mode)
    elif kind == "analytic":
        val = a_max(to_alpha(analytic_fixture(name)), un, vn, n)
    elif kind == "gevrey":
        val = g_max(_gevrey_lambda(name), un, vn, n)
    else:
        f = entire_fixture(name)
        sb = args.segbound or max(1, int(max(abs(u), abs(v))) + 1)
        val = e_max_segment(f, un, vn, sb, n)
    print(render(val, n))
    return 0


def cmd_integrate(args) -> int:
    n = args.bits
    u, v = parse_interval(args.interval)
    name = _gauss_name(args)
    kind = fixture_kind(name)
    un, vn = RealName.from_fraction(u), RealName.from_fraction(v)
    if kind == "series":
        val = ps_integrate(series_fixture(name), un, vn, n)
    elif kind == "analytic":
        val = a_integrate(to_alpha(analytic_fixture(name)), un, vn, n)
    elif kind == "gevrey":
        val = g_integrate(_gevrey_lambda(name), un, vn, n)
    else:
        raise DomainError("integrate a restricted entire name via its series form")
    print(render(val, n))
    return 0


def cmd_diff(args) -> int:
    n = args.bits
    d = args.order
    x = parse_point(args.point)
    name = _gauss_name(args)
    kind = fixture_kind(name)
    if kind == "series":
        f = ps_diff(series_fixture(name), d)
        val = ps_eval(f, RealName.from_fraction(x), n)[0]
    elif kind == "analytic":
        g = a_diff(to_alpha(analytic_fixture(name)), d)
        val = g.eval(fraction_to_dyadic(x, n + 8), n)[0]
    elif kind == "gevrey":
        lam = g_diff(_gevrey_lambda(name), d)
        val = g_eval(lam, fraction_to_dyadic(x, n + 8), n)
    else:
        f = e_diff(entire_fixture(name), d)
        zb = args.zbound or max(1, abs(x.numerator // x.denominator) + 1)
        val = e_eval(f, RealName.from_fraction(x), zb, n)[0]
    print(render(val, n))
    return 0


def cmd_convert(args) -> int:
    name = _gauss_name(args)
    kind = fixture_kind(name)
    if kind != "analytic":
        raise DomainError("convert operates on analytic fixtures")
    f = analytic_fixture(name)
    target = args.to
    if target == "alpha":
        a = to_alpha(f)
        print(f"alpha: M={a.M} L={a.Ls} A={a.As}")
    elif target == "beta":
        b = to_beta(f)
        print(f"beta: L={b.L} B={b.B}")
    elif target == "gamma":
        g = to_gamma(f)
        print(f"gamma: A={g.A} K={g.K}")
    else:
        raise DomainError(f"unknown target {target!r}")
    return 0


def cmd_gevrey_convert(args) -> int:
    g = gevrey_fixture(args.fixture)
    if args.route == "chain":
        lam = gamma_to_lambda(g)
    else:
        lam = _gevrey_lambda(args.fixture)
    print(f"lambda: C={lam.C} ell={lam.ell} origin={lam.origin}")
    if args.back:
        g2 = lambda_to_gamma(lam)
        print(f"gamma: A={g2.A} K={g2.K} ell={g2.ell}")
    return 0


def cmd_sop(args) -> int:
    p = sop_parse(args.expr)
    if args.deg:
        print(sop_deg(p).format())
    if args.eval:
        try:
            n_part, l_part = args.eval.split(";")
            n_val = int(n_part.split("=", 1)[1])
            l_expr = l_part.split("=", 1)[1]
        except (ValueError, IndexError):
            raise DomainError("--eval wants 'n=<int>;l=m^<d>'")
        if not l_expr.startswith("m^"):
            raise DomainError("the length function must be m^<d>")
        d = int(l_expr[2:])
        print(sop_eval(p, n_val, lambda m: m ** d))
    if not args.deg and not args.eval:
        print(sop_format(p))
    return 0


def cmd_oracle(args) -> int:
    n = args.bits
    x = parse_point(args.point)
    val = refcheck.oracle_eval(args.fixture, x, n)
    print(render(val.round_nearest(n + 2), n))
    return 0


def cmd_bench(args) -> int:
    if args.op == "eval":
        ns = [int(s) for s in args.ns.split(",") if s]
        if not ns:
            print("empty sweep", file=sys.stderr)
            return 4
        records = benchmod.sweep_ps_eval(args.fixture, ns)
    elif args.op == "gmax":
        levels = [int(s) for s in args.levels.split(",") if s]
        if not levels:
            print("empty sweep", file=sys.stderr)
            return 4
        records = benchmod.sweep_gmax_levels(levels, args.n)
    else:
        raise DomainError(f"unknown bench op {args.op!r}")
    if args.csv:
        benchmod.write_csv(args.csv, records)
    for r in records:
        print(",".join(str(c) for c in r.row()))
    for param, slope in benchmod.slope_by_param(records).items():
        print(f"# slope[param={param}] = {slope:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anacalc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, point=False, interval=False):
        p.add_argument("--fixture", default=None)
        p.add_argument("--descriptor", default=None)
        p.add_argument("--bits", type=int, required=True)
        p.add_argument("--K", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--zbound", type=int, default=None)
        p.add_argument("--segbound", type=int, default=None)
        if point:
            p.add_argument("--point", required=True)
        if interval:
            p.add_argument("--interval", required=True)

    p = sub.add_parser("eval", help="evaluate a name at a point")
    common(p, point=True)
    p.add_argument("--dump-name", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("max", help="certified maximum over an interval")
    common(p, interval=True)
    p.add_argument("--mode", choices=["re", "abs"], default="re")
    p.set_defaults(fn=cmd_max)

    p = sub.add_parser("integrate", help="certified definite integral")
    common(p, interval=True)
    p.set_defaults(fn=cmd_integrate)

    p = sub.add_parser("diff", help="evaluate an iterated derivative")
    common(p, point=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("convert", help="convert between analytic encodings")
    p.add_argument("--fixture", required=True)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--from", dest="frm", default="gamma")
    p.add_argument("--to", required=True)
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("gevrey-convert", help="Gevrey gamma <-> lambda")
    p.add_argument("--fixture", required=True)
    p.add_argument("--route", choices=["chain", "empirical"], default="empirical")
    p.add_argument("--back", action="store_true")
    p.set_defaults(fn=cmd_gevrey_convert)

    p = sub.add_parser("gevrey-max", help="maximize a Gevrey fixture")
    p.add_argument("--fixture", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--bits", type=int, required=True)
    p.set_defaults(fn=lambda args: print(render(
        g_max(_gevrey_lambda(args.fixture),
              RealName.from_fraction(parse_interval(args.interval)[0]),
              RealName.from_fraction(parse_interval(args.interval)[1]),
              args.bits), args.bits)) or 0)

    p = sub.add_parser("sop", help="second-order polynomial calculus")
    p.add_argument("--expr", required=True)
    p.add_argument("--deg", action="store_true")
    p.add_argument("--eval", default=None, metavar="n=4;l=m^2")
    p.set_defaults(fn=cmd_sop)

    p = sub.add_parser("oracle", help="brute-force refcheck oracle passthrough")
    p.add_argument("--fixture", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--bits", type=int, required=True)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("bench", help="runtime-scaling sweeps with CSV output")
    p.add_argument("--op", choices=["eval", "gmax"], required=True)
    p.add_argument("--fixture", default="exp-series")
    p.add_argument("--ns", default="")
    p.add_argument("--levels", default="")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=cmd_bench)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, DecodeError, InvalidNameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
