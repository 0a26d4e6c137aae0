"""Command-line interface: reduce, verify, phi, eval, relations.

Exit codes: 0 success / PASS, 1 semantic failure (FAIL, cancellation or
evaluation failure), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import calculus, reduction
from .errors import CancellationFailure, MplogError, ParseError, QuotientLayerRejected
from .exactfield import INF
from .numeval import DEFAULT_EPS, EvalConfig, eval_lincomb, verify_identity
from .parsing import parse_lincomb, parse_point, parse_symbol
from .symbols import EXACT, QUOTIENT, Identity, dumps, identity_to_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _points(text, count=None):
    names = [t.strip() for t in text.split(",") if t.strip()]
    if count is not None and len(names) != count:
        raise InputError(f"expected {count} points, got {len(names)}")
    try:
        pts = [parse_point(t) for t in names]
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    for k, p in enumerate(pts):
        if any(p == q for q in pts[:k]):
            raise InputError(f"points must be distinct ({p.to_text()} repeats)")
    return pts


# --------------------------------------------------------------------------

def cmd_reduce(args):
    if args.n < 3:
        raise InputError("--n must be at least 3")
    if args.odd and args.n % 2 == 0:
        raise InputError("--odd needs odd n")
    if args.points:
        pts = _points(args.points, args.n + 2)
    else:
        a0, word, end = reduction.default_points(args.n)
        pts = _points(",".join([a0, *word, end]))
    marker = parse_point(args.marker)
    if any(marker == p for p in pts):
        raise InputError("marker must differ from the points")
    fn = reduction.reduce_odd if args.odd else reduction.reduce_symbol
    try:
        out = fn(pts[0], pts[1:-1], pts[-1], marker, args.mode)
    except CancellationFailure as exc:
        print(f"cancellation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(out.to_json(), args.out)
    singles = len(out.result.singles())
    print(f"terms: {len(out.result)} (singles {singles}, products {len(out.result) - singles}); "
          f"leading coefficient {out.leading_coeff}; max variable count {out.max_variable_count()} "
          f"(bound {args.n - 2})", file=sys.stderr)
    return EXIT_OK


def _load_identity(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        if obj.get("kind") == "reduction":
            return reduction.ReductionOutput.from_json_obj(obj).identity()
        return Identity.from_json_obj(obj)
    except (KeyError, ValueError, TypeError, MplogError) as exc:
        raise InputError(f"malformed identity file: {exc}") from exc


def _floats(text):
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise InputError(f"bad number list {text!r}") from exc


def cmd_verify(args):
    ident = _load_identity(args.file)
    if ident.layer != EXACT:
        print("quotient-layer identities hold only modulo products and cannot be checked numerically; "
              "emit the exact layer instead (e.g. reduce --mode exact)", file=sys.stderr)
        return EXIT_INPUT
    eps = _floats(args.eps_sequence) if args.eps_sequence else DEFAULT_EPS
    try:
        rep = verify_identity(ident, trials=args.trials, tol=args.tol, seed=args.seed, eps_sequence=eps)
    except QuotientLayerRejected as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    if args.report:
        _write(dumps(rep.to_json_obj()), args.report)
    print(f"{'PASS' if rep.passed else 'FAIL'}: max residual {rep.max_residual:.3e} over {args.trials} trials"
          f"{' (epsilon-regularized)' if rep.regularized else ''}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_phi(args):
    from .weight4 import phi_emit

    pts = [t.strip() for t in args.points.split(",")]
    if len(pts) != 6 or len(set(pts)) != 6 or not all(p.isidentifier() for p in pts):
        raise InputError("--points needs six distinct identifiers")
    try:
        rep = phi_emit(tuple(pts))
    except MplogError as exc:
        print(f"phi pipeline failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(rep.to_json(compare=args.compare_reference), args.out)
    print(rep.message, file=sys.stderr)
    if args.compare_reference:
        counts = rep.to_json_obj()["status_counts"]
        print(f"reference terms: {rep.reference_count}; " + ", ".join(f"{k} {v}" for k, v in counts.items()),
              file=sys.stderr)
    return EXIT_OK


def _assignment(text):
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise InputError(f"bad assignment {part!r}; use name=value")
        name, value = (t.strip() for t in part.split("=", 1))
        try:
            out[name] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            try:
                out[name] = complex(value.replace("i", "j"))
            except ValueError as exc:
                raise InputError(f"bad value {value!r}") from exc
    return out


def cmd_eval(args):
    try:
        L = parse_lincomb(args.expr)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    cfg = EvalConfig(_assignment(args.at), epsilon=args.epsilon)
    missing = set().union(*[s.variables() for s in L.symbols()]) - set(cfg.assignment) if L.symbols() else set()
    if missing:
        raise InputError(f"no value given for {', '.join(sorted(missing))}")
    try:
        v = eval_lincomb(L, cfg)
    except MplogError as exc:
        print(f"evaluation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    d = args.digits
    print(f"{v.real:.{d}f} {v.imag:+.{d}f}i")
    return EXIT_OK


_RELATIONS = ("shuffle", "marker-change", "marker-swap", "chen", "reverse", "antipode", "two-term",
              "transposition", "block-shuffle", "D")


def cmd_relations(args):
    def sym(text, what="--symbol"):
        if not text:
            raise InputError(f"{what} is required for --kind {args.kind}")
        try:
            return parse_symbol(text)
        except ParseError as exc:
            raise InputError(str(exc)) from exc

    def point(text, what):
        if not text:
            raise InputError(f"{what} is required for --kind {args.kind}")
        try:
            return parse_point(text)
        except ParseError as exc:
            raise InputError(str(exc)) from exc

    k = args.kind
    try:
        if k == "shuffle":
            ident = calculus.shuffle_identity(sym(args.symbol), sym(args.other, "--other"))
        elif k == "marker-change":
            ident = calculus.marker_change(sym(args.symbol), point(args.y, "--y"))
        elif k == "marker-swap":
            ident = calculus.marker_swap_relation(sym(args.symbol), args.i)
        elif k == "chen":
            ident = calculus.path_split_chen(sym(args.symbol), point(args.y, "--y"))
        elif k == "reverse":
            ident = calculus.reverse_path(sym(args.symbol))
        elif k == "antipode":
            ident = calculus.antipode_identity(sym(args.symbol))
        elif k == "two-term":
            ident = calculus.path_two_term_exact(sym(args.symbol), point(args.y, "--y"))
            if args.mode == QUOTIENT:
                ident = ident.quotient()
        elif k == "transposition":
            ident = reduction.transposition_relation(sym(args.symbol), args.i, args.j, args.mode)
        elif k == "D":
            ident = reduction.relation_D(sym(args.symbol), args.i, args.mode)
        else:
            s = sym(args.symbol)
            ident = reduction.block_shuffle_relation(s.base, s.word, s.end, s.marker, args.mode)
    except (ValueError, MplogError) as exc:
        raise InputError(str(exc)) from exc
    _write(identity_to_json(ident), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="mplog", description="Multiple polylogarithm symbol calculus.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", help="reduce a weight-n symbol to <= n-2 variables")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--points", help="comma-separated a0,a1,...,an,end (default a0,a1,...,an,e)")
    r.add_argument("--marker", default="inf")
    r.add_argument("--mode", choices=[QUOTIENT, EXACT], default=QUOTIENT)
    r.add_argument("--odd", action="store_true", help="odd-n variant with leading coefficient 1")
    r.add_argument("--out", default="-")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="numerically verify an exact identity file")
    v.add_argument("file")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--tol", type=float, default=1e-6)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--eps-sequence", default=None, help="comma-separated, default 1e-2,1e-3,1e-4")
    v.add_argument("--report", default=None)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("phi", help="weight-4 phi report")
    f.add_argument("--points", default="a,b,c,d,e,f")
    f.add_argument("--compare-reference", action="store_true", help="include the comparison with the embedded reference table")
    f.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the pipeline is exact")
    f.add_argument("--out", default="-")
    f.set_defaults(func=cmd_phi)

    e = sub.add_parser("eval", help="evaluate a symbol or combination")
    e.add_argument("--expr", required=True)
    e.add_argument("--digits", type=int, default=10)
    e.add_argument("--at", default="", help="assignment like x=1/2,y=3")
    e.add_argument("--epsilon", type=float, default=None)
    e.set_defaults(func=cmd_eval)

    rel = sub.add_parser("relations", help="emit one exact or quotient identity")
    rel.add_argument("--kind", choices=_RELATIONS, required=True)
    rel.add_argument("--symbol")
    rel.add_argument("--other")
    rel.add_argument("--y", help="new marker or split point")
    rel.add_argument("--i", type=int, default=1)
    rel.add_argument("--j", type=int, default=2)
    rel.add_argument("--mode", choices=[QUOTIENT, EXACT], default=EXACT)
    rel.add_argument("--out", default="-")
    rel.set_defaults(func=cmd_relations)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["main", "build_parser", "INF"]
