"""Command line surface.

Commands: sig, branch-cover, theta, theta-m, genus-bound, infer, reproduce.
Exit codes: 0 success, 1 usage error, 2 ledger or hypothesis error,
3 reproduction failure.  Output is deterministic for fixed inputs; --json
switches to a machine-readable report.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import reproduce as reproduce_mod
from .branched import CoverDataError, CoverInput, cover_topology
from .cyclotomic import is_prime
from .definite import (
    HomologyClass,
    HypothesisError,
    compare_bounds,
    genus_bound_odd_q,
    genus_bound_q2,
)
from .infer import BoundInterval, LedgerInconsistentError, infer_theta, infer_theta_m
from .knots import ExpressionError, expr_to_string, parse_expression
from .ledger import Ledger, LedgerError, load_ledger, load_seed_ledger
from .seifert import SeifertMatrix, SeifertMatrixError
from .sequences import InconsistentDataError
from .signatures import SingularFormError, lt_signature

USAGE_ERROR = 1
DATA_ERROR = 2
REPRODUCE_FAILURE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _frac_json(x):
    if x is None:
        return None
    f = Fraction(x)
    return {"numerator": f.numerator, "denominator": f.denominator}


def _interval_json(iv: BoundInterval) -> dict:
    return {
        "lower": _frac_json(iv.lower),
        "upper": _frac_json(iv.upper),
        "exact": iv.exact,
        "justification": iv.justification,
        "provenance": iv.provenance,
    }


def _load(args) -> Ledger:
    if args.ledger is None:
        return load_seed_ledger()
    return load_ledger(args.ledger)


def _check_q(q: int) -> int:
    if not is_prime(q):
        raise _UsageError(f"--q must be prime, got {q}")
    return q


def _emit(args, human_lines, json_obj) -> None:
    if args.json:
        print(json.dumps(json_obj, indent=1, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _interval_lines(iv: BoundInterval, verbose: bool) -> list[str]:
    lines = []
    if iv.exact:
        lines.append(f"theta = {_frac_str(iv.value)}")
    elif iv.upper is None:
        lines.append(f"theta >= {_frac_str(iv.lower)} (no upper bound derivable)")
    else:
        lines.append(f"theta in [{_frac_str(iv.lower)}, {_frac_str(iv.upper)}]")
    if verbose:
        lines.append("derivation:")
        lines += [f"  {line}" for line in iv.justification]
        if iv.provenance:
            lines.append("ledger facts used:")
            lines += [f"  {k}: {v}" for k, v in iv.provenance.items()]
    return lines


# -- commands -----------------------------------------------------------------


def _cmd_sig(args) -> int:
    q = _check_q(args.q)
    if (args.knot is None) == (args.matrix is None):
        raise _UsageError("give exactly one of --knot or --matrix")
    if args.matrix is not None:
        try:
            rows = json.loads(args.matrix)
            V = SeifertMatrix.from_rows(rows)
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise _UsageError(f"bad --matrix: {e}") from None
        label = "matrix"
    else:
        ledger = _load(args)
        atom = ledger.atoms.get(args.knot)
        if atom is None:
            raise LedgerError(f"unknown knot atom {args.knot!r}")
        if atom.seifert is None:
            raise LedgerError(
                f"atom {args.knot!r} has no Seifert matrix in the ledger"
            )
        V = atom.seifert
        label = args.knot
    per_j = {j: lt_signature(V, q, j) for j in range(1, q)}
    total = sum(per_j.values())
    lines = [f"Levine-Tristram signatures of {label} at the {q}-th roots of unity:"]
    lines += [f"  j = {j}: {v}" for j, v in per_j.items()]
    lines.append(f"sigma^({q}) = {total}")
    _emit(args, lines, {
        "command": "sig", "query": label, "q": q,
        "per_j": {str(j): v for j, v in per_j.items()}, "sigma_q": total,
    })
    return 0


def _cmd_branch_cover(args) -> int:
    q = _check_q(args.q)
    inp = CoverInput(q=q, b2X=args.b2x, sigmaX=args.sigmax, genus=args.genus,
                     self_int=args.self_int, sigq_out=args.sigq_out,
                     sigq_in=args.sigq_in)
    t = cover_topology(inp)
    lines = [
        f"degree-{q} branched cover:",
        f"  b2      = {t.b2}",
        f"  sigma   = {t.sigma}",
        f"  b_plus  = {t.b_plus}",
        f"  b_minus = {t.b_minus}",
    ]
    _emit(args, lines, {
        "command": "branch-cover", "q": q, "b2": t.b2, "sigma": t.sigma,
        "b_plus": t.b_plus, "b_minus": t.b_minus,
    })
    return 0


def _parse_expr_arg(text: str):
    try:
        return parse_expression(text)
    except ExpressionError as e:
        raise _UsageError(str(e)) from None


def _cmd_theta(args) -> int:
    q = _check_q(args.q)
    ledger = _load(args)
    expr = _parse_expr_arg(args.expr)
    iv = infer_theta(ledger, expr, q=q)
    lines = [f"theta^({q})({expr_to_string(expr)}):"]
    lines += _interval_lines(iv, verbose=not args.quiet)
    _emit(args, lines, {
        "command": "theta", "query": expr_to_string(expr), "q": q,
        "result": _interval_json(iv),
    })
    return 0


def _cmd_theta_m(args) -> int:
    q = _check_q(args.q)
    if args.m < 0:
        raise _UsageError(f"--m must be >= 0, got {args.m}")
    ledger = _load(args)
    expr = _parse_expr_arg(args.expr)
    iv = infer_theta_m(ledger, expr, q, args.m)
    lines = [f"theta^({q})({expr_to_string(expr)}, m={args.m}):"]
    lines += _interval_lines(iv, verbose=not args.quiet)
    _emit(args, lines, {
        "command": "theta-m", "query": expr_to_string(expr), "q": q, "m": args.m,
        "result": _interval_json(iv),
    })
    return 0


def _parse_class(text: str, rank: int) -> HomologyClass:
    try:
        coords = tuple(int(c) for c in text.split(","))
    except ValueError as e:
        raise _UsageError(f"bad --class: {e}") from None
    if len(coords) != rank:
        raise _UsageError(
            f"--class has {len(coords)} coordinates but --rank is {rank}"
        )
    return HomologyClass(coords)


def _torus_n_from_expr(text: str) -> int:
    # the comparison table is specific to T(3, 6n+1)
    t = text.replace(" ", "")
    if t.startswith("T(3,") and t.endswith(")"):
        k = int(t[4:-1])
        if k % 6 == 1:
            return k // 6
    raise _UsageError(
        f"--compare needs a knot of the form T(3,6n+1), got {text!r}"
    )


def _cmd_genus_bound(args) -> int:
    q = _check_q(args.q)
    ledger = _load(args)
    expr = _parse_expr_arg(args.expr)
    a = _parse_class(args.cls, args.rank)
    if q == 2:
        bound = genus_bound_q2(ledger, expr, a)
    else:
        bound = genus_bound_odd_q(q, ledger, expr, a)
    lines = [
        f"genus bound for {expr_to_string(expr)} in class {list(a.coords)} "
        f"(rank {args.rank}, q = {q}):",
        f"  m = {bound.m}, a^2 = {bound.a_square}",
        f"  g >= {_frac_str(bound.value)} "
        f"({'exact theta' if bound.exact_theta else 'theta interval lower end'})",
    ]
    obj = {
        "command": "genus-bound", "query": expr_to_string(expr), "q": q,
        "rank": args.rank, "class": list(a.coords), "m": bound.m,
        "a_square": bound.a_square, "bound": _frac_json(bound.value),
        "exact_theta": bound.exact_theta,
        "theta": _interval_json(bound.theta_interval),
    }
    if args.compare:
        n = _torus_n_from_expr(args.expr)
        if not a.divisible_by(2):
            raise _UsageError("--compare needs an even class a = 2x")
        x = a.divide(2)
        c = compare_bounds(n, x.coords, args.rank)
        lines.append("four-bound comparison (theta, tau, sig1, sig2):")
        lines.append(
            f"  theta: {_frac_str(c.theta_bound)}   tau: {c.tau_bound}   "
            f"sig1: {c.sig1_bound}   sig2: {c.sig2_bound}"
        )
        obj["comparison"] = {
            "theta": _frac_json(c.theta_bound), "tau": c.tau_bound,
            "sig1": c.sig1_bound, "sig2": c.sig2_bound,
        }
    _emit(args, lines, obj)
    return 0


def _cmd_infer(args) -> int:
    q = _check_q(args.q)
    ledger = _load(args)
    expr = _parse_expr_arg(args.expr)
    iv = infer_theta(ledger, expr, q=q)
    miv = infer_theta(ledger, parse_expression(f"-({args.expr})"), q=q)
    lines = [f"inference for {expr_to_string(expr)} at q = {q}:"]
    lines += _interval_lines(iv, verbose=False)
    lines.append(f"mirror: {_interval_lines(miv, verbose=False)[0]}")
    lines.append("derivation:")
    lines += [f"  {line}" for line in iv.justification]
    if iv.provenance:
        lines.append("ledger facts used:")
        lines += [f"  {k}: {v}" for k, v in iv.provenance.items()]
    _emit(args, lines, {
        "command": "infer", "query": expr_to_string(expr), "q": q,
        "result": _interval_json(iv), "mirror": _interval_json(miv),
    })
    return 0


def _cmd_reproduce(args) -> int:
    if args.list:
        lines = []
        obj = []
        for c in reproduce_mod.list_checks():
            lines.append(f"[{c.section}] {c.check_id}: {c.description}")
            obj.append({"id": c.check_id, "section": c.section,
                        "description": c.description})
        _emit(args, lines, {"command": "reproduce", "checks": obj})
        return 0
    ledger = _load(args)
    results = reproduce_mod.run(ledger, section=args.section)
    if not results:
        raise _UsageError(f"no checks in section {args.section}")
    lines = []
    obj = []
    failures = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        lines.append(f"{status}  [{r.section}] {r.check_id}: {r.description}")
        if not r.ok:
            failures += 1
            lines.append(f"      got:  {r.got}")
            lines.append(f"      want: {r.want}")
            if r.note:
                lines.append(f"      note: {r.note}")
        obj.append({
            "id": r.check_id, "section": r.section, "ok": r.ok,
            "got": r.got, "want": r.want, "note": r.note,
        })
    lines.append(f"{len(results) - failures}/{len(results)} checks passed")
    _emit(args, lines, {"command": "reproduce", "results": obj,
                        "passed": len(results) - failures, "total": len(results)})
    return REPRODUCE_FAILURE if failures else 0


# -- entry point ---------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="knotconc",
                     description="knot concordance bounds from branched covers")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ledger", default=None,
                        help="path to a ledger JSON file (default: bundled seed)")
    common.add_argument("--q", type=int, default=2, help="prime order (default 2)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sig", parents=[common],
                       help="exact Levine-Tristram signatures and sigma^(q)")
    p.add_argument("--knot", help="ledger atom with a Seifert matrix")
    p.add_argument("--matrix", help='inline Seifert matrix, e.g. "[[-1,1],[0,-1]]"')
    p.set_defaults(fn=_cmd_sig)

    p = sub.add_parser("branch-cover", parents=[common],
                       help="b2 / sigma / b+- of a cyclic branched cover")
    p.add_argument("--b2x", type=int, required=True)
    p.add_argument("--sigmax", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--self-int", type=int, default=0, dest="self_int")
    p.add_argument("--sigq-out", type=int, required=True, dest="sigq_out")
    p.add_argument("--sigq-in", type=int, default=None, dest="sigq_in")
    p.set_defaults(fn=_cmd_branch_cover)

    p = sub.add_parser("theta", parents=[common], help="theta^(q) of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--quiet", action="store_true", help="value only, no derivation")
    p.set_defaults(fn=_cmd_theta)

    p = sub.add_parser("theta-m", parents=[common], help="the m-shifted invariant")
    p.add_argument("--expr", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(fn=_cmd_theta_m)

    p = sub.add_parser("genus-bound", parents=[common],
                       help="genus lower bound in a negative definite 4-manifold")
    p.add_argument("--expr", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--class", required=True, dest="cls",
                   help="comma-separated coordinates of the surface class")
    p.add_argument("--compare", action="store_true",
                   help="also print the four-bound comparison (T(3,6n+1) only)")
    p.set_defaults(fn=_cmd_genus_bound)

    p = sub.add_parser("infer", parents=[common],
                       help="theta bounds with the full derivation trace")
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=_cmd_infer)

    p = sub.add_parser("reproduce", parents=[common],
                       help="recompute the published example values")
    p.add_argument("--section", type=int, default=None)
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE_ERROR
    try:
        return args.fn(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (LedgerError, LedgerInconsistentError, HypothesisError,
            InconsistentDataError, CoverDataError, SingularFormError,
            SeifertMatrixError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
