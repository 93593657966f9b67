"""Command line interface: ``invariantcr <command> ...``.

Output is JSON on stdout (CSV for sweeps).  Failures print a JSON error
object on stderr.  Exit status: 0 success, 2 a verification failed,
3 precision exhausted, 4 bad parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .cyclotomic import DEFAULT_PRECISION
from .errors import (
    BadParameters,
    DimensionMismatch,
    DomainViolation,
    EnumerationInvalid,
    InvariantCRError,
    NotUnitary,
    OrderExceeded,
    PrecisionExhausted,
)
from .fpq import (
    fp_pm1_structure,
    fpq_compute,
    fpq_csv,
    fpq_sweep,
    golden_ratio_scalar,
    prime_test,
    proposition41_check,
)
from .groups import UnitaryMatrix, generators_from_json, group_from_spec
from .invariant import phi_gamma, verify_invariant
from .quadmap import build_gp, build_W, verify_quadmap
from .signature import coeff_matrix, decompose, inertia, signature_csv, signature_ratio

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_PRECISION = 3
EXIT_BAD_PARAMETERS = 4

PRECISION_ENV = "INVARIANTCR_PRECISION_BITS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _range(text: str) -> range:
    """'3..40' -> range(3, 41)."""
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"expected a range like 3..40, got {text!r}") from None


# -- group selection ---------------------------------------------------------


def _add_group_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--gamma-pq", nargs=2, type=int, metavar=("P", "Q"))
    g.add_argument("--scalar", type=int, metavar="P")
    g.add_argument("--dihedral", type=int, metavar="P")
    g.add_argument("--metacyclic", nargs=3, metavar=("P", "Q", "B_JSON"), help="B as a JSON file")
    g.add_argument("--example-3-3", action="store_true")
    g.add_argument("--generators-file", metavar="FILE", help='JSON {"elements": [matrix, ...]}')
    p.add_argument("--dim", type=int, default=2, help="dimension for --scalar")


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _group(args):
    if args.gamma_pq:
        return group_from_spec("gamma-pq", *args.gamma_pq)
    if args.scalar is not None:
        return group_from_spec("scalar", args.scalar, args.dim)
    if args.dihedral is not None:
        return group_from_spec("dihedral", args.dihedral)
    if args.metacyclic:
        p, q, path = args.metacyclic
        return group_from_spec("metacyclic", int(p), int(q), UnitaryMatrix.from_json(_read_json(path)))
    if args.example_3_3:
        return group_from_spec("example-3-3")
    if not args.generators_file:
        raise UsageError("no group selected")
    return group_from_spec("generators", generators_from_json(_read_json(args.generators_file)))


# -- commands ----------------------------------------------------------------


def cmd_invariant(args) -> int:
    G = _group(args)
    phi = phi_gamma(G)
    report = verify_invariant(G, phi)
    diag = phi.diagonal()
    doc = {
        "group": {"order": G.order, "dim": G.dim, "labels": G.labels},
        "phi": phi.to_json(),
        "diagonal": diag.to_json(),
        "text": str(diag),
        "verification": report.to_json(),
    }
    if diag.is_diagonal_support():
        doc["moment"] = diag.to_moment().to_json()
        doc["moment_text"] = diag.to_moment().format()
    _emit(doc, args.output)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_signature(args) -> int:
    if args.sweep:
        if not args.family:
            raise UsageError("--sweep needs --family")
        rows = signature_ratio(args.family, _range(args.sweep), args.precision_bits)
        sys.stdout.write(signature_csv(rows))
        return EXIT_OK
    G = _group(args)
    P = phi_gamma(G).diagonal()
    ine = inertia(coeff_matrix(P), args.precision_bits)
    qm = decompose(P, args.precision_bits, method=args.method)
    doc = {
        "group": {"order": G.order, "dim": G.dim, "labels": G.labels},
        "inertia": ine.to_json(),
        "target": f"Q({ine.n_plus},{ine.n_minus})",
        "decomposition": qm.to_json(),
        "text": qm.format(),
    }
    _emit(doc, args.output)
    return EXIT_OK


def cmd_fpq(args) -> int:
    f = fpq_compute(args.p, args.q)
    doc = {"p": args.p, "q": args.q, "f": f.to_json(), "text": f.format()}
    if args.structure:
        doc["structure"] = fp_pm1_structure(args.p, strict=False).to_json() if args.q == args.p - 1 else None
    _emit(doc, args.output)
    return EXIT_OK


def cmd_primetest(args) -> int:
    _emit(prime_test(args.p, args.q).to_json(), args.output)
    return EXIT_OK


def cmd_quadmap(args) -> int:
    W = build_W(args.p)
    g = build_gp(args.p, W)
    report = verify_quadmap(g, (2, 2 * args.p + 1))
    doc = {
        "p": args.p,
        "source": report.to_json()["source"],
        "target": report.to_json()["target"],
        "convention": "z_1..z_{2p+1} negative, last two positive: -sum X + sum Y = 1",
        "N": W.n_positive,
        "degree": g.degree(),
        "verified": report.ok,
        "remainder": report.to_json()["remainder"],
        "map": {"plus": [c.to_json() for c in g.plus], "minus": [c.to_json() for c in g.minus]},
    }
    if args.text:
        doc["text"] = g.format()
    _emit(doc, args.output)
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_sweep(args) -> int:
    ps = _range(args.p)
    if args.kind == "fpq":
        pairs = []
        for p in ps:
            for q in args.q or [2]:
                q = p - 1 if q == -1 else q
                if 1 <= q < p:
                    pairs.append((p, q))
        sys.stdout.write(fpq_csv(fpq_sweep(pairs, args.precision_bits)))
    elif args.kind == "signature":
        rows = signature_ratio(args.family, ps, args.precision_bits)
        sys.stdout.write(signature_csv(rows))
    elif args.kind == "golden":
        print("p,S_p,root_lo,root_hi,gap_hi")
        for p in ps:
            g = golden_ratio_scalar(p, args.precision_bits)
            doc = g.to_json()
            gap = proposition41_check(p, [(1, 1)], args.precision_bits)[0].to_json()["gap"][1]
            print(f"{p},{g.value},{doc['root'][0]},{doc['root'][1]},{gap}")
    elif args.kind == "limit":
        x, y = (Fraction(v) for v in args.point.split(","))
        print("p,x,y,value_lo,target_lo,gap_hi,h_lo,h_hi")
        for p in ps:
            r = proposition41_check(p, [(x, y)], args.precision_bits)[0].to_json()
            print(f"{p},{x},{y},{r['value'][0]},{r['target'][0]},{r['gap'][1]},{r['h_p'][0]},{r['h_p'][1]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env = os.environ.get(PRECISION_ENV)
    default_bits = int(env) if env else DEFAULT_PRECISION
    parser = _Parser(prog="invariantcr", description="Group-invariant CR maps, exactly.")
    parser.add_argument("--precision-bits", type=int, default=default_bits, help=f"default {DEFAULT_PRECISION}, or ${PRECISION_ENV}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariant", help="invariant polynomial and its defining properties")
    _add_group_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("signature", help="inertia and ||F||^2 - ||G||^2 decomposition")
    _add_group_args(p, required=False)
    p.add_argument("--method", choices=["exact", "eigen"], default="exact")
    p.add_argument("--family", help="gamma-p-1, gamma-p-2, gamma-p-pm1, scalar, dihedral, gamma-p-q:<q>")
    p.add_argument("--sweep", metavar="P1..P2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("fpq", help="f_{p,q}(x, y)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--structure", action="store_true", help="sign report for q = p-1")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fpq)

    p = sub.add_parser("primetest", help="coefficient congruence test for primality of p")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_primetest)

    p = sub.add_parser("quadmap", help="the map Q(2, 2p+1) -> Q(N(p), 2p+1)")
    p.add_argument("p", type=int)
    p.add_argument("--text", action="store_true", help="include the map in sqrt notation")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quadmap)

    p = sub.add_parser("sweep", help="CSV tables over a range of p")
    p.add_argument("kind", choices=["fpq", "signature", "golden", "limit"])
    p.add_argument("--p", required=True, metavar="P1..P2")
    p.add_argument("--q", type=int, action="append", help="for fpq; -1 means p-1; repeatable")
    p.add_argument("--family", default="gamma-p-pm1")
    p.add_argument("--point", default="1,1", help="x,y for the limit sweep")
    p.set_defaults(func=cmd_sweep)
    return parser


_INPUT_ERRORS = (BadParameters, DimensionMismatch, NotUnitary, DomainViolation, OrderExceeded, EnumerationInvalid)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("UsageError", str(exc), EXIT_BAD_PARAMETERS)
    except PrecisionExhausted as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_PRECISION)
    except _INPUT_ERRORS as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_BAD_PARAMETERS)
    except InvariantCRError as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_VERIFICATION)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_BAD_PARAMETERS)


if __name__ == "__main__":
    sys.exit(main())
