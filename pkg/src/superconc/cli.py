"""Command-line front end.

Exit codes: 0 success, 1 invalid input or usage, 2 an internal check failed
(formula paths disagree, a bound does not bracket, verification violations).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bounds as B
from .concurrence import (concurrence, concurrence_inverter, concurrence_purity,
                          pair_concurrence, pair_concurrence_closed)
from .errors import (ClassPreconditionError, InvariantError, PartitionCapError,
                     VanishingNormError)
from .figure import figure1_rows, write_csv
from .io import StateFileError, load_state, load_superposition
from .linalg import inner_product
from .orthogonality import DEFAULT_TOL, OrthoClass, classify_pair, classify_set
from .verifier import EnsembleSpec, verify

EXIT_OK, EXIT_INVALID, EXIT_BREACH = 0, 1, 2
AGREE_TOL = 1e-10

log = logging.getLogger("superconc")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _class_arg(text: str) -> OrthoClass:
    try:
        return OrthoClass.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_concurrence(args) -> int:
    s = load_state(args.state)
    c_vec = concurrence(s)
    c_pur = concurrence_purity(s)
    c_inv = concurrence_inverter(s)
    diff = max(abs(c_vec - c_pur), abs(c_vec - c_inv))
    if args.json:
        _emit({"dims": list(s.dims), "concurrence_vector": c_vec,
               "concurrence_purity": c_pur, "concurrence_inverter": c_inv, "abs_diff": diff})
    else:
        print(f"C = {c_vec:.10f}")
        print(f"C (vector norm)        = {c_vec:.10f}")
        print(f"C (sqrt 2(1-Tr rho^2)) = {c_pur:.10f}")
        print(f"C (universal inverter) = {c_inv:.10f}")
        print(f"diff = {diff:.3e}")
    return EXIT_OK if diff <= AGREE_TOL else EXIT_BREACH


def cmd_pair(args) -> int:
    x, y = load_state(args.first), load_state(args.second)
    c_vec = pair_concurrence(x, y)
    c_closed = pair_concurrence_closed(x, y)
    ov = inner_product(x, y)
    _emit({"overlap": [ov.real, ov.imag], "abs_overlap": abs(ov),
           "class": classify_pair(x, y, args.tol).value,
           "pair_concurrence_vector": c_vec, "pair_concurrence_closed": c_closed,
           "abs_diff": abs(c_vec - c_closed)})
    return EXIT_OK if abs(c_vec - c_closed) <= AGREE_TOL else EXIT_BREACH


def cmd_classify(args) -> int:
    states = [load_state(p) for p in args.states]
    if len(states) < 2:
        raise StateFileError("classify needs at least two state files")
    if any(s.dims != states[0].dims for s in states):
        raise StateFileError("states have mismatched dimensions")
    n = len(states)
    pairs = {f"{i},{j}": classify_pair(states[i], states[j], args.tol).value
             for i in range(n) for j in range(i + 1, n)}
    _emit({"class": classify_set(states, args.tol).value, "pairs": pairs})
    return EXIT_OK


def cmd_bounds(args) -> int:
    s = load_superposition(args.superposition)
    rep = B.evaluate(s, force_class=args.force_class, two_qubit_refine=args.two_qubit_refine,
                     reference=args.reference, m_cap=args.m_cap, tol=args.tol)
    out = rep.to_dict()
    out["bracket"] = rep.brackets()
    _emit(out)
    if not rep.brackets():
        log.error("bounds do not bracket the exact value")
        return EXIT_BREACH
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = EnsembleSpec(dim_a=args.dims[0], dim_b=args.dims[1], m=args.m,
                        ortho_class=args.ortho_class, trials=args.trials,
                        seed=args.seed, tolerance=args.tol)
    spec.validate()
    report = verify(spec)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_BREACH


def cmd_figure1(args) -> int:
    rows = figure1_rows(args.samples, include_cancellation=not args.no_anchor)
    if args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        try:
            with open(args.out, "w", newline="") as fh:
                write_csv(rows, fh)
        except OSError as e:
            raise StateFileError(f"cannot write {args.out}: {e.strerror}") from None
    bad = [r["x"] for r in rows if not r["lower"] - 1e-9 <= r["exact"] <= r["upper"] + 1e-9]
    if bad:
        log.error("bracket fails at x = %s", bad)
        return EXIT_BREACH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="superconc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("concurrence", help="concurrence of a state file by every formula")
    c.add_argument("state")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_concurrence)

    c = sub.add_parser("pair", help="pair concurrence C(psi, phi) of two state files")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.set_defaults(func=cmd_pair)

    c = sub.add_parser("classify", help="orthogonality class of two or more state files")
    c.add_argument("states", nargs="+")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("bounds", help="exact concurrence and bounds for a superposition file")
    c.add_argument("superposition")
    c.add_argument("--force-class", type=_class_arg, default=None,
                   help="use a weaker class than the detected one")
    c.add_argument("--two-qubit-refine", action="store_true")
    c.add_argument("--reference", action="store_true",
                   help="include the earlier I-concurrence bounds (two states only)")
    c.add_argument("--m-cap", type=int, default=B.DEFAULT_M_CAP)
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("verify", help="Monte Carlo check of lemmas and bounds")
    c.add_argument("--class", dest="ortho_class", type=_class_arg, required=True)
    c.add_argument("--dims", type=int, nargs=2, default=[3, 3], metavar=("N1", "N2"))
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--trials", type=int, default=500)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-9)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("figure1", help="CSV of exact value and bounds along the C3xC3 example")
    c.add_argument("--samples", type=int, default=201)
    c.add_argument("--out", default="-", help="output path, '-' for stdout")
    c.add_argument("--no-anchor", action="store_true",
                   help="do not add the x = 1/sqrt2 cancellation point")
    c.set_defaults(func=cmd_figure1)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StateFileError, ClassPreconditionError, PartitionCapError,
            VanishingNormError, ValueError) as e:
        print(f"superconc {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except InvariantError as e:
        print(f"superconc {args.command}: internal check failed: {e}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
