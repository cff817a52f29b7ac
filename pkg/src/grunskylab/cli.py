"""Command-line front end.

    grunskylab grunsky --family koebe --max-degree 8
    grunskylab verify  --input f.json
    grunskylab hankel  --family f3
    grunskylab bounds  --tol 1e-12
    grunskylab search  --objective a4_minus_a3 --seed 1 --iterations 10000

Exit codes: 0 ok, 1 inequality violation on input, 2 parse error,
3 precondition error, 4 soundness alarm.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .bounds import verify_all
from .errors import GrunskyLabError
from .grunsky import (
    DEFAULT_MAX_DEGREE,
    IDENTITY_TOL,
    CoefficientVector,
    InequalityWeights,
    bilinear_inequality_gap,
    grunsky_matrix_of,
    required_order,
    verify_identities,
    weighted_inequality_gap,
)
from .hankel import hankel_report
from .search import OBJECTIVES, make_family, search_feasible

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SOUNDNESS = 4

GAP_TOL = 1e-10

VERIFY_WEIGHTS = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 1j)]


class InputParseError(Exception):
    pass


@dataclass(frozen=True)
class InputSpec:
    """Either explicit a_2..a_N or a named family."""

    coefficients: tuple[complex, ...] | None = None
    family: dict | None = None

    def __post_init__(self):
        if (self.coefficients is None) == (self.family is None):
            raise InputParseError("input needs exactly one of 'coefficients' or 'family'")

    def resolve(self, min_order: int) -> CoefficientVector:
        if self.coefficients is not None:
            return CoefficientVector.from_tail(self.coefficients)
        fam = self.family
        member = make_family(fam["name"], float(fam.get("theta", 0.0)), int(fam.get("t", 1)))
        order = fam.get("order")
        return member.coefficients(int(order) if order is not None else min_order)


def _parse_complex(item) -> complex:
    if isinstance(item, bool):
        raise InputParseError(f"not a number: {item!r}")
    if isinstance(item, (int, float)):
        return complex(item)
    if isinstance(item, list) and len(item) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in item
    ):
        return complex(item[0], item[1])
    raise InputParseError(f"expected [re, im], got {item!r}")


def parse_input_spec(obj) -> InputSpec:
    if not isinstance(obj, dict):
        raise InputParseError("input must be a JSON object")
    if "coefficients" in obj and "family" in obj:
        raise InputParseError("input needs exactly one of 'coefficients' or 'family'")
    if "coefficients" in obj:
        coeffs = obj["coefficients"]
        if not isinstance(coeffs, list):
            raise InputParseError("'coefficients' must be a list of [re, im] pairs")
        return InputSpec(coefficients=tuple(_parse_complex(c) for c in coeffs))
    if "family" in obj:
        fam = obj["family"]
        if not isinstance(fam, dict) or "name" not in fam:
            raise InputParseError("'family' must be an object with a 'name'")
        return InputSpec(family=dict(fam))
    raise InputParseError("input needs exactly one of 'coefficients' or 'family'")


def _input_spec(args) -> InputSpec:
    if args.input is not None:
        try:
            with open(args.input) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputParseError(f"cannot read {args.input}: {exc}") from exc
        return parse_input_spec(obj)
    if args.family is not None:
        fam = {"name": args.family, "theta": args.theta, "t": args.t, "order": args.order}
        return InputSpec(family=fam)
    raise InputParseError("one of --input or --family is required")


def _load(args, min_order: int) -> CoefficientVector:
    f = _input_spec(args).resolve(min_order)
    f.require(min_order)
    return f


def _cx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, allow_nan=False) + "\n")


# -- commands --------------------------------------------------------------

def cmd_grunsky(args, out) -> int:
    m = args.max_degree
    f = _load(args, required_order(m))
    w = grunsky_matrix_of(f, m)
    entries = [{"p": p, "q": q, "re": v.real, "im": v.imag} for p, q, v in w.items()]
    _emit({"max_total_degree": m, "entries": entries}, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    f = _load(args, 5).truncate(5)
    res = verify_identities(f)
    w = grunsky_matrix_of(f)
    weighted, bilinear = [], []
    for x1, x3 in VERIFY_WEIGHTS:
        x = InequalityWeights.pair(x1, x3)
        xs = [_cx(x1), _cx(x3)]
        weighted.append({"x": xs, "gap": weighted_inequality_gap(w, x, 3)})
        bilinear.append({"x": xs, "gap": bilinear_inequality_gap(w, x)})
    residuals_ok = res.ok(IDENTITY_TOL)
    gaps_ok = all(g["gap"] >= -GAP_TOL for g in weighted + bilinear)
    _emit(
        {
            "residuals": {k: _cx(v) for k, v in res.as_dict().items()},
            "max_residual": res.max_abs(),
            "weighted_gaps": weighted,
            "bilinear_gaps": bilinear,
            "residuals_ok": residuals_ok,
            "inequalities_ok": gaps_ok,
        },
        out,
    )
    return EXIT_OK if residuals_ok and gaps_ok else EXIT_VIOLATION


def cmd_hankel(args, out) -> int:
    f = _load(args, 5)
    rep = hankel_report(f)
    _emit(
        {
            "h22": _cx(rep.h22),
            "h31": _cx(rep.h31),
            "reduced_h31": None if rep.reduced_h31 is None else _cx(rep.reduced_h31),
            "reduction_tag": rep.reduction_tag,
        },
        out,
    )
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    reports = verify_all(args.tol)
    for r in reports:
        _emit(r.to_json(), out)
    return EXIT_VIOLATION if any(r.failed for r in reports) else EXIT_OK


def cmd_search(args, out) -> int:
    res = search_feasible(args.objective, args.seed, args.iterations)
    _emit(res.to_json(), out)
    return EXIT_OK if res.sound else EXIT_SOUNDNESS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grunskylab",
        description="Grunsky coefficients and coefficient-bound checks for univalent functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", metavar="FILE", help="JSON file with 'coefficients' or 'family'")
        p.add_argument("--family", metavar="NAME", help="koebe, f<t>, half_plane or identity")
        p.add_argument("--theta", type=float, default=0.0, help="rotation angle in radians")
        p.add_argument("--t", type=int, default=1, help="symmetry order of the Koebe family")
        p.add_argument("--order", type=int, default=None, help="number of coefficients a_1..a_N")

    def add_out(p):
        p.add_argument("--out", metavar="FILE", help="write JSON here instead of stdout")

    p = sub.add_parser("grunsky", help="Grunsky matrix of the square-root transform")
    add_input(p)
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    add_out(p)
    p.set_defaults(func=cmd_grunsky)

    p = sub.add_parser("verify", help="identity residuals and inequality gaps")
    add_input(p)
    add_out(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hankel", help="H_2(2), H_3(1) and reduced forms")
    add_input(p)
    add_out(p)
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("bounds", help="recompute every bound constant")
    p.add_argument("--tol", type=float, default=1e-12)
    add_out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="seeded search over the Grunsky-feasible region")
    p.add_argument("--objective", required=True, choices=sorted(OBJECTIVES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=10_000)
    add_out(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        return args.func(args, out)
    except InputParseError as exc:
        print(f"grunskylab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GrunskyLabError, KeyError, ValueError) as exc:
        print(f"grunskylab: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
