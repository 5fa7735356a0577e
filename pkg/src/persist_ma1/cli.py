"""Command-line interface: JSON on stdout, CSV only for ``scan --out``.

Exit codes: 0 success, 2 invalid parameters / domain errors, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import combinatorics, dualities, exponents, oracles, region_formulas
from .errors import PersistError
from .model import Params, fmt_rational, parse_rational
from .phase_map import DUALITY_TAGS, Region, classify

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_MISMATCH = 3

MODES = ("formula", "recurrence", "combinatorial", "oracle", "mc")


@dataclass
class CommandResult:
    exit_code: int
    payload: dict
    pretty: bool = field(default=False, compare=False)

    def render(self) -> str:
        if self.pretty and self.exit_code != EXIT_DOMAIN:
            return _pretty(self.payload)
        return json.dumps(self.payload)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would print usage and exit; we want a one-line JSON error instead
    def error(self, message):
        raise _UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except PersistError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_int(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return n


def _pos_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _add_params(p: argparse.ArgumentParser):
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--theta", type=_rational, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="persist-ma1", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="phase-diagram region of (a, theta)")
    _add_params(p)

    p = sub.add_parser("pn", help="table p_0..p_N")
    _add_params(p)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--mode", choices=MODES, default="formula")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gf", help="generating-function coefficients")
    _add_params(p)
    p.add_argument("--order", type=_nonneg_int, required=True)

    p = sub.add_parser("exponent", help="persistence exponent")
    _add_params(p)
    p.add_argument("--tol", type=_pos_float, default=exponents.DEFAULT_TOL)

    p = sub.add_parser("phi", help="coefficient of z^ell in 1/E(theta, z)")
    p.add_argument("--ell", type=_nonneg_int, required=True)
    p.add_argument("--theta", type=_rational, default=None)

    p = sub.add_parser("mallows", help="Mallows-Riordan polynomial J_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", help="all applicable paths against the DP oracle")
    _add_params(p)
    p.add_argument("--n", type=_nonneg_int, required=True)

    p = sub.add_parser("scan", help="CSV grid over (a, theta)")
    p.add_argument("--a-min", type=_rational, required=True)
    p.add_argument("--a-max", type=_rational, required=True)
    p.add_argument("--theta-min", type=_rational, required=True)
    p.add_argument("--theta-max", type=_rational, required=True)
    p.add_argument("--steps", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    return parser


# -- subcommands ------------------------------------------------------------------

def _table_json(values) -> dict:
    return {"p": [fmt_rational(v) for v in values], "p_float": [float(v) for v in values]}


def _cmd_classify(args) -> dict:
    params = Params(args.a, args.theta)
    return {**params.as_json(), **classify(params).as_json()}


def _cmd_pn(args) -> dict:
    params = Params(args.a, args.theta)
    out = {**params.as_json(), "n": args.n, "mode": args.mode}
    if args.mode == "mc":
        ests = [oracles.mc_estimate(params, k, args.samples, args.seed) for k in range(args.n + 1)]
        out.update({"samples": args.samples, "seed": args.seed,
                    "p_mc_float": [e.mean for e in ests], "stderr_float": [e.stderr for e in ests]})
        return out
    if args.mode == "formula":
        table = region_formulas.persistence_series(params, args.n)
        out.update({"method": table.method, "region": table.meta.get("region")})
        values = table.values
    elif args.mode == "recurrence":
        values = region_formulas.blue_recurrence_table(params, args.n)
    elif args.mode == "combinatorial":
        values = combinatorics.comb_table(params, args.n)
    else:
        values = oracles.dp_exact_table(params, args.n)
    out.update(_table_json(values))
    return out


def _cmd_gf(args) -> dict:
    params = Params(args.a, args.theta)
    table = region_formulas.persistence_series(params, args.order)
    return {**params.as_json(), "order": args.order, "method": table.method,
            "coefficients": [fmt_rational(v) for v in table.values],
            "coefficients_float": [float(v) for v in table.values]}


def _cmd_exponent(args) -> dict:
    params = Params(args.a, args.theta)
    res = exponents.find_exponent(params, tol=args.tol)
    return {**params.as_json(), **res.as_json()}


def _cmd_phi(args) -> dict:
    ph = combinatorics.phi(args.ell)
    out = {"ell": args.ell, "phi": str(ph.poly), "monomials": ph.poly.nonzero_terms()}
    if args.theta is not None:
        v = ph.poly(args.theta)
        out.update({"theta": fmt_rational(args.theta), "value": fmt_rational(v), "value_float": float(v)})
    return out


def _cmd_mallows(args) -> dict:
    return {"n": args.n, "J": str(combinatorics.mallows_J(args.n).poly)}


def verification_paths(params: Params, n: int) -> dict[str, list[Fraction]]:
    """Every formula path that applies at ``params``, keyed by name."""
    assignment = classify(params)
    paths = {"canonical": list(region_formulas.persistence_series(params, n).values)}
    for region in assignment.ordered():
        if region in DUALITY_TAGS:
            continue
        try:
            paths[region.value] = region_formulas.region_table(params, region, n)
        except PersistError:
            pass  # e.g. a boundary point where the formula divides by zero
    if Region.BLUE in assignment.applicable:
        paths["recurrence"] = region_formulas.blue_recurrence_table(params, n)
    try:
        paths["combinatorial"] = combinatorics.comb_table(params, n)
    except PersistError:
        pass
    a, t = params.a, params.theta
    if a > 0 and t > 0:
        paths["dual_positive"] = list(region_formulas.persistence_series(dualities.dual_pos(params), n).values)
    if a > 0 and t < 0:
        paths["dual_negative"] = list(region_formulas.persistence_series(dualities.dual_neg(params), n).values)
    if Region.DUAL_FLIP in assignment.applicable:
        paths["flip"] = region_formulas.flip_table(params, n)
    return paths


def _cmd_verify(args) -> tuple[dict, int]:
    params = Params(args.a, args.theta)
    reference = oracles.dp_exact_table(params, args.n)
    paths = verification_paths(params, args.n)
    per_path = {name: [abs(v - r) for v, r in zip(vals, reference)] for name, vals in paths.items()}
    per_n = [max(d[k] for d in per_path.values()) for k in range(args.n + 1)]
    ok = all(d == 0 for d in per_n)
    payload = {
        **params.as_json(), "n": args.n, "reference": "dp_exact",
        "paths": sorted(paths),
        "max_discrepancy": [fmt_rational(d) for d in per_n],
        "mismatched_paths": sorted(name for name, d in per_path.items() if any(d)),
        "ok": ok,
    }
    return payload, EXIT_OK if ok else EXIT_MISMATCH


def _grid(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    if steps == 0:
        return [lo]
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


def scan_row(params: Params, n: int) -> list:
    table = region_formulas.persistence_series(params, n)
    res = exponents.find_exponent(params)
    lam = "" if res.lam is None else repr(res.lam.mid)
    return ([repr(float(params.a)), repr(float(params.theta)), classify(params).canonical.value]
            + [repr(float(v)) for v in table.values[1:]] + [lam])


def _cmd_scan(args) -> dict:
    if args.a_min > args.a_max or args.theta_min > args.theta_max:
        raise PersistError("empty scan range")
    points = [Params(a, t) for a in _grid(args.a_min, args.a_max, args.steps)
              for t in _grid(args.theta_min, args.theta_max, args.steps)]
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            keyed = list(pool.map(lambda p: ((p.a, p.theta), scan_row(p, args.n)), points))
    else:
        keyed = [((p.a, p.theta), scan_row(p, args.n)) for p in points]
    keyed.sort(key=lambda kr: kr[0])
    header = ["a", "theta", "region"] + [f"p{k}" for k in range(1, args.n + 1)] + ["lambda"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(row for _, row in keyed)
    return {"a": fmt_rational(args.a_min), "theta": fmt_rational(args.theta_min),
            "a_max": fmt_rational(args.a_max), "theta_max": fmt_rational(args.theta_max),
            "steps": args.steps, "n": args.n, "rows": len(keyed), "out": args.out}


_COMMANDS = {
    "classify": _cmd_classify, "pn": _cmd_pn, "gf": _cmd_gf, "exponent": _cmd_exponent,
    "phi": _cmd_phi, "mallows": _cmd_mallows, "scan": _cmd_scan,
}


def _error(kind: str, message: str) -> CommandResult:
    return CommandResult(EXIT_DOMAIN, {"error": kind, "message": message})


_NEGATIVE = re.compile(r"^-[0-9.]")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--a -1/4`` into ``--a=-1/4``; argparse only recognises plain negative numbers."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return _error("UsageError", str(exc))
    try:
        if args.command == "verify":
            payload, code = _cmd_verify(args)
        else:
            payload, code = _COMMANDS[args.command](args), EXIT_OK
    except (PersistError, ValueError, ZeroDivisionError, OverflowError) as exc:
        return _error(type(exc).__name__, str(exc))
    return CommandResult(code, payload, args.pretty)


# -- pretty printing ------------------------------------------------------------------

def _pretty(payload: dict) -> str:
    lines = []
    tables = {k: v for k, v in payload.items() if isinstance(v, list) and v and not isinstance(v[0], (dict, list))}
    rows = {len(v) for v in tables.values()}
    for key, value in payload.items():
        if key in tables and len(rows) == 1:
            continue
        if isinstance(value, dict):
            value = ", ".join(f"{k}={v}" for k, v in value.items())
        elif isinstance(value, list):
            value = ", ".join(map(str, value))
        lines.append(f"{key:>16}: {value}")
    if tables and len(rows) == 1:
        cols = ["n"] + list(tables)
        body = [[str(i)] + [str(tables[c][i]) for c in tables] for i in range(rows.pop())]
        widths = [max(len(c), *(len(r[j]) for r in body)) for j, c in enumerate(cols)]
        lines.append("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
        lines.extend("  ".join(x.rjust(w) for x, w in zip(r, widths)) for r in body)
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    result = run(argv)
    print(result.render())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
