"""Command-line surface.

Every subcommand calls the library and emits a machine-readable report
envelope (JSON or CSV) on stdout.  Real numbers are rendered through one
shared 12-significant-digit formatter in both formats, exact rationals as
"p/q" strings, so the two renderings of a run carry identical numbers.
Exit codes: 0 success, 2 bad arguments, 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

from . import __version__
from .arith import divisor_count, sigma
from .congruence import CongruenceSystem, solve_crt
from .conv_sums import (
    additive_pair_sum,
    convergence_report,
    decomposition_terms,
    elementary_lower_bound,
    general_triple_sum,
    lattice_sum,
    shifted_pair_sum,
    triple_sum,
)
from .euler_constants import c_h, universal_product
from .local_factors import (
    delta_h,
    delta_hk,
    f_browning,
    s_2_closed,
    s_p_closed,
    verify_delta_identity,
)
from .smooth import psi, smooth_weighted_sum, smoothness_bound_check


def _fmt_real(v: float) -> float:
    """Round to 12 significant digits; shared by JSON and CSV renderings."""
    return float(f"{v:.12g}")


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class ReportEnvelope:
    command: str
    parameters: dict[str, Any]
    rows: list[dict[str, Any]]
    exact_values: dict[str, str] = field(default_factory=dict)
    generated_at: str = ""
    tool_version: str = __version__

    def __post_init__(self):
        if not self.generated_at:
            self.generated_at = datetime.now(timezone.utc).isoformat()

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "parameters": self.parameters,
                "rows": self.rows,
                "exact_values": self.exact_values,
                "generated_at": self.generated_at,
                "tool_version": self.tool_version,
            },
            indent=2,
        )

    def to_csv(self) -> str:
        lines = []
        if self.rows:
            cols = list(self.rows[0].keys())
            lines.append(",".join(cols))
            for row in self.rows:
                lines.append(",".join(str(row[c]) for c in cols))
        for name, value in self.exact_values.items():
            lines.append(f"# exact {name} = {value}")
        lines.append(f"# command = {self.command}")
        for key, value in sorted(self.parameters.items()):
            lines.append(f"# param {key} = {value}")
        lines.append(f"# generated_at = {self.generated_at}")
        lines.append(f"# tool_version = {self.tool_version}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _parse_clauses(text: str) -> CongruenceSystem:
    clauses = []
    for part in text.split(","):
        r, _, m = part.partition("@")
        clauses.append((int(r), int(m)))
    return CongruenceSystem(clauses)


def _parse_xs(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


# ---------------------------------------------------------------- commands


def _cmd_sum(args) -> ReportEnvelope:
    value = triple_sum(args.x, args.h, threads=args.threads)
    target = c_h(args.h, args.prime_limit)
    ratio = value / (args.x * math.log(args.x) ** 3) if args.x > args.h else 0.0
    return ReportEnvelope(
        "sum",
        {"x": args.x, "h": args.h, "prime_limit": args.prime_limit},
        [
            {
                "x": args.x,
                "sum": value,
                "ratio": _fmt_real(ratio),
                "target": _fmt_real(float(target.value)),
                "rel_error": _fmt_real(ratio / float(target.value) - 1.0),
            }
        ],
        {"c_h_rational_part": _frac_str(target.exact_factor)},
    )


def _cmd_tsum(args) -> ReportEnvelope:
    value = general_triple_sum(args.x, args.h, args.k, threads=args.threads)
    return ReportEnvelope(
        "tsum",
        {"x": args.x, "h": args.h, "k": args.k},
        [{"x": args.x, "h": args.h, "k": args.k, "sum": value}],
    )


def _cmd_pair(args) -> ReportEnvelope:
    if args.h is not None:
        value = shifted_pair_sum(args.x, args.h, threads=args.threads)
        main = 6 / math.pi**2 * float(sigma(args.h, -1)) * args.x * math.log(args.x) ** 2
        rows = [
            {
                "N": args.x,
                "h": args.h,
                "sum": value,
                "main_term": _fmt_real(main),
                "ratio": _fmt_real(value / main),
            }
        ]
        params = {"x": args.x, "h": args.h, "kind": "shifted"}
    else:
        value = additive_pair_sum(args.x)
        main = 6 / math.pi**2 * float(sigma(args.x, 1)) * math.log(args.x) ** 2
        rows = [
            {
                "N": args.x,
                "sum": value,
                "main_term": _fmt_real(main),
                "ratio": _fmt_real(value / main),
            }
        ]
        params = {"x": args.x, "kind": "additive"}
    return ReportEnvelope("pair", params, rows)


def _cmd_lattice(args) -> ReportEnvelope:
    k = args.k if args.k is not None else args.h
    value = lattice_sum(args.x, args.h, k)
    norm = float(value) / math.log(args.x) ** 3 if args.x > 1 else float("nan")
    return ReportEnvelope(
        "lattice",
        {"x": args.x, "h": args.h, "k": k},
        [
            {
                "x": args.x,
                "value": _fmt_real(float(value)),
                "value_over_log_cubed": _fmt_real(norm),
                "exact": _frac_str(value),
            }
        ],
        {"lattice_sum": _frac_str(value)},
    )


def _cmd_constant(args) -> ReportEnvelope:
    u = universal_product(args.prime_limit)
    rows = [
        {
            "name": "universal_product",
            "value": _fmt_real(float(u.value)),
            "error_bound": _fmt_real(u.error_bound),
            "prime_limit": args.prime_limit,
        }
    ]
    exact = {}
    if args.h is not None:
        ch = c_h(args.h, args.prime_limit)
        rows.append(
            {
                "name": f"c_h(h={args.h})",
                "value": _fmt_real(float(ch.value)),
                "error_bound": _fmt_real(ch.error_bound),
                "prime_limit": args.prime_limit,
            }
        )
        exact["c_h_rational_part"] = _frac_str(ch.exact_factor)
    return ReportEnvelope(
        "constant", {"prime_limit": args.prime_limit, "h": args.h}, rows, exact
    )


def _cmd_local(args) -> ReportEnvelope:
    h = args.h
    exact = {
        "f_h": _frac_str(f_browning(h)),
        "delta_h": _frac_str(delta_h(h)),
    }
    rows = []
    from .arith import factorize

    primes = sorted({2} | {p for p, _ in factorize(h).factors})
    for p in primes:
        r = 0
        m = h
        while m % p == 0:
            m //= p
            r += 1
        s = s_2_closed(r) if p == 2 else s_p_closed(p, r)
        rows.append({"prime": p, "r": r, "s_p": _fmt_real(float(s)), "exact": _frac_str(s)})
    if args.k is not None:
        interval = delta_hk(h, args.k, args.trunc)
        exact["delta_hk_value"] = _frac_str(interval.value)
        exact["delta_hk_tail"] = _frac_str(interval.tail_bound)
    exact["identity_holds"] = str(verify_delta_identity(h))
    return ReportEnvelope("local", {"h": h, "k": args.k, "trunc": args.trunc}, rows, exact)


def _cmd_verify_delta(args) -> ReportEnvelope:
    rows = [{"h": h, "holds": verify_delta_identity(h)} for h in range(1, args.hmax + 1)]
    ok = sum(1 for r in rows if r["holds"])
    return ReportEnvelope(
        "verify-delta",
        {"hmax": args.hmax},
        rows,
        {"verified": f"{ok}/{args.hmax}"},
    )


def _cmd_decompose(args) -> ReportEnvelope:
    s1, s2, s3 = decomposition_terms(args.x, args.h)
    s = triple_sum(args.x, args.h)
    d = divisor_count
    return ReportEnvelope(
        "decompose",
        {"x": args.x, "h": args.h},
        [
            {
                "x": args.x,
                "h": args.h,
                "S": s,
                "S1": s1,
                "S2": s2,
                "S3": s3,
                "identity_holds": s == s1 + s2 - s3,
                "S3_bound": args.h * d(args.h) * d(2 * args.h),
            }
        ],
    )


def _cmd_lower_bound(args) -> ReportEnvelope:
    value = elementary_lower_bound(args.x, args.h)
    return ReportEnvelope(
        "lower-bound",
        {"x": args.x, "h": args.h},
        [
            {
                "x": args.x,
                "h": args.h,
                "value": _fmt_real(float(value)),
                "value_over_x": _fmt_real(float(value) / args.x),
                "exact": _frac_str(value),
            }
        ],
        {"value": _frac_str(value)},
    )


def _cmd_smooth(args) -> ReportEnvelope:
    params = {"x": args.x, "y": args.y, "delta": args.delta, "bound_check": args.bound_check}
    if args.bound_check:
        chk = smoothness_bound_check(args.x, args.y)
        rows = [
            {
                "x": args.x,
                "y": args.y,
                "psi": chk.psi_value,
                "bound": _fmt_real(chk.bound),
                "u": _fmt_real(chk.u),
                "satisfied": chk.satisfied,
            }
        ]
        return ReportEnvelope("smooth", params, rows)
    if args.delta is not None:
        value = smooth_weighted_sum(args.x, args.y, Fraction(args.delta))
        rows = [
            {
                "x": args.x,
                "y": args.y,
                "delta": args.delta,
                "value": _fmt_real(float(value)),
                "exact": _frac_str(value),
            }
        ]
        return ReportEnvelope("smooth", params, rows, {"weighted_sum": _frac_str(value)})
    return ReportEnvelope("smooth", params, [{"x": args.x, "y": args.y, "psi": psi(args.x, args.y)}])


def _cmd_crt(args) -> ReportEnvelope:
    system = _parse_clauses(args.clauses)
    sol = solve_crt(system)
    if sol is None:
        rows = [{"solvable": False, "solution": "unsolvable"}]
    else:
        rows = [
            {
                "solvable": True,
                "solution": f"{sol.residue} mod {sol.modulus}",
                "residue": sol.residue,
                "modulus": sol.modulus,
            }
        ]
    return ReportEnvelope("crt", {"clauses": args.clauses}, rows)


def _cmd_report(args) -> ReportEnvelope:
    xs = _parse_xs(args.xs)
    rep = convergence_report(args.h, xs, prime_limit=args.prime_limit, threads=args.threads)
    rows = [
        {
            "x": r.x,
            "sum": r.sum_value,
            "ratio": _fmt_real(r.ratio),
            "target": _fmt_real(r.target),
            "rel_error": _fmt_real(r.ratio / r.target - 1.0),
        }
        for r in rep.rows
    ]
    return ReportEnvelope(
        "report",
        {"h": args.h, "xs": args.xs, "prime_limit": args.prime_limit},
        rows,
    )


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divisorlab",
        description="Exact divisor-convolution sums, local factors, and constants.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    try:
        default_threads = int(os.environ.get("DIVISORLAB_THREADS", "0"))
    except ValueError:
        default_threads = 0

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument(
            "--threads",
            type=int,
            default=default_threads,
            help="worker threads for blocked sums (0 = auto; default from DIVISORLAB_THREADS)",
        )
        return p

    p = add("sum", _cmd_sum, help="triple convolution sum S(x;h)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--prime-limit", type=int, default=10**6)

    p = add("tsum", _cmd_tsum, help="asymmetric triple sum T(x;h,k)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("pair", _cmd_pair, help="Ingham pair sums (shifted with --h, else additive)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, default=None)

    p = add("lattice", _cmd_lattice, help="exact lattice sum of g/[u,v,w]")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = add("constant", _cmd_constant, help="universal Euler product and c_h")
    p.add_argument("--prime-limit", type=int, default=10**6)
    p.add_argument("--h", type=int, default=None)

    p = add("local", _cmd_local, help="local factors s_p, f(h), delta(h)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--trunc", type=int, default=60)

    p = add("verify-delta", _cmd_verify_delta, help="delta(h) = 11 f(h)/8 sweep")
    p.add_argument("--hmax", type=int, required=True)

    p = add("decompose", _cmd_decompose, help="S1/S2/S3 box decomposition")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)

    p = add("lower-bound", _cmd_lower_bound, help="elementary lower-bound main term")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--h", type=int, required=True)

    p = add("smooth", _cmd_smooth, help="psi(x,y), weighted smooth sum, bound check")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--delta", type=str, default=None, help="rational like 1/2")
    p.add_argument("--bound-check", action="store_true")

    p = add("crt", _cmd_crt, help="solve simultaneous congruences")
    p.add_argument("--clauses", type=str, required=True, help="r@m pairs, e.g. 1@4,3@6")

    p = add("report", _cmd_report, help="convergence table over an x grid")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--xs", type=str, required=True, help="comma list of x values")
    p.add_argument("--prime-limit", type=int, default=10**6)

    return parser


def run(argv: list[str]) -> int:
    """Run one subcommand; report on stdout, diagnostics on stderr."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        envelope = args.fn(args)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(envelope.render(args.format))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
