"""Command-line front end.

Subcommands:

* ``eval``   -- single-point evaluation with oracle cross-check
* ``table1`` -- reproduce the quartic-case reference error table
* ``sweep``  -- parameter sweep to CSV
* ``verify`` -- run the verification suites

Exit codes: 0 success, 1 failed verification check, 2 precondition
violation, 3 direct summation infeasible, 4 unwritable output path.
Data output carries no timestamps; timing appears only with --timing,
so identical invocations produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .engine import eval_even, evaluate
from .errors import (
    ConvergenceError,
    DomainError,
    EvenExponentError,
    MismatchError,
    PoleError,
    RangeError,
)
from .model import (
    OPTIMAL,
    ErrorTarget,
    Evaluation,
    Fixed,
    MethodChoice,
    SumSpec,
    TruncationPolicy,
)
from .oracle import OracleResult, direct_sum
from .reference import W4_ROWS, ReferenceRow
from .verify import SUITE_NAMES, run_suite

_METHOD_NAMES = {
    "direct": MethodChoice.DIRECT,
    "generic": MethodChoice.GENERIC,
    "even": MethodChoice.EVEN_TRANSFORM,
    "pj": MethodChoice.CLASSICAL_PJ,
}

_SWEEP_HEADER = (
    "a_re,a_im,w,method,value_re,value_im,err_estimate,"
    "abs_err_vs_oracle,terms_k,terms_j,terms_n,j0"
)


def _parse_complex(text: str) -> complex:
    try:
        z = complex(text.strip())
    except ValueError as exc:
        raise DomainError(f"cannot parse {text!r} as a number (use RE or RE+IMj)") from exc
    if not cmath.isfinite(z):
        raise DomainError(f"parameter a must be finite, got {z}")
    return z


def _parse_policy(text: str) -> TruncationPolicy:
    t = text.strip().lower()
    if t in ("optimal", "opt"):
        return OPTIMAL
    if t.startswith("fixed:"):
        try:
            return Fixed(int(t.split(":", 1)[1]))
        except ValueError as exc:
            raise DomainError(f"bad fixed policy {text!r} (use fixed:N)") from exc
    if t.startswith("target:"):
        parts = t.split(":")[1:]
        try:
            eps = float(parts[0])
            cap = int(parts[1]) if len(parts) > 1 else 2000
        except (ValueError, IndexError) as exc:
            raise DomainError(f"bad target policy {text!r} (use target:EPS[:CAP])") from exc
        return ErrorTarget(eps, cap)
    raise DomainError(f"unknown policy {text!r} (optimal | fixed:N | target:EPS[:CAP])")


def _resolve_method(name: str, w: float) -> MethodChoice:
    if name == "auto":
        m = round(w / 2.0)
        if m >= 1 and abs(w - 2.0 * m) <= 1e-9:
            return MethodChoice.EVEN_TRANSFORM
        return MethodChoice.GENERIC
    return _METHOD_NAMES[name]


def _g17(x: float) -> str:
    return f"{x:.17g}"


def _least_tail_indices(ev: Evaluation) -> list[tuple[str, int]]:
    return [
        (name, ev.term_log.least_index(name))
        for name in ev.term_log.series_names()
        if name.startswith("j[")
    ]


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------


def _cmd_eval(args: argparse.Namespace) -> int:
    spec = SumSpec(_parse_complex(args.a), args.w)
    method = _resolve_method(args.method, spec.w)
    policy = _parse_policy(args.policy)
    ev = evaluate(spec, method, policy, eps=args.eps)
    print(f"method        {method.value}")
    print(f"value_re      {_g17(ev.value.real)}")
    print(f"value_im      {_g17(ev.value.imag)}")
    print(f"err_estimate  {ev.err_estimate:.6e}")
    terms = " ".join(f"{k}={v}" for k, v in sorted(ev.terms_used.items()))
    print(f"terms         {terms}")
    for name, j0 in _least_tail_indices(ev):
        print(f"j0 {name:<10} {j0}")
    if ev.near_odd_warning:
        print("warning       w is within 0.05 of an odd integer: expect cancellation,")
        print("              accuracy guarantees void in this band")
    if method is not MethodChoice.DIRECT:
        try:
            ref = direct_sum(spec, args.eps)
        except ConvergenceError:
            print("oracle        infeasible (direct summation too slow at this eps)")
        else:
            print(f"oracle_re     {_g17(ref.value.real)}")
            print(f"oracle_im     {_g17(ref.value.imag)}")
            print(f"oracle_noise  {ref.noise_floor():.6e}")
            print(f"abs_error     {abs(ev.value - ref.value):.6e}")
    return 0


# ----------------------------------------------------------------------
# table1
# ----------------------------------------------------------------------


def _select_rows(text: Optional[str]) -> list[ReferenceRow]:
    if not text:
        return list(W4_ROWS)
    chosen = []
    for part in text.split(","):
        want = float(part)
        for row in W4_ROWS:
            if abs(row.a - want) < 1e-9:
                chosen.append(row)
                break
        else:
            known = ", ".join(f"{r.a:g}" for r in W4_ROWS)
            raise DomainError(f"row a={part.strip()} is not in the reference table ({known})")
    return chosen


def _cmd_table1(args: argparse.Namespace) -> int:
    rows = _select_rows(args.rows)
    header = f"{'a':>6}  {'S_direct':>10}  {'S_transform':>12}  {'abs_error':>10}  {'ref_error':>10}  {'j0':>4}  {'ref_j0':>6}  flag"
    print(header)
    results = []
    for row in rows:
        spec = SumSpec(row.a, 4.0)
        ref = direct_sum(spec)
        ev = eval_even(spec, 2, OPTIMAL, n_max=1)
        err = abs(ev.value - ref.value)
        j0 = ev.terms_used["j"] - 1
        flag = "ok" if row.reachable else "binary64-noise"
        results.append((row, ref, ev, err, j0, flag))
        print(
            f"{row.a:>6.2f}  {ref.value.real:>10.6f}  {ev.value.real:>12.6f}  "
            f"{err:>10.3e}  {row.abs_err:>10.3e}  {j0:>4d}  {row.j0:>6d}  {flag}"
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["a", "s_direct", "s_transform", "abs_error", "ref_error", "j0", "ref_j0", "flag"]
            )
            for row, ref, ev, err, j0, flag in results:
                writer.writerow(
                    [
                        _g17(row.a),
                        _g17(ref.value.real),
                        _g17(ev.value.real),
                        _g17(err),
                        _g17(row.abs_err),
                        j0,
                        row.j0,
                        flag,
                    ]
                )
    return 0


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    """A parameter sweep: one CSV row per (a, method), in input order.

    Rows are independent of each other (pure evaluations), so they
    could be computed concurrently; output order stays input order x
    method order either way.
    """

    a_values: tuple[complex, ...]
    w: float
    methods: tuple[MethodChoice, ...]
    output_path: str
    policy: TruncationPolicy = field(default_factory=lambda: OPTIMAL)
    eps: float = 1e-16

    def __post_init__(self):
        if not self.a_values:
            raise DomainError("sweep needs at least one a value")
        if any(not complex(a).real > 0.0 for a in self.a_values):
            raise DomainError("sweep requires Re(a) > 0 for every a value")
        if not self.methods:
            raise DomainError("sweep needs at least one method")


def run_sweep(config: SweepConfig) -> int:
    """Evaluate the sweep and write the CSV; returns the row count."""
    rows = [
        _sweep_row(SumSpec(a, config.w), method, config.policy, config.eps)
        for a in config.a_values
        for method in config.methods
    ]
    with open(config.output_path, "w", newline="") as fh:
        fh.write(_SWEEP_HEADER + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerows(rows)
    return len(rows)


def _sweep_row(spec: SumSpec, method: MethodChoice, policy: TruncationPolicy, eps: float) -> list[str]:
    ev = evaluate(spec, method, policy, eps=eps)
    try:
        ref: Optional[OracleResult] = direct_sum(spec, eps)
    except ConvergenceError:
        ref = None
    used = ev.terms_used
    if method is MethodChoice.EVEN_TRANSFORM:
        terms_k = str(used["k"])
        terms_j = str(used["j"])
        terms_n = str(used["n"])
        j0 = str(used["j"] - 1)
    elif method is MethodChoice.GENERIC:
        terms_k, terms_j, terms_n, j0 = str(used["k"]), "", "", ""
    elif method is MethodChoice.CLASSICAL_PJ:
        terms_k, terms_j, terms_n, j0 = "", "", str(used["n"]), ""
    else:
        terms_k = terms_j = terms_n = j0 = ""
    return [
        _g17(spec.a.real),
        _g17(spec.a.imag),
        _g17(spec.w),
        method.value,
        _g17(ev.value.real),
        _g17(ev.value.imag),
        _g17(ev.err_estimate),
        _g17(abs(ev.value - ref.value)) if ref is not None else "",
        terms_k,
        terms_j,
        terms_n,
        j0,
    ]


def _cmd_sweep(args: argparse.Namespace) -> int:
    methods = []
    for name in args.methods.split(","):
        name = name.strip().lower()
        if name == "auto":
            methods.append(_resolve_method("auto", args.w))
        elif name in _METHOD_NAMES:
            methods.append(_METHOD_NAMES[name])
        else:
            raise DomainError(f"unknown method {name!r} (direct | generic | even | pj | auto)")
    config = SweepConfig(
        a_values=tuple(_parse_complex(part) for part in args.a.split(",")),
        w=args.w,
        methods=tuple(methods),
        output_path=args.out,
        policy=_parse_policy(args.policy),
        eps=args.eps,
    )
    count = run_sweep(config)
    print(f"wrote {count} rows to {args.out}")
    return 0


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.suite:<8} | {r.name:<44} | measured={r.measured:.6g} | bound: {r.bound}")
        failed += 0 if r.passed else 1
    print(f"{len(results)} checks, {failed} failed")
    return 0 if failed == 0 else 1


# ----------------------------------------------------------------------
# parser / entry point
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetasum",
        description="Evaluate sum_{n>=1} exp(-a n^2)/n^w by direct summation or expansion",
    )
    parser.add_argument("--timing", action="store_true", help="print elapsed wall time")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="single-point evaluation")
    p_eval.add_argument("--a", required=True, help="Gaussian parameter, RE or RE+IMj, Re(a) > 0")
    p_eval.add_argument("--w", required=True, type=float, help="algebraic exponent w")
    p_eval.add_argument(
        "--method",
        default="auto",
        choices=["auto", "direct", "generic", "even", "pj"],
        help="evaluation route (auto: even transformation for even integer w, else generic)",
    )
    p_eval.add_argument("--policy", default="optimal", help="optimal | fixed:N | target:EPS[:CAP]")
    p_eval.add_argument("--eps", default=1e-16, type=float, help="oracle tolerance")
    p_eval.set_defaults(func=_cmd_eval)

    p_table = sub.add_parser("table1", help="reproduce the quartic-case reference error table")
    p_table.add_argument("--rows", default=None, help="comma list of a values to restrict to")
    p_table.add_argument("--csv", default=None, help="also write the table to this CSV path")
    p_table.set_defaults(func=_cmd_table1)

    p_sweep = sub.add_parser("sweep", help="parameter sweep to CSV")
    p_sweep.add_argument("--a", required=True, help="comma list of a values (RE or RE+IMj)")
    p_sweep.add_argument("--w", required=True, type=float)
    p_sweep.add_argument("--methods", default="auto", help="comma list: direct,generic,even,pj,auto")
    p_sweep.add_argument("--policy", default="optimal")
    p_sweep.add_argument("--eps", default=1e-16, type=float)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--suite", default="all", choices=list(SUITE_NAMES))
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        rc = args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, PoleError, RangeError, EvenExponentError, MismatchError) as exc:
        print(f"error: precondition violated: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    if args.timing:
        print(f"elapsed_s {time.perf_counter() - start:.3f}")
    return rc


if __name__ == "__main__":
    sys.exit(main())
