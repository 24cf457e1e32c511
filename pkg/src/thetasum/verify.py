"""Runtime verification suite behind the ``verify`` CLI subcommand.

Each check re-measures one of the package's standing invariants and
compares it against its pinned bound.  The checks are deterministic
(seeded randomness only) so repeated runs produce identical reports.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .compensated import ComplexSum
from .engine import (
    classical_pj_rhs,
    eval_even,
    eval_generic,
    remainder_slope,
    tail_factor,
)
from .errors import PrecisionError
from .model import OPTIMAL, Fixed, SumSpec, TermLog
from .oracle import direct_sum
from .reference import W4_ROWS
from .specfun import (
    bernoulli_even,
    digamma_int,
    gamma_real,
    inv_factorial_coeff,
    inv_factorial_coeff_doubled,
    pochhammer,
    zeta_real,
)

__all__ = ["CheckResult", "SUITE_NAMES", "run_suite"]

_SEED = 987654321


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    measured: float
    bound: str
    passed: bool


def _check(suite: str, name: str, measured: float, bound: str, passed: bool) -> CheckResult:
    return CheckResult(suite, name, float(measured), bound, bool(passed))


# ----------------------------------------------------------------------
# specfun invariants
# ----------------------------------------------------------------------


def checks_specfun() -> list[CheckResult]:
    out: list[CheckResult] = []

    worst = 0.0
    for s in (-5.5, -2.3, -0.7, 0.3):
        rhs = (
            2.0**s
            * math.pi ** (s - 1.0)
            * math.sin(math.pi * s / 2.0)
            * gamma_real(1.0 - s)
            * zeta_real(1.0 - s)
        )
        worst = max(worst, abs(zeta_real(s) - rhs) / abs(rhs))
    out.append(_check("specfun", "zeta reflection consistency", worst, "rel <= 1e-10", worst <= 1e-10))

    worst = max(abs(zeta_real(-2.0 * k)) for k in range(1, 21))
    out.append(_check("specfun", "zeta trivial zeros k=1..20", worst, "== 0 exactly", worst == 0.0))

    worst = 0.0
    for n in range(1, 16):
        z = zeta_real(2.0 * n)
        ident = (2.0 * math.pi) ** (2 * n) * abs(bernoulli_even(n)) / (2.0 * math.factorial(2 * n))
        worst = max(worst, abs(z - ident) / z)
    out.append(_check("specfun", "bernoulli-zeta identity n=1..15", worst, "rel <= 1e-10", worst <= 1e-10))

    worst = 0.0
    for m in range(1, 6):
        for j in range(31):
            c1 = inv_factorial_coeff(m, j)
            c2 = inv_factorial_coeff_doubled(m, j)
            worst = max(worst, abs(c1 - c2) / c1)
    out.append(_check("specfun", "coefficient two-form equality", worst, "rel <= 1e-12", worst <= 1e-12))

    rng = random.Random(_SEED)
    worst = 0.0
    count = 0
    while count < 100:
        x = rng.uniform(-10.0, 10.0)
        if x < 0.5 and abs(x - round(x)) < 1e-3:
            continue
        lhs = gamma_real(x + 1.0)
        rhs = x * gamma_real(x)
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
        count += 1
    out.append(_check("specfun", "gamma recurrence (100 random x)", worst, "rel <= 1e-12", worst <= 1e-12))

    worst = max(abs(digamma_int(m) - digamma_int(m - 1) - 1.0 / m) for m in range(1, 51))
    out.append(_check("specfun", "digamma recurrence m=1..50", worst, "abs <= 1e-15", worst <= 1e-15))

    rel2 = abs(zeta_real(2.0) - math.pi**2 / 6.0) / (math.pi**2 / 6.0)
    rel4 = abs(zeta_real(4.0) - math.pi**4 / 90.0) / (math.pi**4 / 90.0)
    worst = max(rel2, rel4)
    out.append(_check("specfun", "zeta(2), zeta(4) closed forms", worst, "rel <= 1e-14", worst <= 1e-14))

    return out


# ----------------------------------------------------------------------
# oracle invariants
# ----------------------------------------------------------------------


def _plain_partial(a: complex, w: float, n_terms: int) -> tuple[complex, float]:
    acc = ComplexSum()
    mag = 0.0
    for n in range(1, n_terms + 1):
        term = cmath.exp(-a * (n * n)) / math.pow(n, w)
        acc.add(term)
        mag += abs(term)
    return acc.value, mag


def checks_oracle() -> list[CheckResult]:
    out: list[CheckResult] = []
    rng = random.Random(_SEED)
    eps_mach = 2.220446049250313e-16

    # Doubling the cutoff must move the value by less than the reported
    # tail bound, up to the rounding budget of the two summation paths.
    worst_ratio = 0.0
    sound = True
    for _ in range(50):
        a = rng.uniform(0.05, 5.0)
        w = rng.uniform(1e-6, 6.0)
        spec = SumSpec(a, w)
        res = direct_sum(spec, 1e-12)
        doubled, doubled_mag = _plain_partial(spec.a, w, 2 * res.n_terms)
        moved = abs(doubled - res.value)
        allowance = res.tail_bound + res.rounding_bound + 2 * res.n_terms * eps_mach * doubled_mag
        if allowance > 0.0:
            worst_ratio = max(worst_ratio, moved / allowance)
        sound = sound and moved <= allowance
    out.append(
        _check("oracle", "tail bound soundness (50 random specs)", worst_ratio, "moved/(tail+rounding) <= 1", sound)
    )

    monotone = True
    for a, w in ((0.1, 1.5), (0.5, 4.0), (2.0, 0.5)):
        spec = SumSpec(a, w)
        res = direct_sum(spec)
        limit = res.value.real + res.tail_bound + res.rounding_bound
        acc = 0.0
        prev = 0.0
        ok = True
        for n in range(1, res.n_terms + 1):
            acc += math.exp(-a * n * n) / math.pow(n, w)
            ok = ok and acc >= prev and acc <= limit
            prev = acc
        monotone = monotone and ok
    out.append(_check("oracle", "partial-sum monotonicity (real a)", 1.0 if monotone else 0.0, "increasing, bounded", monotone))

    diff = abs(direct_sum(SumSpec(1e-6, 6.0)).value - zeta_real(6.0))
    out.append(_check("oracle", "zeta limit w=6, a=1e-6", diff, "abs <= 1e-5", diff <= 1e-5))

    return out


# ----------------------------------------------------------------------
# engine invariants
# ----------------------------------------------------------------------


def _literal_quadratic(a: float, terms: int, n_max: int) -> float:
    # independent rendering of the m = 1 transformation
    head = math.pi**2 / 6.0 + a / 2.0 - math.sqrt(math.pi * a)
    tail = 0.0
    for n in range(1, n_max + 1):
        ups = sum(pochhammer(1.5, j) * (-a / (math.pi**2 * n * n)) ** j for j in range(terms))
        tail += math.exp(-math.pi**2 * n * n / a) / (n * n) * ups
    return head - (a / math.pi) ** 1.5 * tail


def _literal_quartic(a: float, terms: int, n_max: int) -> float:
    # independent rendering of the m = 2 transformation
    head = (
        math.pi**4 / 90.0
        - math.pi**2 * a / 6.0
        - a * a / 4.0
        + (2.0 / 3.0) * math.sqrt(math.pi) * a**1.5
    )
    tail = 0.0
    for n in range(1, n_max + 1):
        ups = sum(
            pochhammer(2.5, j) * pochhammer(2, j) / math.factorial(j)
            * (-a / (math.pi**2 * n * n)) ** j
            for j in range(terms)
        )
        tail += math.exp(-math.pi**2 * n * n / a) / n**4 * ups
    return head + (a / math.pi) ** 3.5 * tail


def checks_engine() -> list[CheckResult]:
    out: list[CheckResult] = []

    worst = 0.0
    for w in (0.5, 1.0, 1.5, 2.5, 3.0, 5.25):
        for a in (0.01, 0.05, 0.1):
            spec = SumSpec(a, w)
            err = abs(eval_generic(spec, OPTIMAL).value - direct_sum(spec).value)
            worst = max(worst, err)
    out.append(_check("engine", "generic oracle equivalence (18-point grid)", worst, "abs <= 1e-11", worst <= 1e-11))

    ok = True
    worst = 0.0
    for m in (1, 2, 3):
        for a in (0.5, 1.0, 2.0):
            spec = SumSpec(a, 2.0 * m)
            ev = eval_even(spec, m, OPTIMAL)
            err = abs(ev.value - direct_sum(spec).value)
            bound = 10.0 * ev.err_estimate
            ok = ok and err <= bound
            if bound > 0:
                worst = max(worst, err / bound)
            if a <= 1.0:
                ok = ok and ev.err_estimate <= 1e-3 * abs(ev.value)
    out.append(_check("engine", "even-transform error-estimate honesty", worst, "err <= 10x estimate", ok))

    worst = 0.0
    for a in (0.5, 1.0, 2.0, math.pi):
        worst = max(worst, abs(classical_pj_rhs(a, 12) - direct_sum(SumSpec(a, 0.0)).value))
    out.append(_check("engine", "classical identity a in {0.5,1,2,pi}", worst, "abs <= 1e-13", worst <= 1e-13))

    worst = 0.0
    for a in (0.5, 1.0):
        for terms in (1, 3, 5):
            e1 = eval_even(SumSpec(a, 2.0), 1, Fixed(terms), n_max=5)
            e2 = eval_even(SumSpec(a, 4.0), 2, Fixed(terms), n_max=5)
            worst = max(worst, abs(e1.value - _literal_quadratic(a, terms, 5)) / abs(e1.value))
            worst = max(worst, abs(e2.value - _literal_quartic(a, terms, 5)) / abs(e2.value))
    out.append(_check("engine", "specialization vs literal m=1,2 forms", worst, "rel <= 1e-13", worst <= 1e-13))

    worst = 0.0
    for theta in (-1.2, -0.6, 0.0, 0.6, 1.2):
        a = 0.5 * cmath.exp(1j * theta)
        spec = SumSpec(a, 4.0)
        worst = max(worst, abs(eval_even(spec, 2, OPTIMAL).value - direct_sum(spec).value))
    out.append(_check("engine", "sector validity |arg a| <= 1.2", worst, "abs <= 1e-9", worst <= 1e-9))

    ok = True
    for a, m in ((0.5, 1), (1.0, 2), (0.25, 2), (2.0, 3)):
        log = TermLog()
        _, j_used, _ = tail_factor(a, m, 1, OPTIMAL, log=log, series="j")
        mags = [mag for _, mag in log.series("j")]
        j0 = j_used - 1
        is_min = (j0 + 1 < len(mags) and mags[j0] <= mags[j0 + 1]) and (
            j0 == 0 or mags[j0] < mags[j0 - 1]
        )
        ok = ok and is_min
    out.append(_check("engine", "least-term index is a log local minimum", 1.0 if ok else 0.0, "local min", ok))

    errs = []
    for a in (0.75, 1.0, 1.5, 2.0):
        spec = SumSpec(a, 4.0)
        errs.append(abs(eval_even(spec, 2, OPTIMAL, n_max=1).value - direct_sum(spec).value))
    monotone = all(errs[i] <= errs[i + 1] for i in range(len(errs) - 1))
    out.append(_check("engine", "monotone error degradation in a (m=2)", max(errs), "non-decreasing", monotone))

    worst_gap = 0
    factor_ok = True
    noise_ok = True
    for row in W4_ROWS:
        spec = SumSpec(row.a, 4.0)
        ev = eval_even(spec, 2, OPTIMAL, n_max=1)
        err = abs(ev.value - direct_sum(spec).value)
        j0 = ev.terms_used["j"] - 1
        worst_gap = max(worst_gap, abs(j0 - row.j0))
        if row.reachable:
            factor_ok = factor_ok and (0.5 <= err / row.abs_err <= 2.0)
        else:
            noise_ok = noise_ok and err <= 1e-13
    out.append(_check("engine", "w=4 least-term index vs reference", worst_gap, "within +-2", worst_gap <= 2))
    out.append(_check("engine", "w=4 reachable-row errors vs reference", 1.0 if factor_ok else 0.0, "within factor 2", factor_ok))
    out.append(_check("engine", "w=4 unreachable rows at oracle resolution", 1.0 if noise_ok else 0.0, "abs <= 1e-13", noise_ok))

    return out


# ----------------------------------------------------------------------
# appendix: empirical remainder scaling
# ----------------------------------------------------------------------


def checks_appendix() -> list[CheckResult]:
    out: list[CheckResult] = []
    grid = [0.0125, 0.025, 0.05, 0.1]

    for w, n_trunc in ((1.3, 2), (3.0, 3)):
        slope = remainder_slope(w, n_trunc, grid)
        # the remainder tracks its first omitted term a^N ...
        near = abs(slope - n_trunc) <= 0.15
        out.append(
            _check("appendix", f"remainder slope (w={w}, N={n_trunc}) ~ N", slope, f"{n_trunc} +- 0.15", near)
        )
        # ... which in particular confirms the uniform O(a^(N-1/2)) bound
        bound = slope >= n_trunc - 0.5 - 0.15
        out.append(
            _check("appendix", f"remainder bound O(a^(N-1/2)) (w={w}, N={n_trunc})", slope, f">= {n_trunc - 0.5 - 0.15}", bound)
        )

    try:
        remainder_slope(1.3, 8, grid)
        raised = False
    except PrecisionError:
        raised = True
    out.append(
        _check("appendix", "noise-floor guard raises (w=1.3, N=8)", 1.0 if raised else 0.0, "PrecisionError", raised)
    )
    return out


SUITE_NAMES = ("specfun", "oracle", "engine", "appendix", "all")

_SUITES = {
    "specfun": checks_specfun,
    "oracle": checks_oracle,
    "engine": checks_engine,
    "appendix": checks_appendix,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        results: list[CheckResult] = []
        for key in ("specfun", "oracle", "engine", "appendix"):
            results.extend(_SUITES[key]())
        return results
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return _SUITES[name]()
