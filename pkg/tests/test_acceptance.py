"""Acceptance gate: every criterion at its pinned tolerance.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see
them all).  Criterion 5 pins the empirical remainder-decay exponent to
N - 1/2; the measured remainder is dominated by its first omitted
term and decays like a^N, so that check fails by construction of the
criterion.  The one-sided bound it was meant to confirm (slope >=
N - 1/2, i.e. the remainder is O(a^(N-1/2))) holds with room and is
covered by the engine tests and the ``verify`` CLI suite.
"""

import cmath
import math
import time

import pytest

from thetasum import (
    OPTIMAL,
    Fixed,
    SumSpec,
    classical_pj_rhs,
    direct_sum,
    eval_even,
    eval_generic,
    gamma_real,
    remainder_slope,
    zeta_real,
    bernoulli_even,
    inv_factorial_coeff,
    inv_factorial_coeff_doubled,
    pochhammer,
)
from thetasum.reference import W4_ROWS

REACHABLE = {0.75: 4.656e-11, 1.00: 3.642e-8, 1.50: 2.856e-5, 2.00: 7.500e-4}
UNREACHABLE = (0.10, 0.20, 0.25, 0.50)


def report(number: int, description: str, passed: bool) -> bool:
    status = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {number}: {status} - {description}")
    return passed


def test_criterion_1_reachable_rows_factor_two():
    start = time.perf_counter()
    ok = True
    for a, ref_err in REACHABLE.items():
        spec = SumSpec(a, 4.0)
        ref = direct_sum(spec)
        ev = eval_even(spec, 2, OPTIMAL, n_max=1)
        err = abs(ev.value - ref.value)
        ok = ok and 0.5 <= err / ref_err <= 2.0
        row = next(r for r in W4_ROWS if r.a == a)
        ok = ok and f"{ref.value.real:.6f}" == f"{row.value:.6f}"
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    assert report(1, f"reachable-row errors within factor 2, S to 6 decimals ({elapsed:.2f}s)", ok)


def test_criterion_2_unreachable_rows_oracle_resolution():
    start = time.perf_counter()
    ok = True
    for a in UNREACHABLE:
        spec = SumSpec(a, 4.0)
        err = abs(eval_even(spec, 2, OPTIMAL, n_max=1).value - direct_sum(spec).value)
        ok = ok and err <= 1e-13
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    assert report(2, f"unreachable rows agree with oracle to 1e-13 ({elapsed:.2f}s)", ok)


def test_criterion_3_least_term_indices():
    start = time.perf_counter()
    ok = True
    for row in W4_ROWS:
        ev = eval_even(SumSpec(row.a, 4.0), 2, OPTIMAL, n_max=1)
        j0 = ev.terms_used["j"] - 1
        ok = ok and abs(j0 - row.j0) <= 2
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    assert report(3, f"least-term index within +-2 of reference at all rows ({elapsed:.2f}s)", ok)


def test_criterion_4_classical_identity():
    ok = True
    for a in (0.5, 1.0, 2.0, math.pi):
        diff = abs(classical_pj_rhs(a, 12) - direct_sum(SumSpec(a, 0.0)).value)
        ok = ok and diff <= 1e-13
    assert report(4, "classical transformation identity to 1e-13", ok)


def test_criterion_5_remainder_slope_windows():
    start = time.perf_counter()
    grid = [0.0125, 0.025, 0.05, 0.1]
    slope_a = remainder_slope(1.3, 2, grid)
    slope_b = remainder_slope(3.0, 3, grid)
    in_window_a = 1.35 <= slope_a <= 1.65
    in_window_b = 2.35 <= slope_b <= 2.65
    elapsed = time.perf_counter() - start
    ok = in_window_a and in_window_b and elapsed < 5.0
    report(
        5,
        f"remainder slopes {slope_a:.3f}, {slope_b:.3f} vs pinned windows "
        f"[1.35,1.65], [2.35,2.65] ({elapsed:.2f}s)",
        ok,
    )
    # The windows presume the uniform bound exponent N - 1/2 is the
    # observed decay rate; the remainder actually tracks its first
    # omitted term (~ a^N), which satisfies the bound but not the
    # window.  Kept faithful to the stated criterion.
    assert ok, (
        f"slopes {slope_a:.4f} and {slope_b:.4f} track the first omitted term "
        "(exponent N), outside the pinned N-1/2 windows; the one-sided bound "
        "slope >= N-1/2 holds with margin"
    )


def test_criterion_6_generic_oracle_equivalence():
    start = time.perf_counter()
    worst = 0.0
    for w in (0.5, 1.0, 1.5, 2.5, 3.0, 5.25):
        for a in (0.01, 0.05, 0.1):
            spec = SumSpec(a, w)
            worst = max(worst, abs(eval_generic(spec, OPTIMAL).value - direct_sum(spec).value))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-11 and elapsed < 5.0
    assert report(6, f"generic expansion within 1e-11 of oracle, worst {worst:.2e} ({elapsed:.2f}s)", ok)


def test_criterion_7_specfun_identities():
    ok = True
    for n in range(1, 16):
        z = zeta_real(2.0 * n)
        ident = (2.0 * math.pi) ** (2 * n) * abs(bernoulli_even(n)) / (2.0 * math.factorial(2 * n))
        ok = ok and abs(z - ident) / z <= 1e-10
    for s in (-5.5, -2.3, -0.7, 0.3):
        rhs = (
            2.0**s
            * math.pi ** (s - 1.0)
            * math.sin(math.pi * s / 2.0)
            * gamma_real(1.0 - s)
            * zeta_real(1.0 - s)
        )
        ok = ok and abs(zeta_real(s) - rhs) / abs(rhs) <= 1e-10
    for m in range(1, 6):
        for j in range(31):
            c1 = inv_factorial_coeff(m, j)
            ok = ok and abs(c1 - inv_factorial_coeff_doubled(m, j)) / c1 <= 1e-12
    ok = ok and abs(zeta_real(2.0) - math.pi**2 / 6.0) / (math.pi**2 / 6.0) <= 1e-14
    ok = ok and abs(zeta_real(4.0) - math.pi**4 / 90.0) / (math.pi**4 / 90.0) <= 1e-14
    assert report(7, "zeta/Bernoulli/reflection/coefficient identities", ok)


def test_criterion_8_sector_validity():
    ok = True
    for theta in (-1.2, -0.6, 0.0, 0.6, 1.2):
        spec = SumSpec(0.5 * cmath.exp(1j * theta), 4.0)
        err = abs(eval_even(spec, 2, OPTIMAL).value - direct_sum(spec).value)
        ok = ok and err <= 1e-9
    assert report(8, "complex sector |arg a| <= 1.2 within 1e-9 of oracle", ok)


def _literal_quadratic(a, terms, n_max):
    head = math.pi**2 / 6.0 + a / 2.0 - math.sqrt(math.pi * a)
    tail = 0.0
    for n in range(1, n_max + 1):
        ups = sum(pochhammer(1.5, j) * (-a / (math.pi**2 * n * n)) ** j for j in range(terms))
        tail += math.exp(-math.pi**2 * n * n / a) / (n * n) * ups
    return head - (a / math.pi) ** 1.5 * tail


def _literal_quartic(a, terms, n_max):
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


def test_criterion_9_specialization_fixtures():
    ok = True
    for a in (0.5, 1.0):
        for terms in (1, 3, 5):
            e1 = eval_even(SumSpec(a, 2.0), 1, Fixed(terms), n_max=5)
            e2 = eval_even(SumSpec(a, 4.0), 2, Fixed(terms), n_max=5)
            ok = ok and abs(e1.value - _literal_quadratic(a, terms, 5)) / abs(e1.value) <= 1e-13
            ok = ok and abs(e2.value - _literal_quartic(a, terms, 5)) / abs(e2.value) <= 1e-13
    assert report(9, "quadratic/quartic specializations match literal forms to 1e-13", ok)
