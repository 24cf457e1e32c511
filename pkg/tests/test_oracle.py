"""Direct-summation oracle: tail bound soundness and frozen anchors."""

import cmath
import math
import random

import pytest

from thetasum import (
    ConvergenceError,
    DomainError,
    SumSpec,
    abs_error,
    classical_pj_rhs,
    direct_sum,
    zeta_real,
)
from thetasum.compensated import ComplexSum

EPS_MACH = 2.220446049250313e-16


def plain_partial(a, w, n_terms):
    acc = ComplexSum()
    mag = 0.0
    for n in range(1, n_terms + 1):
        term = cmath.exp(-a * (n * n)) / math.pow(n, w)
        acc.add(term)
        mag += abs(term)
    return acc.value, mag


def test_classical_case_matches_transformation():
    res = direct_sum(SumSpec(1.0, 0.0), 1e-16)
    assert abs(res.value - classical_pj_rhs(1.0, 12)) <= 1e-14


def test_reference_anchor_w4():
    res = direct_sum(SumSpec(1.0, 4.0))
    assert f"{res.value.real:.6f}" == "0.369026"
    assert abs(res.value.imag) == 0.0


def test_dominant_first_term():
    res = direct_sum(SumSpec(50.0, 4.0))
    # first omitted correction is exp(-200)/16, far below any resolution
    assert res.value.real == pytest.approx(math.exp(-50.0), rel=1e-12)
    assert res.n_terms <= 3


def test_rejects_bad_spec_and_eps():
    with pytest.raises(DomainError):
        SumSpec(0.0, 4.0)
    with pytest.raises(DomainError):
        SumSpec(-1.0, 4.0)
    with pytest.raises(DomainError):
        direct_sum(SumSpec(1.0, 4.0), 1e-17)


def test_convergence_error_for_tiny_re_a():
    with pytest.raises(ConvergenceError):
        direct_sum(SumSpec(1e-15, 4.0))


def test_tail_bound_decreases_with_eps():
    spec = SumSpec(0.3, 2.5)
    coarse = direct_sum(spec, 1e-6)
    fine = direct_sum(spec, 1e-16)
    assert fine.n_terms > coarse.n_terms
    assert fine.tail_bound < coarse.tail_bound
    assert abs(fine.value - coarse.value) <= coarse.tail_bound


def test_tail_bound_soundness_random_specs():
    # doubling the cutoff moves the value by less than tail bound plus
    # the rounding budget of both summation paths
    rng = random.Random(20240817)
    for _ in range(50):
        a = rng.uniform(0.05, 5.0)
        w = rng.uniform(1e-6, 6.0)
        spec = SumSpec(a, w)
        res = direct_sum(spec, 1e-12)
        doubled, doubled_mag = plain_partial(spec.a, w, 2 * res.n_terms)
        moved = abs(doubled - res.value)
        allowance = res.tail_bound + res.rounding_bound + 2 * res.n_terms * EPS_MACH * doubled_mag
        assert moved <= allowance


def test_partial_sums_monotone_for_real_a():
    for a, w in ((0.1, 1.5), (0.5, 4.0), (2.0, 0.5)):
        res = direct_sum(SumSpec(a, w))
        limit = res.value.real + res.tail_bound + res.rounding_bound
        acc = 0.0
        prev = -1.0
        for n in range(1, res.n_terms + 1):
            acc += math.exp(-a * n * n) / math.pow(n, w)
            assert acc >= prev
            assert acc <= limit
            prev = acc


def test_zeta_limit():
    res = direct_sum(SumSpec(1e-6, 6.0))
    assert abs(res.value - zeta_real(6.0)) <= 1e-5


def test_complex_parameter():
    spec = SumSpec(0.4 + 0.3j, 2.0)
    res = direct_sum(spec)
    # brute-force cross sum with generous fixed cutoff
    brute = sum(cmath.exp(-spec.a * n * n) / n**2 for n in range(1, 40))
    assert abs(res.value - brute) < 1e-14


def test_abs_error_identity_and_reference_rows():
    spec = SumSpec(1.0, 4.0)
    res = direct_sum(spec)
    assert abs_error(res.value, spec) == 0.0


def test_result_bounds_nonnegative():
    res = direct_sum(SumSpec(0.7, 1.2))
    assert res.tail_bound >= 0.0
    assert res.rounding_bound >= 0.0
    assert res.noise_floor() >= res.tail_bound
