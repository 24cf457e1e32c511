"""Expansion engine for sum_{n>=1} exp(-a n^2) / n^w as a -> 0.

Three routes, all valid in the sector Re(a) > 0:

* classical_pj_rhs -- the classical Poisson-Jacobi identity for w = 0
  (exact, not asymptotic): the Gaussian sum equals
  (1/2) sqrt(pi/a) - 1/2 + sqrt(pi/a) sum_n exp(-pi^2 n^2 / a).

* eval_generic -- the small-a expansion for w > 0 not an even integer:

      S = singular_term + sum'_k (-1)^k zeta(w - 2k) a^k / k!

  where the primed sum omits k = m when w = 2m+1 (that contribution
  moves into the singular term, which then carries log a).  The k-sum
  diverges; truncation policies implement the usual least-term rules.

* eval_even -- for w = 2m the zeta factors terminate the k-sum at
  k = m and the expansion closes into a transformation of
  Poisson-Jacobi type: an algebraic part plus the dual sum in
  exp(-pi^2 n^2 / a), each dual term decorated by an asymptotic
  series tail_factor(a; m, n) with inverse-factorial coefficients.

Everything is pure and thread safe.  Series caps can be overridden
with the THETA_SUM_MAX_TERMS environment variable (read per call).
"""

from __future__ import annotations

import cmath
import math
import os
import statistics
from typing import NamedTuple, Optional, Union

from .compensated import ComplexSum
from .errors import (
    DomainError,
    EvenExponentError,
    MismatchError,
    PrecisionError,
)
from .model import (
    OPTIMAL,
    ErrorTarget,
    Evaluation,
    Fixed,
    MethodChoice,
    OptimalFirstMin,
    SumSpec,
    TermLog,
    TruncationPolicy,
)
from .oracle import direct_sum
from .specfun import EULER_GAMMA, digamma_int, gamma_real, zeta_real

__all__ = [
    "classical_pj_rhs",
    "singular_term",
    "eval_generic",
    "eval_even",
    "tail_factor",
    "optimal_index_heuristic",
    "optimal_index_w4",
    "evaluate",
    "remainder_slope",
]

_PI2 = math.pi * math.pi

#: Absolute tolerance for recognizing integer exponents; separates
#: intentional integer input from nearby reals at binary64.
INTEGER_TOL = 1e-9

#: Non-integer exponents closer than this to an odd integer trip the
#: near-odd cancellation warning.
NEAR_ODD_WINDOW = 0.05

# Terms below this fraction of the accumulated value cannot change the
# result at binary64; the k-sum least-term scan stops there instead of
# chasing a minimum that may lie past the range of zeta_real.
_REL_FLOOR = 1e-18


class Caps(NamedTuple):
    k: int  # generic / algebraic power series
    j: int  # tail-factor series per dual term
    n: int  # dual (theta-type) sum


_DEFAULT_CAPS = Caps(k=400, j=2000, n=50)

_ENV_CAP = "THETA_SUM_MAX_TERMS"


def _caps() -> Caps:
    raw = os.environ.get(_ENV_CAP)
    if not raw:
        return _DEFAULT_CAPS
    try:
        v = int(raw)
    except ValueError as exc:
        raise DomainError(f"{_ENV_CAP} must be an integer, got {raw!r}") from exc
    if v < 1:
        raise DomainError(f"{_ENV_CAP} must be >= 1, got {v}")
    return Caps(k=v, j=v, n=v)


# ----------------------------------------------------------------------
# exponent classification
# ----------------------------------------------------------------------


def _dist_to_odd(w: float) -> tuple[float, int]:
    m = round((w - 1.0) / 2.0)
    if m < 0:
        m = 0
    return abs(w - (2 * m + 1)), m


def _odd_m(w: float) -> Optional[int]:
    d, m = _dist_to_odd(w)
    return m if d <= INTEGER_TOL else None


def _even_m(w: float) -> Optional[int]:
    m = round(w / 2.0)
    if m >= 1 and abs(w - 2 * m) <= INTEGER_TOL:
        return m
    return None


def _near_odd(w: float) -> bool:
    d, _ = _dist_to_odd(w)
    return INTEGER_TOL < d < NEAR_ODD_WINDOW


def _require_positive_int(value: int, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise DomainError(f"{name} must be an integer >= 1, got {value!r}")
    return value


# ----------------------------------------------------------------------
# classical transformation (w = 0)
# ----------------------------------------------------------------------


def classical_pj_rhs(a: complex, n_max: int) -> complex:
    """Right-hand side of the classical Poisson-Jacobi identity.

    (1/2) sqrt(pi/a) - 1/2 + sqrt(pi/a) sum_{n=1}^{n_max}
    exp(-pi^2 n^2 / a), principal branch throughout.  The identity is
    exact; callers choose n_max so the first omitted dual term is
    negligible (it decays like exp(-pi^2 n^2 Re(1/a))).
    """
    a = complex(a)
    if not a.real > 0.0:
        raise DomainError(f"classical_pj_rhs requires Re(a) > 0, got a = {a}")
    _require_positive_int(n_max, "n_max")
    root = cmath.sqrt(cmath.pi / a)
    dual = ComplexSum()
    for n in range(1, n_max + 1):
        dual.add(cmath.exp(-_PI2 * n * n / a))
    return 0.5 * root - 0.5 + root * dual.value


# ----------------------------------------------------------------------
# generic expansion, w not an even integer
# ----------------------------------------------------------------------


def singular_term(spec: SumSpec) -> complex:
    """The non-power-series part of the generic small-a expansion.

    For w = 2m+1 (within tolerance) the leading pole is double and the
    term carries the logarithm:

        ((-a)^m / m!) (EULER_GAMMA - (1/2) log a + (1/2) psi(m+1));

    otherwise it is the simple-pole contribution

        (1/2) Gamma((1-w)/2) a^((w-1)/2).

    Principal branch for log and powers.
    """
    a, w = spec.a, spec.w
    if w <= 0.0:
        raise DomainError(f"singular_term requires w > 0, got {w}")
    if _even_m(w) is not None:
        raise EvenExponentError(
            f"w = {w} is an even integer; use the even-exponent transformation"
        )
    m = _odd_m(w)
    if m is not None:
        # digamma_int(m) is psi(m+1)
        return ((-a) ** m / math.factorial(m)) * (
            EULER_GAMMA - 0.5 * cmath.log(a) + 0.5 * digamma_int(m)
        )
    return 0.5 * gamma_real(0.5 - 0.5 * w) * a ** ((w - 1.0) / 2.0)


def eval_generic(spec: SumSpec, policy: TruncationPolicy = OPTIMAL) -> Evaluation:
    """Generic small-a expansion for w > 0 not an even integer.

    singular_term + sum'_k (-1)^k zeta(w - 2k) a^k / k!, the primed
    sum omitting k = m when w = 2m+1.  Truncation under
    OptimalFirstMin stops just *before* the least term, so
    err_estimate is the least term itself.  The scan also stops once
    terms drop below 1e-18 of the accumulated value: past that point
    further terms cannot change the result at binary64.
    """
    a, w = spec.a, spec.w
    if w <= 0.0:
        raise DomainError(f"eval_generic requires w > 0, got {w}")
    if _even_m(w) is not None:
        raise EvenExponentError(
            f"w = {w} is an even integer; use the even-exponent transformation"
        )
    m_skip = _odd_m(w)
    caps = _caps()
    log = TermLog()
    acc = ComplexSum(singular_term(spec))

    if isinstance(policy, Fixed):
        cap = min(policy.count, caps.k)
    elif isinstance(policy, ErrorTarget):
        cap = min(policy.cap, caps.k)
    else:
        cap = caps.k

    included = 0
    first_omitted = 0.0
    pending: Optional[tuple[complex, float]] = None
    apow: complex = 1.0 + 0j  # a^k / k!
    k = 0
    while True:
        if not (m_skip is not None and k == m_skip):
            term = zeta_real(w - 2.0 * k) * apow
            if k & 1:
                term = -term
            mag = abs(term)
            log.log("k", k, mag)
            if isinstance(policy, Fixed):
                if included == cap:
                    first_omitted = mag
                    break
                acc.add(term)
                included += 1
            else:
                if pending is None:
                    pending = (term, mag)
                elif mag >= pending[1]:
                    # pending is the least term: truncate just before it
                    first_omitted = pending[1]
                    break
                else:
                    acc.add(pending[0])
                    included += 1
                    pending = (term, mag)
                if isinstance(policy, ErrorTarget) and pending[1] <= policy.eps:
                    first_omitted = pending[1]
                    break
                if pending[1] < _REL_FLOOR * abs(acc.value):
                    first_omitted = pending[1]
                    break
                if included == cap:
                    first_omitted = pending[1]
                    break
        k += 1
        apow *= a / k
    return Evaluation(
        value=acc.value,
        method=MethodChoice.GENERIC,
        terms_used={"k": included},
        err_estimate=first_omitted,
        term_log=log,
        near_odd_warning=_near_odd(w),
    )


# ----------------------------------------------------------------------
# even-exponent transformation, w = 2m
# ----------------------------------------------------------------------


def _gamma_half_minus(m: int) -> float:
    # Gamma(1/2 - m) by downward recurrence from Gamma(1/2) = sqrt(pi);
    # the factors 1/2 - r are exact in binary64.
    denom = 1.0
    for r in range(1, m + 1):
        denom *= 0.5 - r
    return math.sqrt(math.pi) / denom


def tail_factor(
    a: complex,
    m: int,
    n: int,
    policy: TruncationPolicy = OPTIMAL,
    *,
    log: Optional[TermLog] = None,
    series: Optional[str] = None,
    jcap: Optional[int] = None,
) -> tuple[complex, int, float]:
    """Asymptotic factor decorating the n-th dual term for w = 2m.

    Partial sum of sum_j c_j (-a / (pi^2 n^2))^j with the
    inverse-factorial coefficients c_j = (m)_j (m+1/2)_j / j!,
    generated by the term ratio so no large intermediates appear.
    Under OptimalFirstMin the last included index is the least-term
    index (the magnitudes are unimodal in j, so the first local
    minimum is global).

    Returns (value, j_used, first_omitted) where j_used counts the
    included terms (least-term index + 1 under OptimalFirstMin) and
    first_omitted is the magnitude of the first omitted term.
    """
    a = complex(a)
    if not a.real > 0.0:
        raise DomainError(f"tail_factor requires Re(a) > 0, got a = {a}")
    _require_positive_int(m, "m")
    _require_positive_int(n, "n")
    if jcap is None:
        jcap = _caps().j

    def put(index: int, magnitude: float) -> None:
        if log is not None and series is not None:
            log.log(series, index, magnitude)

    if isinstance(policy, Fixed):
        target = min(policy.count, jcap)
    elif isinstance(policy, ErrorTarget):
        target = min(policy.cap, jcap)
    else:
        target = jcap

    x = -a / (_PI2 * n * n)
    acc = ComplexSum()
    t: complex = 1.0 + 0j
    mag = 1.0
    acc.add(t)
    included = 1
    put(0, mag)
    j = 0
    first_omitted = 0.0
    while True:
        t_next = t * ((m + j) * (m + 0.5 + j) / (j + 1.0)) * x
        mag_next = abs(t_next)
        stop = False
        if isinstance(policy, Fixed):
            stop = included == target
        elif isinstance(policy, ErrorTarget):
            stop = mag_next <= policy.eps or mag_next >= mag or included == target
        else:
            stop = mag_next >= mag or included == target
        if stop:
            put(j + 1, mag_next)
            first_omitted = mag_next
            break
        acc.add(t_next)
        t = t_next
        mag = mag_next
        j += 1
        included += 1
        put(j, mag)
    return acc.value, included, first_omitted


def eval_even(
    spec: SumSpec,
    m: int,
    policy: TruncationPolicy = OPTIMAL,
    n_max: Union[int, str, None] = "auto",
) -> Evaluation:
    """Poisson-Jacobi-type transformation for w = 2m.

        (1/2) Gamma(1/2 - m) a^(m-1/2)
        + sum_{k=0}^{m} (-1)^k zeta(2m - 2k) a^k / k!
        + (-1)^m (a/pi)^(2m-1/2)
          sum_{n=1}^{n_max} tail_factor(a; m, n) exp(-pi^2 n^2 / a) / n^(2m)

    Gamma(1/2 - m) comes from the downward recurrence off sqrt(pi);
    the k = m zeta factor is zeta(0) = -1/2.  With n_max="auto" the
    dual sum stops at the first n whose undecorated magnitude
    exp(-pi^2 n^2 Re(1/a)) / n^(2m) falls below 1e-18 of the value
    accumulated so far (that term is still included), capped at the
    n-series cap.  err_estimate combines the first omitted tail-factor
    term at n = 1 with the first omitted dual term.
    """
    a, w = spec.a, spec.w
    _require_positive_int(m, "m")
    if abs(w - 2.0 * m) > INTEGER_TOL:
        raise MismatchError(f"w = {w} is not the even integer 2m = {2 * m} within {INTEGER_TOL}")
    caps = _caps()
    log = TermLog()
    acc = ComplexSum()

    acc.add(0.5 * _gamma_half_minus(m) * a ** (m - 0.5))
    apow: complex = 1.0 + 0j
    for k in range(m + 1):
        if k:
            apow *= a / k
        term = zeta_real(2.0 * m - 2.0 * k) * apow
        if k & 1:
            term = -term
        log.log("k", k, abs(term))
        acc.add(term)

    pref = (a / math.pi) ** (2 * m - 0.5)
    if m & 1:
        pref = -pref
    re_inv = (1.0 / a).real
    auto = n_max == "auto" or n_max is None
    if auto:
        ncap = caps.n
    else:
        ncap = min(_require_positive_int(n_max, "n_max"), caps.n)

    n_used = 0
    fo_j_n1 = 0.0
    j_used_n1 = 0
    for n in range(1, ncap + 1):
        expo = -_PI2 * n * n * re_inv
        raw = (math.exp(expo) if expo > -745.0 else 0.0) / n ** (2 * m)
        # auto rule: this n is the last one worth including
        last = auto and raw < _REL_FLOOR * abs(acc.value)
        ups, j_used, fo = tail_factor(
            a, m, n, policy, log=log, series=f"j[n={n}]", jcap=caps.j
        )
        term = pref * ups * cmath.exp(-_PI2 * n * n / a) / n ** (2 * m)
        log.log("n", n, abs(term))
        acc.add(term)
        n_used = n
        if n == 1:
            fo_j_n1, j_used_n1 = fo, j_used
        if last:
            break

    abs_pref = abs(pref)
    expo1 = -_PI2 * re_inv
    fo_tail_j = abs_pref * fo_j_n1 * (math.exp(expo1) if expo1 > -745.0 else 0.0)
    nn = n_used + 1
    expon = -_PI2 * nn * nn * re_inv
    fo_tail_n = abs_pref * (math.exp(expon) if expon > -745.0 else 0.0) / nn ** (2 * m)
    return Evaluation(
        value=acc.value,
        method=MethodChoice.EVEN_TRANSFORM,
        terms_used={"k": m + 1, "n": n_used, "j": j_used_n1},
        err_estimate=fo_tail_j + fo_tail_n,
        term_log=log,
    )


# ----------------------------------------------------------------------
# least-term index predictors
# ----------------------------------------------------------------------


def optimal_index_heuristic(a: complex, m: int, n: int) -> float:
    """Predictor pi^2 n^2 / |a| - (2m + 1/2) for the least-term index
    of tail_factor's series.

    Heuristic: the term-ratio unit-crossing gives the pi^2 n^2 / |a|
    scale; the constant offset generalizes the published m = 2 form
    (optimal_index_w4) and is not asserted anywhere.  Uses |a| so
    complex parameters get a real predictor.
    """
    _require_positive_int(m, "m")
    _require_positive_int(n, "n")
    mod = abs(complex(a))
    if not mod > 0.0:
        raise DomainError("optimal_index_heuristic requires a != 0")
    return _PI2 * n * n / mod - (2.0 * m + 0.5)


def optimal_index_w4(a: float) -> float:
    """Reference predictor pi^2 / a - 5/2 for the quartic case
    (m = 2, first dual term)."""
    a = float(a)
    if not a > 0.0:
        raise DomainError("optimal_index_w4 requires a > 0")
    return _PI2 / a - 2.5


# ----------------------------------------------------------------------
# dispatch
# ----------------------------------------------------------------------


def evaluate(
    spec: SumSpec,
    method: MethodChoice,
    policy: TruncationPolicy = OPTIMAL,
    n_max: Union[int, str, None] = "auto",
    eps: float = 1e-16,
) -> Evaluation:
    """Evaluate the sum by the chosen route.

    DIRECT delegates to the oracle (err_estimate is its noise floor).
    EVEN_TRANSFORM derives m from w and requires w = 2m within
    tolerance; CLASSICAL_PJ requires w = 0 and is exposed for the
    identity check.
    """
    if method is MethodChoice.DIRECT:
        res = direct_sum(spec, eps)
        return Evaluation(
            value=res.value,
            method=MethodChoice.DIRECT,
            terms_used={"n_direct": res.n_terms},
            err_estimate=res.noise_floor(),
            term_log=TermLog(),
        )
    if method is MethodChoice.GENERIC:
        return eval_generic(spec, policy)
    if method is MethodChoice.EVEN_TRANSFORM:
        m = round(spec.w / 2.0)
        if m < 1 or abs(spec.w - 2.0 * m) > INTEGER_TOL:
            raise MismatchError(
                f"EvenTransform requires w = 2m for integer m >= 1, got w = {spec.w}"
            )
        return eval_even(spec, m, policy, n_max)
    if method is MethodChoice.CLASSICAL_PJ:
        if abs(spec.w) > INTEGER_TOL:
            raise MismatchError(f"ClassicalPJ requires w = 0, got w = {spec.w}")
        return _evaluate_classical(spec.a)
    raise DomainError(f"unknown method {method!r}")


def _evaluate_classical(a: complex) -> Evaluation:
    caps = _caps()
    root = cmath.sqrt(cmath.pi / a)
    abs_root = abs(root)
    re_inv = (1.0 / a).real
    log = TermLog()
    dual = ComplexSum()
    head = 0.5 * root - 0.5
    n = 0
    next_mag = abs_root * math.exp(max(-_PI2 * re_inv, -745.0))
    while n < caps.n:
        n += 1
        term = root * cmath.exp(-_PI2 * n * n / a)
        log.log("n", n, abs(term))
        dual.add(term)
        expo = -_PI2 * (n + 1) * (n + 1) * re_inv
        next_mag = abs_root * (math.exp(expo) if expo > -745.0 else 0.0)
        # stop once the first omitted dual term is below 1e-17 relative
        if next_mag < 1e-17 * abs(head + dual.value):
            break
    return Evaluation(
        value=head + dual.value,
        method=MethodChoice.CLASSICAL_PJ,
        terms_used={"n": n},
        err_estimate=next_mag,
        term_log=log,
    )


# ----------------------------------------------------------------------
# empirical remainder scaling
# ----------------------------------------------------------------------


def remainder_slope(w: float, N: int, a_grid: list[float]) -> float:
    """Log-log slope of the generic-expansion remainder over a grid.

    For each grid point the remainder R_N(a) = direct sum minus
    [singular_term + primed k-sum over k < N] is measured against the
    oracle; the least-squares slope of log |R_N| against log a is
    returned.  As a -> 0 the remainder is dominated by the first
    omitted term, so the measured slope sits near N (within 0.15 for
    N <= 6 on grids inside [1e-3, 1e-1]); any slope >= N - 1/2
    confirms the uniform remainder bound O(a^(N - 1/2)), which the
    contour estimate guarantees but which is not tight for real a.

    Raises PrecisionError when any measured remainder falls below 100x
    the oracle noise floor: the regression would fit rounding noise.
    """
    w = float(w)
    if w <= 0.0:
        raise DomainError(f"remainder_slope requires w > 0, got {w}")
    if _even_m(w) is not None:
        raise EvenExponentError("remainder_slope requires w not an even integer")
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise DomainError(f"N must be an integer >= 1, got {N!r}")
    if not N > 0.5 * w + 0.5:
        raise DomainError(f"requires N > w/2 + 1/2 = {0.5 * w + 0.5}, got N = {N}")
    grid = [float(x) for x in a_grid]
    if len(grid) < 4:
        raise DomainError("a_grid needs at least 4 points")
    if any(not 0.0 < x <= 0.2 for x in grid):
        raise DomainError("a_grid must lie in (0, 0.2]")
    ratios = [grid[i + 1] / grid[i] for i in range(len(grid) - 1)]
    if any(abs(r / ratios[0] - 1.0) > 1e-6 for r in ratios) or abs(ratios[0] - 1.0) < 1e-9:
        raise DomainError("a_grid must be geometrically spaced")

    m_skip = _odd_m(w)
    xs: list[float] = []
    ys: list[float] = []
    for a in grid:
        spec = SumSpec(a, w)
        ref = direct_sum(spec, 1e-16)
        partial = ComplexSum(singular_term(spec))
        apow: complex = 1.0 + 0j
        for k in range(N):
            if k:
                apow *= a / k
            if m_skip is not None and k == m_skip:
                continue
            term = zeta_real(w - 2.0 * k) * apow
            if k & 1:
                term = -term
            partial.add(term)
        remainder = abs(ref.value - partial.value)
        floor = 1e2 * ref.noise_floor()
        if remainder < floor:
            raise PrecisionError(
                f"remainder {remainder:.3e} at a = {a} is below the noise floor "
                f"{floor:.3e}; the slope would be meaningless"
            )
        xs.append(math.log(a))
        ys.append(math.log(remainder))
    return statistics.linear_regression(xs, ys).slope
