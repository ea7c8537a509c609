"""Arbitrary-precision digamma / polygamma / zeta evaluation.

Strategy: shift the argument upward with the exact recurrence until it is
large enough, then apply the asymptotic expansion with exact Bernoulli
number coefficients, truncating when a term drops below the target
precision.  zeta(k) uses a direct series with an Euler-Maclaurin tail;
the polygamma-at-1 identity serves as an independent cross-check in the
test suite.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import OrderTooLarge, PoleArgument

MAX_ORDER = 30


@dataclass(frozen=True)
class PrecisionPolicy:
    """Target output digits plus guard digits for intermediate work."""

    target_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if self.target_digits < 10:
            raise ValueError("target_digits must be >= 10")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits


DEFAULT_POLICY = PrecisionPolicy()


# -- Bernoulli numbers -------------------------------------------------------

_bernoulli_cache = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m via the standard recurrence (cached)."""
    if m < 0:
        raise ValueError("negative Bernoulli index")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            k = len(_bernoulli_cache)
            if k % 2 == 1:
                _bernoulli_cache.append(Fraction(0))
                continue
            total = Fraction(0)
            for j in range(k):
                total += math.comb(k + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache.append(-total / (k + 1))
        return _bernoulli_cache[m]


# -- helpers ------------------------------------------------------------------


def to_mpf(x) -> mpf:
    """Convert an exact rational or float-like value at current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mpmath.mpf(x)
    return mpmath.mpf(x)


def _check_pole(x: mpf, policy: PrecisionPolicy):
    nearest = mpmath.nint(x)
    if nearest <= 0 and abs(x - nearest) < mpmath.mpf(10) ** (-policy.target_digits):
        raise PoleArgument(f"polygamma pole at non-positive integer argument {x}")


def _shift_threshold(working_digits: int, order: int) -> int:
    # Asymptotic series reaches ~10^-d once x > d*ln(10)/(2*pi) ~ 0.37 d;
    # 0.8 d leaves wide margin, plus the order to keep term ratios small.
    return max(20, int(0.8 * working_digits) + order)


def _psi_asymptotic(x: mpf, order: int, eps: mpf) -> mpf:
    """Asymptotic expansion of psi^(order) at large x; error < first omitted term."""
    if order == 0:
        acc = mpmath.ln(x) - 1 / (2 * x)
        x2 = x * x
        pw = mpmath.mpf(1)
        prev = mpmath.inf
        k = 1
        while True:
            pw *= x2
            b = bernoulli(2 * k)
            term = (to_mpf(b) / (2 * k)) / pw
            if abs(term) < eps or abs(term) > prev:
                break
            acc -= term
            prev = abs(term)
            k += 1
        return acc

    n = order
    acc = to_mpf(math.factorial(n - 1)) / x ** n
    acc += to_mpf(math.factorial(n)) / (2 * x ** (n + 1))
    x2 = x * x
    pw = x ** n
    prev = mpmath.inf
    k = 1
    while True:
        pw *= x2
        b = bernoulli(2 * k)
        coeff = Fraction(math.factorial(2 * k + n - 1), math.factorial(2 * k)) * b
        term = to_mpf(coeff) / pw
        if abs(term) < eps or abs(term) > prev:
            break
        acc += term
        prev = abs(term)
        k += 1
    return acc if n % 2 == 1 else -acc


def _psi_numeric(order: int, x, policy: PrecisionPolicy) -> mpf:
    with mpmath.workdps(policy.working_digits):
        xm = to_mpf(x)
        if isinstance(x, (Fraction, int)):
            xf = Fraction(x)
            if xf.denominator == 1 and xf <= 0:
                raise PoleArgument(f"polygamma pole at {xf}")
        _check_pole(xm, policy)
        eps = mpmath.mpf(10) ** (-policy.working_digits)
        threshold = _shift_threshold(policy.working_digits, order)

        # Upward recurrence (exact and pole-aware) through small or
        # negative arguments; reflection stays a test-only identity.
        correction = mpmath.mpf(0)
        shifts = max(0, int(mpmath.ceil(threshold - xm)))
        sign = mpmath.mpf(-1) ** order
        fact_n = math.factorial(order)
        for i in range(shifts):
            base = xm + i
            correction += sign * fact_n / base ** (order + 1)
        value = _psi_asymptotic(xm + shifts, order, eps) - correction
        return +value


def digamma(x, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """psi(x) for rational or high-precision real x."""
    return _psi_numeric(0, x, policy)


def polygamma(order: int, x, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """psi^(order)(x); order 0 is digamma."""
    if order < 0:
        raise ValueError("polygamma order must be >= 0")
    if order > MAX_ORDER:
        raise OrderTooLarge(f"order {order} > {MAX_ORDER}")
    return _psi_numeric(order, x, policy)


def zeta_int(k: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """zeta(k) for integer k >= 2: direct series plus Euler-Maclaurin tail."""
    if k < 2:
        raise ValueError("zeta_int requires k >= 2")
    with mpmath.workdps(policy.working_digits):
        eps = mpmath.mpf(10) ** (-policy.working_digits)
        n_cut = max(10, int(0.8 * policy.working_digits))
        acc = mpmath.mpf(0)
        for n in range(1, n_cut):
            acc += mpmath.mpf(1) / mpmath.mpf(n) ** k
        nm = mpmath.mpf(n_cut)
        acc += nm ** (1 - k) / (k - 1)
        acc += nm ** (-k) / 2
        # Correction terms B_2j/(2j)! * (k)(k+1)...(k+2j-2) * N^(1-k-2j).
        rising = Fraction(k)
        prev = mpmath.inf
        j = 1
        while True:
            coeff = bernoulli(2 * j) / math.factorial(2 * j) * rising
            term = to_mpf(coeff) * nm ** (1 - k - 2 * j)
            if abs(term) < eps or abs(term) > prev:
                break
            acc += term
            prev = abs(term)
            rising *= (k + 2 * j - 1) * (k + 2 * j)
            j += 1
        return +acc


def constant(name: str, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """Named constants gamma, pi, ln2 at working precision."""
    with mpmath.workdps(policy.working_digits):
        if name == "pi":
            return +mpmath.pi
        if name == "ln2":
            return mpmath.ln(2)
        if name == "gamma":
            return -digamma(1, policy)
        raise ValueError(f"unknown constant {name!r}")
