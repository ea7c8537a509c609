"""Independent verification backends.

Two routes that never touch the master formula: truncated partial sums
with rigorous tail brackets, and adaptive quadrature of the integral
representations.  Quadrature is a verifier, not the product, so its error
target is deliberately looser (half the digits) than the symbolic path.
The oracle fails loudly (InsufficientTerms / NotApplicable) rather than
ever produce a wrong bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mpf

from .errors import (
    ConstraintViolated,
    InsufficientTerms,
    NotApplicable,
    ParametersEqual,
)
from .partfrac import ALTERNATING, PLAIN, PartialFractions, SumSpec
from .polygamma import DEFAULT_POLICY, PrecisionPolicy, to_mpf

_EXACT_TERMS_MAX = 400      # exact rational summation below this
_MPF_TERMS_MAX = 20000      # per-term mpf summation below this; numpy beyond


@dataclass(frozen=True)
class Bracket:
    """Rigorous interval [lo, hi] guaranteed to contain the series limit."""

    lo: mpf
    hi: mpf
    terms_used: int

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> mpf:
        return self.hi - self.lo


def _term_fraction(spec: SumSpec, n: int) -> Fraction:
    num = spec.numerator.eval_fraction(Fraction(n))
    den = Fraction(1)
    for a, m in spec.factors:
        den *= (n + a) ** m
    t = num / den
    if spec.sign == ALTERNATING and n % 2 == 0:
        t = -t
    return t


def _abs_term_fraction(spec: SumSpec, n: int) -> Fraction:
    return abs(_term_fraction(spec, n))


def _stabilization_bound(spec: SumSpec) -> int:
    """Index past which the unsigned summand has fixed sign and |t| ~ c/n^g.

    Uses the Cauchy root bound of Q and the largest |a_i|; beyond twice
    that, every factor and the numerator have settled sign and the
    magnitude is governed by the degree gap.
    """
    q = spec.numerator
    if q.is_zero():
        return 1
    cauchy = 1 + max(
        (abs(c / q.leading) for c in q.coeffs), default=Fraction(0)
    )
    amax = max((abs(a) for a in spec.factors.shifts), default=Fraction(0))
    return int(math.ceil(2 * max(cauchy, amax, 1))) + 1


def _numpy_partial_sum(spec: SumSpec, n_terms: int) -> float:
    qc = np.array([float(c) for c in spec.numerator.coeffs], dtype=np.float64)
    total = 0.0
    chunk = 1 << 20
    start = 1
    while start <= n_terms:
        stop = min(n_terms, start + chunk - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        num = np.zeros_like(n) if qc.size == 0 else np.polynomial.polynomial.polyval(n, qc)
        den = np.ones_like(n)
        for a, m in spec.factors:
            den *= (n + float(a)) ** m
        t = num / den
        if spec.sign == ALTERNATING:
            t[(np.arange(start, stop + 1) % 2) == 0] *= -1.0
        total += float(np.sum(t))
        start = stop + 1
    return total


def partial_sum_bracket(
    spec: SumSpec, n_terms: int, policy: PrecisionPolicy = DEFAULT_POLICY
) -> Bracket:
    """Sum the first n_terms terms and bracket the tail rigorously.

    Plain mode: past the stabilization index the summand has one sign and
    |t(n)| <= C/n^2 with C = n_terms^2 |t(n_terms)| * 2 (margin factor),
    so the tail lies between 0 and C/(n_terms - 1) by integral comparison.
    Alternating mode: the tail is bracketed by the first omitted term once
    |t| is confirmed monotone decreasing.
    """
    amax = max((abs(a) for a in spec.factors.shifts), default=Fraction(0))
    if n_terms < 10 * (1 + amax):
        raise ValueError(f"n_terms must be >= {int(10 * (1 + amax))}")
    n_stab = _stabilization_bound(spec)
    if n_terms < 2 * n_stab:
        raise InsufficientTerms(
            f"need n_terms >= {2 * n_stab} to confirm sign stabilization"
        )

    with mpmath.workdps(policy.working_digits):
        # Partial sum: exact, per-term mpf, or vectorized float64 depending
        # on size; the float paths get an outward rounding pad below.
        pad = mpmath.mpf(0)
        if n_terms <= _EXACT_TERMS_MAX:
            s_exact = sum(
                (_term_fraction(spec, n) for n in range(1, n_terms + 1)),
                Fraction(0),
            )
            s = to_mpf(s_exact)
            pad = mpmath.mpf(10) ** (-policy.working_digits + 2)
        elif n_terms <= _MPF_TERMS_MAX:
            s = mpmath.mpf(0)
            for n in range(1, n_terms + 1):
                num = spec.numerator(mpmath.mpf(n))
                den = mpmath.mpf(1)
                for a, m in spec.factors:
                    den *= (n + to_mpf(a)) ** m
                t = num / den
                if spec.sign == ALTERNATING and n % 2 == 0:
                    t = -t
                s += t
            pad = mpmath.mpf(10) ** (-policy.working_digits + 6)
        else:
            s = mpmath.mpf(_numpy_partial_sum(spec, n_terms))
            # float64 pairwise summation error, padded generously
            pad = mpmath.mpf(1e-11) * (1 + abs(s))

        if spec.sign == PLAIN:
            t_last = _term_fraction(spec, n_terms)
            # Confirm the sign has stabilized over a sampled window.
            sign_last = 1 if t_last > 0 else (-1 if t_last < 0 else 0)
            for n in (n_terms - 1, n_terms // 2 + n_stab, n_stab * 2):
                t = _term_fraction(spec, n)
                sgn = 1 if t > 0 else (-1 if t < 0 else 0)
                if sgn != 0 and sign_last != 0 and sgn != sign_last:
                    raise InsufficientTerms(
                        "summand sign not stabilized by n_terms"
                    )
            c_bound = Fraction(n_terms) ** 2 * abs(t_last) * 2
            tail_hi = to_mpf(c_bound / (n_terms - 1))
            if sign_last >= 0:
                lo, hi = s, s + tail_hi
            else:
                lo, hi = s - tail_hi, s
        else:
            m1 = _abs_term_fraction(spec, n_terms)
            m2 = _abs_term_fraction(spec, n_terms + 1)
            m0 = _abs_term_fraction(spec, n_terms - 1)
            if not (m2 <= m1 <= m0):
                raise InsufficientTerms(
                    "alternating magnitudes not monotone decreasing at n_terms"
                )
            first_omitted = _term_fraction(spec, n_terms + 1)
            t = to_mpf(first_omitted)
            lo, hi = (s, s + t) if t >= 0 else (s + t, s)

        return Bracket(lo=lo - pad, hi=hi + pad, terms_used=n_terms)


# -- quadrature oracles ---------------------------------------------------------


def _quad_dps(policy: PrecisionPolicy) -> int:
    # Error target is 10^(-target/2); working at full target digits keeps
    # tanh-sinh comfortably inside that.
    return policy.target_digits + 5


def quad_two_param(a, b, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """S(a, b) = 1/(a-b) * integral_0^1 (t^b - t^a)/(1-t) dt, for a, b > -1."""
    a, b = Fraction(a), Fraction(b)
    if a == b:
        raise ParametersEqual("quad_two_param requires a != b")
    if a <= -1 or b <= -1:
        raise NotApplicable("integral representation needs a, b > -1")
    with mpmath.workdps(_quad_dps(policy)):
        am, bm = to_mpf(a), to_mpf(b)

        def f(t):
            # (t^b - t^a)/(1-t) = t^a * expm1((b-a) ln t) / (1-t), stable at t -> 1
            eps1 = t - 1
            logt = mpmath.log1p(eps1)
            return t ** am * mpmath.expm1((bm - am) * logt) / (-eps1)

        val = mpmath.quad(f, [0, 1]) / (am - bm)
        return +val


def quad_square(a, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """sum 1/(n+a)^2 = -integral_0^1 t^a ln(t)/(1-t) dt, for a > -1."""
    a = Fraction(a)
    if a <= -1:
        raise NotApplicable("integral representation needs a > -1")
    with mpmath.workdps(_quad_dps(policy)):
        am = to_mpf(a)

        def f(t):
            eps1 = t - 1
            return -(t ** am) * mpmath.log1p(eps1) / (-eps1)

        return +mpmath.quad(f, [0, 1])


def quad_alternating(a, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """sum (-1)^(n+1)/(n+a) = integral_0^1 t^a/(1+t) dt, for a > -1."""
    a = Fraction(a)
    if a <= -1:
        raise NotApplicable("integral representation needs a > -1")
    with mpmath.workdps(_quad_dps(policy)):
        am = to_mpf(a)
        return +mpmath.quad(lambda t: t ** am / (1 + t), [0, 1])


def quad_general(
    pf: PartialFractions, policy: PrecisionPolicy = DEFAULT_POLICY
) -> mpf:
    """x-domain integral of the full partial-fraction table.

    Integrates sum_ij A_ij/(j-1)! x^(j-1) e^(-(a_i+1)x)/(1-e^(-x)) for
    j >= 2 plus the combined j = 1 integrand, which converges only jointly
    under sum_i A_i1 = 0 and is therefore never integrated term by term.
    The range splits at x = 1; the tail substitutes u = e^(-x).
    """
    entries = [(a, j, c) for a, j, c in pf.entries if c != 0]
    if any(Fraction(a) <= -1 for a, _, _ in entries):
        raise NotApplicable("integral representation needs all a_i > -1")
    if pf.simple_pole_sum() != 0:
        raise ConstraintViolated(
            "sum of simple-pole coefficients must vanish for the combined integral"
        )
    with mpmath.workdps(_quad_dps(policy)):
        simple = [(to_mpf(Fraction(a)), to_mpf(c)) for a, j, c in entries if j == 1]
        higher = [
            (to_mpf(Fraction(a)), j, to_mpf(c / math.factorial(j - 1)))
            for a, j, c in entries
            if j >= 2
        ]

        def f_head(x):
            # x in (0, 1]; removable singularity at x = 0 handled via expm1
            denom = -mpmath.expm1(-x)
            acc = mpmath.mpf(0)
            for am, cm in simple:
                acc += cm * mpmath.expm1(-(am + 1) * x)
            for am, j, cm in higher:
                acc += cm * x ** (j - 1) * mpmath.exp(-(am + 1) * x)
            return acc / denom

        def f_tail(u):
            # u = e^(-x) in (0, 1/e]; the -1/u pieces of the j = 1 terms
            # cancel exactly under the constraint and are dropped.
            acc = mpmath.mpf(0)
            for am, cm in simple:
                acc += cm * u ** am
            if higher:
                neglog = -mpmath.log(u)
                for am, j, cm in higher:
                    acc += cm * neglog ** (j - 1) * u ** am
            return acc / (1 - u)

        head = mpmath.quad(f_head, [0, 1])
        tail = mpmath.quad(f_tail, [0, mpmath.exp(-1)])
        return +(head + tail)
