"""Top-level series evaluation.

Plain sums use the master formula
    S = sum_i sum_j (-1)^j / (j-1)! * A_ij * psi^(j-1)(a_i + 1),
alternating sums split even/odd indices, which turns each partial-fraction
term of order j at shift a into
    (-1)^j / ((j-1)! 2^j) * [psi^(j-1)((a+1)/2) - psi^(j-1)((a+2)/2)].
The exact symbolic path and the numeric path are evaluated independently
from the same psi terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .closedform import SymbolicValue, assemble
from .errors import NegativeIntegerShift, PoleArgument
from .partfrac import ALTERNATING, PLAIN, PartialFractions, SumSpec, decompose
from . import polygamma as pg
from .polygamma import DEFAULT_POLICY, PrecisionPolicy, to_mpf


@dataclass(frozen=True)
class SumResult:
    exact: SymbolicValue
    numeric: mpf
    fully_reduced: bool
    spec_echo: SumSpec
    pf_echo: PartialFractions


def _psi_terms_plain(pf: PartialFractions):
    for a, j, coeff in pf.entries:
        if coeff == 0:
            continue
        c = Fraction((-1) ** j, math.factorial(j - 1)) * coeff
        yield (c, j - 1, a + 1)


def _psi_terms_alternating(pf: PartialFractions):
    for a, j, coeff in pf.entries:
        if coeff == 0:
            continue
        c = Fraction((-1) ** j, math.factorial(j - 1) * 2 ** j) * coeff
        yield (c, j - 1, Fraction(a + 1, 2))
        yield (-c, j - 1, Fraction(a + 2, 2))


def _numeric_from_terms(terms, policy: PrecisionPolicy) -> mpf:
    with mpmath.workdps(policy.working_digits):
        acc = mpmath.mpf(0)
        for coeff, order, arg in terms:
            acc += to_mpf(coeff) * pg.polygamma(order, arg, policy)
        return +acc


def _evaluate(spec: SumSpec, policy: PrecisionPolicy) -> SumResult:
    pf = decompose(spec)
    if spec.sign == PLAIN:
        terms = list(_psi_terms_plain(pf))
    else:
        terms = list(_psi_terms_alternating(pf))
    exact = assemble(terms)
    numeric = _numeric_from_terms(terms, policy)
    return SumResult(
        exact=exact,
        numeric=numeric,
        fully_reduced=exact.fully_reduced,
        spec_echo=spec,
        pf_echo=pf,
    )


def sum_plain(spec: SumSpec, policy: PrecisionPolicy = DEFAULT_POLICY) -> SumResult:
    """Evaluate sum_{n>=1} Q(n)/P(n) exactly and numerically."""
    if spec.sign != PLAIN:
        raise ValueError("sum_plain requires a plain-mode spec")
    return _evaluate(spec, policy)


def sum_alternating(spec: SumSpec, policy: PrecisionPolicy = DEFAULT_POLICY) -> SumResult:
    """Evaluate sum_{n>=1} (-1)^(n+1) Q(n)/P(n) exactly and numerically."""
    if spec.sign != ALTERNATING:
        raise ValueError("sum_alternating requires an alternating-mode spec")
    return _evaluate(spec, policy)


def evaluate(spec: SumSpec, policy: PrecisionPolicy = DEFAULT_POLICY) -> SumResult:
    """Dispatch on the spec's sign mode."""
    return sum_plain(spec, policy) if spec.sign == PLAIN else sum_alternating(spec, policy)


def telescope(a, k: int) -> SymbolicValue:
    """Exact value of sum_{n>=1} 1/((n+a)(n+a-k)) as a pure rational.

    The sum collapses to the finite harmonic-type form
    (1/k) * sum_{j=1..k} 1/(j+a-k); the index placement is pinned by
    brute-force partial sums in the regression tests.
    """
    a = Fraction(a)
    k = int(k)
    if k < 1:
        raise ValueError("k must be a positive integer")
    for shift in (a, a - k):
        if shift.denominator == 1 and shift < 0:
            raise NegativeIntegerShift(f"shift {shift} is a negative integer")
    total = Fraction(0)
    for j in range(1, k + 1):
        d = j + a - k
        if d == 0:
            raise PoleArgument(f"telescoping term 1/({j}+{a}-{k}) has zero denominator")
        total += Fraction(1) / d
    return SymbolicValue.rational(total / k)
