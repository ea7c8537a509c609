"""Exact partial-fraction decomposition over a factored denominator.

The decomposition Q(n)/P(n) = sum_ij A_ij / (n + a_i)^j is found by
matching coefficients and solving the resulting linear system with exact
Gaussian elimination, which handles any multiplicity pattern uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import DegreeTooHigh
from .polys import FactorList, Polynomial, RationalFunction

PLAIN = "plain"
ALTERNATING = "alternating"


@dataclass(frozen=True)
class SumSpec:
    """One convergent series instance: numerator Q, factored denominator, sign mode."""

    numerator: Polynomial
    factors: FactorList
    sign: str = PLAIN

    def __post_init__(self):
        if self.sign not in (PLAIN, ALTERNATING):
            raise ValueError(f"unknown sign mode {self.sign!r}")
        n_total = self.factors.total_degree
        bound = n_total - 2 if self.sign == PLAIN else n_total - 1
        if self.numerator.degree > bound:
            raise DegreeTooHigh(
                f"deg Q = {self.numerator.degree} exceeds {bound} "
                f"(deg Q must be <= deg P - {2 if self.sign == PLAIN else 1} "
                f"for {self.sign} sums to converge)"
            )

    def rational_function(self) -> RationalFunction:
        return RationalFunction.from_polys(self.numerator, self.factors.expand())


@dataclass(frozen=True)
class PartialFractions:
    """Coefficient table: one (shift, order, coefficient) entry per (i, j)."""

    entries: Tuple[Tuple[Fraction, int, Fraction], ...]

    def simple_pole_sum(self) -> Fraction:
        """Sum of all order-1 coefficients; zero whenever deg Q <= N - 2."""
        return sum((c for _, j, c in self.entries if j == 1), Fraction(0))

    def coefficient(self, shift, order: int) -> Fraction:
        shift = Fraction(shift)
        for a, j, c in self.entries:
            if a == shift and j == order:
                return c
        raise KeyError((shift, order))


def _solve_exact(matrix, rhs):
    """Gaussian elimination with exact rational pivoting; matrix is square."""
    n = len(rhs)
    m = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system in partial fractions")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def decompose(spec: SumSpec) -> PartialFractions:
    """Partial-fraction coefficients of Q(n)/P(n) over the factored denominator."""
    factors = spec.factors
    n_total = factors.total_degree

    # Basis polynomial for unknown A_ij: P(n) / (n + a_i)^j.
    basis = []
    index = []
    for a_i, m_i in factors:
        rest = Polynomial([1])
        for a_l, m_l in factors:
            if a_l != a_i:
                rest = rest * (Polynomial.linear(a_l) ** m_l)
        for j in range(1, m_i + 1):
            basis.append(rest * (Polynomial.linear(a_i) ** (m_i - j)))
            index.append((a_i, j))

    matrix = [
        [basis[c].coeff(row) for c in range(n_total)] for row in range(n_total)
    ]
    rhs = [spec.numerator.coeff(row) for row in range(n_total)]
    coeffs = _solve_exact(matrix, rhs)

    return PartialFractions(tuple((a, j, c) for (a, j), c in zip(index, coeffs)))


def recombine(pf: PartialFractions) -> RationalFunction:
    """Common-denominator recombination; inverse of decompose."""
    total = RationalFunction.constant(0)
    for a, j, c in pf.entries:
        if c == 0:
            continue
        term = RationalFunction.from_polys(
            Polynomial.constant(c), Polynomial.linear(a) ** j
        )
        total = total + term
    return total
