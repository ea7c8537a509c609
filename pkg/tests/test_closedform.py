from fractions import Fraction as F

import mpmath
import pytest

from exactsum.closedform import (
    GAMMA,
    LN2,
    ONE,
    PI,
    PI_SQUARED,
    ZETA,
    SymbolicValue,
    assemble,
    psi_closed,
    render,
    to_numeric,
)
from exactsum.errors import PoleArgument
from exactsum.polygamma import PrecisionPolicy, polygamma

POLICY = PrecisionPolicy(target_digits=30, guard_digits=10)


class TestPsiClosed:
    def test_three_halves(self):
        # psi(3/2) = psi(1/2) + 2 = 2 - gamma - 2 ln2
        v = psi_closed(0, F(3, 2))
        assert v.coefficient(ONE) == 2
        assert v.coefficient(GAMMA) == -1
        assert v.coefficient(LN2) == -2
        assert v.fully_reduced

    def test_trigamma_at_two(self):
        # psi^(1)(2) = psi^(1)(1) - 1 = pi^2/6 - 1
        v = psi_closed(1, 2)
        assert v.coefficient(ONE) == -1
        assert v.coefficient(PI_SQUARED) == F(1, 6)

    def test_quarter(self):
        v = psi_closed(0, F(1, 4))
        assert v.coefficient(GAMMA) == -1
        assert v.coefficient(LN2) == -3
        assert v.coefficient(PI) == F(-1, 2)

    def test_three_quarters(self):
        v = psi_closed(0, F(3, 4))
        assert v.coefficient(PI) == F(1, 2)

    def test_quarter_values_verified_numerically(self):
        # hard-coded Gauss-digamma constants cross-checked to 25 digits
        with mpmath.workdps(40):
            tol = mpmath.mpf(10) ** (-25)
            for arg in (F(1, 4), F(3, 4), F(5, 4), F(-1, 4)):
                sym = to_numeric(psi_closed(0, arg), POLICY)
                num = polygamma(0, arg, POLICY)
                assert abs(sym - num) < tol

    def test_quarter_at_higher_order_stays_residual(self):
        v = psi_closed(1, F(1, 4))
        assert v.residuals == ((F(1), 1, F(1, 4)),)

    def test_residual_for_thirds(self):
        v = psi_closed(0, F(4, 3))
        assert v.coefficient(ONE) == 3
        assert v.residuals == ((F(1), 0, F(1, 3)),)

    def test_pole(self):
        for arg in (0, -3):
            with pytest.raises(PoleArgument):
                psi_closed(2, arg)

    def test_zeta_basis_for_higher_orders(self):
        v = psi_closed(3, 1)  # psi^(3)(1) = 6 zeta(4)
        assert v.coefficient(ZETA(4)) == 6


class TestAssemble:
    def test_half_shift_pair_combination(self):
        # 2 psi(3/2) - 2 psi(1) = 4 - 4 ln2
        v = assemble([(2, 0, F(3, 2)), (-2, 0, 1)])
        assert v.coefficient(ONE) == 4
        assert v.coefficient(LN2) == -4
        assert v.coefficient(GAMMA) == 0
        assert v.fully_reduced

    def test_empty(self):
        assert assemble([]).is_zero()

    def test_residual_cancellation(self):
        assert assemble([(1, 0, F(1, 3)), (-1, 0, F(1, 3))]).is_zero()

    def test_order_independent(self, rng):
        terms = [
            (F(rng.randint(-5, 5), rng.randint(1, 3)), rng.randint(0, 2),
             F(rng.randint(1, 9), rng.randint(1, 5)))
            for _ in range(6)
        ]
        shuffled = terms[:]
        rng.shuffle(shuffled)
        assert assemble(terms) == assemble(shuffled)


class TestRecurrenceExactness:
    def test_difference_is_exact_rational(self, rng):
        # psi^(o)(a+1) - psi^(o)(a) = (-1)^o o!/a^(o+1), exactly
        import math

        for _ in range(30):
            o = rng.randint(0, 3)
            a = F(rng.randint(1, 40), rng.randint(1, 6))
            diff = psi_closed(o, a + 1) - psi_closed(o, a)
            expected = F((-1) ** o * math.factorial(o)) / a ** (o + 1)
            assert diff == SymbolicValue.rational(expected)


def test_numeric_consistency_randomized(rng):
    with mpmath.workdps(50):
        tol = mpmath.mpf(10) ** (-POLICY.target_digits + 3)
        checked = 0
        while checked < 25:
            order = rng.randint(0, 3)
            den = rng.randint(1, 6)
            num = rng.randint(int(-3 * den) + 1, 6 * den - 1)
            arg = F(num, den)
            if arg.denominator == 1 and arg <= 0:
                continue
            sym = to_numeric(psi_closed(order, arg), POLICY)
            ref = polygamma(order, arg, POLICY)
            assert abs(sym - ref) < tol * max(1, abs(ref))
            checked += 1


class TestToNumeric:
    def test_four_minus_four_ln2(self):
        with mpmath.workdps(40):
            v = SymbolicValue.build({ONE: F(4), LN2: F(-4)})
            expected = mpmath.mpf("1.22741127776021876233107151417")
            assert abs(to_numeric(v, POLICY) - expected) < mpmath.mpf(10) ** (-28)

    def test_pi_squared_half_minus_four(self):
        with mpmath.workdps(40):
            v = SymbolicValue.build({PI_SQUARED: F(1, 2), ONE: F(-4)})
            expected = mpmath.mpf("0.934802200544679309417245499938")
            assert abs(to_numeric(v, POLICY) - expected) < mpmath.mpf(10) ** (-28)

    def test_zero(self):
        assert to_numeric(SymbolicValue.zero(), POLICY) == 0


class TestRender:
    def test_integer_and_ln2(self):
        assert render(SymbolicValue.build({ONE: F(4), LN2: F(-4)})) == "4 - 4*ln(2)"

    def test_three_term_render(self):
        v = SymbolicValue.build({PI_SQUARED: F(1, 3), ONE: F(-8), LN2: F(8)})
        assert render(v) == "-8 + 8*ln(2) + (1/3)*pi^2"

    def test_pi_with_fraction(self):
        v = SymbolicValue.build({ONE: F(2), PI: F(-1, 2)})
        assert render(v) == "2 - (1/2)*pi"

    def test_residual_only(self):
        v = SymbolicValue.build({}, [(F(1), 0, F(1, 3))])
        assert render(v) == "psi(0, 1/3)"

    def test_zero(self):
        assert render(SymbolicValue.zero()) == "0"

    def test_canonical_order_with_zeta(self):
        v = SymbolicValue.build(
            {ZETA(3): F(2), GAMMA: F(1), ONE: F(-1), PI: F(1, 7)},
            [(F(-1, 2), 1, F(1, 5))],
        )
        assert render(v) == "-1 + gamma + (1/7)*pi + 2*zeta(3) - (1/2)*psi(1, 1/5)"


def test_build_drops_zero_coefficients():
    v = SymbolicValue.build({ONE: F(0), LN2: F(1)}, [(F(0), 0, F(1, 3))])
    assert v.basis_coeffs == ((LN2, F(1)),)
    assert v.residuals == ()
