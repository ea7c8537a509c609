import random
from fractions import Fraction

import pytest

from exactsum.polys import FactorList, Polynomial
from exactsum.partfrac import SumSpec


def make_spec(pairs, sign="plain", numerator=None):
    return SumSpec(
        numerator if numerator is not None else Polynomial([1]),
        FactorList.from_pairs(pairs),
        sign,
    )


def random_shift(rng: random.Random, max_den=4, lo=-2, hi=6) -> Fraction:
    """Random rational shift that is never a negative integer."""
    while True:
        den = rng.randint(1, max_den)
        num = rng.randint(lo * den, hi * den)
        a = Fraction(num, den)
        if not (a.denominator == 1 and a < 0):
            return a


def random_plain_spec(rng: random.Random, max_factors=4, max_mult=3) -> SumSpec:
    """Random convergent plain-mode spec with deg Q <= N - 2."""
    k = rng.randint(1, max_factors)
    shifts = set()
    while len(shifts) < k:
        shifts.add(random_shift(rng))
    pairs = [(a, rng.randint(1, max_mult)) for a in shifts]
    n_total = sum(m for _, m in pairs)
    if n_total < 2:
        pairs[0] = (pairs[0][0], 2)
        n_total = 2
    deg_q = rng.randint(0, n_total - 2)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg_q + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return make_spec(pairs, "plain", Polynomial(coeffs))


@pytest.fixture
def rng():
    return random.Random(20240817)
