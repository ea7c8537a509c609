"""Exact polynomials, rational functions and linear factorization over Q.

Coefficient lists are dense (index = power of n); degrees in this package
are tiny, so simplicity wins over sparse representations.  All values are
immutable and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DuplicateShift, NegativeIntegerShift, NonLinearFactor

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Polynomial:
    """Dense polynomial in n with exact rational coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1
    (stand-in for "minus infinity"); nonzero polynomials never carry a
    trailing zero coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([_as_fraction(c)])

    @classmethod
    def variable(cls) -> "Polynomial":
        """The polynomial n."""
        return cls([0, 1])

    @classmethod
    def linear(cls, shift) -> "Polynomial":
        """The factor n + shift."""
        return cls([_as_fraction(shift), 1])

    # -- structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] -= c * oc
        return Polynomial(quot), Polynomial(rem)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; works for Fraction, float and mpf arguments."""
        if isinstance(x, (Fraction, int)):
            return self.eval_fraction(Fraction(x))
        zero = 0 * x
        acc = zero
        for c in reversed(self.coeffs):
            acc = acc * x + (zero + c.numerator) / c.denominator
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.leading
        return Polynomial([c / lead for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*n" if c != 1 else "n")
            else:
                parts.append(f"{c}*n^{k}" if c != 1 else f"n^{k}")
        return "Polynomial(" + " + ".join(parts) + ")"


def poly_divmod(lhs: Polynomial, rhs: Polynomial):
    return divmod(lhs, rhs)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    a, b = p, q
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic()


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient of polynomials with monic denominator."""

    numerator: Polynomial
    denominator: Polynomial

    @classmethod
    def from_polys(cls, numer: Polynomial, denom: Polynomial) -> "RationalFunction":
        """Reduce by the polynomial gcd and normalize the denominator to monic."""
        if denom.is_zero():
            raise ZeroDivisionError("zero denominator")
        if numer.is_zero():
            return cls(Polynomial(), Polynomial([1]))
        g = poly_gcd(numer, denom)
        if g.degree > 0:
            numer = divmod(numer, g)[0]
            denom = divmod(denom, g)[0]
        lead = denom.leading
        if lead != 1:
            numer = numer * (1 / lead)
            denom = denom.monic()
        return cls(numer, denom)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(Polynomial([_as_fraction(c)]), Polynomial([1]))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        n = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalFunction.from_polys(n, self.denominator * other.denominator)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.from_polys(
            self.numerator * other.numerator,
            self.denominator * other.denominator,
        )

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.from_polys(
            self.numerator * other.denominator,
            self.denominator * other.numerator,
        )

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            raise ValueError("negative power on rational functions")
        return RationalFunction.from_polys(self.numerator ** k, self.denominator ** k)


def rf_normalize(numer: Polynomial, denom: Polynomial) -> RationalFunction:
    return RationalFunction.from_polys(numer, denom)


class FactorList:
    """Factored denominator: ordered (shift a_i, multiplicity m_i) pairs.

    Shifts are pairwise distinct, sorted ascending, and never negative
    integers (that would put a pole at some n >= 1).
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs: Sequence):
        norm = []
        for a, m in pairs:
            a = _as_fraction(a)
            m = int(m)
            if m < 1:
                raise ValueError(f"multiplicity must be >= 1, got {m}")
            if a.denominator == 1 and a < 0:
                raise NegativeIntegerShift(
                    f"shift {a} is a negative integer: pole at n = {-a}"
                )
            norm.append((a, m))
        norm.sort(key=lambda t: t[0])
        for (a1, _), (a2, _) in zip(norm, norm[1:]):
            if a1 == a2:
                raise DuplicateShift(f"shift {a1} appears more than once")
        object.__setattr__(self, "pairs", tuple(norm))

    @classmethod
    def from_pairs(cls, pairs: Sequence) -> "FactorList":
        """Build a canonical FactorList, merging duplicate shifts."""
        merged: dict = {}
        for a, m in pairs:
            a = _as_fraction(a)
            merged[a] = merged.get(a, 0) + int(m)
        return cls(sorted(merged.items()))

    @property
    def total_degree(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def shifts(self):
        return tuple(a for a, _ in self.pairs)

    def expand(self) -> Polynomial:
        p = Polynomial([1])
        for a, m in self.pairs:
            p = p * (Polynomial.linear(a) ** m)
        return p

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        return isinstance(other, FactorList) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        inner = ", ".join(f"(a={a}, m={m})" for a, m in self.pairs)
        return f"FactorList([{inner}])"


# -- linear factorization ---------------------------------------------------

_TRIAL_DIVISION_CAP = 10 ** 6


def _factorize_smooth(n: int):
    """Trial-division factorization; large leftover cofactor kept as-is."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factorize zero")
    factors: dict = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n and d <= _TRIAL_DIVISION_CAP:
        for p in (d, d + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
        return factors, (n > _TRIAL_DIVISION_CAP ** 2)
    return factors, False


def _divisors(factors: dict):
    divs = [1]
    for p, e in factors.items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(set(divs))


def _integer_primitive(p: Polynomial):
    """Clear denominators and divide by content; returns integer coeff list."""
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    content = 0
    for c in ints:
        content = math.gcd(content, abs(c))
    return [c // content for c in ints]


def _deflate(coeffs, root: Fraction):
    """Synthetic division of an exact coefficient list by (n - root).

    Returns (quotient coeffs, remainder)."""
    acc = Fraction(0)
    out = [Fraction(0)] * (len(coeffs) - 1)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    rem = acc * root + coeffs[0]
    return out, rem


def _rational_root_candidates(ints):
    """Candidate roots +-p/q with p | constant term, q | leading coefficient."""
    a0, lead = ints[0], ints[-1]
    f0, incomplete0 = _factorize_smooth(a0)
    fl, incomplete1 = _factorize_smooth(lead)
    if incomplete0 or incomplete1:
        return None
    bound = 1 + max(abs(Fraction(c, lead)) for c in ints)  # Cauchy root bound
    cands = set()
    for p in _divisors(f0):
        for q in _divisors(fl):
            r = Fraction(p, q)
            if r <= bound:
                cands.add(r)
                cands.add(-r)
    return sorted(cands)


def _numeric_root_candidates(coeffs_fr, q_bound: int):
    """High-precision numeric roots rationalized with bounded denominators.

    Fallback path for constant terms too large to factorize; every
    candidate is still verified exactly before use.
    """
    import mpmath

    deg = len(coeffs_fr) - 1
    with mpmath.workdps(max(60, 25 * deg)):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs_fr)]
        try:
            roots = mpmath.polyroots(cs, maxsteps=200, extraprec=200)
        except mpmath.libmp.NoConvergence:
            return []
        cands = set()
        for r in roots:
            if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-20):
                continue
            re = mpmath.re(r)
            approx = Fraction(mpmath.nstr(re, 40)).limit_denominator(q_bound)
            cands.add(approx)
        return sorted(cands)


def factor_linear(p: Polynomial) -> FactorList:
    """Factor p into rational linear factors (n + a_i)^{m_i}.

    Raises NonLinearFactor (carrying the irreducible remainder) when a
    factor of degree >= 1 with no rational root is left after deflation.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("factor_linear requires a nonzero polynomial of degree >= 1")
    ints = _integer_primitive(p)
    work = [Fraction(c) for c in ints]

    # Roots at zero first: multiplicity = lowest nonzero coefficient index.
    factors: list = []
    zmult = 0
    while work[0] == 0:
        work = work[1:]
        zmult += 1
    if zmult:
        factors.append((Fraction(0), zmult))

    while len(work) > 1:
        # Re-derive integer form of the deflated polynomial for candidates.
        lcm = 1
        for c in work:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        iwork = [int(c * lcm) for c in work]
        content = 0
        for c in iwork:
            content = math.gcd(content, abs(c))
        iwork = [c // content for c in iwork]
        cands = _rational_root_candidates(iwork)
        if cands is None:
            cands = _numeric_root_candidates(work, abs(iwork[-1]))
        root = None
        for r in cands:
            _, rem = _deflate(work, r)
            if rem == 0:
                root = r
                break
        if root is None:
            raise NonLinearFactor(Polynomial(work))
        mult = 0
        while True:
            quot, rem = _deflate(work, root)
            if rem != 0:
                break
            work = quot
            mult += 1
            if len(work) == 1:
                break
        factors.append((-root, mult))

    return FactorList(factors)
