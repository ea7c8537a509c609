"""Exact reduction of psi terms into a fixed constant basis.

A SymbolicValue is a rational linear combination over
{1, gamma, ln2, pi, pi^2, zeta(k >= 3)} plus residual psi^(o)(arg) terms
that the basis cannot express.  Arguments with denominator 1 or 2 reduce
fully at any order; quarter-integer arguments reduce at order 0 only
(their digamma values are hard-coded and numerically cross-verified in
the tests).  Everything else stays a residual rather than silently
becoming a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import mpmath
from mpmath import mpf

from .errors import PoleArgument
from . import polygamma as pg
from .polygamma import DEFAULT_POLICY, PrecisionPolicy, to_mpf

# Basis symbols as small tags; Zeta carries its integer argument.
ONE = ("one", 0)
GAMMA = ("gamma", 0)
LN2 = ("ln2", 0)
PI = ("pi", 0)
PI_SQUARED = ("pi2", 0)


def ZETA(k: int):
    if k < 3:
        raise ValueError("zeta symbols exist only for k >= 3; zeta(2) is pi^2/6")
    return ("zeta", k)


_SYMBOL_RANK = {"one": 0, "gamma": 1, "ln2": 2, "pi": 3, "pi2": 4, "zeta": 5}


def _symbol_key(sym):
    return (_SYMBOL_RANK[sym[0]], sym[1])


@dataclass(frozen=True)
class SymbolicValue:
    """Immutable exact value: basis coefficients plus residual psi terms."""

    basis_coeffs: Tuple[Tuple[Tuple[str, int], Fraction], ...]
    residuals: Tuple[Tuple[Fraction, int, Fraction], ...]  # (coeff, order, argument)

    @classmethod
    def build(cls, coeffs: Dict, residuals: Iterable = ()) -> "SymbolicValue":
        cs = tuple(
            sorted(((s, c) for s, c in coeffs.items() if c != 0), key=lambda t: _symbol_key(t[0]))
        )
        merged: Dict = {}
        for coeff, order, arg in residuals:
            key = (order, arg)
            merged[key] = merged.get(key, Fraction(0)) + coeff
        rs = tuple(
            (c, o, a) for (o, a), c in sorted(merged.items()) if c != 0
        )
        return cls(cs, rs)

    @classmethod
    def zero(cls) -> "SymbolicValue":
        return cls((), ())

    @classmethod
    def rational(cls, c) -> "SymbolicValue":
        return cls.build({ONE: Fraction(c)})

    def coefficient(self, symbol) -> Fraction:
        for s, c in self.basis_coeffs:
            if s == symbol:
                return c
        return Fraction(0)

    @property
    def fully_reduced(self) -> bool:
        return not self.residuals

    def is_rational(self) -> bool:
        return not self.residuals and all(s == ONE for s, _ in self.basis_coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not a pure rational")
        return self.coefficient(ONE)

    def __add__(self, other: "SymbolicValue") -> "SymbolicValue":
        coeffs: Dict = dict(self.basis_coeffs)
        for s, c in other.basis_coeffs:
            coeffs[s] = coeffs.get(s, Fraction(0)) + c
        return SymbolicValue.build(coeffs, self.residuals + other.residuals)

    def __sub__(self, other: "SymbolicValue") -> "SymbolicValue":
        return self + other.scale(-1)

    def scale(self, k) -> "SymbolicValue":
        k = Fraction(k)
        if k == 0:
            return SymbolicValue.zero()
        return SymbolicValue.build(
            {s: c * k for s, c in self.basis_coeffs},
            [(c * k, o, a) for c, o, a in self.residuals],
        )

    def is_zero(self) -> bool:
        return not self.basis_coeffs and not self.residuals


# -- closed-form reduction -----------------------------------------------------


def _base_value(order: int, arg: Fraction) -> SymbolicValue:
    """Closed form of psi^(order)(arg) for arg in (0, 1], or a residual."""
    if arg == 1:
        if order == 0:
            return SymbolicValue.build({GAMMA: Fraction(-1)})
        # psi^(n)(1) = (-1)^(n+1) n! zeta(n+1)
        c = Fraction((-1) ** (order + 1) * math.factorial(order))
        if order == 1:
            return SymbolicValue.build({PI_SQUARED: c / 6})
        return SymbolicValue.build({ZETA(order + 1): c})
    if arg == Fraction(1, 2):
        if order == 0:
            return SymbolicValue.build({GAMMA: Fraction(-1), LN2: Fraction(-2)})
        # psi^(n)(1/2) = (-1)^(n+1) n! (2^(n+1)-1) zeta(n+1)
        c = Fraction((-1) ** (order + 1) * math.factorial(order) * (2 ** (order + 1) - 1))
        if order == 1:
            return SymbolicValue.build({PI_SQUARED: c / 6})
        return SymbolicValue.build({ZETA(order + 1): c})
    if order == 0 and arg == Fraction(1, 4):
        return SymbolicValue.build(
            {GAMMA: Fraction(-1), LN2: Fraction(-3), PI: Fraction(-1, 2)}
        )
    if order == 0 and arg == Fraction(3, 4):
        return SymbolicValue.build(
            {GAMMA: Fraction(-1), LN2: Fraction(-3), PI: Fraction(1, 2)}
        )
    return SymbolicValue.build({}, [(Fraction(1), order, arg)])


def psi_closed(order: int, argument) -> SymbolicValue:
    """Exact SymbolicValue for psi^(order)(argument), argument rational.

    Shifts the argument into (0, 1] with the recurrence
    psi^(o)(z+1) = psi^(o)(z) + (-1)^o o!/z^(o+1), accumulating the exact
    rational corrections, then applies the known base values.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    arg = Fraction(argument)
    if arg.denominator == 1 and arg <= 0:
        raise PoleArgument(f"psi^({order}) has a pole at {arg}")

    sign = Fraction((-1) ** order * math.factorial(order))
    correction = Fraction(0)
    # Downward: psi^(o)(x) = psi^(o)(x-1) + (-1)^o o!/(x-1)^(o+1)
    while arg > 1:
        arg -= 1
        correction += sign / arg ** (order + 1)
    # Upward: psi^(o)(x) = psi^(o)(x+1) - (-1)^o o!/x^(o+1)
    while arg <= 0:
        correction -= sign / arg ** (order + 1)
        arg += 1

    value = _base_value(order, arg)
    if correction:
        value = value + SymbolicValue.rational(correction)
    return value


def assemble(terms: Iterable) -> SymbolicValue:
    """Exact linear combination of psi terms: (coeff, order, argument) triples."""
    total = SymbolicValue.zero()
    for coeff, order, argument in terms:
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        total = total + psi_closed(order, argument).scale(coeff)
    return total


# -- numeric evaluation and rendering ------------------------------------------


def to_numeric(value: SymbolicValue, policy: PrecisionPolicy = DEFAULT_POLICY) -> mpf:
    """Evaluate a SymbolicValue to an arbitrary-precision float."""
    with mpmath.workdps(policy.working_digits):
        acc = mpmath.mpf(0)
        for sym, c in value.basis_coeffs:
            kind, k = sym
            if kind == "one":
                base = mpmath.mpf(1)
            elif kind == "gamma":
                base = pg.constant("gamma", policy)
            elif kind == "ln2":
                base = pg.constant("ln2", policy)
            elif kind == "pi":
                base = pg.constant("pi", policy)
            elif kind == "pi2":
                base = pg.constant("pi", policy) ** 2
            else:
                base = pg.zeta_int(k, policy)
            acc += to_mpf(c) * base
        for c, order, arg in value.residuals:
            acc += to_mpf(c) * pg.polygamma(order, arg, policy)
        return +acc


def _coeff_text(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def _symbol_text(sym) -> str:
    kind, k = sym
    return {
        "gamma": "gamma",
        "ln2": "ln(2)",
        "pi": "pi",
        "pi2": "pi^2",
    }.get(kind, f"zeta({k})")


def render(value: SymbolicValue) -> str:
    """Deterministic human-readable exact form in canonical symbol order."""
    pieces = []  # (sign, body)
    for sym, c in value.basis_coeffs:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if sym == ONE:
            body = _coeff_text(mag)
        elif mag == 1:
            body = _symbol_text(sym)
        else:
            body = f"{_coeff_text(mag)}*{_symbol_text(sym)}"
        pieces.append((sign, body))
    for c, order, arg in value.residuals:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        psi = f"psi({order}, {arg})"
        body = psi if mag == 1 else f"{_coeff_text(mag)}*{psi}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
