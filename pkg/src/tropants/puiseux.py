"""Truncated Puiseux series with complex coefficients.

A series is a finite list of terms c * s^e with rational exponents bounded
below, standing in for the field element sum_k b_k s^k.  Numerically the
formal variable s plays the role of 1/t for a large real parameter t, so
the series evaluates to sum_k b_k t^(-k) and its norm grows like
t^val with val = -min(exponents).  Valuation and lift only ever read the
leading term, so truncation never affects them.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

_ZERO_TOL = 0.0  # coefficients are exact inputs; no epsilon filtering

DEFAULT_INVERSE_ORDER = Fraction(6)


class PuiseuxSeries:
    """Finite sorted term list (exponent, coefficient) plus truncation.

    truncation is the first unreliable exponent (None = exact); terms at
    or beyond it are discarded on construction.
    """

    __slots__ = ("terms", "truncation")

    def __init__(self, terms, truncation=None):
        trunc = None if truncation is None else Fraction(truncation)
        merged = {}
        for e, c in terms:
            e = Fraction(e)
            c = complex(c)
            if trunc is not None and e >= trunc:
                continue
            merged[e] = merged.get(e, 0j) + c
        clean = sorted(
            (e, c) for e, c in merged.items() if c != 0
        )
        self.terms = tuple(clean)
        self.truncation = trunc

    @classmethod
    def monomial(cls, coefficient, exponent):
        return cls([(Fraction(exponent), complex(coefficient))])

    @classmethod
    def constant(cls, value):
        return cls.monomial(value, 0)

    @property
    def is_zero(self):
        return not self.terms

    def _require_nonzero(self):
        if self.is_zero:
            raise ValueError("zero series has no valuation")

    @property
    def min_exponent(self):
        self._require_nonzero()
        return self.terms[0][0]

    @property
    def val(self):
        """Valuation: minus the lowest exponent (the numeric growth rate)."""
        return -self.min_exponent

    @property
    def leading_coefficient(self):
        self._require_nonzero()
        return self.terms[0][1]

    def lift(self):
        """(valuation, argument of the leading coefficient)."""
        return self.val, cmath.phase(self.leading_coefficient)

    def numeric(self, t):
        """Evaluate at a large real parameter: sum c * t^(-exponent)."""
        return sum(c * float(t) ** float(-e) for e, c in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, PuiseuxSeries)
            and self.terms == other.terms
            and self.truncation == other.truncation
        )

    def __hash__(self):
        return hash((self.terms, self.truncation))

    def __repr__(self):
        if self.is_zero:
            return "PuiseuxSeries(0)"
        bits = " + ".join(f"({c})*s^{e}" for e, c in self.terms)
        if self.truncation is not None:
            bits += f" + O(s^{self.truncation})"
        return f"PuiseuxSeries({bits})"

    def __neg__(self):
        out = PuiseuxSeries.__new__(PuiseuxSeries)
        out.terms = tuple((e, -c) for e, c in self.terms)
        out.truncation = self.truncation
        return out

    def __add__(self, other):
        other = _coerce(other)
        trunc = _min_opt(self.truncation, other.truncation)
        return PuiseuxSeries(self.terms + other.terms, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return PuiseuxSeries([])
        trunc = _min_opt(
            None if self.truncation is None else self.truncation + other.min_exponent,
            None if other.truncation is None else other.truncation + self.min_exponent,
        )
        prods = [
            (e1 + e2, c1 * c2)
            for e1, c1 in self.terms
            for e2, c2 in other.terms
        ]
        return PuiseuxSeries(prods, trunc)

    __rmul__ = __mul__

    def inverse(self, order=DEFAULT_INVERSE_ORDER):
        """Multiplicative inverse as a truncated geometric expansion."""
        self._require_nonzero()
        m, lead = self.terms[0]
        tail = PuiseuxSeries(
            [(e - m, c / lead) for e, c in self.terms[1:]], None
        )
        if self.truncation is not None:
            rel_trunc = self.truncation - m
        else:
            rel_trunc = (
                tail.terms[-1][0] * 2 + order if tail.terms else Fraction(order)
            )
        acc = PuiseuxSeries.constant(1)
        power = PuiseuxSeries.constant(1)
        if not tail.is_zero:
            steps = 1
            step_gap = tail.min_exponent
            while steps * step_gap < rel_trunc:
                steps += 1
            for _ in range(steps):
                power = power * (-tail)
                power = PuiseuxSeries(power.terms, rel_trunc)
                acc = acc + power
        result = PuiseuxSeries(
            [(e - m, c / lead) for e, c in acc.terms], rel_trunc - m
        )
        if self.truncation is None and tail.is_zero:
            result = PuiseuxSeries(result.terms, None)
        return result

    def __truediv__(self, other):
        return self * _coerce(other).inverse()


def _coerce(x):
    if isinstance(x, PuiseuxSeries):
        return x
    if isinstance(x, (int, float, complex, Fraction)):
        return PuiseuxSeries.constant(complex(x))
    raise TypeError(f"cannot coerce {type(x)} to PuiseuxSeries")


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
