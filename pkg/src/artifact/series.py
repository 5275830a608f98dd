"""Truncated formal power series with exact rational coefficients.

A Series holds coefficients c[0..order-1] of a power series modulo
x^order.  All arithmetic is exact over Fraction; division requires an
invertible constant term and square roots require constant term 1, so
every operation either succeeds exactly or raises.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_ORDER = 24


class Series:
    """Power series truncated at x^order, coefficients in Q."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int = DEFAULT_ORDER):
        if order < 1:
            raise ValueError("order must be >= 1")
        cs = [Fraction(c) for c in coeffs][:order]
        cs.extend([Fraction(0)] * (order - len(cs)))
        self.coeffs = cs
        self.order = order

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls([1], order)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "Series":
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER,
                 coeff=1) -> "Series":
        cs = [0] * order
        if k < order:
            cs[k] = coeff
        return cls(cs, order)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < self.order:
            return self.coeffs[k]
        raise IndexError(f"coefficient {k} beyond truncation order {self.order}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"Series([{head}, ...] mod x^{self.order})"

    def _common(self, other) -> tuple["Series", int]:
        if not isinstance(other, Series):
            other = Series([other], self.order)
        if other.order != self.order:
            raise ValueError("truncation orders differ")
        return other, self.order

    def __add__(self, other) -> "Series":
        other, order = self._common(other)
        return Series((a + b for a, b in zip(self.coeffs, other.coeffs)), order)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series((-a for a in self.coeffs), self.order)

    def __sub__(self, other) -> "Series":
        other, order = self._common(other)
        return Series((a - b for a, b in zip(self.coeffs, other.coeffs)), order)

    def __rsub__(self, other) -> "Series":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return Series((other * a for a in self.coeffs), self.order)
        other, order = self._common(other)
        out = [Fraction(0)] * order
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Series(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Series((a / other for a in self.coeffs), self.order)
        other, order = self._common(other)
        if other.coeffs[0] == 0:
            raise ZeroDivisionError("divisor has zero constant term")
        inv0 = 1 / other.coeffs[0]
        out = [Fraction(0)] * order
        for k in range(order):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                b = other.coeffs[j]
                if b:
                    acc -= b * out[k - j]
            out[k] = acc * inv0
        return Series(out, order)

    def __rtruediv__(self, other) -> "Series":
        return Series([other], self.order) / self

    def __pow__(self, exponent: int) -> "Series":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Series.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def shift_down(self, k: int = 1) -> "Series":
        """Divide by x^k; the k lowest coefficients must vanish.

        The result is truncated at order - k, since the top k
        coefficients are unknown after the shift.
        """
        if not 0 <= k < self.order:
            raise ValueError(f"shift amount {k} out of range for order {self.order}")
        if any(self.coeffs[i] != 0 for i in range(k)):
            raise ValueError(f"series not divisible by x^{k}")
        return Series(self.coeffs[k:], self.order - k)

    def sqrt(self) -> "Series":
        """Square root with constant term 1 (required of the input)."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt requires constant term 1")
        out = [Fraction(0)] * self.order
        out[0] = Fraction(1)
        for k in range(1, self.order):
            acc = self.coeffs[k]
            for j in range(1, k):
                acc -= out[j] * out[k - j]
            out[k] = acc / 2
        return Series(out, self.order)

    def compose(self, inner: "Series") -> "Series":
        """self(inner), requiring inner to have zero constant term."""
        inner, order = self._common(inner)
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs inner constant term 0")
        acc = Series.zero(order)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self.coeffs[:order], order)

    def coefficients(self, upto: int | None = None) -> list[Fraction]:
        upto = self.order if upto is None else upto
        return list(self.coeffs[:upto])

    def integer_coefficients(self, upto: int | None = None) -> list[int]:
        out = []
        for c in self.coefficients(upto):
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def to_json(self) -> str:
        """Coefficients as "p/q" strings, lowest terms, positive denominator."""
        return json.dumps({
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        })

    @classmethod
    def from_json(cls, text: str) -> "Series":
        raw = json.loads(text)
        return cls([Fraction(c) for c in raw["coeffs"]], raw["order"])


def polynomial(coeffs: Sequence, order: int = DEFAULT_ORDER) -> Series:
    """Series from ascending polynomial coefficients [c0, c1, ...]."""
    if len(coeffs) > order:
        raise ValueError("polynomial degree exceeds truncation order")
    return Series(coeffs, order)


def catalan(order: int = DEFAULT_ORDER) -> Series:
    """C(x) = sum_n binom(2n, n)/(n+1) x^n, satisfying C = 1 + x C^2."""
    cs = [0] * order
    cs[0] = 1
    for n in range(1, order):
        cs[n] = cs[n - 1] * (4 * n - 2) // (n + 1)
    return Series(cs, order)


def rational_expand(num: Sequence, den: Sequence,
                    order: int = DEFAULT_ORDER) -> Series:
    """Expand num(x)/den(x) via the linear recurrence its denominator gives."""
    den = [Fraction(c) for c in den]
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    return polynomial(num, order) / Series(den, order)
