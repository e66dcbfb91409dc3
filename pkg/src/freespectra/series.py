"""Truncated formal power series over exact rationals.

A series of order N stores coefficients c_0..c_N of z^0..z^N; everything
beyond z^N is discarded.  All arithmetic is exact (``fractions.Fraction``),
and binary operations truncate to the smaller operand order, so pipelines
shrink precision instead of erroring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    ComposeWithNonzeroConstantTerm,
    NotInvertibleAsComposition,
    ReciprocalOfZeroConstantTerm,
    SqrtConstantTermNotOne,
)

#: default truncation order for public entry points
DEFAULT_ORDER = 16

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of a power series truncated at order N.

    The optional ``kind`` tag records which transform a series represents
    ("moments", "psi", "chi", "s", "r", "cauchy_w", "theta"); transform
    pipelines check it to prevent feeding a series into the wrong slot.
    """

    coeffs: tuple[Fraction, ...]
    kind: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_coeffs(values: Iterable[RationalLike], order: int | None = None,
                    kind: str | None = None) -> "TruncatedSeries":
        cs = [as_fraction(v) for v in values]
        if order is not None:
            cs = cs[: order + 1]
            cs.extend([ZERO] * (order + 1 - len(cs)))
        if not cs:
            cs = [ZERO]
        return TruncatedSeries(tuple(cs), kind)

    @staticmethod
    def zero(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return TruncatedSeries((ZERO,) * (order + 1))

    @staticmethod
    def one(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return TruncatedSeries((ONE,) + (ZERO,) * order)

    @staticmethod
    def identity(order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        """The series z."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return TruncatedSeries((ZERO, ONE) + (ZERO,) * (order - 1))

    def c(self, k: int) -> Fraction:
        """Coefficient of z^k (0 for k beyond the truncation order)."""
        return self.coeffs[k] if 0 <= k <= self.order else ZERO

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1], self.kind)

    def with_kind(self, kind: str | None) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, kind)

    # --- ring operations ------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[k] + other.coeffs[k]
                                     for k in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[k] - other.coeffs[k]
                                     for k in range(n + 1)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.kind)

    def scale(self, factor: RationalLike) -> "TruncatedSeries":
        f = as_fraction(factor)
        return TruncatedSeries(tuple(f * c for c in self.coeffs))

    def add_constant(self, value: RationalLike) -> "TruncatedSeries":
        v = as_fraction(value)
        return TruncatedSeries((self.coeffs[0] + v,) + self.coeffs[1:])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(tuple(out))

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires c_0 != 0."""
        if self.coeffs[0] == 0:
            raise ReciprocalOfZeroConstantTerm(
                "cannot invert a series with zero constant term")
        n = self.order
        inv0 = ONE / self.coeffs[0]
        out = [inv0] + [ZERO] * n
        for k in range(1, n + 1):
            acc = ZERO
            for j in range(1, k + 1):
                acc += self.c(j) * out[k - j]
            out[k] = -inv0 * acc
        return TruncatedSeries(tuple(out))

    def pow(self, exponent: int) -> "TruncatedSeries":
        """Integer power; negative exponents go through reciprocal."""
        if exponent < 0:
            return self.reciprocal().pow(-exponent)
        result = TruncatedSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # --- composition ----------------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(z)); requires inner.c_0 = 0."""
        if inner.coeffs[0] != 0:
            raise ComposeWithNonzeroConstantTerm(
                "substituted series must have zero constant term")
        n = min(self.order, inner.order)
        result = [self.coeffs[0]] + [ZERO] * n
        power = TruncatedSeries.one(n)
        for k in range(1, n + 1):
            power = power * inner.truncate(n)
            a = self.c(k)
            if a:
                for j in range(k, n + 1):
                    result[j] += a * power.coeffs[j]
        return TruncatedSeries(tuple(result))

    def compositional_inverse(self) -> "TruncatedSeries":
        """The series b with self(b(z)) = b(self(z)) = z up to the order.

        Requires c_0 = 0 and c_1 != 0.  Solved term by term: the z^m
        coefficient of self(b) is c_1*b_m plus terms in b_1..b_{m-1}, so
        each b_m is read off a triangular system.
        """
        if self.coeffs[0] != 0 or self.order < 1 or self.coeffs[1] == 0:
            raise NotInvertibleAsComposition(
                "compositional inverse needs c_0 = 0 and c_1 != 0")
        n = self.order
        inv_c1 = ONE / self.coeffs[1]
        b = [ZERO, inv_c1] + [ZERO] * (n - 1)
        for m in range(2, n + 1):
            partial = TruncatedSeries(tuple(b[: m + 1]))
            residue = self.truncate(m).compose(partial).c(m)
            b[m] = -inv_c1 * residue
        return TruncatedSeries(tuple(b))

    def sqrt(self) -> "TruncatedSeries":
        """Square root with constant term 1; requires c_0 = 1."""
        if self.coeffs[0] != 1:
            raise SqrtConstantTermNotOne(
                "series square root needs constant term 1")
        n = self.order
        out = [ONE] + [ZERO] * n
        for k in range(1, n + 1):
            acc = ZERO
            for j in range(1, k):
                acc += out[j] * out[k - j]
            out[k] = (self.coeffs[k] - acc) / 2
        return TruncatedSeries(tuple(out))

    # --- misc -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.order + 1})"

    def to_json_dict(self) -> dict:
        doc = {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}
        if self.kind is not None:
            doc["kind"] = self.kind
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(doc: dict) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs(
            doc["coeffs"], order=doc.get("order"), kind=doc.get("kind"))


def ratio_series(numerator: Sequence[RationalLike],
                 denominator: Sequence[RationalLike],
                 order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expansion of a rational function given by polynomial coefficients."""
    num = TruncatedSeries.from_coeffs(numerator, order=order)
    den = TruncatedSeries.from_coeffs(denominator, order=order)
    return num * den.reciprocal()


def geometric_series(ratio: RationalLike, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """1/(1 - r z) expanded to the requested order."""
    r = as_fraction(ratio)
    coeffs, current = [], ONE
    for _ in range(order + 1):
        coeffs.append(current)
        current *= r
    return TruncatedSeries(tuple(coeffs))
