"""Exact series pipelines between moments, free cumulants, and the
additive/multiplicative linearizing transforms.

Conventions, all as truncated series over exact rationals:

* psi(z)  = sum_{k>=1} m_k z^k, the moment series minus its constant term;
* chi     = compositional inverse of psi;
* S(z)    = (1+z)/z * chi(z), defined when m_1 != 0;
* the cumulant series C(z) = 1 + sum kappa_k z^k satisfies C(z M(z)) = M(z)
  where M(z) = 1 + sum m_k z^k;
* R(z)    = sum_{k>=1} kappa_k z^{k-1};
* the Cauchy transform is carried as a series in w = 1/xi: G = w * f(w);
* Theta(q) = q + (1-q)/(1+q) * f(q/(1+q)^2).

The cumulant route is used for additive convolution because it works when
m_1 = 0; the S route refuses such measures with a typed error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotAProbabilitySequence,
    NotInvertibleAsComposition,
    STransformUndefined,
    TransformTagMismatch,
)
from .measures import MomentSequence
from .series import DEFAULT_ORDER, ONE, ZERO, TruncatedSeries, ratio_series

KIND_MOMENTS = "moments"
KIND_PSI = "psi"
KIND_CHI = "chi"
KIND_S = "s"
KIND_R = "r"
KIND_CAUCHY_W = "cauchy_w"
KIND_THETA = "theta"


@dataclass(frozen=True)
class FreeCumulantSequence:
    """kappa_1..kappa_N; determines and is determined by moments m_1..m_N."""

    kappas: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.kappas)

    def k(self, n: int) -> Fraction:
        return self.kappas[n - 1]

    def truncate(self, order: int) -> "FreeCumulantSequence":
        return FreeCumulantSequence(self.kappas[:order])

    def scale_all(self, factor: int | Fraction) -> "FreeCumulantSequence":
        return FreeCumulantSequence(tuple(factor * k for k in self.kappas))

    def __add__(self, other: "FreeCumulantSequence") -> "FreeCumulantSequence":
        n = min(self.order, other.order)
        return FreeCumulantSequence(tuple(self.kappas[i] + other.kappas[i]
                                          for i in range(n)))


def _require_probability(m: MomentSequence) -> None:
    if m.m(0) != 1:
        raise NotAProbabilitySequence(
            f"pipeline needs total mass 1, got m_0 = {m.m(0)}")


def _check_kind(series: TruncatedSeries, expected: str, op: str) -> None:
    if series.kind is not None and series.kind != expected:
        raise TransformTagMismatch(
            f"{op} expects a {expected!r} series, got {series.kind!r}")


def moment_series(m: MomentSequence) -> TruncatedSeries:
    """The generating series f(z) = sum m_k z^k."""
    return TruncatedSeries(tuple(m.moments), KIND_MOMENTS)


def psi_from_moments(m: MomentSequence) -> TruncatedSeries:
    _require_probability(m)
    return TruncatedSeries((ZERO,) + m.moments[1:], KIND_PSI)


def chi_from_moments(m: MomentSequence) -> TruncatedSeries:
    """Compositional inverse of psi; needs m_1 != 0."""
    _require_probability(m)
    if m.order < 1 or m.m(1) == 0:
        raise STransformUndefined(
            "multiplicative transform needs a nonzero first moment")
    return psi_from_moments(m).compositional_inverse().with_kind(KIND_CHI)


def s_transform(m: MomentSequence, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """S(z) = (1+z)/z * chi(z) to order min(order, m.order - 1)."""
    chi = chi_from_moments(m)
    shifted = TruncatedSeries(chi.coeffs[1:])  # chi(z)/z, a genuine series
    one_plus_z = TruncatedSeries.from_coeffs([1, 1], order=shifted.order)
    return (one_plus_z * shifted).truncate(order).with_kind(KIND_S)


def moments_from_s(s: TruncatedSeries, order: int = DEFAULT_ORDER) -> MomentSequence:
    """Recover moments from a multiplicative-transform series.

    chi(z) = z*S(z)/(1+z), psi = inverse of chi, m_k = psi_k.  Exact
    roundtrip with :func:`s_transform`.
    """
    _check_kind(s, KIND_S, "moments_from_s")
    if s.coeffs[0] == 0:
        raise NotInvertibleAsComposition(
            "transform series needs a nonzero constant term")
    work = max(order, 1)
    chi = TruncatedSeries((ZERO,) + s.coeffs[:work]) \
        * ratio_series([1], [1, 1], work)
    psi = chi.compositional_inverse()
    return MomentSequence((ONE,) + psi.coeffs[1:order + 1])


def free_cumulants(m: MomentSequence) -> FreeCumulantSequence:
    """Solve C(z M(z)) = M(z) for the cumulants, triangularly.

    The z^n coefficient of C(z M(z)) is kappa_n plus terms involving only
    kappa_1..kappa_{n-1}, so each cumulant is read off directly.
    """
    _require_probability(m)
    n = m.order
    zm = TruncatedSeries((ZERO,) + m.moments[:n])  # z*M(z) to order n
    kappas: list[Fraction] = []
    power = TruncatedSeries.one(n)
    powers = []  # (z M)^s for s = 1..n
    for _ in range(n):
        power = power * zm
        powers.append(power)
    for idx in range(1, n + 1):
        acc = m.m(idx)
        for s in range(1, idx):
            acc -= kappas[s - 1] * powers[s - 1].c(idx)
        kappas.append(acc)
    return FreeCumulantSequence(tuple(kappas))


def moments_from_cumulants(kappa: FreeCumulantSequence,
                           order: int = DEFAULT_ORDER) -> MomentSequence:
    """Rebuild moments from cumulants via the same functional equation."""
    n = min(order, kappa.order)
    moments: list[Fraction] = [ONE]
    for idx in range(1, n + 1):
        zm = TruncatedSeries((ZERO,) + tuple(moments))
        acc = ZERO
        power = TruncatedSeries.one(idx)
        for s in range(1, idx + 1):
            power = power * zm
            acc += kappa.k(s) * power.c(idx)
        moments.append(acc)
    return MomentSequence(tuple(moments))


def r_transform(m: MomentSequence, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """R(z) = sum kappa_k z^{k-1} to order min(order, m.order - 1)."""
    kappa = free_cumulants(m)
    coeffs = kappa.kappas[:order + 1]
    return TruncatedSeries(coeffs if coeffs else (ZERO,)).with_kind(KIND_R)


def moments_from_r(r: TruncatedSeries, order: int = DEFAULT_ORDER) -> MomentSequence:
    """Inverse of :func:`r_transform`: read cumulants off the coefficients
    and rebuild moments."""
    _check_kind(r, KIND_R, "moments_from_r")
    kappa = FreeCumulantSequence(r.coeffs)
    return moments_from_cumulants(kappa, order)


def cauchy_series(m: MomentSequence) -> TruncatedSeries:
    """Cauchy transform as a series in w = 1/xi: G = w + m_1 w^2 + ..."""
    return TruncatedSeries((ZERO,) + m.moments, KIND_CAUCHY_W)


def theta_series(m: MomentSequence, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Jones' reparametrized series
    Theta(q) = q + (1-q)/(1+q) * f(q/(1+q)^2), computed exactly.

    The substituted series q/(1+q)^2 has zero constant term, so the
    composition is always defined.
    """
    _require_probability(m)
    n = min(order, m.order)
    f = moment_series(m).truncate(n)
    inner = ratio_series([0, 1], [1, 2, 1], n)
    outer = ratio_series([1, -1], [1, 1], n)
    theta = TruncatedSeries.identity(max(n, 1)).truncate(n) + outer * f.compose(inner)
    return theta.with_kind(KIND_THETA)
