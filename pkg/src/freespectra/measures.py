"""Measure representations and the catalog of named spectral measures.

Two exact carriers: finite signed combinations of Dirac masses, and plain
moment lists.  Absolutely continuous catalog entries (free Poisson and
friends) only ever appear through their exact moment sequences here; their
densities live in the ``stieltjes`` module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InvalidParameter, UnknownCatalogName
from .series import (
    DEFAULT_ORDER,
    ONE,
    ZERO,
    RationalLike,
    TruncatedSeries,
    as_fraction,
    ratio_series,
)


# ---------------------------------------------------------------------------
# combinatorial helpers
# ---------------------------------------------------------------------------

def catalan_number(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def fuss_catalan_number(s: int, k: int) -> Fraction:
    """Moment k of the s-fold free multiplicative power of the free Poisson
    law: binom((s+1)k, k)/(sk+1).  Always an integer, kept exact."""
    return Fraction(math.comb((s + 1) * k, k), s * k + 1)


def bell_numbers(order: int) -> list[int]:
    """B_0..B_order via the set-partition recurrence
    B_{n+1} = sum_k binom(n,k) B_k."""
    bells = [1]
    for n in range(order):
        bells.append(sum(math.comb(n, k) * bells[k] for k in range(n + 1)))
    return bells


def derangement_counts(n: int) -> list[int]:
    """D_0..D_n with D_l = number of fixed-point-free permutations of l."""
    counts = [1, 0]
    for l in range(2, n + 1):
        counts.append((l - 1) * (counts[l - 1] + counts[l - 2]))
    return counts[: n + 1]


# ---------------------------------------------------------------------------
# carriers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentSequence:
    """Exact moments m_0..m_N.  m_0 is the total mass (1 for probability
    measures)."""

    moments: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.moments) - 1

    @staticmethod
    def from_values(values: Iterable[RationalLike]) -> "MomentSequence":
        return MomentSequence(tuple(as_fraction(v) for v in values))

    def m(self, k: int) -> Fraction:
        return self.moments[k]

    def truncate(self, order: int) -> "MomentSequence":
        if order >= self.order:
            return self
        return MomentSequence(self.moments[: order + 1])

    def is_probability(self) -> bool:
        return self.moments[0] == 1

    def to_json_list(self) -> list[str]:
        return [str(m) for m in self.moments]

    @staticmethod
    def from_json_list(values: list[str]) -> "MomentSequence":
        return MomentSequence.from_values(values)


@dataclass(frozen=True)
class SignedAtomicMeasure:
    """Finite signed combination of Dirac masses, stored as (location,
    weight) pairs sorted by location with zero weights dropped."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    @staticmethod
    def from_atoms(atoms: Mapping[RationalLike, RationalLike] |
                   Iterable[tuple[RationalLike, RationalLike]]) -> "SignedAtomicMeasure":
        items = atoms.items() if isinstance(atoms, Mapping) else atoms
        merged: dict[Fraction, Fraction] = {}
        for loc, w in items:
            loc, w = as_fraction(loc), as_fraction(w)
            merged[loc] = merged.get(loc, ZERO) + w
        cleaned = tuple(sorted((l, w) for l, w in merged.items() if w != 0))
        return SignedAtomicMeasure(cleaned)

    @staticmethod
    def dirac(location: RationalLike) -> "SignedAtomicMeasure":
        return SignedAtomicMeasure.from_atoms({as_fraction(location): ONE})

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.atoms)

    def weight(self, location: RationalLike) -> Fraction:
        loc = as_fraction(location)
        for l, w in self.atoms:
            if l == loc:
                return w
        return ZERO

    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), ZERO)

    def is_probability(self) -> bool:
        return self.total_mass() == 1 and all(w > 0 for _, w in self.atoms)

    def scale(self, factor: RationalLike) -> "SignedAtomicMeasure":
        f = as_fraction(factor)
        return SignedAtomicMeasure.from_atoms(
            [(l, f * w) for l, w in self.atoms])

    def __add__(self, other: "SignedAtomicMeasure") -> "SignedAtomicMeasure":
        return SignedAtomicMeasure.from_atoms(
            list(self.atoms) + list(other.atoms))

    def __sub__(self, other: "SignedAtomicMeasure") -> "SignedAtomicMeasure":
        return self + other.scale(-1)

    def moment(self, k: int) -> Fraction:
        return sum((w * l ** k for l, w in self.atoms), ZERO)

    def moments(self, order: int) -> MomentSequence:
        return MomentSequence(tuple(self.moment(k) for k in range(order + 1)))

    def to_json_list(self) -> list[list[str]]:
        return [[str(l), str(w)] for l, w in self.atoms]

    @staticmethod
    def from_json_list(pairs: list[list[str]]) -> "SignedAtomicMeasure":
        return SignedAtomicMeasure.from_atoms([(l, w) for l, w in pairs])

    def __str__(self) -> str:
        if not self.atoms:
            return "0"
        return " + ".join(f"({w})*delta[{l}]" for l, w in self.atoms)


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

ATOMIC_NAMES = ("dirac", "eta_small", "nu", "dihedral", "uniform_group")
MOMENT_NAMES = ("semicircle", "free_poisson", "poisson", "fuss_catalan",
                "cube", "two_rectangles")
CATALOG_NAMES = ("dirac", "eta", "nu", "dihedral", "uniform_group",
                 "semicircle", "free_poisson", "poisson", "fuss_catalan",
                 "cube", "two_rectangles")


@dataclass(frozen=True)
class CatalogMeasure:
    """A named measure with parameters, e.g. eta(3) or fuss_catalan(1,0,2)."""

    name: str
    params: tuple[Fraction, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(str(p) for p in self.params)


def _int_param(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InvalidParameter(f"{what} must be an integer, got {value}")
    return int(value)


def parse_measure(text: str) -> Union[CatalogMeasure, SignedAtomicMeasure]:
    """Parse a measure literal: 'eta:4', 'dirac:3/2', 'fuss_catalan:1,1,1',
    or inline JSON {"atoms": [["0","1/2"], ...]}."""
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
        return SignedAtomicMeasure.from_json_list(doc["atoms"])
    name, _, raw = text.partition(":")
    name = name.strip()
    if name not in CATALOG_NAMES:
        raise UnknownCatalogName(f"unknown catalog measure {name!r}")
    params = tuple(as_fraction(p.strip()) for p in raw.split(",") if p.strip())
    return CatalogMeasure(name, params)


def _eta_atoms(n: int) -> SignedAtomicMeasure:
    if n == 1:
        return SignedAtomicMeasure.dirac(1)
    if n == 2:
        return SignedAtomicMeasure.from_atoms({0: Fraction(1, 2), 2: Fraction(1, 2)})
    # n == 3
    return SignedAtomicMeasure.from_atoms(
        {0: Fraction(2, 6), 1: Fraction(3, 6), 3: Fraction(1, 6)})


def _nu_atoms(n: int) -> SignedAtomicMeasure:
    """Fixed-point-count measure of the full permutation group on n points:
    weight of delta_s is binom(n,s) * D_{n-s} / n!."""
    der = derangement_counts(n)
    total = math.factorial(n)
    return SignedAtomicMeasure.from_atoms(
        {Fraction(s): Fraction(math.comb(n, s) * der[n - s], total)
         for s in range(n + 1)})


def _dihedral_atoms(m: int) -> SignedAtomicMeasure:
    if m % 2 == 0:
        k = m // 2
        return SignedAtomicMeasure.from_atoms(
            {0: Fraction(3 * k - 1, 4 * k), 2: Fraction(k, 4 * k),
             m: Fraction(1, 4 * k)})
    k = (m - 1) // 2
    return SignedAtomicMeasure.from_atoms(
        {0: Fraction(2 * k, 4 * k + 2), 1: Fraction(2 * k + 1, 4 * k + 2),
         m: Fraction(1, 4 * k + 2)})


def _uniform_group_atoms(n: int) -> SignedAtomicMeasure:
    if n == 1:
        return SignedAtomicMeasure.dirac(1)
    return SignedAtomicMeasure.from_atoms(
        {0: Fraction(n - 1, n), n: Fraction(1, n)})


def _two_rectangles_moments(order: int) -> MomentSequence:
    """Solve (8z-1) f^2 - (10z-1) f + 3z = 0 with f(0) = 1 term by term.

    Matching the z^n coefficient gives, with a = f^2,
    f_n = 8 a_{n-1} - sum_{j=1..n-1} f_j f_{n-j} - 10 f_{n-1} + 3 [n=1].
    """
    f = [ONE]
    for n in range(1, order + 1):
        a_prev = sum((f[j] * f[n - 1 - j] for j in range(n)), ZERO)
        cross = sum((f[j] * f[n - j] for j in range(1, n)), ZERO)
        value = 8 * a_prev - cross - 10 * f[n - 1]
        if n == 1:
            value += 3
        f.append(value)
    return MomentSequence(tuple(f))


def _cube_moments(order: int) -> MomentSequence:
    moments = [ONE]
    for k in range(1, order + 1):
        moments.append(Fraction(2 ** (k - 1) * math.comb(2 * k, k), k + 1))
    return MomentSequence(tuple(moments))


def eta_s_series(n: int, order: int) -> TruncatedSeries:
    """Closed-form multiplicative-transform series of the n-point universal
    measure: (1+z)/(1+2z) for n=2, (2+2z)/(1+4z+sqrt(1+4z^2)) for n=3,
    1/(1+z) for n >= 4."""
    if n < 2:
        raise InvalidParameter("transform series defined for n >= 2")
    if n == 2:
        return ratio_series([1, 1], [1, 2], order)
    if n == 3:
        root = TruncatedSeries.from_coeffs([1, 0, 4], order=order).sqrt()
        den = TruncatedSeries.from_coeffs([1, 4], order=order) + root
        return TruncatedSeries.from_coeffs([2, 2], order=order) * den.reciprocal()
    return ratio_series([1], [1, 1], order)


def _moments_from_s_series(s: TruncatedSeries, order: int) -> MomentSequence:
    """Invert a multiplicative-transform series back to moments."""
    work = max(order, 1)
    chi = TruncatedSeries(
        (ZERO,) + s.coeffs[:work]) * ratio_series([1], [1, 1], work)
    psi = chi.compositional_inverse()
    return MomentSequence((ONE,) + psi.coeffs[1:order + 1])


def _fuss_catalan_moments(a: int, b: int, c: int, order: int) -> MomentSequence:
    if a == 0 and b == 0:
        return MomentSequence(tuple(fuss_catalan_number(c, k)
                                    for k in range(order + 1)))
    s = (eta_s_series(2, order).pow(a)
         * eta_s_series(3, order).pow(b)
         * eta_s_series(4, order).pow(c))
    return _moments_from_s_series(s, order)


def catalog_measure(measure: CatalogMeasure, order: int = DEFAULT_ORDER
                    ) -> Union[SignedAtomicMeasure, MomentSequence]:
    """Materialize a catalog entry: atomic measures as atoms, absolutely
    continuous families as exact moment sequences up to ``order``."""
    name, params = measure.name, measure.params

    def arity(k: int) -> tuple[Fraction, ...]:
        if len(params) != k:
            raise InvalidParameter(
                f"{name} takes {k} parameter(s), got {len(params)}")
        return params

    if name == "dirac":
        (a,) = arity(1)
        return SignedAtomicMeasure.dirac(a)
    if name == "eta":
        n = _int_param(*arity(1), "eta parameter")
        if n < 1:
            raise InvalidParameter("eta needs n >= 1")
        if n <= 3:
            return _eta_atoms(n)
        return MomentSequence(tuple(Fraction(catalan_number(k))
                                    for k in range(order + 1)))
    if name == "nu":
        n = _int_param(*arity(1), "nu parameter")
        if n < 1:
            raise InvalidParameter("nu needs n >= 1")
        return _nu_atoms(n)
    if name == "dihedral":
        m = _int_param(*arity(1), "dihedral parameter")
        if m < 3:
            raise InvalidParameter("dihedral needs m >= 3")
        return _dihedral_atoms(m)
    if name == "uniform_group":
        n = _int_param(*arity(1), "uniform_group parameter")
        if n < 1:
            raise InvalidParameter("uniform_group needs n >= 1")
        return _uniform_group_atoms(n)
    if name == "semicircle":
        arity(0)
        return MomentSequence(tuple(
            Fraction(catalan_number(k // 2)) if k % 2 == 0 else ZERO
            for k in range(order + 1)))
    if name == "free_poisson":
        arity(0)
        return MomentSequence(tuple(Fraction(catalan_number(k))
                                    for k in range(order + 1)))
    if name == "poisson":
        arity(0)
        return MomentSequence(tuple(Fraction(b) for b in bell_numbers(order)))
    if name == "fuss_catalan":
        abc = [_int_param(p, "fuss_catalan parameter") for p in arity(3)]
        if any(p < 0 for p in abc):
            raise InvalidParameter("fuss_catalan needs a,b,c >= 0")
        return _fuss_catalan_moments(*abc, order)
    if name == "cube":
        arity(0)
        return _cube_moments(order)
    if name == "two_rectangles":
        arity(0)
        return _two_rectangles_moments(order)
    raise UnknownCatalogName(f"unknown catalog measure {name!r}")


MeasureLike = Union[SignedAtomicMeasure, MomentSequence, CatalogMeasure, str]


def moments_of(measure: MeasureLike, order: int = DEFAULT_ORDER) -> MomentSequence:
    """Exact moments m_0..m_order of any measure representation."""
    if isinstance(measure, str):
        measure = parse_measure(measure)
    if isinstance(measure, CatalogMeasure):
        measure = catalog_measure(measure, order)
    if isinstance(measure, SignedAtomicMeasure):
        return measure.moments(order)
    if isinstance(measure, MomentSequence):
        if measure.order < order:
            raise InvalidParameter(
                f"moment sequence only known to order {measure.order}, "
                f"requested {order}")
        return measure.truncate(order)
    raise TypeError(f"not a measure: {measure!r}")
