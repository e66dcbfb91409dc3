"""The four convolutions on spectral measures, their iterated powers, the
scaled-projection identity relating them, and a brute-force non-crossing
partition oracle used to cross-check every series pipeline.

Classical convolutions act on atomic measures; the free ones act on moment
sequences (additive through cumulants, multiplicative through the
S pipeline).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OrderTooLargeForOracle
from .measures import (
    CatalogMeasure,
    MomentSequence,
    SignedAtomicMeasure,
    catalog_measure,
)
from .series import DEFAULT_ORDER, ONE, ZERO
from .transforms import (
    FreeCumulantSequence,
    free_cumulants,
    moments_from_cumulants,
    moments_from_s,
    s_transform,
)

ORACLE_LIMIT = 8  # Catalan(8) = 1430 partitions


# ---------------------------------------------------------------------------
# classical convolutions
# ---------------------------------------------------------------------------

def classical_add_conv(a: SignedAtomicMeasure,
                       b: SignedAtomicMeasure) -> SignedAtomicMeasure:
    """Atoms at all pairwise sums, weights multiplied and aggregated."""
    return SignedAtomicMeasure.from_atoms(
        [(la + lb, wa * wb) for la, wa in a.atoms for lb, wb in b.atoms])


def classical_mul_conv(a: SignedAtomicMeasure,
                       b: SignedAtomicMeasure) -> SignedAtomicMeasure:
    """Atoms at all pairwise products."""
    return SignedAtomicMeasure.from_atoms(
        [(la * lb, wa * wb) for la, wa in a.atoms for lb, wb in b.atoms])


def classical_add_power(a: SignedAtomicMeasure, t: int) -> SignedAtomicMeasure:
    out = SignedAtomicMeasure.dirac(0)
    for _ in range(t):
        out = classical_add_conv(out, a)
    return out


# ---------------------------------------------------------------------------
# free convolutions
# ---------------------------------------------------------------------------

def free_add_conv(a: MomentSequence, b: MomentSequence,
                  order: int = DEFAULT_ORDER) -> MomentSequence:
    """Cumulants add componentwise; moments are then rebuilt."""
    ka = free_cumulants(a.truncate(order))
    kb = free_cumulants(b.truncate(order))
    return moments_from_cumulants(ka + kb, order)


def free_mul_conv(a: MomentSequence, b: MomentSequence,
                  order: int = DEFAULT_ORDER) -> MomentSequence:
    """Multiplicative transforms multiply; moments are then rebuilt."""
    sa = s_transform(a, order)
    sb = s_transform(b, order)
    return moments_from_s((sa * sb).with_kind("s"), order)


def free_power(a: MomentSequence, kind: str, n: int,
               order: int = DEFAULT_ORDER) -> MomentSequence:
    """n-fold free convolution power, kind 'boxplus' or 'boxtimes'."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    if kind == "boxplus":
        kappa = free_cumulants(a.truncate(order)).scale_all(n)
        return moments_from_cumulants(kappa, order)
    if kind == "boxtimes":
        if n == 1:
            return a.truncate(order)
        s = s_transform(a, order).pow(n)
        return moments_from_s(s.with_kind("s"), order)
    raise ValueError(f"unknown convolution kind {kind!r}")


@dataclass(frozen=True)
class NsvComparison:
    lhs: MomentSequence
    rhs: MomentSequence
    equal: bool


def nsv_check(mu: MomentSequence, n: int, order: int = DEFAULT_ORDER) -> NsvComparison:
    """Compare the two sides of the scaled-projection identity

        (n-1)/n * delta_0 + 1/n * mu^{boxplus n}
            = mu boxtimes ((n-1)/n * delta_0 + 1/n * delta_n).

    The left side acts on moments as m_k -> m_k(mu^{boxplus n})/n for
    k >= 1 with m_0 = 1, so no signed measures are needed.
    """
    plus = free_power(mu, "boxplus", n, order)
    lhs = MomentSequence((ONE,) + tuple(m / n for m in plus.moments[1:]))
    group = catalog_measure(CatalogMeasure("uniform_group", (Fraction(n),)))
    rhs = free_mul_conv(mu, group.moments(order), order)
    return NsvComparison(lhs, rhs, lhs.moments == rhs.moments)


@dataclass(frozen=True)
class DistributivityReport:
    lhs: MomentSequence
    rhs: MomentSequence
    differ_at: int | None


def distributivity_counterexample(mu: MomentSequence, mu1: MomentSequence,
                                  mu2: MomentSequence,
                                  order: int = DEFAULT_ORDER) -> DistributivityReport:
    """Compare mu boxtimes (mu1 boxplus mu2) with
    (mu boxtimes mu1) boxplus (mu boxtimes mu2) and report the first moment
    index where they differ, if any."""
    lhs = free_mul_conv(mu, free_add_conv(mu1, mu2, order), order)
    rhs = free_add_conv(free_mul_conv(mu, mu1, order),
                        free_mul_conv(mu, mu2, order), order)
    differ_at = None
    for k in range(min(lhs.order, rhs.order) + 1):
        if lhs.m(k) != rhs.m(k):
            differ_at = k
            break
    return DistributivityReport(lhs, rhs, differ_at)


# ---------------------------------------------------------------------------
# non-crossing partition oracle
# ---------------------------------------------------------------------------

Partition = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _nc_partitions_of(elements: tuple[int, ...]) -> tuple[Partition, ...]:
    if not elements:
        return ((),)
    first, rest = elements[0], elements[1:]
    results: list[Partition] = []
    # choose the rest of first's block among the remaining elements; the
    # gaps between consecutive block members must then be partitioned
    # internally, which is exactly the non-crossing condition
    for mask in range(1 << len(rest)):
        block = [first] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
        segments = []
        ok = True
        for lo, hi in zip(block, block[1:] + [None]):
            if hi is None:
                seg = tuple(e for e in rest if e > lo)
            else:
                seg = tuple(e for e in rest if lo < e < hi)
            segments.append(seg)
        if not ok:
            continue
        partials: list[list[Partition]] = [list(_nc_partitions_of(s))
                                           for s in segments]
        combos: list[list[tuple[int, ...]]] = [[]]
        for options in partials:
            combos = [prefix + list(opt) for prefix in combos for opt in options]
        for blocks in combos:
            results.append(tuple(sorted([tuple(block)] + blocks)))
    return tuple(results)


def nc_partitions(n: int) -> tuple[Partition, ...]:
    """All non-crossing partitions of {1..n} (Catalan(n) of them)."""
    return _nc_partitions_of(tuple(range(1, n + 1)))


def is_noncrossing(partition: Partition) -> bool:
    blocks = [set(b) for b in partition]
    for i, p in enumerate(blocks):
        for q in blocks[i + 1:]:
            for a in p:
                for c in p:
                    if a >= c:
                        continue
                    inside = any(a < b < c for b in q)
                    outside = any(d < a or d > c for d in q)
                    if inside and outside:
                        return False
    return True


def kreweras_complement(partition: Partition, n: int) -> Partition:
    """Complement on the interleaved points 1, 1', 2, 2', ..., n, n'.

    Tracing the planar regions between the blocks of the partition is the
    same as composing the cycle permutation of each block (elements in
    increasing order) inverted with the long cycle 1 -> 2 -> ... -> n -> 1;
    the cycles of the composite are the complement's blocks.
    """
    onto = {}
    for block in partition:
        ordered = sorted(block)
        for a, b in zip(ordered, ordered[1:] + ordered[:1]):
            onto[a] = b
    inverse = {b: a for a, b in onto.items()}
    mapping = {i: inverse[i % n + 1] for i in range(1, n + 1)}
    seen: set[int] = set()
    blocks = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = mapping[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = mapping[nxt]
        blocks.append(tuple(sorted(cycle)))
    return tuple(sorted(blocks))


def nc_moment_from_cumulants(kappa: FreeCumulantSequence, n: int) -> Fraction:
    """Brute-force m_n = sum over non-crossing partitions of the product of
    block cumulants."""
    if n > ORACLE_LIMIT:
        raise OrderTooLargeForOracle(f"oracle limited to n <= {ORACLE_LIMIT}")
    if n == 0:
        return ONE
    total = ZERO
    for partition in nc_partitions(n):
        term = ONE
        for block in partition:
            term *= kappa.k(len(block))
        total += term
    return total


def nc_moment_oracle(kappa_a: FreeCumulantSequence, b_moments: MomentSequence,
                     n: int) -> Fraction:
    """Brute-force n-th moment of a boxtimes b:

        sum over pi in NC(n) of
            prod_{blocks B of pi} kappa_{|B|}(a)
          * prod_{blocks C of the Kreweras complement} m_{|C|}(b).
    """
    if n > ORACLE_LIMIT:
        raise OrderTooLargeForOracle(f"oracle limited to n <= {ORACLE_LIMIT}")
    if n == 0:
        return ONE
    total = ZERO
    for partition in nc_partitions(n):
        term = ONE
        for block in partition:
            term *= kappa_a.k(len(block))
        for block in kreweras_complement(partition, n):
            term *= b_moments.m(len(block))
        total += term
    return total
