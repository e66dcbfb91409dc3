"""Registry of machine-checked identities.

Each entry recomputes both sides of one quantitative statement about the
catalog measures (exactly, or numerically for the inversion checks) and
reports pass/fail.  The registry backs the ``verify`` CLI subcommand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import UnknownIdentity
from .freeconv import (
    classical_add_conv,
    classical_add_power,
    distributivity_counterexample,
    free_mul_conv,
    free_power,
    nsv_check,
)
from .graphs import builtin_graph, free_product, quantum_measure
from .measures import (
    CatalogMeasure,
    MomentSequence,
    SignedAtomicMeasure,
    bell_numbers,
    catalog_measure,
    fuss_catalan_number,
    moments_of,
    parse_measure,
)
from .series import ONE, TruncatedSeries, ratio_series
from .stieltjes import density_moment_check, herglotz_grid_ok
from .transforms import eta_s_series_check  # noqa: F401  (re-export guard)


@dataclass(frozen=True)
class VerificationReport:
    name: str
    params: dict = field(compare=False)
    passed: bool = False
    details: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name, "params": self.params,
                "pass": self.passed, "details": self.details}


def _report(name: str, params: dict, passed: bool, details: str) -> VerificationReport:
    return VerificationReport(name, params, passed, details)


def _moment_series(m: MomentSequence) -> TruncatedSeries:
    return TruncatedSeries(tuple(m.moments))


LEMMA_MEASURE_SET = ("eta:2", "eta:3", "eta:4", "uniform_group:2",
                     "uniform_group:3", "uniform_group:4", "uniform_group:5",
                     "dihedral:5")


def random_atomic_measures(count: int, seed: int = 20260809
                           ) -> list[SignedAtomicMeasure]:
    """Deterministic sample of rational atomic probability measures with a
    nonzero first moment."""
    rng = random.Random(seed)
    out: list[SignedAtomicMeasure] = []
    while len(out) < count:
        k = rng.randint(1, 3)
        locations: set[Fraction] = set()
        while len(locations) < k:
            locations.add(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        weights = [Fraction(rng.randint(1, 4)) for _ in range(k)]
        total = sum(weights)
        mu = SignedAtomicMeasure.from_atoms(
            {loc: w / total for loc, w in zip(sorted(locations), weights)})
        if mu.moment(1) != 0:
            out.append(mu)
    return out


# ---------------------------------------------------------------------------
# individual identity checks
# ---------------------------------------------------------------------------

def check_thm21(order: int = 10, tol: float = 0.0) -> VerificationReport:
    """The fixed-point-count measure of the full permutation group equals the
    truncated exponential of (delta_1 - delta_0) under classical convolution."""
    step = SignedAtomicMeasure.dirac(1) - SignedAtomicMeasure.dirac(0)
    failures = []
    for n in range(1, 9):
        total = SignedAtomicMeasure.from_atoms({})
        factorial = 1
        for t in range(n + 1):
            if t > 0:
                factorial *= t
            total = total + classical_add_power(step, t).scale(Fraction(1, factorial))
        expected = catalog_measure(CatalogMeasure("nu", (Fraction(n),)))
        if total.atoms != expected.atoms:
            failures.append(n)
    return _report("thm21", {"n": "1..8"}, not failures,
                   f"mismatched n: {failures}" if failures else
                   "truncated exponential equals fixed-point measure")


def check_bell_moments(order: int = 10, tol: float = 0.0) -> VerificationReport:
    bells = bell_numbers(8)
    failures = []
    for n in range(4, 9):
        mu = catalog_measure(CatalogMeasure("nu", (Fraction(n),)))
        mom = mu.moments(n)
        if any(mom.m(k) != bells[k] for k in range(n + 1)):
            failures.append(n)
    return _report("bell_moments", {"n": "4..8"}, not failures,
                   f"mismatched n: {failures}" if failures else
                   "fixed-point moments match the set-partition recurrence")


def check_thm22_moments(order: int = 10, tol: float = 0.0) -> VerificationReport:
    catalan = [1, 1, 2, 5, 14, 42, 132]
    problems = []
    for n in (4, 5, 6, 7, 8):
        mom = moments_of(CatalogMeasure("eta", (Fraction(n),)), 6)
        if list(mom.moments) != catalan:
            problems.append(f"eta({n})")
    eta2 = catalog_measure(CatalogMeasure("eta", (Fraction(2),)))
    if eta2.as_dict() != {Fraction(0): Fraction(1, 2), Fraction(2): Fraction(1, 2)}:
        problems.append("eta(2)")
    eta3 = catalog_measure(CatalogMeasure("eta", (Fraction(3),)))
    if eta3.as_dict() != {Fraction(0): Fraction(1, 3), Fraction(1): Fraction(1, 2),
                          Fraction(3): Fraction(1, 6)}:
        problems.append("eta(3)")
    return _report("thm22_moments", {}, not problems,
                   f"failures: {problems}" if problems else
                   "universal-measure moments and atoms as expected")


def check_prop41(order: int = 12, tol: float = 0.0) -> VerificationReport:
    from .transforms import s_transform
    failures = []
    for n in range(2, 7):
        m = moments_of(CatalogMeasure("uniform_group", (Fraction(n),)), order + 1)
        lhs = s_transform(m, order)
        rhs = ratio_series([1, 1], [1, n], order)
        if lhs.coeffs != rhs.coeffs:
            failures.append(n)
    return _report("prop41", {"n": "2..6", "order": order}, not failures,
                   f"mismatched n: {failures}" if failures else
                   "group-measure transform equals (1+z)/(1+nz)")


def _lemma41_holds(mu_moments: MomentSequence, order: int) -> bool:
    from .transforms import r_transform, s_transform
    s = s_transform(mu_moments, order)
    r = r_transform(mu_moments, order)
    z = TruncatedSeries.identity(order)
    one = TruncatedSeries.one(order)
    first = r.compose((z * s)) * s
    second = s.compose((z * r)) * r
    return first.coeffs == one.coeffs and second.coeffs == one.coeffs


def check_lemma41(order: int = 10, tol: float = 0.0) -> VerificationReport:
    failures = []
    for literal in LEMMA_MEASURE_SET:
        m = moments_of(parse_measure(literal), order + 2)
        if not _lemma41_holds(m, order):
            failures.append(literal)
    for idx, mu in enumerate(random_atomic_measures(20)):
        if not _lemma41_holds(mu.moments(order + 2), order):
            failures.append(f"random[{idx}]")
    return _report("lemma41", {"order": order, "random": 20}, not failures,
                   f"failures: {failures}" if failures else
                   "both transform interlacing identities hold")


def check_thm42_nsv(order: int = 10, tol: float = 0.0) -> VerificationReport:
    failures = []
    for literal in LEMMA_MEASURE_SET:
        m = moments_of(parse_measure(literal), order + 1)
        for n in (2, 3, 4, 5):
            if not nsv_check(m, n, order).equal:
                failures.append(f"{literal}, n={n}")
    return _report("thm42_nsv", {"order": order, "n": "2..5"}, not failures,
                   f"failures: {failures}" if failures else
                   "scaled-projection identity holds on the measure set")


def check_thm51(order: int = 10, tol: float = 0.0) -> VerificationReport:
    from .transforms import moments_from_s
    failures = []
    eta4 = moments_of(CatalogMeasure("eta", (Fraction(4),)), order + 1)
    for s in range(1, 5):
        series = ratio_series([1], [1, 1], order).pow(s).with_kind("s")
        mom = moments_from_s(series, order)
        f = _moment_series(mom)
        rhs = (TruncatedSeries.identity(order) * f.pow(s + 1)).add_constant(1)
        if f.coeffs != rhs.coeffs:
            failures.append(f"s={s}: functional equation")
        if any(mom.m(k) != fuss_catalan_number(s, k)
               for k in range(min(order, 8) + 1)):
            failures.append(f"s={s}: closed-form moments")
        power = free_power(eta4, "boxtimes", s, order)
        if power.moments != mom.moments:
            failures.append(f"s={s}: multiplicative power")
    return _report("thm51", {"s": "1..4", "order": order}, not failures,
                   f"failures: {failures}" if failures else
                   "f = 1 + z f^(s+1), closed moments, and powers agree")


def check_cor61(order: int = 8, tol: float = 0.0) -> VerificationReport:
    failures = []
    for (a, b) in ((4, 4), (4, 5), (5, 4)):
        graph = free_product(builtin_graph(f"simplex:{a}"),
                             builtin_graph(f"simplex:{b}"))
        result = quantum_measure(graph, order)
        expected = free_mul_conv(moments_of(CatalogMeasure("eta", (Fraction(a),)), order + 1),
                                 moments_of(CatalogMeasure("eta", (Fraction(b),)), order + 1),
                                 order)
        if result.status != "proven":
            failures.append(f"{a}*{b}: status {result.status}")
        if result.moments.moments != expected.moments:
            failures.append(f"{a}*{b}: moments")
    return _report("cor61", {"order": order}, not failures,
                   f"failures: {failures}" if failures else
                   "free products of generic simplices multiply measures")


def check_prop72(order: int = 12, tol: float = 0.0) -> VerificationReport:
    from .transforms import s_transform
    failures = []
    targets = {
        2: ratio_series([1, 1], [1, 2], order),
        3: None,  # handled below, needs the series square root
        4: ratio_series([1], [1, 1], order),
        5: ratio_series([1], [1, 1], order),
    }
    root = TruncatedSeries.from_coeffs([1, 0, 4], order=order).sqrt()
    den = TruncatedSeries.from_coeffs([1, 4], order=order) + root
    targets[3] = TruncatedSeries.from_coeffs([2, 2], order=order) * den.reciprocal()
    for n, target in targets.items():
        m = moments_of(CatalogMeasure("eta", (Fraction(n),)), order + 1)
        if s_transform(m, order).coeffs != target.coeffs:
            failures.append(n)
    return _report("prop72", {"order": order}, not failures,
                   f"mismatched n: {failures}" if failures else
                   "all three closed multiplicative transforms reproduced")


def _substitution(order: int) -> TruncatedSeries:
    return ratio_series([0, 1], [1, 0, -1], order)  # q/(1-q^2)


def check_prop73(order: int = 12, tol: float = 0.0) -> VerificationReport:
    from .transforms import s_transform
    sub = _substitution(order)
    targets = {
        2: ratio_series([1, 1, -1], [1, 2, -1], order),
        3: ratio_series([1, 1, -1], [1, 2], order),
        4: ratio_series([1, 0, -1], [1, 1, -1], order),
    }
    failures = []
    for n, target in targets.items():
        m = moments_of(CatalogMeasure("eta", (Fraction(n),)), order + 1)
        if s_transform(m, order).compose(sub).coeffs != target.coeffs:
            failures.append(n)
    return _report("prop73", {"order": order}, not failures,
                   f"mismatched n: {failures}" if failures else
                   "q/(1-q^2) substitution removes the square root")


def check_prop82(order: int = 12, tol: float = 0.0) -> VerificationReport:
    from .transforms import s_transform
    sub = _substitution(order)
    failures = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                m = moments_of(CatalogMeasure(
                    "fuss_catalan", (Fraction(a), Fraction(b), Fraction(c))),
                    order + 1)
                lhs = s_transform(m, order).compose(sub)
                d = a + b - c
                rhs = (ratio_series([1, 0, -1], [1], order).pow(c)
                       * ratio_series([1, 1, -1], [1], order).pow(d)
                       * ratio_series([1], [1, 2], order).pow(b)
                       * ratio_series([1], [1, 2, -1], order).pow(a))
                if lhs.coeffs != rhs.coeffs:
                    failures.append((a, b, c))
    return _report("prop82", {"order": order, "abc": "{0,1,2}^3"}, not failures,
                   f"failures: {failures}" if failures else
                   "substituted transform of every small three-parameter "
                   "measure matches the product formula")


def check_prop83_quadratic(order: int = 12, tol: float = 0.0) -> VerificationReport:
    f = _moment_series(moments_of(CatalogMeasure("cube"), order))
    z = TruncatedSeries.identity(order)
    lhs = (z.scale(8) * f - TruncatedSeries.one(order)
           - z.scale(4)).pow(2)
    rhs = TruncatedSeries.one(order) - z.scale(8)
    passed = lhs.coeffs == rhs.coeffs
    return _report("prop83_quadratic", {"order": order}, passed,
                   "(8zf - 1 - 4z)^2 = 1 - 8z holds" if passed else
                   "series mismatch")


def check_prop85_quadratic(order: int = 12, tol: float = 0.0) -> VerificationReport:
    group4 = moments_of(CatalogMeasure("uniform_group", (Fraction(4),)), order + 1)
    eta2 = moments_of(CatalogMeasure("eta", (Fraction(2),)), order + 1)
    mom = free_mul_conv(group4, eta2, order)
    f = _moment_series(mom)
    z = TruncatedSeries.identity(order)
    residue = ((z.scale(8) - TruncatedSeries.one(order)) * f * f
               - (z.scale(10) - TruncatedSeries.one(order)) * f
               + z.scale(3))
    problems = []
    if not residue.is_zero():
        problems.append("quadratic not annihilated")
    if [mom.m(k) for k in range(4)] != [1, 1, 5, 28]:
        problems.append(f"first moments {[str(mom.m(k)) for k in range(4)]}")
    if moments_of(CatalogMeasure("two_rectangles"), order).moments != mom.moments:
        problems.append("catalog entry disagrees with the convolution")
    return _report("prop85_quadratic", {"order": order}, not problems,
                   f"failures: {problems}" if problems else
                   "(8z-1)f^2 - (10z-1)f + 3z = 0 with moments 1,1,5,28")


def check_distributivity_fails(order: int = 10, tol: float = 0.0) -> VerificationReport:
    mu = moments_of(CatalogMeasure("eta", (Fraction(4),)), order + 1)
    d1 = moments_of(CatalogMeasure("dirac", (Fraction(1),)), order + 1)
    d2 = moments_of(CatalogMeasure("dirac", (Fraction(2),)), order + 1)
    result = distributivity_counterexample(mu, d1, d2, order)
    passed = result.differ_at is not None and result.differ_at <= 6
    return _report("distributivity_fails", {"order": order}, passed,
                   f"sides differ first at moment {result.differ_at}"
                   if result.differ_at is not None else
                   "no discrepancy found (unexpected)")


THETA_ASSERTED = ("eta:4", "fuss_catalan:0,0,1", "fuss_catalan:0,0,2",
                  "fuss_catalan:0,0,3", "cube", "two_rectangles")
THETA_REPORTED = ("dihedral:3", "dihedral:5", "dihedral:6", "dihedral:8")


def check_theta_positivity(order: int = 12, tol: float = 0.0) -> VerificationReport:
    from .transforms import theta_series
    failures = []
    for literal in THETA_ASSERTED:
        m = moments_of(parse_measure(literal), order)
        theta = theta_series(m, order)
        if any(c < 0 for c in theta.coeffs):
            failures.append(literal)
    reported = {}
    for literal in THETA_REPORTED:
        m = moments_of(parse_measure(literal), order)
        reported[literal] = [str(c) for c in theta_series(m, order).coeffs]
    details = (f"negative coefficients for: {failures}" if failures else
               "all asserted coefficient sequences are nonnegative; "
               f"reported (not asserted): {reported}")
    return _report("theta_positivity", {"order": order}, not failures, details)


def check_stieltjes_numeric(order: int = 10, tol: float = 1e-5) -> VerificationReport:
    failures = []
    for name in ("g4plus", "cube", "two_rectangles"):
        for k in range(7):
            result = density_moment_check(name, k, tol)
            if not result.passed:
                failures.append(f"{name} k={k}")
        if not herglotz_grid_ok(name):
            failures.append(f"{name} herglotz")
    return _report("stieltjes_numeric", {"tol": tol}, not failures,
                   f"failures: {failures}" if failures else
                   "inversion moments and branch signs verified")


REGISTRY: dict[str, Callable[..., VerificationReport]] = {
    "thm21": check_thm21,
    "thm22_moments": check_thm22_moments,
    "prop41": check_prop41,
    "lemma41": check_lemma41,
    "thm42_nsv": check_thm42_nsv,
    "thm51": check_thm51,
    "cor61": check_cor61,
    "prop72": check_prop72,
    "prop73": check_prop73,
    "prop82": check_prop82,
    "prop83_quadratic": check_prop83_quadratic,
    "prop85_quadratic": check_prop85_quadratic,
    "distributivity_fails": check_distributivity_fails,
    "theta_positivity": check_theta_positivity,
    "bell_moments": check_bell_moments,
}


def run_verification(name: str, order: int | None = None,
                     tol: float | None = None) -> VerificationReport:
    if name not in REGISTRY:
        raise UnknownIdentity(
            f"unknown identity {name!r}; registered: {sorted(REGISTRY)}")
    kwargs = {}
    if order is not None:
        kwargs["order"] = order
    if tol is not None:
        kwargs["tol"] = tol
    return REGISTRY[name](**kwargs)


def run_all(order: int | None = None) -> list[VerificationReport]:
    return [run_verification(name, order=order) for name in REGISTRY]
