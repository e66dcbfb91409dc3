"""Closed-form Cauchy transforms and numeric Stieltjes inversion.

This is the only floating-point module in the package; nothing here feeds
back into the exact core.  Each named transform is evaluated on the branch
fixed by G(xi) ~ 1/xi at large real xi, which keeps Im G <= 0 on the upper
half plane (square roots of radicands (xi-c)^2 - r^2 are taken as
(xi-c) * principal_sqrt(1 - r^2/(xi-c)^2), analytic off the real support).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvaluationOnSupport, InvalidParameter, QuadratureNonConvergence
from .measures import CatalogMeasure, MomentSequence, moments_of

FORM_NAMES = ("g2", "g3", "g4plus", "cube", "two_rectangles")

_EDGE_SLICE = 1e-4           # width of the endpoint slices handled by substitution
_SIMPSON_TOL = 1e-9
_MAX_DEPTH = 48

_SQRT12 = math.sqrt(12.0)


@dataclass(frozen=True)
class ClosedFormG:
    """A named closed-form Cauchy transform with its support data."""

    name: str
    atoms: tuple[tuple[float, float], ...]     # (location, weight)
    ac_support: tuple[float, float] | None     # absolutely continuous part

    def support_points(self) -> list[float]:
        pts = [loc for loc, _ in self.atoms]
        if self.ac_support:
            pts.extend(self.ac_support)
        return pts


FORMS: dict[str, ClosedFormG] = {
    "g2": ClosedFormG("g2", ((0.0, 0.5), (2.0, 0.5)), None),
    "g3": ClosedFormG("g3", ((0.0, 1 / 3), (1.0, 0.5), (3.0, 1 / 6)), None),
    "g4plus": ClosedFormG("g4plus", (), (0.0, 4.0)),
    "cube": ClosedFormG("cube", ((0.0, 0.5),), (0.0, 8.0)),
    "two_rectangles": ClosedFormG("two_rectangles", ((0.0, 0.5),),
                                  (4.0 - _SQRT12, 4.0 + _SQRT12)),
}


def get_form(name: str) -> ClosedFormG:
    try:
        return FORMS[name]
    except KeyError:
        raise InvalidParameter(
            f"unknown transform {name!r}; choose from {FORM_NAMES}") from None


def _branch_sqrt(xi: complex, center: float, radius_sq: float) -> complex:
    """sqrt((xi-c)^2 - r^2) on the branch asymptotic to xi - c at infinity,
    with the cut confined to the real segment [c-r, c+r]."""
    w = xi - center
    return w * cmath.sqrt(1.0 - radius_sq / (w * w))


def _on_support(form: ClosedFormG, x: float, tol: float = 1e-12) -> bool:
    for loc, _ in form.atoms:
        if abs(x - loc) <= tol:
            return True
    if form.ac_support:
        a, b = form.ac_support
        if a - tol <= x <= b + tol:
            return True
    return False


def eval_cauchy(name: str, xi: complex) -> complex:
    """Evaluate the named Cauchy transform at a point off the real support."""
    form = get_form(name)
    xi = complex(xi)
    if xi.imag == 0.0 and _on_support(form, xi.real):
        raise EvaluationOnSupport(
            f"{name} cannot be evaluated on its support at {xi.real}")
    if name == "g2":
        return 0.5 * (1.0 / xi + 1.0 / (xi - 2.0))
    if name == "g3":
        return (2.0 / xi + 3.0 / (xi - 1.0) + 1.0 / (xi - 3.0)) / 6.0
    if name == "g4plus":
        return (1.0 - cmath.sqrt(1.0 - 4.0 / xi)) / 2.0
    if name == "cube":
        root = _branch_sqrt(xi, 4.0, 16.0)
        return (xi + 4.0 - root) / (8.0 * xi)
    # two_rectangles; xi = 8 is a removable singularity of the formula
    if abs(xi - 8.0) < 1e-12:
        xi = xi + 1e-9j if xi.imag >= 0 else xi - 1e-9j
    root = _branch_sqrt(xi, 4.0, 12.0)
    return (10.0 - xi - root) / (2.0 * xi * (8.0 - xi))


def stieltjes_density(name: str, x: float, epsilon: float) -> float:
    """-Im(G(x + i*epsilon)) / pi."""
    if epsilon <= 0:
        raise InvalidParameter("epsilon must be positive")
    return -eval_cauchy(name, complex(x, epsilon)).imag / math.pi


def ac_density(name: str, x: float) -> float:
    """Limiting density of the absolutely continuous part as epsilon -> 0,
    in closed form; zero off the open support."""
    form = get_form(name)
    if form.ac_support is None:
        return 0.0
    a, b = form.ac_support
    if not a < x < b:
        return 0.0
    if name == "g4plus":
        return math.sqrt(4.0 / x - 1.0) / (2.0 * math.pi)
    if name == "cube":
        return math.sqrt(8.0 * x - x * x) / (8.0 * math.pi * x)
    # two_rectangles
    return math.sqrt(12.0 - (x - 4.0) ** 2) / (2.0 * math.pi * x * (8.0 - x))


def atom_weight_estimate(name: str, location: float,
                         epsilon: float = 1e-6) -> float:
    """Simple-pole residue estimate: epsilon * |G(a + i*epsilon)|."""
    return epsilon * abs(eval_cauchy(name, complex(location, epsilon)))


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, fa, b, fb, m, fm, whole, tol, depth):
        if depth > _MAX_DEPTH:
            raise QuadratureNonConvergence(
                f"adaptive quadrature exceeded depth {_MAX_DEPTH}")
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return (recurse(a, fa, m, fm, lm, flm, left, tol / 2.0, depth + 1)
                + recurse(m, fm, b, fb, rm, frm, right, tol / 2.0, depth + 1))

    return recurse(a, fa, b, fb, m, fm, whole, tol, 0)


def _integrate_with_edges(f, a: float, b: float, tol: float = _SIMPSON_TOL) -> float:
    """Integrate f over [a, b], peeling slices of width _EDGE_SLICE off both
    endpoints and integrating them after the substitution x = a + t^2
    (resp. b - t^2), which regularizes inverse-square-root edge behavior."""
    delta = min(_EDGE_SLICE, (b - a) / 4.0)
    span = math.sqrt(delta)

    def left(t: float) -> float:
        t = max(t, 1e-9)
        return f(a + t * t) * 2.0 * t

    def right(t: float) -> float:
        t = max(t, 1e-9)
        return f(b - t * t) * 2.0 * t

    total = _adaptive_simpson(left, 0.0, span, tol)
    total += _adaptive_simpson(f, a + delta, b - delta, tol)
    total += _adaptive_simpson(right, 0.0, span, tol)
    return total


@dataclass(frozen=True)
class MomentCheck:
    name: str
    k: int
    numeric: float
    exact: Fraction
    tol: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {"form": self.name, "k": self.k, "numeric": self.numeric,
                "exact": str(self.exact), "tol": self.tol,
                "pass": self.passed}


def _exact_moments(name: str, order: int) -> MomentSequence:
    catalog = {"g2": CatalogMeasure("eta", (Fraction(2),)),
               "g3": CatalogMeasure("eta", (Fraction(3),)),
               "g4plus": CatalogMeasure("eta", (Fraction(4),)),
               "cube": CatalogMeasure("cube"),
               "two_rectangles": CatalogMeasure("two_rectangles")}
    return moments_of(catalog[name], order)


def density_moment_check(name: str, k: int, tol: float = 1e-5) -> MomentCheck:
    """Quadrature of x^k against the inverted density over the known support,
    plus the atom contributions, compared with the exact moment."""
    if k > 8:
        raise InvalidParameter("moment check limited to k <= 8")
    form = get_form(name)
    numeric = 0.0
    if form.ac_support is not None:
        a, b = form.ac_support
        numeric += _integrate_with_edges(
            lambda x: (x ** k) * ac_density(name, x), a, b)
    for loc, weight in form.atoms:
        numeric += weight * (1.0 if k == 0 else loc ** k)
    exact = _exact_moments(name, k).m(k)
    return MomentCheck(name, k, numeric, exact, tol,
                       abs(numeric - float(exact)) < tol)


def density_samples(name: str, points: int = 1000,
                    epsilon: float = 1e-6) -> list[tuple[float, float]]:
    """Uniform samples of the epsilon-smoothed density over the support
    (atomic forms are sampled on a window around their atoms)."""
    form = get_form(name)
    if form.ac_support is not None:
        lo, hi = form.ac_support
    else:
        locations = [loc for loc, _ in form.atoms]
        lo, hi = min(locations) - 1.0, max(locations) + 1.0
    if points < 2:
        raise InvalidParameter("need at least 2 sample points")
    step = (hi - lo) / (points - 1)
    return [(lo + i * step, stieltjes_density(name, lo + i * step, epsilon))
            for i in range(points)]


def herglotz_grid_ok(name: str, points: int = 1000,
                     epsilons: tuple[float, ...] = (1e-6, 1e-3, 0.1),
                     slack: float = 1e-12) -> bool:
    """Im G(x + i*eps) <= 0 on a grid spanning the support and a margin."""
    form = get_form(name)
    pts = form.support_points()
    lo, hi = min(pts) - 2.0, max(pts) + 2.0
    step = (hi - lo) / (points - 1)
    for i in range(points):
        x = lo + i * step
        for eps in epsilons:
            if eval_cauchy(name, complex(x, eps)).imag > slack:
                return False
    return True
