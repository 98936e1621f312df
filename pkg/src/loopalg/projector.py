"""Euler-operator polynomials and coefficient-extraction experiments.

The Euler operator nu = z d/dz acts diagonally on z-powers, so a polynomial
p(nu) acts on a series by multiplying the z^m coefficient by p(m). The
coefficient extractor for slot j at band width n is the normalized product
of (nu - i) over i in [-n, n] except j; it fixes z^j, kills every other
z-power in the band, and converges to "take the z^j term" as n grows. The
experiments below measure that convergence distance exactly, both on the
plain coordinate series and on inverted series in the localisation.
"""

from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import PrecisionExhaustedError
from .exactpoly import Poly
from .laurent import AtLeastCap, TruncSeries
from .localized import (
    LocalizedElem,
    loc_add,
    loc_derivative,
    loc_scale,
    loc_to_model_with,
    loc_zshift,
    model_zero_test,
)
from .loopspace import compose, ev_series, invert_series
from .seminorm import SemiNormValue, seminorm_order, value_from_order


class NuPoly:
    """A polynomial in the Euler operator, stored low power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs) or (Fraction(0),)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m: int) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * m + c
        return value

    def __eq__(self, other):
        if not isinstance(other, NuPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*nu")
            else:
                parts.append(f"{c}*nu^{k}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"NuPoly({self})"


def make_projector(j: int, n: int) -> NuPoly:
    """The coefficient extractor for z^j over the band [-n, n].

    Product of (nu - i) for i in the band except j, scaled so that the
    operator fixes z^j exactly. j may lie outside the band, in which case no
    factor is skipped.
    """
    if n < 0:
        raise ValueError("band width must be >= 0")
    coeffs = [Fraction(1)]
    scale = Fraction(1)
    for i in range(-n, n + 1):
        if i == j:
            continue
        # multiply by (nu - i)
        coeffs = [Fraction(0)] + coeffs
        for k in range(len(coeffs) - 1):
            coeffs[k] -= i * coeffs[k + 1]
        scale *= j - i
    return NuPoly([c / scale for c in coeffs])


def apply_nu_poly(p: NuPoly, series: TruncSeries) -> TruncSeries:
    """Diagonal action: the z^m coefficient is scaled by p(m)."""
    out = {}
    for m, c in series.coeffs.items():
        factor = p(m)
        if factor:
            out[m] = factor * c
    return TruncSeries(out, series.cap, series.floor)


def apply_nu_poly_localized(
    p: NuPoly, u: LocalizedElem, a: TruncSeries
) -> LocalizedElem:
    """The same operator on a localized element, expanded through the
    quotient rule: one application of nu is z * d/dz."""
    acc = loc_scale(u, p.coeffs[0])
    w = u
    for k in range(1, len(p.coeffs)):
        w = loc_zshift(loc_derivative(w, a), 1)
        if p.coeffs[k]:
            acc = loc_add(acc, loc_scale(w, p.coeffs[k]), a)
    return acc


class ConvergenceRow(NamedTuple):
    n: int
    ord_exponent: Optional[int]
    distance: Fraction
    upper_bound: bool


def _row(n, order, epsilon) -> ConvergenceRow:
    value = value_from_order(order, epsilon)
    exponent = order.cap if isinstance(order, AtLeastCap) else order
    return ConvergenceRow(n, exponent, value.value, value.is_upper_bound)


def convergence_experiment(
    dim: int,
    f: Optional[Poly],
    j: int,
    n_values,
    norm_level: int,
    epsilon: Fraction,
    cap: int,
    loop_level: Optional[int] = None,
):
    """Distance table for the coefficient extractors.

    Plain case (f None): the target is the first coordinate series and the
    reference term is x1_j z^j. Complement case: the target is the inverse
    of f(x(z)) and the reference term is its z^j coefficient. Distances are
    exact rationals, computed at the given semi-norm level.
    """
    n_values = sorted(n_values)
    if not n_values:
        return []
    if cap <= max(n_values) + 1:
        raise PrecisionExhaustedError(
            "difference terms would fall beyond the cap",
            required_cap=max(n_values) + 2,
        )
    rows = []
    if f is None:
        if loop_level is None:
            loop_level = max(norm_level, abs(j))
        target = ev_series(dim, loop_level, cap)[0]
        reference = target.coefficient(j)
        if reference is None:
            raise PrecisionExhaustedError(
                f"target coefficient z^{j} is beyond the cap", required_cap=j + 1
            )
        ref_series = (
            TruncSeries.exact({j: reference}) if reference else TruncSeries.zero()
        )
        for n in n_values:
            diff = apply_nu_poly(make_projector(j, n), target) - ref_series
            rows.append(_row(n, seminorm_order(diff, norm_level), epsilon))
        return rows

    degree = f.total_degree()
    if loop_level is None:
        loop_level = min(norm_level, j // degree) if degree else norm_level
    if loop_level < 0 or degree * loop_level > j:
        raise ValueError(
            f"slot {j} lies below the inverse support at loop level {loop_level}"
        )
    a = compose(f, ev_series(dim, loop_level, cap))
    inverse = invert_series(a, loop_level)
    base = a.coeffs[min(a.coeffs)]
    is_zero = model_zero_test(norm_level, base)
    reference = inverse.coefficient(j)
    if reference is None:
        raise PrecisionExhaustedError(
            f"inverse coefficient z^{j} is beyond the cap", required_cap=j + 1
        )
    ref_series = (
        TruncSeries.exact({j: reference}) if reference else TruncSeries.zero()
    )
    for n in n_values:
        diff = apply_nu_poly(make_projector(j, n), inverse) - ref_series
        rows.append(_row(n, diff.z_order(is_zero), epsilon))
    return rows


class ApproxResult(NamedTuple):
    element: LocalizedElem
    distance: SemiNormValue
    model: TruncSeries
    commutes: bool


def approximate_coefficient(
    f: Poly,
    dim: int,
    j: int,
    n: int,
    norm_level: int,
    epsilon: Fraction,
    cap: int,
    loop_level: Optional[int] = None,
) -> ApproxResult:
    """Apply the slot-j extractor to 1/f(x(z)) inside the localisation.

    Returns the localized element itself (denominator an explicit power of
    the evaluated series), its distance at the given level from the single
    reference term of the inverse series, and whether mapping to the model
    commutes with the diagonal action (it must).
    """
    degree = f.total_degree()
    if loop_level is None:
        loop_level = min(norm_level, j // degree) if degree else norm_level
    if loop_level < 0 or degree * loop_level > j:
        raise ValueError(
            f"slot {j} lies below the inverse support at loop level {loop_level}"
        )
    a = compose(f, ev_series(dim, loop_level, cap))
    inverse = invert_series(a, loop_level)
    base = a.coeffs[min(a.coeffs)]
    one = TruncSeries.constant(Poly.const(1))
    u = LocalizedElem.reduced(one, 1, a)
    element = apply_nu_poly_localized(make_projector(j, n), u, a)
    model = loc_to_model_with(element, inverse, base)
    direct = apply_nu_poly(make_projector(j, n), loc_to_model_with(u, inverse, base))
    commutes = model.agrees_with(direct)
    reference = inverse.coefficient(j)
    if reference is None:
        raise PrecisionExhaustedError(
            f"inverse coefficient z^{j} is beyond the cap", required_cap=j + 1
        )
    ref_series = (
        TruncSeries.exact({j: reference}) if reference else TruncSeries.zero()
    )
    diff = model - ref_series
    order = diff.z_order(model_zero_test(norm_level, base))
    return ApproxResult(element, value_from_order(order, epsilon), model, commutes)
