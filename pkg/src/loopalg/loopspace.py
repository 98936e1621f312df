"""Coordinate evaluation series, truncated loop relations, and inversion.

The evaluation map sends an ambient coordinate to its universal Laurent
series sum(x{i}_j z^j, j >= -n) at truncation level n. Composing a
hypersurface polynomial with these series and reading off z-coefficients
produces the generators of the truncated loop space of its zero locus; on
the complement side the generators come from y(z) * f(x(z)) - 1. The lowest
coefficient of f(x(z)) is the single denominator needed to invert the whole
series recursively, which is what the localized coefficient model runs on.
"""

from typing import NamedTuple

from .errors import (
    NonInvertibleLeadingTermError,
    PrecisionExhaustedError,
    ZeroPolynomialError,
)
from .exactpoly import Poly, xvar, yvar
from .laurent import TruncSeries
from .localized import LocalizedCoef


def ev_series(dim: int, level: int, cap: int):
    """The vector of coordinate evaluation series at one truncation level.

    Entry i (1-based coordinate) is sum of x{i}_j z^j over -level <= j < cap,
    with floor -level.
    """
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if level < 0:
        raise ValueError("truncation level must be >= 0")
    if cap <= -level:
        raise ValueError(f"cap {cap} leaves an empty window at level {level}")
    return [
        TruncSeries(
            {j: xvar(i, j) for j in range(-level, cap)}, cap, floor=-level
        )
        for i in range(1, dim + 1)
    ]


def _one_like(series_list):
    # Ring unit for the coefficient ring of the supplied series (duck-typed).
    for s in series_list:
        for c in s.coeffs.values():
            return c ** 0
    return 1


def compose(f: Poly, series_list) -> TruncSeries:
    """Substitute the given series for the ambient variables of f.

    Precision follows the series arithmetic rules; a constant term of f is
    exact and costs nothing.
    """
    if not f.is_ambient():
        raise ValueError("compose expects an ambient polynomial (x1..xd, no indices)")
    dim = len(series_list)
    for ref in f.variables():
        if not 1 <= ref.coord <= dim:
            raise ValueError(f"polynomial uses x{ref.coord} but only {dim} series given")
    one = _one_like(series_list)
    # Cache the power ladder of each coordinate series as needed.
    ladders = {}

    def power(coord, exponent):
        ladder = ladders.setdefault(coord, [None, series_list[coord - 1]])
        while len(ladder) <= exponent:
            ladder.append(ladder[-1] * series_list[coord - 1])
        return ladder[exponent]

    total = TruncSeries.zero()
    for mono, coeff in f.terms.items():
        if not mono:
            term = TruncSeries.exact({0: one * coeff})
        else:
            term = None
            for ref, exponent in mono:
                p = power(ref.coord, exponent)
                term = p if term is None else term * p
            term = term.scale(coeff)
        total = total + term
    return total


class Relation(NamedTuple):
    """One ideal generator: the z^exponent coefficient of equation `source`."""

    exponent: int
    generator: Poly
    source: int


def _window_exponents(series: TruncSeries):
    if series.cap is None:
        return sorted(series.coeffs)
    return range(series.floor, series.cap)


def relations(fs, dim: int, level: int, cap: int):
    """Defining relations of the truncated loop space of {f_l = 0, all l}.

    `cap` bounds the emitted window: for each f the evaluation series is
    built at enough internal precision that every coefficient of
    f(x(z)) below z^cap is exact, and one Relation per window exponent is
    emitted (in increasing exponent order).
    """
    out = []
    for source, f in enumerate(fs):
        degree = f.total_degree()
        internal_cap = cap + max(0, degree - 1) * level
        composite = compose(f, ev_series(dim, level, internal_cap))
        for exponent in _window_exponents(composite):
            out.append(
                Relation(exponent, composite.coeffs.get(exponent, Poly.zero()), source)
            )
    return out


def complement_relations(f: Poly, dim: int, level: int, cap: int):
    """Defining relations of the truncated loops into the complement of f=0:
    the z-coefficients of y(z) * f(x(z)) - 1 up to z^cap."""
    degree = f.total_degree()
    boost = level * degree
    if cap + boost <= -level:
        raise PrecisionExhaustedError(
            "complement window is empty", required_cap=-level - boost + 1
        )
    fe = compose(f, ev_series(dim, level, cap + boost))
    y_series = TruncSeries(
        {j: yvar(j) for j in range(-level, cap + boost)}, cap + boost, floor=-level
    )
    product = y_series * fe - TruncSeries.constant(Poly.const(1))
    return [
        Relation(exponent, product.coeffs.get(exponent, Poly.zero()), 0)
        for exponent in _window_exponents(product)
    ]


def f_min(f: Poly, dim: int, level: int):
    """Lowest z-exponent of f(x(z)) and its (always nonzero) coefficient.

    Computed from a single-column evaluation window: only the j = -level
    terms of the coordinate series can reach the lowest exponent.
    """
    if not f:
        raise ZeroPolynomialError("f_min of the zero polynomial is undefined")
    composite = compose(f, ev_series(dim, level, -level + 1))
    if not composite.coeffs:
        raise ZeroPolynomialError("evaluated series has no nonzero lowest term")
    m_low = min(composite.coeffs)
    return m_low, composite.coeffs[m_low]


def invert_series(s: TruncSeries, level: int) -> TruncSeries:
    """Inverse of s in the localized coefficient model.

    The lowest stored coefficient becomes the denominator generator; t is
    solved coefficient by coefficient from s*t = 1. With W known
    coefficients of s starting at z^m, t gets W known coefficients starting
    at z^-m, so the product is exactly 1 on [0, W).
    """
    if s.is_zero_window():
        raise NonInvertibleLeadingTermError("cannot invert a series with no known terms")
    m_low = min(s.coeffs)
    lead = s.coeffs[m_low]
    if not lead.project(level):
        raise NonInvertibleLeadingTermError(
            f"leading coefficient dies at projection level {level}"
        )
    one_over_lead = LocalizedCoef(Poly.const(1), 1, lead)
    if s.cap is None:
        if len(s.coeffs) == 1:
            return TruncSeries.exact({-m_low: one_over_lead})
        raise PrecisionExhaustedError(
            "inverse of an exact multi-term series has unbounded support; "
            "truncate the input to a finite cap first"
        )
    width = s.cap - m_low
    coeffs = {-m_low: one_over_lead}
    zero = LocalizedCoef.from_poly(Poly.zero(), lead)
    for r in range(1, width):
        acc = zero
        for a, sa in s.coeffs.items():
            if a == m_low:
                continue
            tb = coeffs.get(r - a)
            if tb is not None:
                acc = acc + sa * tb
        if acc:
            coeffs[r - m_low] = -(acc * one_over_lead)
    return TruncSeries(coeffs, s.cap - 2 * m_low, floor=-m_low)


def substitute_y(generator: Poly, inverse: TruncSeries, base: Poly) -> LocalizedCoef:
    """Evaluate a complement-side generator with y_j := coefficient j of
    `inverse`, leaving the x-variables untouched.

    Unknown coefficients (beyond the inverse's cap) raise rather than
    silently substituting zero.
    """
    total = LocalizedCoef.from_poly(Poly.zero(), base)
    for mono, coeff in generator.terms.items():
        x_part = tuple(
            (ref, exp) for ref, exp in mono if ref.family == "x"
        )
        factor = LocalizedCoef.from_poly(Poly({x_part: coeff}), base)
        dead = False
        for ref, exp in mono:
            if ref.family != "y":
                continue
            value = inverse.coefficient(ref.index)
            if value is None:
                raise PrecisionExhaustedError(
                    f"inverse coefficient at z^{ref.index} is beyond the cap",
                    required_cap=ref.index + 1,
                )
            if not value:
                dead = True
                break
            factor = factor * value ** exp
        if not dead:
            total = total + factor
    return total
