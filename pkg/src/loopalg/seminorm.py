"""The countable family of non-Archimedean semi-norms on truncated series.

At truncation level n the norm of a series is eps^(z-adic order of its image
under the level-n projection), for a fixed rational 0 < eps < 1.  Values are
kept as exact rationals throughout; a value derived from a fully-killed
finite window is only an upper bound and carries a flag saying so.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .laurent import AtLeastCap, TruncSeries


@dataclass(frozen=True)
class SemiNormParams:
    """One member of the semi-norm family: the base eps and the level."""

    epsilon: Fraction
    level: int

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        if not 0 < eps < 1:
            raise ValueError("epsilon must satisfy 0 < epsilon < 1")
        if self.level < 0:
            raise ValueError("level must be >= 0")
        object.__setattr__(self, "epsilon", eps)


@dataclass(frozen=True)
class SemiNormValue:
    """An exact rational power of eps (or 0), possibly only an upper bound."""

    value: Fraction
    is_upper_bound: bool = False

    def __str__(self):
        bound = " (upper bound)" if self.is_upper_bound else ""
        return f"{self.value}{bound}"


def projection_zero_test(level: int):
    """Zero test for Poly coefficients inside the level-n discrete algebra."""
    return lambda coeff: not coeff.project(level)


def seminorm_order(series: TruncSeries, level: int):
    """z-adic order of the level-n projection: an int or AtLeastCap."""
    return series.z_order(projection_zero_test(level))


def value_from_order(order, epsilon: Fraction) -> SemiNormValue:
    if isinstance(order, AtLeastCap):
        if order.cap is None:
            return SemiNormValue(Fraction(0), False)
        return SemiNormValue(epsilon ** order.cap, True)
    return SemiNormValue(epsilon ** order, False)


def seminorm(series: TruncSeries, params: SemiNormParams) -> SemiNormValue:
    """eps^(order at the given level); exact zero image gives value 0."""
    return value_from_order(seminorm_order(series, params.level), params.epsilon)


def norm_leq(lhs: SemiNormValue, rhs: SemiNormValue) -> bool:
    """Flag-aware <=: fails only on a certain violation.

    A flagged value is an upper bound, so its true value lies in [0, value];
    the inequality is certainly violated only when the least possible lhs
    exceeds the greatest possible rhs.
    """
    lhs_low = Fraction(0) if lhs.is_upper_bound else lhs.value
    return lhs_low <= rhs.value


def _exponent_field(order) -> Optional[int]:
    if isinstance(order, AtLeastCap):
        return order.cap
    return order


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a sampled property suite, one JSON-ready record per case."""

    name: str
    passed: bool
    records: tuple

    def to_jsonable(self):
        return {"suite": self.name, "passed": self.passed, "records": list(self.records)}


def _power_order(projected: TruncSeries, k: int):
    """Order of projected**k, evaluated lazily from the bottom of the window.

    Powering a wide series is expensive while its order is nearly always
    witnessed by the lowest column, so the power is formed from bottom
    slices of doubling width until a nonzero coefficient appears. A slice
    of width w knows the power below k*floor + w exactly, so any order it
    finds is the true one.
    """
    if k == 1:
        return projected.z_order()
    if not projected.coeffs:
        cap = None if projected.cap is None else projected.cap + (k - 1) * projected.floor
        return AtLeastCap(cap)
    width = 1
    while True:
        part = projected.slice_below(projected.floor + width)
        order = (part ** k).z_order()
        if not isinstance(order, AtLeastCap):
            return order
        if part.cap == projected.cap:
            return order
        width *= 2


def check_good(series: TruncSeries, levels, max_power: int) -> CheckReport:
    """Verify power-multiplicativity of the norms of `series`.

    For each sampled level n and power 1 <= k <= max_power the record compares
    the order of series^k against k times the order of series; the power-1
    record also certifies that the norm is nonzero and not merely a bound.
    Projection commutes with products, so each level powers the projected
    series instead of projecting the (much larger) powered one.
    """
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    records = []
    all_pass = True
    for level in sorted(levels):
        projected = series.map_coefficients(
            lambda c: c.project(level)
        ).tighten_floor()
        base = projected.z_order()
        base_ok = not isinstance(base, AtLeastCap)
        for k in range(1, max_power + 1):
            lhs = base if k == 1 else _power_order(projected, k)
            flagged = isinstance(lhs, AtLeastCap) or not base_ok
            ok = base_ok and not isinstance(lhs, AtLeastCap) and lhs == k * base
            records.append(
                {
                    "level": level,
                    "power": k,
                    "lhs_exponent": _exponent_field(lhs),
                    "rhs_exponent": k * base if base_ok else None,
                    "pass": ok,
                    "upper_bound_involved": flagged,
                }
            )
            all_pass = all_pass and ok
    return CheckReport("good", all_pass, tuple(records))


def check_isometry(pairs, levels) -> CheckReport:
    """Compare norms of elements against their images under the variable
    inclusion into the complement-side algebra (expected: equal, i.e. the
    inclusion is isometric with constants 1)."""
    records = []
    all_pass = True
    for sample, (element, image) in enumerate(pairs):
        for level in sorted(levels):
            lhs = seminorm_order(element, level)
            rhs = seminorm_order(image, level)
            ok = lhs == rhs
            records.append(
                {
                    "sample": sample,
                    "level": level,
                    "lhs_exponent": _exponent_field(lhs),
                    "rhs_exponent": _exponent_field(rhs),
                    "pass": ok,
                    "upper_bound_involved": isinstance(lhs, AtLeastCap)
                    or isinstance(rhs, AtLeastCap),
                }
            )
            all_pass = all_pass and ok
    return CheckReport("isometry", all_pass, tuple(records))


def check_ultrametric(pairs, levels, epsilon: Fraction) -> CheckReport:
    """Ultrametric and sub-multiplicative inequalities on sampled pairs."""
    records = []
    all_pass = True
    for sample, (s, t) in enumerate(pairs):
        for level in sorted(levels):
            params = SemiNormParams(epsilon, level)
            ns = seminorm(s, params)
            nt = seminorm(t, params)
            n_sum = seminorm(s + t, params)
            n_prod = seminorm(s * t, params)
            max_rhs = SemiNormValue(
                max(ns.value, nt.value), ns.is_upper_bound or nt.is_upper_bound
            )
            prod_rhs = SemiNormValue(
                ns.value * nt.value, ns.is_upper_bound or nt.is_upper_bound
            )
            ultra = norm_leq(n_sum, max_rhs)
            submult = norm_leq(n_prod, prod_rhs)
            records.append(
                {
                    "sample": sample,
                    "level": level,
                    "ultrametric_pass": ultra,
                    "submultiplicative_pass": submult,
                    "upper_bound_involved": any(
                        v.is_upper_bound for v in (ns, nt, n_sum, n_prod)
                    ),
                }
            )
            all_pass = all_pass and ultra and submult
    return CheckReport("ultrametric", all_pass, tuple(records))
