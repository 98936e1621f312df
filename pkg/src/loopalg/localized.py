"""Algebraic localisation at an evaluated hypersurface element.

Two fraction-like types live here:

  * ``LocalizedCoef``: a polynomial numerator over a power of a fixed nonzero
    polynomial ``base`` (the lowest-order coefficient of the evaluated
    hypersurface). These are the coefficients of inverted series.
  * ``LocalizedElem``: a series numerator over a power of the evaluated
    hypersurface series ``a`` itself. These are the elements of the
    algebraic localisation; the denominator series is passed to each
    operation rather than stored.

Both normalize by cancelling exact common factors of the denominator
generator; equality falls back to cross-multiplication, so normalization is
an optimization of the representative, never a semantic requirement.
"""

from fractions import Fraction

from . import laurent
from .exactpoly import Poly, div_exact
from .errors import GoodElementViolationError
from .laurent import AtLeastCap, TruncSeries
from .seminorm import SemiNormParams, SemiNormValue, seminorm_order, value_from_order


class LocalizedCoef:
    """num / base^pow with exact cancellation of base from the numerator."""

    __slots__ = ("num", "pow", "base")
    __hash__ = None

    def __init__(self, num: Poly, power: int, base: Poly):
        if not base:
            raise ZeroDivisionError("localisation base must be nonzero")
        if power < 0:
            raise ValueError("denominator power must be >= 0")
        while power > 0:
            quotient = div_exact(num, base)
            if quotient is None:
                break
            num, power = quotient, power - 1
        if not num:
            power = 0
        self.num = num
        self.pow = power
        self.base = base

    @classmethod
    def from_poly(cls, poly: Poly, base: Poly) -> "LocalizedCoef":
        return cls(poly, 0, base)

    def _coerce(self, other):
        if isinstance(other, LocalizedCoef):
            if other.base != self.base:
                raise ValueError("mixed localisation bases")
            return other
        if isinstance(other, Poly):
            return LocalizedCoef(other, 0, self.base)
        if isinstance(other, (int, Fraction)):
            return LocalizedCoef(Poly.const(other), 0, self.base)
        return None

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = max(self.pow, other.pow)
        num = (
            self.num * self.base ** (p - self.pow)
            + other.num * self.base ** (p - other.pow)
        )
        return LocalizedCoef(num, p, self.base)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedCoef(-self.num, self.pow, self.base)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LocalizedCoef(self.num * other, self.pow, self.base)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LocalizedCoef(self.num * other.num, self.pow + other.pow, self.base)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        result = LocalizedCoef(Poly.const(1), 0, self.base)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # Cross-multiplication; the coefficient ring is an integral domain.
        return self.num * other.base ** other.pow == other.num * self.base ** self.pow

    def __str__(self):
        if self.pow == 0:
            return str(self.num)
        num = f"({self.num})" if len(self.num.terms) > 1 else str(self.num)
        base = f"({self.base})" if len(self.base.terms) > 1 else str(self.base)
        exponent = f"^{self.pow}" if self.pow > 1 else ""
        return f"{num}/{base}{exponent}"

    def __repr__(self):
        return f"LocalizedCoef({self})"


def _coeff_div(value: Poly, lead: Poly):
    return div_exact(value, lead)


class LocalizedElem:
    """num / a^pow, for `a` the evaluated hypersurface series (not stored)."""

    __slots__ = ("num", "pow")
    __hash__ = None

    def __init__(self, num: TruncSeries, power: int):
        if power < 0:
            raise ValueError("denominator power must be >= 0")
        if num.is_zero_window() and num.is_exact():
            power = 0
        self.num = num
        self.pow = power

    @classmethod
    def reduced(cls, num: TruncSeries, power: int, a: TruncSeries) -> "LocalizedElem":
        """Construct with exact cancellation of `a` where the numerator allows."""
        while power > 0:
            quotient = laurent.divide_exact(num, a, _coeff_div)
            if quotient is None:
                break
            num, power = quotient, power - 1
        return cls(num, power)

    def __str__(self):
        if self.pow == 0:
            return str(self.num)
        return f"({self.num}) / ev(f)^{self.pow}"

    def __repr__(self):
        return f"LocalizedElem({self})"


def loc_add(u: LocalizedElem, v: LocalizedElem, a: TruncSeries) -> LocalizedElem:
    p = max(u.pow, v.pow)
    num = u.num * a ** (p - u.pow) + v.num * a ** (p - v.pow)
    return LocalizedElem.reduced(num, p, a)


def loc_sub(u: LocalizedElem, v: LocalizedElem, a: TruncSeries) -> LocalizedElem:
    return loc_add(u, loc_scale(v, -1), a)


def loc_mul(u: LocalizedElem, v: LocalizedElem, a: TruncSeries) -> LocalizedElem:
    return LocalizedElem.reduced(u.num * v.num, u.pow + v.pow, a)


def loc_scale(u: LocalizedElem, scalar) -> LocalizedElem:
    return LocalizedElem(u.num.scale(scalar), u.pow)


def loc_zshift(u: LocalizedElem, offset: int) -> LocalizedElem:
    """Multiply by z^offset (denominator untouched)."""
    return LocalizedElem(u.num.shift(offset), u.pow)


def loc_derivative(u: LocalizedElem, a: TruncSeries) -> LocalizedElem:
    """d/dz by the quotient rule; the denominator power grows by one unless
    the element was already denominator-free."""
    if u.pow == 0:
        return LocalizedElem(u.num.derivative(), 0)
    num = u.num.derivative() * a - u.num.scale(u.pow) * a.derivative()
    return LocalizedElem.reduced(num, u.pow + 1, a)


def loc_equal(u: LocalizedElem, v: LocalizedElem, a: TruncSeries) -> bool:
    """Cross-multiplied equality on the joint known window."""
    lhs = u.num * a ** v.pow
    rhs = v.num * a ** u.pow
    return lhs.agrees_with(rhs)


def loc_seminorm(u: LocalizedElem, a: TruncSeries, params: SemiNormParams) -> SemiNormValue:
    """|num| * |a|^(-pow), defined only where |a| is nonzero and exact."""
    a_order = seminorm_order(a, params.level)
    if isinstance(a_order, AtLeastCap):
        raise GoodElementViolationError(
            f"denominator semi-norm at level {params.level} is zero or only bounded"
        )
    num_order = seminorm_order(u.num, params.level)
    if isinstance(num_order, AtLeastCap):
        if num_order.cap is None:
            return SemiNormValue(Fraction(0), False)
        return SemiNormValue(
            params.epsilon ** (num_order.cap - u.pow * a_order), True
        )
    return SemiNormValue(params.epsilon ** (num_order - u.pow * a_order), False)


# -- the comparison map into the localized coefficient model -------------------


def lift_series(series: TruncSeries, base: Poly) -> TruncSeries:
    """View a polynomial-coefficient series inside the localized model."""
    return series.map_coefficients(lambda c: LocalizedCoef.from_poly(c, base))


def loc_to_model_with(
    u: LocalizedElem, inverse: TruncSeries, base: Poly
) -> TruncSeries:
    """Substitute the precomputed inverse series for 1/a and multiply out."""
    lifted = lift_series(u.num, base)
    if u.pow == 0:
        return lifted
    return lifted * inverse ** u.pow


def loc_to_model(
    u: LocalizedElem, f: Poly, dim: int, level: int, cap: int
) -> TruncSeries:
    """Map into the localized coefficient model built from f at the given
    truncation level, inverting the evaluated series at precision `cap`."""
    from . import loopspace  # deferred: loopspace builds on this module

    a = loopspace.compose(f, loopspace.ev_series(dim, level, cap))
    inverse = loopspace.invert_series(a, level)
    base = a.coeffs[min(a.coeffs)]
    return loc_to_model_with(u, inverse, base)


def model_zero_test(level: int, base: Poly):
    """Zero test for LocalizedCoef coefficients at a projection level.

    The level must keep the base alive: the projection of num/base^pow makes
    sense only in the localisation of the level's discrete algebra.
    """
    if not base.project(level):
        raise GoodElementViolationError(
            f"localisation base dies at projection level {level}"
        )
    return lambda coeff: not coeff.num.project(level)


def model_seminorm(
    series: TruncSeries, params: SemiNormParams, base: Poly
) -> SemiNormValue:
    """Semi-norm of a localized-model series at the given level."""
    order = series.z_order(model_zero_test(params.level, base))
    return value_from_order(order, params.epsilon)
