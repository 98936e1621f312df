"""Two-way truncated Laurent series with explicit precision tracking.

A ``TruncSeries`` stores finitely many coefficients of an element of C((z))
(C any commutative ring given by duck typing: +, -, *, ==, bool as the zero
test, and scalar multiplication by int/Fraction):

    coeffs : {exponent m: nonzero coefficient}
    cap    : int   -> every exponent m >= cap is UNKNOWN, or
             None  -> the series is known exactly at every exponent
    floor  : int   -> every exponent below floor is known to be zero

So the known window is [floor, cap) plus "zero below floor"; an exact series
(cap None) is known everywhere.  Window propagation:

    add:  cap = min of the finite caps, floor = min of the floors
    mul:  cap = min(cap(s) + floor(t), cap(t) + floor(s)), floor = sum
    d/dz: both drop by one

The mul rule is what makes negative exponents honest: an unknown coefficient
at cap(s) multiplies the lowest possible term z^floor(t) and pollutes
everything from cap(s), floor(t) upward.  A product whose window closes
raises PrecisionExhaustedError rather than returning an empty answer.
"""

from typing import NamedTuple, Optional

from .errors import PrecisionExhaustedError


class AtLeastCap(NamedTuple):
    """z-adic order bounded below by the precision cap.

    ``cap=None`` means the projected series is exactly zero (order +infinity);
    a finite cap means only that no known coefficient survived.
    """

    cap: Optional[int]


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncSeries:
    """Immutable-by-convention truncated Laurent series."""

    __slots__ = ("coeffs", "cap", "floor")
    __hash__ = None

    def __init__(self, coeffs, cap, floor=None):
        clean = {m: c for m, c in coeffs.items() if c}
        if floor is None:
            floor = min(clean, default=0)
        if clean:
            lowest = min(clean)
            if lowest < floor:
                raise ValueError(f"coefficient at {lowest} lies below floor {floor}")
            if cap is not None and max(clean) >= cap:
                raise ValueError(f"coefficient at {max(clean)} is beyond cap {cap}")
        if cap is not None and cap <= floor and clean:
            raise ValueError("nonempty series with an empty window")
        self.coeffs = clean
        self.cap = cap
        self.floor = floor

    # -- constructors --------------------------------------------------------

    @classmethod
    def exact(cls, coeffs) -> "TruncSeries":
        """A series known at every exponent (unstored coefficients are zero)."""
        return cls(coeffs, cap=None)

    @classmethod
    def zero(cls) -> "TruncSeries":
        return cls.exact({})

    @classmethod
    def constant(cls, value) -> "TruncSeries":
        return cls.exact({0: value})

    @classmethod
    def monomial(cls, value, exponent: int, cap=None) -> "TruncSeries":
        return cls({exponent: value}, cap=cap)

    # -- window bookkeeping ----------------------------------------------------

    def is_exact(self) -> bool:
        return self.cap is None

    def is_zero_window(self) -> bool:
        """No known nonzero coefficient (the window itself may be truncated)."""
        return not self.coeffs

    def items(self):
        """Stored (exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self.coeffs.items())

    def coefficient(self, exponent: int):
        """The coefficient at `exponent`; int 0 when known-zero, None if unknown."""
        if exponent in self.coeffs:
            return self.coeffs[exponent]
        if self.cap is not None and exponent >= self.cap:
            return None
        return 0

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        # An exact zero window covers everything and costs no precision.
        if other.is_exact() and other.is_zero_window():
            return self
        if self.is_exact() and self.is_zero_window():
            return other
        cap = _min_cap(self.cap, other.cap)
        floor = min(self.floor, other.floor)
        out = {}
        for m in set(self.coeffs) | set(other.coeffs):
            if cap is not None and m >= cap:
                continue
            out[m] = self.coeffs.get(m, 0) + other.coeffs.get(m, 0)
        return TruncSeries(out, cap, floor)

    def __neg__(self):
        return TruncSeries({m: -c for m, c in self.coeffs.items()}, self.cap, self.floor)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if (self.is_exact() and self.is_zero_window()) or (
            other.is_exact() and other.is_zero_window()
        ):
            return TruncSeries.zero()
        cap = None
        if self.cap is not None:
            cap = self.cap + other.floor
        if other.cap is not None:
            cap = _min_cap(cap, other.cap + self.floor)
        floor = self.floor + other.floor
        if cap is not None and cap <= floor:
            raise PrecisionExhaustedError(
                f"product window [{floor}, {cap}) is empty"
            )
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 + m2
                if cap is not None and m >= cap:
                    continue
                prev = out.get(m)
                out[m] = c1 * c2 if prev is None else prev + c1 * c2
        return TruncSeries(out, cap, floor)

    def scale(self, scalar):
        """Multiply every coefficient by a ring or rational scalar."""
        if not scalar:
            # 0 * unknown is known: scaling by exact zero is exact.
            return TruncSeries.zero()
        return TruncSeries(
            {m: scalar * c for m, c in self.coeffs.items()}, self.cap, self.floor
        )

    def shift(self, offset: int) -> "TruncSeries":
        """Multiply by z^offset."""
        cap = None if self.cap is None else self.cap + offset
        return TruncSeries(
            {m + offset: c for m, c in self.coeffs.items()}, cap, self.floor + offset
        )

    def derivative(self) -> "TruncSeries":
        """d/dz, termwise z^m -> m z^(m-1); the window slides down by one."""
        cap = None if self.cap is None else self.cap - 1
        out = {}
        for m, c in self.coeffs.items():
            if m != 0:
                out[m - 1] = m * c
        return TruncSeries(out, cap, self.floor - 1)

    def map_coefficients(self, fn) -> "TruncSeries":
        """Apply fn to every stored coefficient (dropping any that map to zero)."""
        return TruncSeries(
            {m: fn(c) for m, c in self.coeffs.items()}, self.cap, self.floor
        )

    def tighten_floor(self) -> "TruncSeries":
        """Raise the floor to the lowest stored exponent.

        Everything in the window below the first stored coefficient is known
        zero, so this loses nothing and improves product precision.
        """
        if not self.coeffs:
            floor = self.cap if self.cap is not None else 0
            return TruncSeries({}, self.cap, floor)
        return TruncSeries(self.coeffs, self.cap, min(self.coeffs))

    def slice_below(self, cap: int) -> "TruncSeries":
        """Restrict knowledge to exponents < cap (a weaker view of the series).

        A slice that already covers every stored coefficient of an exact
        series is the series itself; nothing is forgotten.
        """
        if self.cap is not None and cap >= self.cap:
            return self
        if self.cap is None and (not self.coeffs or cap > max(self.coeffs)):
            return self
        return TruncSeries(
            {m: c for m, c in self.coeffs.items() if m < cap}, cap, self.floor
        )

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative series powers are not supported here")
        result = TruncSeries.constant(1) if exponent == 0 else self
        for _ in range(exponent - 1):
            result = result * self
        return result

    # -- comparisons -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.cap == other.cap
            and self.floor == other.floor
            and self.coeffs == other.coeffs
        )

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Coefficientwise equality below the joint cap (floors are knowledge:
        absent coefficients count as zero)."""
        cap = _min_cap(self.cap, other.cap)
        for m in set(self.coeffs) | set(other.coeffs):
            if cap is not None and m >= cap:
                continue
            a = self.coeffs.get(m)
            b = other.coeffs.get(m)
            if a is None:
                if b:
                    return False
            elif b is None:
                if a:
                    return False
            elif a != b:
                return False
        return True

    # -- order --------------------------------------------------------------------

    def z_order(self, is_zero=None):
        """Least exponent whose coefficient is nonzero under `is_zero`.

        `is_zero` decides zero in whatever image ring the caller cares about
        (default: the coefficient's own zero test). When every known
        coefficient dies the result is AtLeastCap(cap); for an exact series
        that means the image is exactly zero.
        """
        if is_zero is None:
            is_zero = lambda c: not c
        for m in sorted(self.coeffs):
            if not is_zero(self.coeffs[m]):
                return m
        return AtLeastCap(self.cap)

    # -- printing -------------------------------------------------------------------

    def __str__(self):
        parts = []
        for m, c in self.items():
            text = str(c)
            if " " in text or text.startswith("-"):
                text = f"({text})"
            parts.append(f"{text}*z^{m}")
        if self.cap is not None:
            parts.append(f"O(z^{self.cap})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncSeries({self})"


def divide_exact(num: TruncSeries, den: TruncSeries, coeff_div):
    """Exact series quotient q with q*den == num, or None.

    `coeff_div(value, lead)` must return the exact coefficient-ring quotient
    or None; `lead` is den's lowest stored coefficient. The quotient is only
    produced when it can be solved without losing any of num's precision
    (den must be known far enough up); otherwise None is returned and the
    caller keeps the unreduced representation.
    """
    if not den.coeffs:
        return None
    if num.is_exact() and num.is_zero_window():
        return TruncSeries.zero()
    low = min(den.coeffs)
    lead = den.coeffs[low]
    if num.cap is None:
        # Exact numerators are only reduced against single-term exact
        # denominators; anything else may have an infinite quotient.
        if den.cap is not None or len(den.coeffs) != 1:
            return None
        out = {}
        for m, c in num.coeffs.items():
            q = coeff_div(c, lead)
            if q is None:
                return None
            out[m - low] = q
        return TruncSeries.exact(out)
    floor_q = num.floor - low
    if den.cap is not None and den.cap + floor_q < num.cap:
        return None
    cap_q = num.cap - low
    quot = {}
    for target in range(num.floor, num.cap):
        acc = num.coeffs.get(target, 0)
        for k, dc in den.coeffs.items():
            if k == low:
                continue
            qc = quot.get(target - k)
            if qc is not None:
                acc = acc - qc * dc
        if not acc:
            continue
        q = coeff_div(acc, lead)
        if q is None:
            return None
        quot[target - low] = q
    return TruncSeries(quot, cap_q, floor_q)
