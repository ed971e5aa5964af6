"""Dense univariate polynomials and rational functions over the rationals.

The formal variable is the Hilbert parameter ``m`` in most places, but the
same types carry the small parameters (``eps``) used by the divisor code.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class UniPoly:
    """Immutable dense polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "m"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def constant(cls, c, var: str = "m") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "m") -> "UniPoly":
        return cls([0, 1], var)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly([], x.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return UniPoly([c / other for c in self.coeffs], self.var)
        if isinstance(other, (UniPoly, RatFunc)):
            return RatFunc(self, 1) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(UniPoly([other], self.var), self)
        return NotImplemented

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + other.degree] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(q, self.var), UniPoly(rem, self.var)

    def monic(self) -> "UniPoly":
        return self / self.leading if self.coeffs else self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other], self.var)
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_list(self) -> list[str]:
        """Coefficients lowest degree first, as ``p/q`` strings."""
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RatFunc:
    """Quotient of two UniPoly, kept reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        var = "m"
        for p in (num, den):
            if isinstance(p, UniPoly):
                var = p.var
                break
        num = num if isinstance(num, UniPoly) else UniPoly([num], var)
        den = den if isinstance(den, UniPoly) else UniPoly([den], var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = poly_gcd(num, den) if not num.is_zero() else den.monic()
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
        lead = den.leading
        self.num = num / lead
        self.den = den / lead

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def x(cls, var: str = "eps") -> "RatFunc":
        return cls(UniPoly.x(var))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(UniPoly([other], self.var))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __call__(self, x):
        den = self.den(x)
        if den == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / den

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        # display with integer coefficients: clear denominators, then remove the common content
        coeffs = self.num.coeffs + self.den.coeffs
        scale = math.lcm(*(c.denominator for c in coeffs))
        scale = Fraction(scale, math.gcd(*(int(c * scale) for c in coeffs if c)))
        return f"({self.num * scale})/({self.den * scale})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def is_zero(x) -> bool:
    """Zero test that works for Fraction, UniPoly and RatFunc alike."""
    if isinstance(x, RatFunc):
        return x.num.is_zero()
    if isinstance(x, UniPoly):
        return x.is_zero()
    return x == 0


def interpolate(points: Sequence[tuple]) -> UniPoly:
    """Lagrange interpolant through ``(x, y)`` pairs with distinct x."""
    result = UniPoly([])
    xs = [as_fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    for i, (xi, yi) in enumerate(zip(xs, (as_fraction(y) for _, y in points))):
        basis = UniPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result


class NotStabilized(ValueError):
    pass


def interpolate_stable_polynomial(values: Sequence[tuple], degree_bound: int) -> UniPoly:
    """Fit a polynomial of degree <= ``degree_bound`` and insist it explains every sample.

    Needs ``degree_bound + 3`` consecutive integer samples at least: the
    first ``degree_bound + 1`` fix the interpolant, the remainder must agree
    with it or :class:`NotStabilized` is raised.
    """
    pts = sorted((int(m), as_fraction(v)) for m, v in values)
    if len(pts) < degree_bound + 3:
        raise ValueError(f"need at least {degree_bound + 3} samples, got {len(pts)}")
    ms = [m for m, _ in pts]
    if ms != list(range(ms[0], ms[0] + len(ms))):
        raise ValueError("samples must be at consecutive integers")
    poly = interpolate(pts[: degree_bound + 1])
    bad = [(m, v, poly(m)) for m, v in pts[degree_bound + 1:] if poly(m) != v]
    if bad:
        m, v, p = bad[0]
        raise NotStabilized(
            f"not stabilized: interpolant {poly} predicts {format_rational(p)} at m={m}, "
            f"sample is {format_rational(v)}"
        )
    return poly
