"""Hilbert-Mumford indices for bicanonical pointed genus-two curves in P^4.

Conventions (all exact):

* A 1-PS is given by integer GL weights; its SL weights subtract the mean.
* The m-th Hilbert index of a homogeneous ideal I is
  ``m*P(m)/(N+1) * sum(w) - (total weight of the degree-m standard monomials)``,
  the standard monomials taken for the order where higher weight leads.
  Those form the weight-minimal monomial basis of (S/I)_m, and the value
  only depends on the SL weights.
* The marked point contributes ``-min`` of the SL weights over its support,
  scaled by the balancing factor ``2m^2/3`` (Hilbert) or ``4/3`` (Chow).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .linalg import nullspace
from .polynomials import Ideal, hilbert_function, initial_ideal, weighted_basis_sum
from .unipoly import UniPoly, as_fraction, format_rational, interpolate_stable_polynomial

BALANCING = Fraction(2, 3)
CHOW_POINT_WEIGHT = Fraction(4, 3)


class HilbertMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AmbientConfig:
    d: int = 6
    n_plus_1: int = 5
    genus: int = 2
    hilbert_polynomial: UniPoly = field(default_factory=lambda: UniPoly([-1, 6]))

    def __post_init__(self):
        expected = UniPoly([1 - self.genus, self.d])
        if self.hilbert_polynomial != expected:
            raise ValueError(f"Hilbert polynomial {self.hilbert_polynomial} != d*m - g + 1 = {expected}")

    def P(self, m: int) -> Fraction:
        return self.hilbert_polynomial(m)


BICANONICAL = AmbientConfig()


def sl_normalize(gl_weights: Sequence) -> tuple:
    w = [as_fraction(x) for x in gl_weights]
    mean = sum(w, Fraction(0)) / len(w)
    return tuple(x - mean for x in w)


@dataclass(frozen=True)
class OnePS:
    gl_weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "gl_weights", tuple(int(w) for w in self.gl_weights))

    @property
    def sl_weights(self) -> tuple:
        return sl_normalize(self.gl_weights)

    def inverse(self) -> "OnePS":
        return OnePS(tuple(-w for w in self.gl_weights))

    def scaled(self, c: int) -> "OnePS":
        return OnePS(tuple(c * w for w in self.gl_weights))

    def shifted(self, c: int) -> "OnePS":
        return OnePS(tuple(w + c for w in self.gl_weights))

    def tangent_weight(self, i: int, j: int) -> int:
        """Weight of the affine coordinate x_i/x_j."""
        return self.gl_weights[i] - self.gl_weights[j]


RhoLike = Union[OnePS, Sequence[int]]


def _rho(rho: RhoLike) -> OnePS:
    return rho if isinstance(rho, OnePS) else OnePS(tuple(rho))


def hilbert_index(ideal: Ideal, rho: RhoLike, m: int, ambient: AmbientConfig = BICANONICAL) -> Fraction:
    rho = _rho(rho)
    w = rho.gl_weights
    lead = initial_ideal(ideal, w)
    count = hilbert_function(lead, m)
    P = ambient.P(m)
    if count != P:
        raise HilbertMismatch(f"hilbert mismatch: {count} standard monomials in degree {m}, P({m}) = {P}")
    return m * P / ambient.n_plus_1 * sum(w) - weighted_basis_sum(lead, w, m)


def hilbert_index_polynomial(
    ideal: Ideal, rho: RhoLike, m_range: Iterable[int] = range(2, 10), ambient: AmbientConfig = BICANONICAL
) -> UniPoly:
    """Quadratic in m behind the Hilbert indices, checked on every sample in ``m_range``."""
    ms = list(m_range)
    if len(ms) < 5:
        raise ValueError("need at least 5 consecutive values of m")
    return interpolate_stable_polynomial([(m, hilbert_index(ideal, rho, m, ambient)) for m in ms], 2)


def stabilizer_weights(ideal: Ideal) -> list[tuple]:
    """Integral basis (over Q) of the weight vectors whose 1-PS maps the ideal to itself.

    These are the gradings for which every reduced Groebner basis element is
    homogeneous.  For such weights the Hilbert point is fixed, so the index
    of the inverse 1-PS is exactly the negative.
    """
    rows = []
    for g in ideal.groebner():
        exps = sorted(g.terms)
        rows += [[a - b for a, b in zip(e, exps[0])] for e in exps[1:]]
    out = []
    for v in nullspace(rows, ideal.nvars):
        scale = math.lcm(*(Fraction(x).denominator for x in v))
        ints = [int(Fraction(x) * scale) for x in v]
        g = math.gcd(*ints)
        out.append(tuple(x // g for x in ints))
    return out


def point_index(point: Sequence, rho: RhoLike) -> Fraction:
    coords = [as_fraction(c) for c in point]
    if not any(coords):
        raise ValueError("the zero vector is not a point of P^4")
    sl = _rho(rho).sl_weights
    return -min(w for w, c in zip(sl, coords) if c != 0)


def point_index_bound(rho: RhoLike) -> Fraction:
    """Largest point index any point can have: minus the smallest SL weight."""
    return -min(_rho(rho).sl_weights)


def balanced_index(
    ideal: Ideal, point: Sequence, rho: RhoLike, m: int, ambient: AmbientConfig = BICANONICAL
) -> Fraction:
    return hilbert_index(ideal, rho, m, ambient) + BALANCING * m * m * point_index(point, rho)


def balanced_index_polynomial(
    ideal: Ideal, point: Sequence, rho: RhoLike, m_range: Iterable[int] = range(2, 10)
) -> UniPoly:
    ms = list(m_range)
    if len(ms) < 5:
        raise ValueError("need at least 5 consecutive values of m")
    return interpolate_stable_polynomial([(m, balanced_index(ideal, point, rho, m)) for m in ms], 2)


CONVENTIONS = ("leading", "doubled")


def chow_index(
    ideal: Ideal, rho: RhoLike, convention: str = "leading", m_range: Iterable[int] = range(2, 10)
) -> Fraction:
    """Chow index from the m^2 coefficient of the Hilbert index polynomial.

    ``leading`` is the coefficient itself, ``doubled`` twice that (the
    normalization in which the Chow and balanced Hilbert linearizations
    agree to top order).
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    lead = hilbert_index_polynomial(ideal, rho, m_range).coeff(2)
    return lead if convention == "leading" else 2 * lead


def chow_combined_index(
    ideal: Ideal, point: Sequence, rho: RhoLike, convention: str = "doubled", m_range: Iterable[int] = range(2, 10)
) -> Fraction:
    return chow_index(ideal, rho, convention, m_range) + CHOW_POINT_WEIGHT * point_index(point, rho)


@dataclass(frozen=True)
class IndexReport:
    index_polynomial: UniPoly
    chow_leading: Fraction
    chow_doubled: Fraction
    point_index: Optional[Fraction] = None
    balanced_polynomial: Optional[UniPoly] = None

    def as_dict(self) -> dict:
        out = {
            "index_polynomial": self.index_polynomial.to_list(),
            "chow_leading": format_rational(self.chow_leading),
            "chow_doubled": format_rational(self.chow_doubled),
        }
        if self.point_index is not None:
            out["point_index"] = format_rational(self.point_index)
            out["balanced_polynomial"] = self.balanced_polynomial.to_list()
        return out


def index_report(
    ideal: Ideal, rho: RhoLike, point: Optional[Sequence] = None, m_range: Iterable[int] = range(2, 10)
) -> IndexReport:
    poly = hilbert_index_polynomial(ideal, rho, m_range)
    lead = poly.coeff(2)
    if point is None:
        return IndexReport(poly, lead, 2 * lead)
    pi = point_index(point, rho)
    balanced = poly + UniPoly([0, 0, BALANCING * pi])
    return IndexReport(poly, lead, 2 * lead, pi, balanced)


def instability_certificate(
    rho: RhoLike,
    e_lower,
    with_point: bool = True,
    point_bound_override=None,
    ambient: AmbientConfig = BICANONICAL,
) -> Fraction:
    """Upper bound on the Chow index of (C, p) given ``e_rho(C) >= e_lower``.

    Negative means the pointed curve is certified Chow unstable.
    """
    e_lower = as_fraction(e_lower)
    if e_lower < 0:
        raise ValueError("e_lower must be non-negative")
    rho = _rho(rho)
    bound = -e_lower + Fraction(2 * ambient.d, ambient.n_plus_1) * sum(rho.gl_weights)
    if with_point:
        term = point_index_bound(rho) if point_bound_override is None else as_fraction(point_bound_override)
        bound += CHOW_POINT_WEIGHT * term
    return bound


class NotQuasiHomogeneous(ValueError):
    pass


def versal_weights(kind: str, wt_x, wt_y) -> tuple:
    """Weights of the 1-PS on the versal deformation parameters of a planar singularity.

    node ``xy = a``; cusp ``y^2 = x^3 + a x + b``; tacnode ``y^2 = x^4 + a x^2 + b x + c``.
    Each parameter gets the weight that keeps the equation homogeneous.
    """
    x, y = as_fraction(wt_x), as_fraction(wt_y)
    if kind == "node":
        return (x + y,)
    if kind == "cusp":
        if 2 * y != 3 * x:
            raise NotQuasiHomogeneous(f"not quasi-homogeneous: cusp needs 2*wt_y = 3*wt_x, got ({x}, {y})")
        return (2 * y - x, 2 * y)
    if kind == "tacnode":
        if y != 2 * x:
            raise NotQuasiHomogeneous(f"not quasi-homogeneous: tacnode needs wt_y = 2*wt_x, got ({x}, {y})")
        return (2 * y - 2 * x, 2 * y - x, 2 * y)
    raise ValueError(f"no versal deformation model for {kind!r}")


@dataclass(frozen=True)
class SubcurveData:
    deg1: int
    g1: int
    w: int
    delta_p: int
    n1_plus_1: Optional[int] = None

    def __post_init__(self):
        span = self.deg1 + 1 - self.g1
        if self.n1_plus_1 is None:
            object.__setattr__(self, "n1_plus_1", span)
        elif self.n1_plus_1 != span:
            raise ValueError(f"n1+1 must equal deg1 + 1 - g1 = {span}")
        if self.delta_p not in (0, 1):
            raise ValueError("delta_p is 0 or 1")

    @property
    def dualizing_degree(self) -> int:
        """deg of omega_C(p) restricted to the subcurve."""
        return 2 * self.g1 - 2 + self.w + self.delta_p


@dataclass(frozen=True)
class BalanceResult:
    bound_holds: bool
    lhs: Fraction
    rhs: Fraction
    ineq_holds: bool
    ineq_lhs: Fraction
    ineq_rhs: Fraction

    def __iter__(self):
        return iter((self.bound_holds, self.lhs, self.rhs))


def balance_check(data: SubcurveData) -> BalanceResult:
    """Degree balance for a subcurve of a Chow semistable pointed curve.

    Headline: ``|deg C1 - 2 deg omega_C(p)|_C1| <= w/2``.  Also evaluates
    ``2 deg C1 + w <= (12/5 + 4/15)(n1 + 1) - (4/3) delta_p``.
    """
    lhs = Fraction(abs(data.deg1 - 2 * data.dualizing_degree))
    rhs = Fraction(data.w, 2)
    ineq_lhs = Fraction(2 * data.deg1 + data.w)
    ineq_rhs = (Fraction(12, 5) + Fraction(4, 15)) * data.n1_plus_1 - CHOW_POINT_WEIGHT * data.delta_p
    return BalanceResult(lhs <= rhs, lhs, rhs, ineq_lhs <= ineq_rhs, ineq_lhs, ineq_rhs)
