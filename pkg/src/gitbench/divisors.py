"""Tautological divisor classes on Mbar_4 and Mbar_{2,1}, with exact coefficients.

Coefficients may be Fractions, UniPoly (classes depending on the Hilbert
parameter m) or RatFunc (classes depending on a small parameter such as
eps), so the same code verifies identities pointwise or identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .linalg import in_span, rank, solve
from .unipoly import RatFunc, UniPoly, as_fraction, format_rational, is_zero

LAMBDA, DELTA_IRR, DELTA_1, DELTA_2 = "lambda", "delta_irr", "delta_1", "delta_2"
DELTA_11, PSI, KAPPA = "delta_11", "psi", "kappa"
DELTA, K = "delta", "K"

SYMBOL_ORDER = (LAMBDA, DELTA_IRR, DELTA_1, DELTA_2, DELTA_11, PSI, KAPPA)
DISPLAY = {
    LAMBDA: "λ",
    DELTA_IRR: "δ_irr",
    DELTA_1: "δ_1",
    DELTA_2: "δ_2",
    DELTA_11: "δ_{1,{1}}",
    PSI: "ψ",
    KAPPA: "κ̃",
}

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Space:
    name: str
    basis: tuple
    derived: dict = field(default_factory=dict, compare=False)
    relations: tuple = field(default=(), compare=False)
    dependent: tuple = ()  # symbols removed to get a unique representative mod relations

    def __repr__(self):
        return f"Space({self.name})"


M4BAR = Space(
    "M4bar",
    (LAMBDA, DELTA_IRR, DELTA_1, DELTA_2),
    {
        DELTA: {DELTA_IRR: 1, DELTA_1: 1, DELTA_2: 1},
        K: {LAMBDA: 13, DELTA_IRR: -2, DELTA_1: -2, DELTA_2: -2},
    },
)

M21BAR = Space(
    "M21bar",
    (LAMBDA, DELTA_IRR, DELTA_11, PSI),
    {KAPPA: {LAMBDA: 7, DELTA_IRR: -HALF}},
    # delta_{1,{1}} - 5 lambda + 1/2 delta_irr = 0
    ({DELTA_11: 1, LAMBDA: -5, DELTA_IRR: HALF},),
    (DELTA_11,),
)

SPACES = {s.name: s for s in (M4BAR, M21BAR)}


class DivisorClass:
    """Linear combination of basis symbols; derived symbols are expanded on construction."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Space, coeffs: Mapping[str, object] = ()):
        self.space = space
        out: dict = {}
        for sym, c in dict(coeffs).items():
            if isinstance(c, (int, str)):
                c = as_fraction(c)
            if sym in space.basis:
                out[sym] = out.get(sym, 0) + c
            elif sym in space.derived:
                for b, k in space.derived[sym].items():
                    out[b] = out.get(b, 0) + c * k
            else:
                raise KeyError(f"symbol {sym!r} is not defined on {space.name}")
        self.coeffs = {s: out[s] for s in space.basis if s in out and not is_zero(out[s])}

    def __getitem__(self, sym: str):
        return self.coeffs.get(sym, Fraction(0))

    def _same(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass) or other.space != self.space:
            raise ValueError("classes live on different spaces")

    def __add__(self, other):
        self._same(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return DivisorClass(self.space, {k: self[k] + other[k] for k in keys})

    def __neg__(self):
        return DivisorClass(self.space, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return DivisorClass(self.space, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return DivisorClass(self.space, {k: v / scalar for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.space == other.space and (self - other).is_zero()

    def __hash__(self):
        return hash((self.space.name, tuple(sorted(self.coeffs))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def at(self, value) -> "DivisorClass":
        """Specialize polynomial or rational-function coefficients at ``value``."""
        return DivisorClass(
            self.space, {k: v(value) if isinstance(v, (UniPoly, RatFunc)) else v for k, v in self.coeffs.items()}
        )

    def to_text(self) -> str:
        parts = []
        for sym in SYMBOL_ORDER:
            if sym not in self.coeffs:
                continue
            c = self.coeffs[sym]
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = DISPLAY[sym] if mag == 1 else f"{format_rational(mag)}*{DISPLAY[sym]}"
            else:
                sign, body = "+", f"({c})*{DISPLAY[sym]}"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"DivisorClass({self.space.name}: {self.to_text()})"


class MPolyClass(DivisorClass):
    """Divisor class whose coefficients are polynomials in m; calling it evaluates at m."""

    def __call__(self, m) -> DivisorClass:
        return DivisorClass(self.space, {k: v(m) for k, v in self.coeffs.items()})


def cls(space: Space, **coeffs) -> DivisorClass:
    return DivisorClass(space, coeffs)


def relation_classes(space: Space) -> list[DivisorClass]:
    return [DivisorClass(space, r) for r in space.relations]


class EliminationError(ValueError):
    pass


def normal_form(c: DivisorClass, eliminate=None) -> DivisorClass:
    """Rewrite ``c`` modulo relations so the listed symbols drop out.

    By default the space's dependent symbols are eliminated, which gives a
    unique representative of the class.
    """
    eliminate = c.space.dependent if eliminate is None else tuple(eliminate)
    rels = [dict(r.coeffs) for r in relation_classes(c.space)]
    out = c
    for sym in eliminate:
        idx = next((i for i, r in enumerate(rels) if not is_zero(r.get(sym, 0))), None)
        if idx is None:
            if is_zero(out[sym]):
                continue
            raise EliminationError(f"cannot eliminate {sym!r} on {c.space.name}: no relation involves it")
        rel = rels.pop(idx)
        rel_cls = DivisorClass(c.space, rel)
        out = out - rel_cls * (out[sym] / rel[sym])
        for k, r in enumerate(rels):
            if not is_zero(r.get(sym, 0)):
                rels[k] = dict((DivisorClass(c.space, r) - rel_cls * (r[sym] / rel[sym])).coeffs)
    return out


def equivalent(a: DivisorClass, b: DivisorClass) -> bool:
    """Equal modulo the relation span (checked by exact linear algebra)."""
    a._same(b)
    diff = a - b
    if diff.is_zero():
        return True
    rows = [dict(r.coeffs) for r in relation_classes(a.space)]
    return in_span(dict(diff.coeffs), rows)


def proportional(a: DivisorClass, b: DivisorClass):
    """Positive c with a = c*b modulo relations, else None."""
    a._same(b)
    na, nb = normal_form(a), normal_form(b)
    if nb.is_zero() or na.is_zero():
        return None
    sym = next(s for s in nb.space.basis if s in nb.coeffs)
    ratio = na[sym] / nb[sym]
    if not (na - nb * ratio).is_zero():
        return None
    if isinstance(ratio, Fraction) and ratio <= 0:
        return None
    return ratio


# -- pullbacks ----------------------------------------------------------------

_J_STAR = {LAMBDA: {LAMBDA: 1}, DELTA_IRR: {DELTA_IRR: 1}, DELTA_1: {DELTA_11: 1}, DELTA_2: {PSI: -1}}


def pullback_to_pointed(c: DivisorClass) -> DivisorClass:
    """Pull back along the gluing map Mbar_{2,1} -> Mbar_4 (attach a fixed pointed genus-2 curve)."""
    if c.space != M4BAR:
        raise ValueError("pullback starts on M4bar")
    out = DivisorClass(M21BAR)
    for sym, v in c.coeffs.items():
        out = out + DivisorClass(M21BAR, {k: v * w for k, w in _J_STAR[sym].items()})
    return out


def log_canonical(alpha) -> DivisorClass:
    """K + alpha*delta on M4bar, with K = 13 lambda - 2 delta."""
    return DivisorClass(M4BAR, {K: 1, DELTA: alpha})


def discrepancy_class(alpha) -> DivisorClass:
    """Class on Mbar_4 matching K + alpha*delta on the h-semistable model."""
    return log_canonical(alpha) + DivisorClass(M4BAR, {DELTA_1: 11 * alpha - 9})


def hs_pullback(alpha) -> DivisorClass:
    """13 lambda + (alpha - 2)(delta_irr - psi) + (12 alpha - 11) delta_{1,{1}}."""
    return pullback_to_pointed(discrepancy_class(alpha))


def plain_pullback(alpha) -> DivisorClass:
    """Pullback of K + alpha*delta itself: 13 lambda + (alpha-2)(delta_irr + delta_{1,{1}}) + (2-alpha) psi."""
    return pullback_to_pointed(log_canonical(alpha))


# -- polarization of the pointed Hilbert quotient ------------------------------

POLARIZATION_TRIPLE = {
    LAMBDA: UniPoly([1, Fraction(-27, 5), Fraction(10, 3)]),
    PSI: UniPoly([0, Fraction(-4, 5), Fraction(2, 3)]),
    DELTA_IRR: UniPoly([0, Fraction(2, 5), Fraction(-1, 3)]),
}


class IdentityFailed(ValueError):
    pass


@dataclass(frozen=True)
class Polarization:
    cls: MPolyClass
    normalized: DivisorClass  # RatFunc coefficients in m, delta_irr coefficient -1
    eps: RatFunc

    def limit(self) -> DivisorClass:
        """Normalized class as m -> infinity (leading-coefficient ratios)."""
        d = -self.cls[DELTA_IRR].leading
        return DivisorClass(M21BAR, {k: v.leading / d for k, v in self.cls.coeffs.items() if v.degree == 2})


def polarization_class() -> Polarization:
    """Linearization of the balanced pointed Hilbert quotient as a class in m.

    binom(2m,2) kappa + lambda + binom(2m,2) psi + (m(6m-1) + 2m^2/3) Q
    with Q = -(kappa + lambda + psi)/5, checked against the expanded triple.
    """
    m = UniPoly.x("m")
    binom = m * (2 * m - 1)
    q = DivisorClass(M21BAR, {KAPPA: 1, LAMBDA: 1, PSI: 1}) * Fraction(-1, 5)
    expr = (
        DivisorClass(M21BAR, {KAPPA: binom, LAMBDA: 1, PSI: binom})
        + q * (m * (6 * m - 1) + Fraction(2, 3) * m * m)
    )
    c = MPolyClass(M21BAR, expr.coeffs)
    expected = DivisorClass(M21BAR, POLARIZATION_TRIPLE)
    if not (c - expected).is_zero():
        raise IdentityFailed(f"identity failed: expanded class {c} differs from {expected}")
    scale = RatFunc(-c[DELTA_IRR])
    normalized = DivisorClass(M21BAR, {k: RatFunc(v) / scale for k, v in c.coeffs.items()})
    eps = 10 - normalized[LAMBDA]
    return Polarization(c, normalized, eps)


def printed_polarization_eps() -> RatFunc:
    """(21m - 150)/(100m^2 - 120m), the closed form quoted alongside the triple."""
    return RatFunc(UniPoly([-150, 21]), UniPoly([0, -120, 100]))


# -- affine combinations and the nef cone of Y --------------------------------


def affine_lincomb(alpha_target, alpha_1, alpha_2):
    """(a, b) with a + b = 1 and a*alpha_1 + b*alpha_2 = alpha_target."""
    alpha_target, alpha_1, alpha_2 = (Fraction(x) if isinstance(x, int) else x for x in (alpha_target, alpha_1, alpha_2))
    diff = alpha_1 - alpha_2
    if is_zero(diff):
        raise ValueError("degenerate: alpha_1 == alpha_2")
    return (alpha_target - alpha_2) / diff, (alpha_1 - alpha_target) / diff


CONE_C = DivisorClass(M21BAR, {DELTA_IRR: 1, DELTA_11: -18, PSI: 45})
CONE_D = DivisorClass(M21BAR, {DELTA_IRR: -1, DELTA_11: -12, PSI: 40})


@dataclass(frozen=True)
class ConeResult:
    x: object
    y: object
    inside: Optional[bool]


def cone_coordinates(delta_irr, psi) -> ConeResult:
    """Solve x*C + y*D = (delta_irr, psi) in the two surviving coordinates."""
    x, y = solve([[CONE_C[DELTA_IRR], CONE_D[DELTA_IRR]], [CONE_C[PSI], CONE_D[PSI]]], [delta_irr, psi])
    inside = None
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        inside = x >= 0 and y >= 0
    return ConeResult(x, y, inside)


def cone_membership(c: DivisorClass) -> ConeResult:
    """Position of a class of Mbar_{2,1} relative to C and D once delta_{1,{1}} is contracted.

    lambda is eliminated first; ``inside`` is None when the coordinates are symbolic.
    """
    if c.space != M21BAR:
        raise ValueError("cone membership is computed on M21bar")
    n = normal_form(c, (LAMBDA,))
    return cone_coordinates(n[DELTA_IRR], n[PSI])


# -- the vital curve {1,2,2,5} --------------------------------------------------

BOUNDARY_LABELS = ("B2", "B3", "B4", "B5")
ENDPOINT_SLOPE = Fraction(19, 2)
ENDPOINT_ROOT = Fraction(19, 12)


def vital_coefficients(alpha, g: int = 4) -> dict:
    """Coefficients of the pullback of K + alpha*delta + (11 alpha - 9) delta_1 on the B-tilde strata."""
    if isinstance(alpha, int):
        alpha = Fraction(alpha)
    out: dict = {}
    for s in range(1, (g + 1) // 2 + 1):
        out[f"B{2 * s}"] = Fraction(13, 4 * g + 2) * s * (g + 1 - s) + 2 * (alpha - 2)
    for s in range(1, g // 2 + 1):
        out[f"B{2 * s + 1}"] = Fraction(13, 4 * g + 2) * s * (g - s) + (alpha - 2) / 2
    out["B3"] = out["B3"] + (11 * alpha - 9)
    return {k: out[k] for k in sorted(out, key=lambda k: int(k[1:]))}


@dataclass(frozen=True)
class VitalSystem:
    """Two linear equations in the four intersection numbers, rows in BOUNDARY_LABELS order."""

    matrix: tuple
    rhs: tuple

    def residuals(self, x) -> tuple:
        xs = [as_fraction(x[k]) for k in BOUNDARY_LABELS] if isinstance(x, Mapping) else [as_fraction(v) for v in x]
        return tuple(sum(a * v for a, v in zip(row, xs)) - b for row, b in zip(self.matrix, self.rhs))

    def rank(self) -> int:
        return rank([dict(enumerate(row)) for row in self.matrix])


def vital_constraints() -> VitalSystem:
    """Match sum_k coeff_k(alpha) x_k with (19/2)(alpha - 19/12) identically in alpha."""
    at0 = vital_coefficients(Fraction(0))
    at1 = vital_coefficients(Fraction(1))
    slope_row = tuple(at1[k] - at0[k] for k in BOUNDARY_LABELS)
    const_row = tuple(at0[k] for k in BOUNDARY_LABELS)
    return VitalSystem((slope_row, const_row), (ENDPOINT_SLOPE, -ENDPOINT_SLOPE * ENDPOINT_ROOT))


@dataclass(frozen=True)
class VitalData:
    g: int
    numbers: dict
    consistent: bool = False
    note: str = ""


class MissingNumbers(ValueError):
    pass


def load_vital_data(path=None) -> VitalData:
    if path is None:
        text = resources.files("gitbench").joinpath("data/vital_1225.toml").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    raw = tomllib.loads(text)
    numbers = {k: as_fraction(v) for k, v in raw.get("numbers", {}).items()}
    return VitalData(int(raw.get("g", 4)), numbers, bool(raw.get("consistent", False)), raw.get("note", ""))


def vital_intersection(alpha, data: VitalData):
    missing = [k for k in BOUNDARY_LABELS if k not in data.numbers]
    if missing:
        raise MissingNumbers(f"missing numbers: {', '.join(missing)}")
    coeffs = vital_coefficients(alpha, data.g)
    return sum((coeffs[k] * data.numbers[k] for k in BOUNDARY_LABELS), Fraction(0))
