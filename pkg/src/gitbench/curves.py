"""Pointed genus-two curve models: genus bookkeeping, stability clauses, embedded ideals.

A model records its components (geometric genus of the normalization,
multiplicity, optional monomial parametrization into P^4), its
singularities as lists of incident components (one entry per branch), and
the marked point.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .polynomials import CURVE_VARS, Ideal, Polynomial, eliminate, intersect
from .unipoly import as_fraction, format_rational

SINGULARITY_KINDS = ("node", "cusp", "tacnode", "ramphoid_cusp", "triple_point")
DELTA = {"node": 1, "cusp": 1, "tacnode": 2, "ramphoid_cusp": 2}
BRANCHES = {"node": 2, "cusp": 1, "tacnode": 2, "ramphoid_cusp": 1, "triple_point": 3}
# contribution of one branch to the special-point count of its component
SPECIAL_WEIGHT = {"node": 1, "tacnode": 2, "cusp": 2, "ramphoid_cusp": 2, "triple_point": 1}
# local intersection multiplicity of two branches meeting at the point
CONTACT = {"node": 1, "tacnode": 2, "triple_point": 1}
ALLOWED = frozenset({"node", "cusp", "tacnode"})

Exponent = Optional[tuple]  # (a, b) meaning s^a t^b, or None for a zero coordinate


class CurveModelError(ValueError):
    pass


def _point(coords) -> Optional[tuple]:
    return None if coords is None else tuple(as_fraction(c) for c in coords)


@dataclass(frozen=True)
class Component:
    genus: int = 0
    multiplicity: int = 1
    parametrization: Optional[tuple] = None
    name: str = ""

    def __post_init__(self):
        if self.genus < 0 or self.multiplicity < 1:
            raise CurveModelError(f"bad component data: genus={self.genus}, multiplicity={self.multiplicity}")
        if self.parametrization is not None:
            par = tuple(None if e is None else (int(e[0]), int(e[1])) for e in self.parametrization)
            if len(par) != len(CURVE_VARS):
                raise CurveModelError("a parametrization has one entry per coordinate of P^4")
            degrees = {a + b for a, b in filter(None, par)}
            if len(degrees) > 1:
                raise CurveModelError(f"parametrization coordinates have mixed degrees {sorted(degrees)}")
            object.__setattr__(self, "parametrization", par)


@dataclass(frozen=True)
class Singularity:
    kind: str
    branches: tuple
    point: Optional[tuple] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in SINGULARITY_KINDS:
            raise CurveModelError(f"unknown singularity kind {self.kind!r}")
        object.__setattr__(self, "branches", tuple(int(b) for b in self.branches))
        if len(self.branches) != BRANCHES[self.kind]:
            raise CurveModelError(f"a {self.kind} has {BRANCHES[self.kind]} branch(es), got {len(self.branches)}")
        object.__setattr__(self, "point", _point(self.point))


@dataclass(frozen=True)
class MarkedPoint:
    component: int
    at_singularity: bool = False
    coords: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "coords", _point(self.coords))


@dataclass(frozen=True)
class CurveModel:
    components: tuple
    singularities: tuple = ()
    marked_point: Optional[MarkedPoint] = None
    genus: Optional[int] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "singularities", tuple(self.singularities))
        n = len(self.components)
        if n == 0:
            raise CurveModelError("a curve needs at least one component")
        for s in self.singularities:
            if any(not 0 <= b < n for b in s.branches):
                raise CurveModelError(f"{s.kind} refers to a missing component")
        if self.marked_point is not None and not 0 <= self.marked_point.component < n:
            raise CurveModelError("marked point on a missing component")
        if self.genus is not None and not self.classification_only:
            computed = curve_genus(self)
            if computed != self.genus:
                raise CurveModelError(f"declared genus {self.genus} but arithmetic genus is {computed}")

    @property
    def classification_only(self) -> bool:
        """True when the model has features with no genus bookkeeping (triple points, multiple components)."""
        return any(s.kind == "triple_point" for s in self.singularities) or any(
            c.multiplicity > 1 for c in self.components
        )

    def with_singularity(self, sing: Singularity) -> "CurveModel":
        return replace(self, singularities=self.singularities + (sing,), genus=None)

    def without_singularity(self, index: int) -> "CurveModel":
        sings = self.singularities[:index] + self.singularities[index + 1:]
        return replace(self, singularities=sings, genus=None)


@dataclass(frozen=True)
class StabilityVerdict:
    h_stable: bool
    c_stable: bool
    c_semistable: bool
    reasons: tuple = field(default=(), compare=False)

    def as_dict(self) -> dict:
        return {"h_stable": self.h_stable, "c_stable": self.c_stable, "c_semistable": self.c_semistable}


def _components_connected(n: int, groups: Sequence[Sequence[int]], subset=None) -> bool:
    nodes = set(range(n)) if subset is None else set(subset)
    parent = {i: i for i in nodes}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in groups:
        g = [b for b in g if b in nodes]
        for a, b in zip(g, g[1:]):
            parent[find(a)] = find(b)
    return len({find(i) for i in nodes}) <= 1


def curve_genus(model: CurveModel) -> int:
    """Arithmetic genus: sum of genera - #components + 1 + sum of delta-invariants."""
    if model.classification_only:
        raise CurveModelError("triple points and multiple components carry no genus bookkeeping")
    n = len(model.components)
    if not _components_connected(n, [s.branches for s in model.singularities]):
        raise CurveModelError("disconnected")
    return sum(c.genus for c in model.components) - n + 1 + sum(DELTA[s.kind] for s in model.singularities)


def subcurve_genus(model: CurveModel, subset: Sequence[int]) -> Optional[int]:
    """Arithmetic genus of the union of the given components, or None if it is disconnected."""
    subset = set(subset)
    inside = [s for s in model.singularities if set(s.branches) <= subset]
    if not _components_connected(len(model.components), [s.branches for s in inside], subset):
        return None
    return sum(model.components[i].genus for i in subset) - len(subset) + 1 + sum(
        DELTA.get(s.kind, 0) for s in inside
    )


def special_points(model: CurveModel, index: int) -> int:
    """Special points on a component counting multiplicity (a tacnode or cusp branch counts 2)."""
    count = sum(SPECIAL_WEIGHT[s.kind] for s in model.singularities for b in s.branches if b == index)
    if model.marked_point is not None and model.marked_point.component == index:
        count += 1
    return count


def genus_one_subcurves(model: CurveModel) -> list[tuple[tuple, int, int]]:
    """Connected proper subcurves of arithmetic genus one.

    Returns ``(components, points, points_with_multiplicity)`` where the
    counts describe how the subcurve meets the rest of the curve.
    """
    n = len(model.components)
    found = []
    for size in range(1, n):
        for subset in combinations(range(n), size):
            if subcurve_genus(model, subset) != 1:
                continue
            sset = set(subset)
            crossing = [s for s in model.singularities if set(s.branches) & sset and not set(s.branches) <= sset]
            found.append((subset, len(crossing), sum(CONTACT.get(s.kind, 1) for s in crossing)))
    return found


def classify(model: CurveModel) -> StabilityVerdict:
    """Evaluate the h-stable, c-stable and c-semistable clauses for a pointed genus-two curve."""
    if model.classification_only:
        genus = model.genus
    else:
        genus = curve_genus(model)
    if genus != 2:
        raise CurveModelError(f"wrong genus: expected 2, got {genus}")

    reasons = []
    kinds_ok = True
    for s in model.singularities:
        if s.kind not in ALLOWED:
            kinds_ok = False
            reasons.append(f"{s.kind} is not an allowed singularity")
    for i, c in enumerate(model.components):
        if c.multiplicity > 1:
            kinds_ok = False
            reasons.append(f"component {i} has multiplicity {c.multiplicity}")

    rational_ok = True
    for i, c in enumerate(model.components):
        if c.genus == 0:
            k = special_points(model, i)
            if k < 3:
                rational_ok = False
                reasons.append(f"rational component {i} has only {k} special point(s)")

    point_ok = model.marked_point is not None and not model.marked_point.at_singularity
    if not point_ok:
        reasons.append("marked point is not a simple point")

    if kinds_ok and not model.classification_only:
        elliptic = genus_one_subcurves(model)
    else:
        elliptic = []
    bridges_ok = True
    for subset, points, _ in elliptic:
        reasons.append(f"genus-one subcurve {list(subset)} meets the rest in {points} point(s)")
        if points < 2:
            bridges_ok = False
    has_tacnode = any(s.kind == "tacnode" for s in model.singularities)
    if has_tacnode:
        reasons.append("curve has a tacnode")

    base = kinds_ok and rational_ok and point_ok
    c_semistable = base and bridges_ok
    c_stable = c_semistable and not has_tacnode and not elliptic
    h_stable = base and not elliptic
    return StabilityVerdict(h_stable, c_stable, c_semistable, tuple(reasons))


# -- embedded curves ----------------------------------------------------------

_PARAM_RING = ("s", "t") + CURVE_VARS


def implicitize(parametrization: Sequence[Exponent]) -> Ideal:
    """Ideal of the image of ``[s,t] -> [s^a0 t^b0, ..., s^a4 t^b4]`` in P^4."""
    par = Component(parametrization=tuple(parametrization)).parametrization
    if sum(e is not None for e in par) < 2:
        raise CurveModelError("degenerate parametrization: fewer than 2 nonzero coordinates")
    s = Polynomial.variable(0, _PARAM_RING)
    t = Polynomial.variable(1, _PARAM_RING)
    gens = []
    for i, e in enumerate(par):
        x = Polynomial.variable(i + 2, _PARAM_RING)
        gens.append(x if e is None else x - s ** e[0] * t ** e[1])
    return eliminate(Ideal(tuple(gens), _PARAM_RING), CURVE_VARS)


def evaluate_parametrization(parametrization: Sequence[Exponent], s, t) -> tuple:
    return tuple(Fraction(0) if e is None else as_fraction(s) ** e[0] * as_fraction(t) ** e[1] for e in parametrization)


def substitute_parametrization(f: Polynomial, parametrization: Sequence[Exponent]) -> Polynomial:
    """Pull ``f`` back to Q[s, t] along a monomial parametrization."""
    ring = ("s", "t")
    images = [
        Polynomial({}, ring) if e is None else Polynomial.monomial((e[0], e[1]), 1, ring) for e in parametrization
    ]
    return f.substitute(images)


def vanishes_at(ideal: Ideal, point: Sequence) -> bool:
    return all(g.evaluate(point) == 0 for g in ideal.generators)


def curve_ideal(model: CurveModel) -> Ideal:
    """Intersection of the component ideals; checks singular and marked points lie where declared."""
    if any(c.parametrization is None for c in model.components):
        raise CurveModelError("every component needs a parametrization")
    comp_ideals = [implicitize(c.parametrization) for c in model.components]
    for s in model.singularities:
        if s.point is None:
            continue
        for b in set(s.branches):
            if not vanishes_at(comp_ideals[b], s.point):
                raise CurveModelError(f"{s.kind} point {_fmt_point(s.point)} is not on component {b}")
    mp = model.marked_point
    if mp is not None and mp.coords is not None and not vanishes_at(comp_ideals[mp.component], mp.coords):
        raise CurveModelError(f"marked point {_fmt_point(mp.coords)} is not on component {mp.component}")
    if len(comp_ideals) == 1:
        return comp_ideals[0]
    return intersect(comp_ideals)


def _fmt_point(p) -> str:
    return "[" + ", ".join(format_rational(c) for c in p) + "]"


# -- the two embedded models used throughout ----------------------------------


def elliptic_bridge() -> CurveModel:
    """Tacnodal elliptic bridge: R0, R1 meeting in a tacnode, joined to the pointed conic R by two nodes."""
    r0 = Component(0, 1, ((2, 0), (1, 1), (0, 2), None, None), "R0")
    r1 = Component(0, 1, (None, (1, 1), (2, 0), (0, 2), None), "R1")
    r = Component(0, 1, ((2, 0), None, None, (0, 2), (1, 1)), "R")
    sings = (
        Singularity("tacnode", (0, 1), (0, 0, 1, 0, 0), "y"),
        Singularity("node", (0, 2), (1, 0, 0, 0, 0), "q0"),
        Singularity("node", (1, 2), (0, 0, 0, 1, 0), "q1"),
    )
    # generic point [a^2, 0, 0, b^2, ab] of R with a = 1, b = 2
    p = MarkedPoint(2, False, (1, 0, 0, 4, 2))
    return CurveModel((r0, r1, r), sings, p, genus=2, name="elliptic_bridge")


def cuspidal_tacnodal() -> CurveModel:
    """Rational cuspidal quartic E and a conic R meeting in one tacnode; point on R."""
    e = Component(0, 1, ((4, 0), (2, 2), (1, 3), (0, 4), None), "E")
    r = Component(0, 1, (None, None, (1, 1), (2, 0), (0, 2)), "R")
    sings = (
        Singularity("cusp", (0,), (1, 0, 0, 0, 0), "q"),
        Singularity("tacnode", (0, 1), (0, 0, 0, 1, 0), "t"),
    )
    # generic point [0, 0, uv, u^2, v^2] of R with u = 1, v = 2
    p = MarkedPoint(1, False, (0, 0, 2, 1, 4))
    return CurveModel((e, r), sings, p, genus=2, name="cuspidal_tacnodal")


BUILTIN_CURVES = {
    "elliptic_bridge": elliptic_bridge,
    "cuspidal_tacnodal": cuspidal_tacnodal,
}


# -- structured-text form ----------------------------------------------------


def model_to_dict(model: CurveModel) -> dict:
    """TOML-ready dict; rationals become ``p/q`` strings and zero coordinates ``[]``."""

    def point(p):
        return [format_rational(c) for c in p]

    out: dict = {}
    if model.name:
        out["name"] = model.name
    if model.genus is not None:
        out["genus"] = model.genus
    comps = []
    for c in model.components:
        d = {"genus": c.genus, "multiplicity": c.multiplicity}
        if c.name:
            d["name"] = c.name
        if c.parametrization is not None:
            d["param"] = [[] if e is None else [e[0], e[1]] for e in c.parametrization]
        comps.append(d)
    out["components"] = comps
    sings = []
    for s in model.singularities:
        d = {"kind": s.kind, "branches": list(s.branches)}
        if s.name:
            d["name"] = s.name
        if s.point is not None:
            d["point"] = point(s.point)
        sings.append(d)
    if sings:
        out["singularities"] = sings
    if model.marked_point is not None:
        mp = model.marked_point
        d = {"component": mp.component, "at_singularity": mp.at_singularity}
        if mp.coords is not None:
            d["coords"] = point(mp.coords)
        out["marked_point"] = d
    return out


def parse_exponent(entry) -> Exponent:
    if entry is None or entry == [] or entry == "null" or entry == 0 or entry == "0":
        return None
    if len(entry) != 2:
        raise CurveModelError(f"parametrization entry must be [a, b] or null, got {entry!r}")
    return (int(entry[0]), int(entry[1]))


def model_from_dict(data: dict) -> CurveModel:
    comps = []
    for c in data.get("components", []):
        par = c.get("param")
        comps.append(
            Component(
                int(c.get("genus", 0)),
                int(c.get("multiplicity", 1)),
                None if par is None else tuple(parse_exponent(e) for e in par),
                c.get("name", ""),
            )
        )
    sings = tuple(
        Singularity(s["kind"], tuple(s["branches"]), s.get("point"), s.get("name", ""))
        for s in data.get("singularities", [])
    )
    mp = data.get("marked_point")
    marked = None
    if mp is not None:
        marked = MarkedPoint(int(mp["component"]), bool(mp.get("at_singularity", False)), mp.get("coords"))
    genus = data.get("genus")
    return CurveModel(tuple(comps), sings, marked, None if genus is None else int(genus), data.get("name", ""))
