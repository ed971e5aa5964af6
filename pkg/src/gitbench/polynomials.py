"""Multivariate polynomials over Q, monomial orders and Groebner bases.

Monomials are plain exponent tuples.  The default ring is Q[x0, ..., x4],
the homogeneous coordinate ring of P^4, but helper rings with extra
parameters (for implicitization and ideal intersection) use the same code.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .linalg import rank
from .unipoly import as_fraction, format_rational

Monomial = tuple
CURVE_VARS = ("x0", "x1", "x2", "x3", "x4")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(i <= j for i, j in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i - j for i, j in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def monomials_of_degree(nvars: int, m: int) -> list[Monomial]:
    """All exponent vectors of total degree ``m``, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _grevlex_key(a: Monomial):
    return (sum(a), tuple(-e for e in reversed(a)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key(a) > key(b)`` iff ``x^a > x^b``.

    ``weighted`` ranks by total degree, then by the weight pairing (larger
    weight is larger), then grevlex.  The degree comparison only matters
    for inhomogeneous input; it keeps the order a well-order when some
    weights are negative.  ``elimination`` ranks by degree in the
    variables listed in ``block`` first, then grevlex.
    """

    kind: str = "grevlex"
    weights: Optional[tuple] = None
    block: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weighted", "elimination"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted":
            if self.weights is None:
                raise ValueError("weighted order needs a weight vector")
            object.__setattr__(self, "weights", tuple(as_fraction(w) for w in self.weights))

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def weighted(cls, weights: Sequence) -> "MonomialOrder":
        return cls("weighted", tuple(weights))

    @classmethod
    def elimination(cls, block: Iterable[int]) -> "MonomialOrder":
        return cls("elimination", block=tuple(sorted(block)))

    def key(self, a: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(a)
        if self.kind == "lex":
            return a
        if self.kind == "weighted":
            return (sum(a), sum(w * e for w, e in zip(self.weights, a)), _grevlex_key(a))
        return (sum(a[i] for i in self.block), _grevlex_key(a))


GREVLEX = MonomialOrder.grevlex()


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("terms", "names", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], names: Sequence[str] = CURVE_VARS):
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not match {n} variables")
            c = as_fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @classmethod
    def variable(cls, i: int, names: Sequence[str] = CURVE_VARS) -> "Polynomial":
        e = [0] * len(names)
        e[i] = 1
        return cls({tuple(e): 1}, names)

    @classmethod
    def constant(cls, c, names: Sequence[str] = CURVE_VARS) -> "Polynomial":
        return cls({(0,) * len(names): c}, names)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, names: Sequence[str] = CURVE_VARS) -> "Polynomial":
        return cls({tuple(exps): c}, names)

    def gens(self):
        return [Polynomial.variable(i, self.names) for i in range(self.nvars)]

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return self * (1 / self.leading_coefficient(order)) if self.terms else self

    def _check(self, other: "Polynomial"):
        if self.names != other.names:
            raise ValueError(f"ring mismatch: {self.names} vs {other.names}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(t, self.names)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial({m: c * other for m, c in self.terms.items()}, self.names)
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(t, self.names)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(1, self.names)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.names)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence):
        """Value at a point; entries may be Fractions or Polynomials."""
        total = 0
        for mono, c in self.terms.items():
            term = c
            for x, e in zip(point, mono):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending variable i to ``images[i]``."""
        target = images[0].names
        out = Polynomial({}, target)
        for mono, c in self.terms.items():
            term = Polynomial.constant(c, target)
            for img, e in zip(images, mono):
                if e:
                    term = term * img**e
            out = out + term
        return out

    def rename(self, names: Sequence[str], index_map: Sequence[int]) -> "Polynomial":
        """Move into a ring with ``len(names)`` variables; old var i becomes new var ``index_map[i]``."""
        n = len(names)
        t = {}
        for mono, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(mono):
                if k:
                    e[index_map[i]] += k
            t[tuple(e)] = c
        return Polynomial(t, names)

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical form: ``c*x0^a*...`` terms, grevlex descending, rationals as ``p/q``."""
        if not self.terms:
            return "0"
        pieces = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            factors = [format_rational(abs(c))]
            for name, e in zip(self.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_polynomial(text: str, names: Sequence[str] = CURVE_VARS) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_text` (also accepts omitted unit coefficients)."""
    text = text.strip()
    if text == "0":
        return Polynomial({}, names)
    index = {n: i for i, n in enumerate(names)}
    terms: dict = {}
    pos = 0
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:]!r}")
        sign, body = match.groups()
        pos = match.end()
        coef = Fraction(1)
        e = [0] * len(names)
        for factor in body.strip().split("*"):
            factor = factor.strip()
            if factor in index or "^" in factor:
                base, _, power = factor.partition("^")
                if base not in index:
                    raise ValueError(f"unknown variable {base!r}")
                e[index[base]] += int(power) if power else 1
            else:
                coef *= Fraction(factor)
        if sign == "-":
            coef = -coef
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coef
    return Polynomial(terms, names)


# -- Groebner machinery -------------------------------------------------------
# Internally polynomials are bare dicts; keys of ``order`` decide leading terms.


def _reduce(f: dict, basis: list, key: Callable) -> dict:
    """Full reduction of ``f`` by ``basis`` entries ``(lm, lc, poly_dict)``."""
    f = dict(f)
    remainder = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, lc, g in basis:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / lc
                for gm, gc in g.items():
                    mm = mono_mul(gm, q)
                    v = f.get(mm, 0) - factor * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            remainder[m] = c
            del f[m]
    return remainder


def _spoly(f: dict, lf: Monomial, g: dict, lg: Monomial) -> dict:
    lcm = mono_lcm(lf, lg)
    qf, qg = mono_div(lcm, lf), mono_div(lcm, lg)
    cf, cg = f[lf], g[lg]
    out: dict = {}
    for m, c in f.items():
        mm = mono_mul(m, qf)
        out[mm] = out.get(mm, 0) + c / cf
    for m, c in g.items():
        mm = mono_mul(m, qg)
        v = out.get(mm, 0) - c / cg
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


def _buchberger(polys: list[dict], key: Callable) -> list[dict]:
    basis: list[tuple] = []  # (lm, lc, poly)
    pairs: list[tuple[int, int]] = []

    def add(p: dict):
        lm = max(p, key=key)
        idx = len(basis)
        basis.append((lm, p[lm], p))
        for j in range(idx):
            pairs.append((j, idx))

    for p in polys:
        r = _reduce(p, basis, key)
        if r:
            add(r)
    while pairs:
        # normal selection strategy: smallest lcm first
        best = min(range(len(pairs)), key=lambda k: key(mono_lcm(basis[pairs[k][0]][0], basis[pairs[k][1]][0])))
        i, j = pairs.pop(best)
        li, lj = basis[i][0], basis[j][0]
        lcm = mono_lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(basis[k][0], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            continue
        r = _reduce(_spoly(basis[i][2], li, basis[j][2], lj), basis, key)
        if r:
            add(r)
    return _interreduce([b[2] for b in basis], key)


def _interreduce(polys: list[dict], key: Callable) -> list[dict]:
    items = [(max(p, key=key), p) for p in polys if p]
    # drop elements whose leading monomial is divisible by another's
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for lm, p in items:
        if not any(mono_divides(ml, lm) for ml, _ in minimal):
            minimal.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = [(ml, q[ml], q) for k, (ml, q) in enumerate(minimal) if k != idx]
        r = _reduce(p, others, key)
        lc = r[lm]
        out.append({m: c / lc for m, c in r.items()})
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


def groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list[Polynomial]:
    """Reduced Groebner basis, monic, sorted by leading monomial descending."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    names = gens[0].names
    for g in gens:
        gens[0]._check(g)
    basis = _buchberger([dict(g.terms) for g in gens], order.key)
    return [Polynomial(p, names) for p in basis]


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of ``f`` with respect to ``basis``."""
    b = [(g.leading_monomial(order), g.leading_coefficient(order), g.terms) for g in basis if g.terms]
    return Polynomial(_reduce(f.terms, b, order.key), f.names)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    return Polynomial(_spoly(f.terms, f.leading_monomial(order), g.terms, g.leading_monomial(order)), f.names)


@dataclass
class Ideal:
    """An ideal given by generators, with Groebner bases cached per order."""

    generators: tuple
    names: tuple = CURVE_VARS
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.generators = tuple(g for g in self.generators if not g.is_zero())
        if self.generators:
            self.names = self.generators[0].names

    @classmethod
    def from_text(cls, texts: Iterable[str], names: Sequence[str] = CURVE_VARS) -> "Ideal":
        return cls(tuple(parse_polynomial(t, names) for t in texts), tuple(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def groebner(self, order: MonomialOrder = GREVLEX) -> list[Polynomial]:
        if order not in self._cache:
            self._cache[order] = groebner_basis(list(self.generators), order)
        return self._cache[order]

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def contains(self, f: Polynomial) -> bool:
        return reduce(f, self.groebner()).is_zero()

    def __contains__(self, f: Polynomial) -> bool:
        return self.contains(f)

    def same_as(self, other: "Ideal") -> bool:
        """Equality of ideals (compares reduced grevlex bases)."""
        return self.names == other.names and self.groebner() == other.groebner()

    def to_text(self) -> list[str]:
        return [g.to_text() for g in self.generators]

    def __repr__(self):
        return f"Ideal({self.to_text()})"


def eliminate(ideal: Ideal, keep: Iterable) -> Ideal:
    """Contraction of ``ideal`` to the subring generated by the kept variables.

    ``keep`` holds variable indices or names.  The result lives in a ring
    on the kept variables only, generated by a reduced grevlex basis.
    """
    names = ideal.names
    keep_idx = sorted(names.index(k) if isinstance(k, str) else k for k in keep)
    drop = [i for i in range(len(names)) if i not in keep_idx]
    new_names = tuple(names[i] for i in keep_idx)
    if not drop:
        return Ideal(tuple(ideal.generators), new_names)
    basis = ideal.groebner(MonomialOrder.elimination(drop))
    index_map = {old: new for new, old in enumerate(keep_idx)}
    kept = []
    for g in basis:
        if all(all(m[i] == 0 for i in drop) for m in g.terms):
            kept.append(g.rename(new_names, [index_map.get(i, 0) for i in range(len(names))]))
    return Ideal(tuple(kept), new_names)


def intersect(ideals: Sequence[Ideal]) -> Ideal:
    """Intersection via an auxiliary variable: (u*I + (1-u)*J) eliminated of u."""
    if not ideals:
        raise ValueError("need at least one ideal")
    current = ideals[0]
    for other in ideals[1:]:
        names = current.names
        if other.names != names:
            raise ValueError("ring mismatch in intersection")
        aux = ("_u",) + names
        shift = [i + 1 for i in range(len(names))]
        u = Polynomial.variable(0, aux)
        gens = [u * g.rename(aux, shift) for g in current.generators]
        gens += [(1 - u) * g.rename(aux, shift) for g in other.generators]
        current = eliminate(Ideal(tuple(gens), aux), range(1, len(aux)))
    return Ideal(tuple(current.groebner()), current.names)


def initial_ideal(ideal: Ideal, weights: Sequence) -> Ideal:
    """Monomial ideal of leading terms under the weighted order (higher weight leads)."""
    if not ideal.is_homogeneous():
        raise ValueError("initial_ideal expects a homogeneous ideal")
    order = MonomialOrder.weighted(weights)
    leads = [g.leading_monomial(order) for g in ideal.groebner(order)]
    return monomial_ideal(leads, ideal.names)


def monomial_ideal(exponents: Iterable[Monomial], names: Sequence[str] = CURVE_VARS) -> Ideal:
    exps = sorted(set(tuple(e) for e in exponents), key=_grevlex_key)
    minimal = [e for e in exps if not any(o != e and mono_divides(o, e) for o in exps)]
    minimal.sort(key=_grevlex_key, reverse=True)
    return Ideal(tuple(Polynomial.monomial(e, 1, names) for e in minimal), tuple(names))


def _monomial_generators(ideal: Ideal) -> list[Monomial]:
    if not ideal.is_monomial():
        raise ValueError("expected a monomial ideal")
    return [next(iter(g.terms)) for g in ideal.generators]


def standard_monomials(ideal: Ideal, m: int) -> list[Monomial]:
    """Degree-``m`` monomials outside a monomial ideal."""
    gens = _monomial_generators(ideal)
    return [a for a in monomials_of_degree(ideal.nvars, m) if not any(mono_divides(g, a) for g in gens)]


def hilbert_function(ideal: Ideal, m: int) -> int:
    if m < 0:
        raise ValueError("degree must be non-negative")
    return len(standard_monomials(ideal, m))


def weighted_basis_sum(ideal: Ideal, weights: Sequence, m: int) -> Fraction:
    """Total weight of the degree-``m`` standard monomials."""
    w = [as_fraction(x) for x in weights]
    return sum((sum(wi * e for wi, e in zip(w, a)) for a in standard_monomials(ideal, m)), Fraction(0))


def graded_piece_dimension(ideal: Ideal, m: int) -> int:
    """dim (S/I)_m by linear algebra on the span of ``monomial * generator``.

    Independent of any Groebner computation; generators must be homogeneous.
    """
    if not ideal.is_homogeneous():
        raise ValueError("graded_piece_dimension expects homogeneous generators")
    n = ideal.nvars
    rows = []
    for g in ideal.generators:
        d = m - g.degree
        if d < 0:
            continue
        for mono in monomials_of_degree(n, d):
            rows.append({mono_mul(a, mono): c for a, c in g.terms.items()})
    return math.comb(m + n - 1, n - 1) - rank(rows)
