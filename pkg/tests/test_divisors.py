from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gitbench import divisors as dv
from gitbench.divisors import (
    CONE_C,
    CONE_D,
    DELTA,
    DELTA_1,
    DELTA_11,
    DELTA_2,
    DELTA_IRR,
    K,
    KAPPA,
    LAMBDA,
    M21BAR,
    M4BAR,
    PSI,
    DivisorClass,
    EliminationError,
)
from gitbench.linalg import in_span
from gitbench.unipoly import RatFunc, UniPoly

F = Fraction
EPS = RatFunc.x("eps")
EPS1 = RatFunc.x("eps'")
rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


def m21(**c):
    return DivisorClass(M21BAR, c)


def m4(**c):
    return DivisorClass(M4BAR, c)


# -- classes and relations -------------------------------------------------------


def test_derived_symbols_expand():
    assert m4(K=1) == m4(**{LAMBDA: 13, DELTA_IRR: -2, DELTA_1: -2, DELTA_2: -2})
    assert m4(delta=1) == m4(**{DELTA_IRR: 1, DELTA_1: 1, DELTA_2: 1})
    assert m21(kappa=1) == m21(**{LAMBDA: 7, DELTA_IRR: F(-1, 2)})
    with pytest.raises(KeyError):
        m4(psi=1)


def test_text_form():
    c = m21(**{LAMBDA: 10, DELTA_IRR: -1, PSI: 2})
    assert c.to_text() == "10*λ - δ_irr + 2*ψ"
    assert str(m21()) == "0"


def test_normal_form_examples():
    assert dv.normal_form(m21(**{LAMBDA: 13}), [LAMBDA]) == m21(**{DELTA_IRR: F(13, 10), DELTA_11: F(13, 5)})
    start = m21(**{LAMBDA: 10 - EPS, DELTA_IRR: -1, DELTA_11: -1, PSI: 1})
    assert dv.normal_form(start, [DELTA_11]) == m21(**{LAMBDA: 5 - EPS, DELTA_IRR: F(-1, 2), PSI: 1})
    target = m21(**{LAMBDA: 3, DELTA_IRR: 1, PSI: -2})
    assert dv.normal_form(target, [DELTA_11]) == target


def test_normal_form_errors():
    with pytest.raises(EliminationError, match="cannot eliminate"):
        dv.normal_form(m21(**{PSI: 1}), [PSI])
    with pytest.raises(EliminationError):
        dv.normal_form(m4(**{LAMBDA: 1}), [LAMBDA])


classes = st.builds(
    lambda a, b, c, d: m21(**{LAMBDA: a, DELTA_IRR: b, DELTA_11: c, PSI: d}), rationals, rationals, rationals, rationals
)


@given(classes, st.sampled_from([[LAMBDA], [DELTA_11], [DELTA_IRR], None]))
def test_rewriting_soundness(c, eliminate):
    n = dv.normal_form(c, eliminate)
    for sym in eliminate or M21BAR.dependent:
        assert n[sym] == 0
    rows = [dict(r.coeffs) for r in dv.relation_classes(M21BAR)]
    diff = n - c
    assert diff.is_zero() or in_span(dict(diff.coeffs), rows)
    assert dv.equivalent(n, c)


def test_proportional_examples():
    assert dv.proportional(m4(**{LAMBDA: 9, DELTA: -1}), m4(K=1, delta=F(5, 9))) == F(9, 13)
    a = m21(**{LAMBDA: 1, PSI: 3})
    assert dv.proportional(a, a) == 1
    assert dv.proportional(a, -a) is None
    assert dv.proportional(a, m21(**{PSI: 1})) is None


@given(classes, rationals.filter(lambda q: q > 0), st.sampled_from([[LAMBDA], [DELTA_11], None]))
def test_proportional_symmetry_and_invariance(c, k, eliminate):
    if dv.normal_form(c).is_zero():
        return
    b = c * k
    assert dv.proportional(b, c) == k
    assert dv.proportional(c, b) == 1 / k
    assert dv.proportional(dv.normal_form(b, eliminate), c) == k


# -- pullbacks ---------------------------------------------------------------------


def test_hs_pullback_formula():
    alpha = RatFunc.x("alpha")
    expected = m21(**{LAMBDA: 13, DELTA_IRR: alpha - 2, PSI: 2 - alpha, DELTA_11: 12 * alpha - 11})
    assert dv.hs_pullback(alpha) == expected


def test_hs_pullback_two_thirds():
    c = dv.hs_pullback(F(2, 3))
    assert c == m21(**{LAMBDA: 13, DELTA_IRR: F(-4, 3), PSI: F(4, 3), DELTA_11: -3})
    assert dv.proportional(c, m21(**{DELTA_IRR: -1, DELTA_11: -12, PSI: 40})) == F(1, 30)


def test_hs_pullback_at_two():
    assert dv.hs_pullback(2) == m21(**{LAMBDA: 13, DELTA_11: 13})


def test_hs_pullback_near_seven_tenths():
    c = dv.normal_form(dv.hs_pullback(F(7, 10) - EPS1 / 10), [LAMBDA]) * 10
    assert c[DELTA_IRR] == -EPS1
    assert c[PSI] == 13 + EPS1
    assert c[DELTA_11] == -12 * EPS1
    plain = dv.normal_form(dv.plain_pullback(F(7, 10) - EPS1 / 10), [LAMBDA]) * 10
    assert plain == m21(**{DELTA_IRR: -EPS1, DELTA_11: 13 - EPS1, PSI: 13 + EPS1})


def test_pullback_rules():
    assert dv.pullback_to_pointed(m4(**{DELTA_2: 1})) == m21(**{PSI: -1})
    assert dv.pullback_to_pointed(m4(**{DELTA_1: 1})) == m21(**{DELTA_11: 1})
    with pytest.raises(ValueError):
        dv.pullback_to_pointed(m21(**{PSI: 1}))


def test_proportionality_chain():
    start = m21(**{LAMBDA: 10 - EPS, DELTA_IRR: -1, DELTA_11: -1, PSI: 1})
    doubled = dv.normal_form(start, [DELTA_11]) * 2
    assert doubled == m21(**{LAMBDA: 10 - 2 * EPS, DELTA_IRR: -1, PSI: 2})


# -- polarization ------------------------------------------------------------------


def test_polarization_triple():
    pol = dv.polarization_class()
    m = UniPoly.x("m")
    assert pol.cls[LAMBDA] == F(10, 3) * m * m - F(27, 5) * m + 1
    assert pol.cls[PSI] == F(2, 3) * m * m - F(4, 5) * m
    assert pol.cls[DELTA_IRR] == -(F(1, 3) * m * m - F(2, 5) * m)
    assert pol.cls[DELTA_11] == 0


def test_polarization_normalization():
    pol = dv.polarization_class()
    assert pol.normalized[PSI] == 2
    assert pol.normalized[DELTA_IRR] == -1
    for m in range(2, 30):
        n = pol.cls(m)
        assert n[PSI] / -n[DELTA_IRR] == 2
        assert 10 - n[LAMBDA] / -n[DELTA_IRR] == pol.eps(m)
    assert pol.eps(6) == F(37, 48)
    assert pol.limit() == m21(**{LAMBDA: 10, PSI: 2, DELTA_IRR: -1})


def test_polarization_eps_closed_form():
    eps = dv.polarization_class().eps
    assert eps == RatFunc(UniPoly([-300, 420]), UniPoly([0, -120, 100]))
    assert eps != dv.printed_polarization_eps()


# -- affine combinations and the cone ------------------------------------------------


def test_affine_lincomb_examples():
    a, b = dv.affine_lincomb(F(2, 3), F(7, 10) - EPS, F(5, 9))
    assert a == 10 / (13 - 90 * EPS)
    assert b == (3 - 90 * EPS) / (13 - 90 * EPS)
    e = F(1, 100)
    assert a(e) == 10 / (13 - 90 * e)
    assert dv.affine_lincomb(F(2, 3), F(7, 10), F(5, 9)) == (F(10, 13), F(3, 13))
    assert dv.affine_lincomb(F(7, 10), F(7, 10), F(5, 9)) == (1, 0)
    with pytest.raises(ValueError, match="degenerate"):
        dv.affine_lincomb(1, F(1, 2), F(1, 2))


@settings(max_examples=100)
@given(rationals, rationals, rationals)
def test_affine_lincomb_reconstructs(target, a1, a2):
    if a1 == a2:
        return
    a, b = dv.affine_lincomb(target, a1, a2)
    assert a + b == 1
    lhs = dv.log_canonical(target)
    rhs = dv.log_canonical(a1) * a + dv.log_canonical(a2) * b
    assert lhs == rhs


def test_cone_examples():
    r = dv.cone_coordinates(F(-1, 10), 13 + F(1, 10))
    assert (r.x, r.y, r.inside) == (F(91, 850), F(88, 425), True)
    assert dv.cone_membership(CONE_C) == dv.ConeResult(1, 0, True)
    assert dv.cone_membership(CONE_D) == dv.ConeResult(0, 1, True)
    r = dv.cone_coordinates(1, -40)
    assert (r.x, r.y, r.inside) == (0, -1, False)


def test_cone_symbolic():
    r = dv.cone_coordinates(-EPS1, 13 + EPS1)
    assert r.x == (13 - 39 * EPS1) / 85
    assert r.y == (13 + 46 * EPS1) / 85
    assert r.inside is None


@given(st.integers(1, 332))
def test_cone_positive_below_one_third(k):
    e = F(k, 1000)
    r = dv.cone_coordinates(-e, 13 + e)
    assert r.inside and r.x > 0 and r.y > 0


def test_cone_of_the_pullback():
    c = dv.hs_pullback(F(7, 10) - F(1, 100))
    r = dv.cone_membership(c)
    assert r.inside
    with pytest.raises(ValueError):
        dv.cone_membership(m4(K=1))


# -- the vital curve ---------------------------------------------------------------


def test_vital_coefficients():
    assert dv.vital_coefficients(2)["B2"] == F(26, 9)
    at0 = dv.vital_coefficients(0)
    assert [at0[k] for k in dv.BOUNDARY_LABELS] == [F(-10, 9), F(-47, 6), F(1, 3), F(17, 9)]
    alpha = RatFunc.x("alpha")
    c = dv.vital_coefficients(alpha)
    assert c["B2"] == 2 * alpha - F(10, 9)
    assert c["B3"] == F(23, 2) * alpha - F(47, 6)
    assert c["B4"] == 2 * alpha + F(1, 3)
    assert c["B5"] == alpha / 2 + F(17, 9)


def test_vital_constraints():
    sys_ = dv.vital_constraints()
    assert sys_.matrix[0] == (2, F(23, 2), 2, F(1, 2))
    assert sys_.matrix[1] == (F(-10, 9), F(-47, 6), F(1, 3), F(17, 9))
    assert sys_.rhs == (F(19, 2), F(-361, 24))
    assert sys_.rank() == 2
    assert sys_.residuals((0, 0, 0, 0)) == (F(-19, 2), F(361, 24))


def test_shipped_vital_data():
    data = dv.load_vital_data()
    assert data.consistent and data.g == 4
    assert dv.vital_constraints().residuals(data.numbers) == (0, 0)
    alpha = RatFunc.x("alpha")
    assert dv.vital_intersection(alpha, data) == F(19, 2) * (alpha - F(19, 12))
    assert dv.vital_intersection(F(19, 12), data) == 0
    assert dv.vital_intersection(F(2, 3), data) == F(-209, 24)


def test_vital_zero_and_missing(tmp_path):
    zero = dv.VitalData(4, {k: F(0) for k in dv.BOUNDARY_LABELS})
    assert dv.vital_intersection(F(1, 2), zero) == 0
    with pytest.raises(dv.MissingNumbers, match="missing numbers"):
        dv.vital_intersection(1, dv.VitalData(4, {"B2": F(1)}))
    path = tmp_path / "v.toml"
    path.write_text('g = 4\n[numbers]\nB2 = "1"\nB3 = "0"\nB4 = "0"\nB5 = "0"\n')
    assert dv.load_vital_data(path).numbers["B2"] == 1
