import itertools

import pytest
from hypothesis import assume, given, strategies as st

from gitbench.curves import (
    DELTA,
    Component,
    CurveModel,
    CurveModelError,
    MarkedPoint,
    Singularity,
    classify,
    cuspidal_tacnodal,
    curve_genus,
    curve_ideal,
    elliptic_bridge,
    evaluate_parametrization,
    implicitize,
    model_from_dict,
    model_to_dict,
    substitute_parametrization,
    vanishes_at,
)
from gitbench.polynomials import Ideal, hilbert_function, initial_ideal, parse_polynomial
from gitbench.unipoly import interpolate_stable_polynomial, UniPoly

ZERO = (0, 0, 0, 0, 0)


def rational_with(n_special_sings, marked=True):
    return CurveModel((Component(0),), n_special_sings, MarkedPoint(0) if marked else None)


def hilbert_polynomial(ideal, ms=range(2, 8), bound=1):
    lead = initial_ideal(ideal, ZERO)
    return interpolate_stable_polynomial([(m, hilbert_function(lead, m)) for m in ms], bound)


# -- genus ---------------------------------------------------------------------


def test_genus_examples():
    assert curve_genus(elliptic_bridge()) == 2
    assert curve_genus(cuspidal_tacnodal()) == 2
    assert curve_genus(CurveModel((Component(2),), (), MarkedPoint(0))) == 2


def test_disconnected():
    with pytest.raises(CurveModelError, match="disconnected"):
        curve_genus(CurveModel((Component(1), Component(1)), ()))


def test_declared_genus_is_checked():
    with pytest.raises(CurveModelError, match="declared genus"):
        CurveModel((Component(1),), (), MarkedPoint(0), genus=2)


@st.composite
def connected_models(draw, genus=None):
    """Connected models; with ``genus`` set the component genera are chosen to hit it."""
    n = draw(st.integers(1, 4))
    sings = []
    for i in range(1, n):
        j = draw(st.integers(0, i - 1))
        sings.append(Singularity(draw(st.sampled_from(["node", "tacnode"])), (j, i)))
    for _ in range(draw(st.integers(0, 2))):
        kind = draw(st.sampled_from(["node", "cusp", "tacnode"]))
        if kind == "cusp":
            sings.append(Singularity(kind, (draw(st.integers(0, n - 1)),)))
        else:
            sings.append(Singularity(kind, (draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))))
    if genus is None:
        genera = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    else:
        need = genus + n - 1 - sum(DELTA[x.kind] for x in sings)
        assume(need >= 0)
        genera = [0] * n
        for _ in range(need):
            genera[draw(st.integers(0, n - 1))] += 1
    marked = MarkedPoint(draw(st.integers(0, n - 1)), draw(st.booleans()))
    return CurveModel(tuple(Component(g) for g in genera), tuple(sings), marked)


@given(connected_models(), st.data())
def test_genus_additivity(model, data):
    n = len(model.components)
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    g = curve_genus(model)
    assert curve_genus(model.with_singularity(Singularity("node", (a, b)))) == g + 1
    assert curve_genus(model.with_singularity(Singularity("tacnode", (a, b)))) == g + 2


# -- classification ------------------------------------------------------------


def test_classify_elliptic_bridge():
    v = classify(elliptic_bridge())
    assert (v.h_stable, v.c_stable, v.c_semistable) == (False, False, True)
    assert any("genus-one" in r for r in v.reasons)


def test_classify_nodal_irreducible():
    model = CurveModel((Component(1),), (Singularity("node", (0, 0)),), MarkedPoint(0))
    v = classify(model)
    assert (v.h_stable, v.c_stable, v.c_semistable) == (True, True, True)


def test_classify_ramphoid_cusp():
    model = CurveModel((Component(0),), (Singularity("ramphoid_cusp", (0,)),), MarkedPoint(0))
    v = classify(model)
    assert (v.h_stable, v.c_stable, v.c_semistable) == (False, False, False)


def test_classify_marked_point_at_singularity():
    model = CurveModel((Component(1),), (Singularity("node", (0, 0)),), MarkedPoint(0, at_singularity=True))
    assert not classify(model).c_semistable


def test_classify_elliptic_tail():
    # genus-one curve attached at one node to a pointed genus-one curve
    model = CurveModel((Component(1), Component(1)), (Singularity("node", (0, 1)),), MarkedPoint(1))
    v = classify(model)
    assert (v.h_stable, v.c_stable, v.c_semistable) == (False, False, False)


def test_classify_rational_component_needs_three_points():
    # genus-two curve with a rational bridge carrying only the two node branches
    model = CurveModel(
        (Component(1), Component(0), Component(1)),
        (Singularity("node", (0, 1)), Singularity("node", (1, 2))),
        MarkedPoint(0),
    )
    assert not classify(model).c_semistable


def test_classify_cuspidal_tacnodal():
    # the cuspidal component alone has genus one and meets R only at the tacnode
    v = classify(cuspidal_tacnodal())
    assert (v.h_stable, v.c_stable, v.c_semistable) == (False, False, False)


def test_classify_wrong_genus():
    with pytest.raises(CurveModelError, match="wrong genus"):
        classify(CurveModel((Component(1),), (), MarkedPoint(0)))


def test_classification_only_models():
    triple = CurveModel((Component(0),), (Singularity("triple_point", (0, 0, 0)),), MarkedPoint(0), genus=2)
    assert triple.classification_only
    assert not classify(triple).c_semistable
    double = CurveModel((Component(0, multiplicity=2),), (), MarkedPoint(0), genus=2)
    assert not classify(double).c_semistable
    with pytest.raises(CurveModelError):
        curve_genus(double)


@given(connected_models(genus=2))
def test_verdict_invariants(model):
    v = classify(model)
    assert not v.c_stable or v.c_semistable
    if not any(s.kind == "tacnode" for s in model.singularities):
        assert v.h_stable == v.c_stable


@given(connected_models(genus=2))
def test_splitting_a_tacnode_keeps_c_semistability(model):
    for i, s in enumerate(model.singularities):
        if s.kind != "tacnode":
            continue
        split = model.without_singularity(i)
        split = split.with_singularity(Singularity("node", s.branches)).with_singularity(
            Singularity("node", s.branches)
        )
        assert curve_genus(split) == 2
        if classify(model).c_semistable:
            assert classify(split).c_semistable


def test_removing_a_tacnode_changes_the_genus():
    model = cuspidal_tacnodal().without_singularity(1)
    with pytest.raises(CurveModelError):
        curve_genus(model)


# -- embedded ideals -----------------------------------------------------------


def test_implicitize_conic():
    i = implicitize([(2, 0), None, None, (0, 2), (1, 1)])
    assert i.same_as(Ideal.from_text(["x1", "x2", "x4^2 - x0*x3"]))


def test_implicitize_line():
    assert implicitize([(1, 0), (0, 1), None, None, None]).same_as(Ideal.from_text(["x2", "x3", "x4"]))


def semigroup_count(par, m):
    """Number of distinct monomials s^a t^b among products of m coordinates."""
    gens = [e for e in par if e is not None]
    return len({tuple(map(sum, zip(*c))) for c in itertools.combinations_with_replacement(gens, m)})


def test_implicitize_quartic():
    par = [(4, 0), (2, 2), (1, 3), (0, 4), None]
    i = implicitize(par)
    assert i.contains(parse_polynomial("x1^2 - x0*x3"))
    for g in i.generators:
        assert substitute_parametrization(g, par).is_zero()
    lead = initial_ideal(i, ZERO)
    for m in range(1, 7):
        assert hilbert_function(lead, m) == semigroup_count(par, m)
    # (2,2) is missing from the semigroup spanned by the other three, so the curve is not
    # projectively normal: the Hilbert polynomial is 4m rather than 4m + 1
    assert hilbert_polynomial(i) == UniPoly([0, 4])


def test_implicitize_degenerate():
    with pytest.raises(CurveModelError, match="degenerate"):
        implicitize([(2, 0), None, None, None, None])


def test_mixed_degrees_rejected():
    with pytest.raises(CurveModelError, match="mixed degrees"):
        Component(0, 1, ((2, 0), (1, 0), None, None, None))


@pytest.mark.parametrize("factory", [elliptic_bridge, cuspidal_tacnodal])
def test_curve_ideal_hilbert_polynomial(factory):
    model = factory()
    ideal = curve_ideal(model)
    assert ideal.is_homogeneous()
    assert hilbert_polynomial(ideal, range(2, 10)) == UniPoly([-1, 6])
    for comp in model.components:
        for g in ideal.generators:
            assert substitute_parametrization(g, comp.parametrization).is_zero()
        comp_ideal = implicitize(comp.parametrization)
        assert all(comp_ideal.contains(g) for g in ideal.generators)
    for s in model.singularities:
        for b in s.branches:
            assert vanishes_at(implicitize(model.components[b].parametrization), s.point)
    assert vanishes_at(ideal, model.marked_point.coords)


def test_special_points_of_the_bridge(bridge_ideal):
    assert vanishes_at(bridge_ideal, (0, 0, 1, 0, 0))
    assert vanishes_at(bridge_ideal, (1, 0, 0, 0, 0))


def test_tacnodal_special_points(tacnodal_ideal):
    assert vanishes_at(tacnodal_ideal, (1, 0, 0, 0, 0))
    assert vanishes_at(tacnodal_ideal, (0, 0, 0, 1, 0))


def test_single_component_ideal():
    par = ((2, 0), None, None, (0, 2), (1, 1))
    model = CurveModel((Component(0, 1, par),), ())
    assert curve_ideal(model).same_as(implicitize(par))


def test_wrong_point_is_rejected():
    model = elliptic_bridge()
    bad = CurveModel(model.components, model.singularities, MarkedPoint(2, False, (0, 1, 0, 0, 0)))
    with pytest.raises(CurveModelError, match="not on component"):
        curve_ideal(bad)


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_parametrized_points_lie_on_the_curve(bridge_ideal, s, t):
    for comp in elliptic_bridge().components:
        assert vanishes_at(bridge_ideal, evaluate_parametrization(comp.parametrization, s, t))


@pytest.mark.parametrize("factory", [elliptic_bridge, cuspidal_tacnodal])
def test_serialization_round_trip(factory):
    model = factory()
    assert model_from_dict(model_to_dict(model)) == model
