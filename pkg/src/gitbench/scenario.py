"""Scenario files: declared curves and 1-PS, a list of tasks, and the report they produce.

A scenario is TOML::

    [curves.cstar]
    builtin = "elliptic_bridge"

    [one_ps]
    rho = [3, -2, -7, 3, 3]

    [[tasks]]
    op = "hilbert_index"
    args = { curve = "cstar", rho = "rho", m = 3 }
    expected = 2
    provenance = "paper"

Rationals are written as integers or ``"p/q"`` strings, polynomials in m as
coefficient arrays (lowest degree first) and parametrizations as exponent
tables ``[[a, b], ..., []]`` where ``[]`` is a zero coordinate.
"""
from __future__ import annotations

import inspect
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import anchors, curves, divisors as dv, polynomials as pa, stability as gs
from .unipoly import interpolate_stable_polynomial
from .wire import matches, parse_scalar, render, to_wire

PROVENANCES = ("paper", "derived", "trivial")
FAILING = ("mismatch", "error")
_MISSING = object()


class ScenarioError(ValueError):
    """Malformed scenario: parse error, unknown operation or unresolved name."""


# -- operation registry ----------------------------------------------------------


@dataclass(frozen=True)
class Operation:
    name: str
    module: str
    fn: Callable
    curve_args: tuple = ()
    rho_args: tuple = ()

    @property
    def params(self) -> list[str]:
        return list(inspect.signature(self.fn).parameters)[1:]


OPERATIONS: dict[str, Operation] = {}


def operation(name: str, module: str, curve_args=(), rho_args=()):
    def register(fn):
        OPERATIONS[name] = Operation(name, module, fn, tuple(curve_args), tuple(rho_args))
        return fn

    return register


def _weights(v) -> tuple:
    return tuple(parse_scalar(x) for x in v)


def _ideal_arg(ctx, value, names=None) -> pa.Ideal:
    """A declared curve name (its embedded ideal) or a list of generator strings."""
    if isinstance(value, str):
        return ctx.ideal(value)
    return pa.Ideal.from_text(value, tuple(names) if names else pa.CURVE_VARS)


def _order(value) -> pa.MonomialOrder:
    if value in (None, "grevlex"):
        return pa.GREVLEX
    if value == "lex":
        return pa.MonomialOrder.lex()
    if isinstance(value, list):
        return pa.MonomialOrder.weighted(_weights(value))
    raise ValueError(f"unknown monomial order {value!r}")


def _point(ctx, point, curve):
    if point is None:
        if curve is None:
            raise ValueError("need a point or a curve with a marked point")
        mp = ctx.curve(curve).marked_point
        if mp is None or mp.coords is None:
            raise ValueError(f"curve {curve!r} has no marked-point coordinates")
        return mp.coords
    return _weights(point)


@operation("groebner_basis", "polynomial_algebra")
def _op_groebner(ctx, generators, order=None, names=None):
    return pa.groebner_basis(list(_ideal_arg(ctx, generators, names).generators), _order(order))


@operation("eliminate", "polynomial_algebra")
def _op_eliminate(ctx, generators, keep, names=None):
    return pa.eliminate(_ideal_arg(ctx, generators, names), keep)


@operation("initial_ideal", "polynomial_algebra", curve_args=("ideal",))
def _op_initial(ctx, ideal, weights):
    return pa.initial_ideal(_ideal_arg(ctx, ideal), _weights(weights))


@operation("hilbert_function", "polynomial_algebra", curve_args=("ideal",))
def _op_hilbert_function(ctx, ideal, m, weights=None):
    """Standard monomials of the initial ideal (monomial ideals are their own initial ideal)."""
    i = _ideal_arg(ctx, ideal)
    return pa.hilbert_function(pa.initial_ideal(i, _weights(weights or [0] * i.nvars)), int(m))


@operation("weighted_basis_sum", "polynomial_algebra", curve_args=("ideal",))
def _op_weighted_sum(ctx, ideal, weights, m):
    w = _weights(weights)
    return pa.weighted_basis_sum(pa.initial_ideal(_ideal_arg(ctx, ideal), w), w, int(m))


@operation("interpolate_stable_polynomial", "polynomial_algebra")
def _op_interpolate(ctx, values, degree_bound):
    return interpolate_stable_polynomial([(int(m), parse_scalar(v)) for m, v in values], int(degree_bound))


@operation("curve_genus", "curve_models", curve_args=("curve",))
def _op_genus(ctx, curve):
    return curves.curve_genus(ctx.curve(curve))


@operation("classify", "curve_models", curve_args=("curve",))
def _op_classify(ctx, curve):
    return curves.classify(ctx.curve(curve))


@operation("implicitize", "curve_models")
def _op_implicitize(ctx, param):
    return curves.implicitize([curves.parse_exponent(e) for e in param])


@operation("curve_ideal", "curve_models", curve_args=("curve",))
def _op_curve_ideal(ctx, curve):
    return ctx.ideal(curve)


@operation("lies_on", "curve_models", curve_args=("curve",))
def _op_lies_on(ctx, curve, point):
    return curves.vanishes_at(ctx.ideal(curve), _weights(point))


@operation("sl_normalize", "git_stability")
def _op_sl(ctx, weights):
    return gs.sl_normalize(_weights(weights))


@operation("hilbert_index", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_hilbert_index(ctx, curve, rho, m):
    return gs.hilbert_index(ctx.ideal(curve), ctx.rho(rho), int(m))


@operation("hilbert_index_polynomial", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_index_poly(ctx, curve, rho, m_from=2, m_to=9):
    return gs.hilbert_index_polynomial(ctx.ideal(curve), ctx.rho(rho), range(int(m_from), int(m_to) + 1))


@operation("point_index", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_point_index(ctx, rho, point=None, curve=None):
    return gs.point_index(_point(ctx, point, curve), ctx.rho(rho))


@operation("point_index_bound", "git_stability", rho_args=("rho",))
def _op_point_bound(ctx, rho):
    return gs.point_index_bound(ctx.rho(rho))


@operation("balanced_index", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_balanced(ctx, curve, rho, m, point=None):
    return gs.balanced_index(ctx.ideal(curve), _point(ctx, point, curve), ctx.rho(rho), int(m))


@operation("balanced_index_polynomial", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_balanced_poly(ctx, curve, rho, point=None, m_from=2, m_to=9):
    pt = _point(ctx, point, curve)
    return gs.balanced_index_polynomial(ctx.ideal(curve), pt, ctx.rho(rho), range(int(m_from), int(m_to) + 1))


@operation("chow_index", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_chow(ctx, curve, rho, convention="leading"):
    return gs.chow_index(ctx.ideal(curve), ctx.rho(rho), convention)


@operation("chow_combined_index", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_chow_combined(ctx, curve, rho, convention="doubled", point=None):
    return gs.chow_combined_index(ctx.ideal(curve), _point(ctx, point, curve), ctx.rho(rho), convention)


@operation("index_report", "git_stability", curve_args=("curve",), rho_args=("rho",))
def _op_report(ctx, curve, rho, with_point=True):
    pt = _point(ctx, None, curve) if with_point else None
    return gs.index_report(ctx.ideal(curve), ctx.rho(rho), pt)


@operation("instability_certificate", "git_stability", rho_args=("rho",))
def _op_certificate(ctx, rho, e_lower, with_point=True, point_bound_override=None):
    override = None if point_bound_override is None else parse_scalar(point_bound_override)
    return gs.instability_certificate(ctx.rho(rho), parse_scalar(e_lower), bool(with_point), override)


@operation("versal_weights", "git_stability")
def _op_versal(ctx, kind, wt_x, wt_y):
    return gs.versal_weights(kind, parse_scalar(wt_x), parse_scalar(wt_y))


@operation("balance_check", "git_stability")
def _op_balance(ctx, deg1, g1, w, delta_p):
    return gs.balance_check(gs.SubcurveData(int(deg1), int(g1), int(w), int(delta_p)))


def _class(value) -> dv.DivisorClass:
    if not isinstance(value, dict) or "space" not in value:
        raise ValueError("a divisor class is a table with a 'space' key and symbol coefficients")
    space = dv.SPACES[value["space"]]
    return dv.DivisorClass(space, {k: parse_scalar(v) for k, v in value.items() if k != "space"})


@operation("normal_form", "divisor_calculus")
def _op_normal_form(ctx, divisor, eliminate=None):
    return dv.normal_form(_class(divisor), eliminate)


@operation("proportional", "divisor_calculus")
def _op_proportional(ctx, a, b):
    return dv.proportional(_class(a), _class(b))


@operation("hs_pullback", "divisor_calculus")
def _op_hs_pullback(ctx, alpha, eliminate=None, scale=1):
    c = dv.hs_pullback(parse_scalar(alpha))
    c = dv.normal_form(c, eliminate) if eliminate else c
    return c * parse_scalar(scale)


@operation("plain_pullback", "divisor_calculus")
def _op_plain_pullback(ctx, alpha, eliminate=None, scale=1):
    c = dv.plain_pullback(parse_scalar(alpha))
    c = dv.normal_form(c, eliminate) if eliminate else c
    return c * parse_scalar(scale)


@operation("polarization_class", "divisor_calculus")
def _op_polarization(ctx, m=None):
    pol = dv.polarization_class()
    return pol if m is None else pol.cls(int(m))


@operation("polarization_eps", "divisor_calculus")
def _op_polarization_eps(ctx, m=None):
    eps = dv.polarization_class().eps
    return eps if m is None else eps(int(m))


@operation("affine_lincomb", "divisor_calculus")
def _op_lincomb(ctx, alpha_target, alpha_1, alpha_2):
    return dv.affine_lincomb(parse_scalar(alpha_target), parse_scalar(alpha_1), parse_scalar(alpha_2))


@operation("cone_membership", "divisor_calculus")
def _op_cone(ctx, divisor=None, delta_irr=None, psi=None):
    if divisor is not None:
        return dv.cone_membership(_class(divisor))
    if delta_irr is None or psi is None:
        raise ValueError("give a divisor or both delta_irr and psi")
    return dv.cone_coordinates(parse_scalar(delta_irr), parse_scalar(psi))


@operation("vital_coefficients", "divisor_calculus")
def _op_vital_coeffs(ctx, alpha):
    return dv.vital_coefficients(parse_scalar(alpha))


@operation("vital_residuals", "divisor_calculus")
def _op_vital_residuals(ctx, numbers=None, data=None):
    x = numbers if numbers is not None else ctx.vital(data).numbers
    return dv.vital_constraints().residuals(x)


@operation("vital_intersection", "divisor_calculus")
def _op_vital(ctx, alpha, data=None):
    return dv.vital_intersection(parse_scalar(alpha), ctx.vital(data))


# -- scenarios -------------------------------------------------------------------


@dataclass(frozen=True)
class Task:
    index: int
    op: str
    args: dict
    expected: Any = _MISSING
    provenance: Optional[str] = None
    convention: Optional[str] = None
    open_question: Optional[str] = None
    expected_error: Optional[str] = None

    @property
    def module(self) -> str:
        return OPERATIONS[self.op].module


@dataclass
class Scenario:
    source: str
    curves: dict = field(default_factory=dict)
    one_ps: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    base_dir: Path = Path(".")
    _ideals: dict = field(default_factory=dict, repr=False)

    def curve(self, name: str) -> curves.CurveModel:
        return self.curves[name]

    def ideal(self, name: str) -> pa.Ideal:
        if name not in self._ideals:
            self._ideals[name] = curves.curve_ideal(self.curves[name])
        return self._ideals[name]

    def rho(self, value) -> gs.OnePS:
        if isinstance(value, str):
            return self.one_ps[value]
        return gs.OnePS(tuple(int(w) for w in value))

    def vital(self, path) -> dv.VitalData:
        return dv.load_vital_data(None if path is None else self.base_dir / path)


_POSITION = re.compile(r"\(at line (\d+), column (\d+)\)")


def _decode(text: str, source: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        msg = str(exc)
        pos = _POSITION.search(msg)
        where = f"{source}:{pos.group(1)}:{pos.group(2)}" if pos else source
        raise ScenarioError(f"{where}: parse error: {_POSITION.sub('', msg).strip()}") from exc


def _load_curve(name: str, entry: dict, source: str) -> curves.CurveModel:
    try:
        if "builtin" in entry:
            builtin = entry["builtin"]
            if builtin not in curves.BUILTIN_CURVES:
                raise ScenarioError(f"{source}: curve {name!r}: unknown builtin {builtin!r}")
            return curves.BUILTIN_CURVES[builtin]()
        return curves.model_from_dict({"name": name, **entry})
    except (curves.CurveModelError, KeyError, TypeError) as exc:
        raise ScenarioError(f"{source}: curve {name!r}: {exc}") from exc


def parse_scenario(text: str, source: str = "<string>", base_dir: Path = Path(".")) -> Scenario:
    raw = _decode(text, source)
    unknown = set(raw) - {"curves", "one_ps", "tasks"}
    if unknown:
        raise ScenarioError(f"{source}: unknown top-level keys {sorted(unknown)}")
    sc = Scenario(source, base_dir=base_dir)
    for name, entry in raw.get("curves", {}).items():
        sc.curves[name] = _load_curve(name, entry, source)
    for name, w in raw.get("one_ps", {}).items():
        if not isinstance(w, list) or len(w) != 5 or not all(isinstance(x, int) for x in w):
            raise ScenarioError(f"{source}: one_ps {name!r} must be 5 integers")
        sc.one_ps[name] = gs.OnePS(tuple(w))
    for i, t in enumerate(raw.get("tasks", []), start=1):
        sc.tasks.append(_load_task(i, t, sc))
    return sc


def _load_task(i: int, t: dict, sc: Scenario) -> Task:
    where = f"{sc.source}: tasks[{i}]"
    op_name = t.get("op")
    if op_name not in OPERATIONS:
        raise ScenarioError(f"{where}: unknown operation {op_name!r}")
    op = OPERATIONS[op_name]
    args = dict(t.get("args", {}))
    if t.get("convention") is not None and "convention" in op.params and "convention" not in args:
        args["convention"] = t["convention"]
    try:
        inspect.signature(op.fn).bind(sc, **args)
    except TypeError as exc:
        raise ScenarioError(f"{where}: bad arguments for {op_name}: {exc}") from exc
    for key in op.curve_args:
        if isinstance(args.get(key), str) and args[key] not in sc.curves:
            raise ScenarioError(f"{where}: unresolved name {args[key]!r} (no such curve)")
    for key in op.rho_args:
        if isinstance(args.get(key), str) and args[key] not in sc.one_ps:
            raise ScenarioError(f"{where}: unresolved name {args[key]!r} (no such one_ps)")
    expected = t.get("expected", _MISSING)
    provenance = t.get("provenance")
    if expected is not _MISSING and provenance not in PROVENANCES:
        raise ScenarioError(f"{where}: expected value needs provenance in {PROVENANCES}")
    extra = set(t) - {"op", "args", "expected", "provenance", "convention", "open_question", "expected_error"}
    if extra:
        raise ScenarioError(f"{where}: unknown keys {sorted(extra)}")
    return Task(i, op_name, args, expected, provenance, t.get("convention"), t.get("open_question"),
                t.get("expected_error"))


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read: {exc.strerror}") from exc
    return parse_scenario(text, str(path), path.parent)


# -- reports ---------------------------------------------------------------------


@dataclass
class Record:
    key: str
    op: str
    module: str
    verdict: str
    computed: Any = None
    expected: Any = _MISSING
    provenance: Optional[str] = None
    args: Optional[dict] = None
    convention: Optional[str] = None
    open_question: Optional[str] = None
    note: str = ""
    error: Optional[str] = None
    description: str = ""

    def as_dict(self) -> dict:
        out = {"key": self.key, "module": self.module, "verdict": self.verdict}
        if self.op:
            out["op"] = self.op
        if self.error is None:
            out["computed"] = to_wire(self.computed)
        else:
            out["error"] = self.error
        if self.expected is not _MISSING:
            out["expected"] = to_wire(self.expected)
            out["provenance"] = self.provenance
        for name in ("args", "convention", "open_question", "description"):
            value = getattr(self, name)
            if value:
                out[name] = to_wire(value)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    title: str
    records: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        counts: dict = {}
        for r in self.records:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def ok(self) -> bool:
        return not any(r.verdict in FAILING for r in self.records)

    def as_dict(self) -> dict:
        return {"title": self.title, "records": [r.as_dict() for r in self.records], "summary": self.summary}

    def to_text(self) -> str:
        lines = [self.title]
        width = max([len(r.key) for r in self.records] + [3])
        for r in self.records:
            value = r.error if r.error is not None else render(r.computed)
            lines.append(f"  {r.key:<{width}}  {r.module:<18}  {r.verdict:<20}  {value}")
            if r.verdict in ("mismatch", "documented-deviation"):
                lines.append(f"  {'':<{width}}  {'':<18}  {'expected':<20}  {render(r.expected)}")
            if r.note:
                lines.append(f"  {'':<{width}}  {'':<18}  {'note':<20}  {r.note}")
        counts = ", ".join(f"{n} {v}" for v, n in self.summary.items()) or "no tasks"
        lines.append(f"summary: {counts}")
        return "\n".join(lines) + "\n"


def _judge(computed, expected, open_question) -> str:
    if expected is _MISSING:
        return "unchecked"
    if matches(computed, expected):
        return "match"
    return "documented-deviation" if open_question else "mismatch"


def run_task(sc: Scenario, task: Task) -> Record:
    op = OPERATIONS[task.op]
    rec = Record(f"task {task.index}", task.op, op.module, "unchecked", expected=task.expected,
                 provenance=task.provenance, args=task.args, convention=task.convention,
                 open_question=task.open_question)
    try:
        rec.computed = op.fn(sc, **task.args)
    except (ValueError, ArithmeticError, KeyError) as exc:
        rec.error = str(exc)
        if task.expected_error is not None and task.expected_error in str(exc):
            rec.verdict = "match"
        else:
            rec.verdict = "error"
        return rec
    if task.expected_error is not None:
        rec.verdict = "mismatch"
        rec.note = f"expected an error containing {task.expected_error!r}"
        return rec
    rec.verdict = _judge(rec.computed, task.expected, task.open_question)
    if rec.verdict == "documented-deviation":
        rec.note = anchors.OPEN_QUESTIONS.get(task.open_question, task.open_question)
    return rec


def run_scenario(path_or_scenario, module: Optional[str] = None) -> Report:
    sc = path_or_scenario if isinstance(path_or_scenario, Scenario) else load_scenario(path_or_scenario)
    tasks = [t for t in sc.tasks if module is None or t.module == module]
    return Report(f"scenario {sc.source}", [run_task(sc, t) for t in tasks])


def paper_suite(module: Optional[str] = None) -> Report:
    report = Report("built-in anchor suite")
    for a in anchors.all_anchors():
        if module is not None and a.module != module:
            continue
        rec = Record(a.key, "", a.module, "match", expected=a.expected,
                     provenance=a.provenance, open_question=a.open_question, description=a.description)
        try:
            rec.computed = a.compute()
        except (ValueError, ArithmeticError, KeyError) as exc:
            rec.error, rec.verdict = str(exc), "error"
        else:
            rec.verdict = anchors.verdict(rec.computed, a.expected, a.open_question)
            if rec.verdict == "documented-deviation":
                rec.note = anchors.OPEN_QUESTIONS[a.open_question]
        report.records.append(rec)
    return report
