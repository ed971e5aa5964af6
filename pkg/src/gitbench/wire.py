"""Conversion of computed values to JSON-ready data and display strings, and exact comparison."""
from __future__ import annotations

import ast
import dataclasses
import operator
from fractions import Fraction

from .curves import StabilityVerdict
from .divisors import DISPLAY, SPACES, DivisorClass, Polarization
from .polynomials import Ideal, Polynomial, parse_polynomial
from .stability import IndexReport
from .unipoly import RatFunc, UniPoly, as_fraction, format_rational, is_zero


def to_wire(value):
    """Canonical structured form: rationals as ``p/q``, polynomials in m as coefficient arrays."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, UniPoly):
        return value.to_list()
    if isinstance(value, RatFunc):
        return {"num": value.num.to_list(), "den": value.den.to_list()}
    if isinstance(value, Polynomial):
        return value.to_text()
    if isinstance(value, Ideal):
        return value.to_text()
    if isinstance(value, DivisorClass):
        return {"space": value.space.name, **{k: to_wire(v) for k, v in value.coeffs.items()}}
    if isinstance(value, (StabilityVerdict, IndexReport)):
        return value.as_dict()
    if isinstance(value, Polarization):
        return {"class": to_wire(value.cls), "normalized": to_wire(value.normalized), "eps": to_wire(value.eps)}
    if dataclasses.is_dataclass(value):
        return {f.name: to_wire(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_wire(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_wire(v) for v in value]
    raise TypeError(f"no wire form for {type(value).__name__}")


def render(value) -> str:
    """One-line human-readable form."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, (UniPoly, RatFunc, Polynomial, DivisorClass)):
        return str(value)
    if isinstance(value, Ideal):
        return "<" + ", ".join(value.to_text()) + ">"
    if isinstance(value, StabilityVerdict):
        return ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in value.as_dict().items())
    if isinstance(value, Polarization):
        return f"{value.cls}  ~  {value.normalized}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(render(v) for v in value) + ")"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{DISPLAY.get(k, k)}: {render(v)}" for k, v in value.items()) + "}"
    if dataclasses.is_dataclass(value):
        return "{" + ", ".join(f"{f.name}: {render(getattr(value, f.name))}" for f in dataclasses.fields(value)) + "}"
    return str(value)


def parse_scalar(value):
    """Exact scalar from a TOML value: int, ``"p/q"``, or an expression in one symbol like ``"7/10 - eps"``.

    Expressions evaluate to a :class:`RatFunc`; primes in symbol names are allowed (``eps'``).
    """
    if isinstance(value, (Fraction, RatFunc)):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"expected an exact rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, UniPoly):
        return RatFunc(value)
    if not isinstance(value, str):
        raise ValueError(f"expected a rational or an expression, got {value!r}")
    try:
        return Fraction(value.strip())
    except ValueError:
        pass
    try:
        tree = ast.parse(value.replace("'", "_prime").replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {value!r}") from exc
    return _eval(tree.body, value)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval(node, source):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        return RatFunc.x(node.id.replace("_prime", "'"))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, source)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, source), _eval(node.right, source))
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
        exp = _eval(node.right, source)
        if not (isinstance(exp, Fraction) and exp.denominator == 1 and exp >= 0):
            raise ValueError(f"only non-negative integer powers allowed in {source!r}")
        return _eval(node.left, source) ** int(exp)
    raise ValueError(f"unsupported syntax in expression {source!r}")


def _as_unipoly(value) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (list, tuple)):
        return UniPoly([as_fraction(c) for c in value])
    v = parse_scalar(value)
    if isinstance(v, RatFunc):
        if not v.is_polynomial():
            raise ValueError(f"{value!r} is not a polynomial")
        return UniPoly(v.num.coeffs)
    return UniPoly([v])


def matches(computed, expected) -> bool:
    """Exact comparison of a computed value with an expectation given as an object or in TOML form."""
    try:
        return _matches(computed, expected)
    except (ValueError, TypeError, KeyError, ZeroDivisionError):
        return False


def _matches(computed, expected) -> bool:
    if isinstance(computed, bool) or isinstance(expected, bool):
        return isinstance(computed, bool) and isinstance(expected, bool) and computed == expected
    if isinstance(computed, DivisorClass):
        if isinstance(expected, dict):
            space = SPACES[expected.get("space", computed.space.name)]
            expected = DivisorClass(space, {k: parse_scalar(v) for k, v in expected.items() if k != "space"})
        return isinstance(expected, DivisorClass) and computed == expected
    if isinstance(computed, UniPoly):
        return computed == _as_unipoly(expected)
    if isinstance(computed, (int, Fraction, RatFunc)):
        if isinstance(expected, (list, tuple, dict)):
            return False
        return is_zero(computed - parse_scalar(expected))
    if isinstance(computed, (list, tuple)):
        return (
            isinstance(expected, (list, tuple))
            and len(computed) == len(expected)
            and all(_matches(c, e) for c, e in zip(computed, expected))
        )
    if isinstance(computed, Ideal):
        if isinstance(expected, (list, tuple)):
            expected = Ideal.from_text(expected, computed.names)
        return isinstance(expected, Ideal) and computed.same_as(expected)
    if isinstance(computed, Polynomial):
        if isinstance(expected, str):
            expected = parse_polynomial(expected, computed.names)
        return computed == expected
    if isinstance(computed, dict):
        return (
            isinstance(expected, dict)
            and set(map(str, computed)) == set(map(str, expected))
            and all(_matches(computed[k], expected[k]) for k in computed)
        )
    if dataclasses.is_dataclass(computed):
        if type(expected) is type(computed):
            return computed == expected
        if isinstance(expected, dict):
            # only the listed fields are checked, e.g. the flags of a verdict but not its reasons
            return all(_matches(getattr(computed, k), v) for k, v in expected.items())
        return False
    return to_wire(computed) == to_wire(expected)
