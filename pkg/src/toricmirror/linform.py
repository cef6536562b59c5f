"""Exact linear forms over named variables.

A LinForm is ``const + sum(coeff[name] * name)`` with Fraction coefficients.
They carry the symbolic Kahler parameters (t1, t2, ...) and symbolic polytope
coordinates through area computations, so identities like "this area equals
t1" can be asserted exactly instead of numerically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<number>\d+(?:\.\d+)?(?:/\d+)?)"
    r"|(?P<op>[+\-*]))"
)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Exact value of the decimal literal, not of the binary float.
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class LinForm:
    """Immutable linear form with exact rational coefficients."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const: Scalar = 0, coeffs: Mapping[str, Scalar] | None = None):
        object.__setattr__(self, "const", _as_fraction(const))
        clean = {}
        for name, c in (coeffs or {}).items():
            c = _as_fraction(c)
            if c != 0:
                clean[str(name)] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *_):
        raise AttributeError("LinForm is immutable")

    # -- constructors --

    @classmethod
    def variable(cls, name: str) -> "LinForm":
        return cls(0, {name: 1})

    @classmethod
    def coerce(cls, value) -> "LinForm":
        if isinstance(value, LinForm):
            return value
        return cls(_as_fraction(value))

    # -- structure --

    @property
    def variables(self) -> frozenset:
        return frozenset(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def coefficient(self, name: str) -> Fraction:
        return self.coeffs.get(name, Fraction(0))

    # -- arithmetic --

    def __add__(self, other) -> "LinForm":
        other = LinForm.coerce(other)
        coeffs = dict(self.coeffs)
        for name, c in other.coeffs.items():
            coeffs[name] = coeffs.get(name, Fraction(0)) + c
        return LinForm(self.const + other.const, coeffs)

    __radd__ = __add__

    def __neg__(self) -> "LinForm":
        return LinForm(-self.const, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other) -> "LinForm":
        return self + (-LinForm.coerce(other))

    def __rsub__(self, other) -> "LinForm":
        return LinForm.coerce(other) + (-self)

    def __mul__(self, scalar) -> "LinForm":
        s = _as_fraction(scalar)
        return LinForm(self.const * s, {n: c * s for n, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LinForm, int, Fraction)):
            return NotImplemented
        other = LinForm.coerce(other)
        return self.const == other.const and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.const, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.const) or bool(self.coeffs)

    # -- evaluation --

    def subs(self, values: Mapping[str, object]):
        """Substitute values for every variable; exact if all values are exact."""
        missing = [n for n in self.coeffs if n not in values]
        if missing:
            raise KeyError(f"missing values for {sorted(missing)}")
        exact = all(isinstance(values[n], (int, Fraction)) for n in self.coeffs)
        if exact:
            total = self.const
            for n, c in self.coeffs.items():
                total += c * values[n]
            return total
        total = float(self.const)
        for n, c in self.coeffs.items():
            total += float(c) * float(values[n])
        return total

    # -- rendering --

    def __repr__(self) -> str:
        return f"LinForm({self!s})"

    def __str__(self) -> str:
        parts = []
        for name in sorted(self.coeffs):
            c = self.coeffs[name]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            parts.append((sign, term))
        if self.const != 0 or not parts:
            sign = "-" if self.const < 0 else "+"
            parts.append((sign, str(abs(self.const))))
        first_sign, first_term = parts[0]
        out = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def to_json(self) -> dict:
        obj = {"constant": str(self.const)}
        if self.coeffs:
            obj["terms"] = {n: str(c) for n, c in sorted(self.coeffs.items())}
        return obj

    @classmethod
    def from_json(cls, obj) -> "LinForm":
        return cls(Fraction(obj.get("constant", "0")),
                   {n: Fraction(c) for n, c in obj.get("terms", {}).items()})


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse linear form {text!r} at position {pos}")
        pos = m.end()
        if m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("number"):
            num = m.group("number")
            value = Fraction(num) if "." not in num else _as_fraction(float(num))
            tokens.append(("num", value))
        else:
            tokens.append(("op", m.group("op")))
    if text.strip() and not tokens:
        raise ValueError(f"cannot parse linear form {text!r}")
    return tokens


def parse_linear_form(text, allowed_names: Iterable[str] | None = None) -> LinForm:
    """Parse expressions like ``-t1 - 2*t2 + 3/2`` into a LinForm.

    Grammar: ``[sign] term (sign term)*`` with ``term := number ['*' name] |
    name``. Numbers are exact rationals (``3``, ``3/2``, or decimal
    literals). When *allowed_names* is given, other variable names are
    rejected.
    """
    if isinstance(text, (int, float, Fraction)):
        return LinForm(_as_fraction(text))
    if not isinstance(text, str):
        raise ValueError(f"cannot parse {text!r} as a linear form")
    allowed = set(allowed_names) if allowed_names is not None else None
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty linear form")

    result = LinForm(0)
    i = 0
    first = True
    while i < len(tokens):
        sign = Fraction(1)
        kind, val = tokens[i]
        if kind == "op":
            if val == "-":
                sign = Fraction(-1)
            elif val != "+":
                raise ValueError(f"misplaced '*' in {text!r}")
            i += 1
        elif not first:
            raise ValueError(f"missing operator before {val!r} in {text!r}")
        if i >= len(tokens):
            raise ValueError(f"dangling operator in {text!r}")
        kind, val = tokens[i]
        if kind == "num":
            coeff = val
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "*"):
                i += 1
                if i >= len(tokens) or tokens[i][0] != "name":
                    raise ValueError(f"expected a name after '*' in {text!r}")
                name = tokens[i][1]
                i += 1
                if allowed is not None and name not in allowed:
                    raise ValueError(f"unknown parameter {name!r} in {text!r}")
                result += LinForm(0, {name: sign * coeff})
            else:
                result += LinForm(sign * coeff)
        elif kind == "name":
            if allowed is not None and val not in allowed:
                raise ValueError(f"unknown parameter {val!r} in {text!r}")
            result += LinForm(0, {val: sign})
            i += 1
        else:
            raise ValueError(f"unexpected operator in {text!r}")
        first = False
    return result
