"""Sparse Laurent polynomials with exact q-polynomial coefficients.

A LaurentPoly maps z-exponent vectors (integers, any sign) to coefficients;
each coefficient is a polynomial in formal variables q1..qr with nonnegative
exponents and Fraction coefficients. Arithmetic is exact throughout; numeric
evaluation is a separate explicit step (``evaluate``). Zero coefficients are
never stored, and serialization orders z-terms lexicographically and
q-monomials by total degree then lexicographically, so output is
byte-stable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ZeroCoordinate


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficients must be exact rationals, got {x!r}")


class QPoly:
    """Polynomial in q1..qr over Q with nonnegative integer exponents."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = int(nvars)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(f"q-exponent {exps} needs length {self.nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"q-exponents must be nonnegative, got {exps}")
            coeff = _as_fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "QPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "QPoly":
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "QPoly":
        return cls(len(exps), {tuple(exps): _as_fraction(coeff)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPoly.constant(self.nvars, other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            other = QPoly.constant(self.nvars, other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return QPoly(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            other = QPoly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return QPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QPoly(self.nvars, out)

    __rmul__ = __mul__

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def total_degrees(self):
        return [sum(e) for e in self.terms]

    def numeric(self, q_values: Sequence[float]) -> float:
        total = 0.0
        for exps, coeff in self.terms.items():
            v = float(coeff)
            for q, e in zip(q_values, exps):
                v *= q ** e
            total += v
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"q{j + 1}" if e == 1 else f"q{j + 1}^{e}"
                for j, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"QPoly({self!s})"


class LaurentPoly:
    """Sparse Laurent polynomial in z1..zn with QPoly coefficients."""

    __slots__ = ("zvars", "qvars", "terms")

    def __init__(self, zvars: int, qvars: int, terms: Mapping | None = None):
        self.zvars = int(zvars)
        self.qvars = int(qvars)
        clean = {}
        for zexp, coeff in (terms or {}).items():
            zexp = tuple(int(e) for e in zexp)
            if len(zexp) != self.zvars:
                raise ValueError(f"z-exponent {zexp} needs length {self.zvars}")
            if not isinstance(coeff, QPoly):
                coeff = QPoly.constant(self.qvars, coeff)
            if coeff.nvars != self.qvars:
                raise ValueError("coefficient has the wrong number of q-variables")
            if coeff:
                prev = clean.get(zexp)
                clean[zexp] = coeff if prev is None else prev + coeff
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, zvars: int, qvars: int) -> "LaurentPoly":
        return cls(zvars, qvars)

    @classmethod
    def monomial(cls, zexp: Sequence[int], coeff) -> "LaurentPoly":
        if not isinstance(coeff, QPoly):
            raise TypeError("coefficient must be a QPoly")
        return cls(len(tuple(zexp)), coeff.nvars, {tuple(zexp): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.zvars, self.qvars, self.terms) == (other.zvars, other.qvars, other.terms)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, QPoly):
            return LaurentPoly(self.zvars, self.qvars, {(0,) * self.zvars: other})
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(
                self.zvars, self.qvars,
                {(0,) * self.zvars: QPoly.constant(self.qvars, other)},
            )
        raise TypeError(f"cannot combine LaurentPoly with {other!r}")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, QPoly.zero(self.qvars)) + c
        return LaurentPoly(self.zvars, self.qvars, merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.zvars, self.qvars,
                           {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction, QPoly)):
            if not isinstance(other, QPoly):
                other = QPoly.constant(self.qvars, other)
            return LaurentPoly(self.zvars, self.qvars,
                               {e: c * other for e, c in self.terms.items()})
        out = LaurentPoly.zero(self.zvars, self.qvars)
        merged = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                merged[e] = merged.get(e, QPoly.zero(self.qvars)) + c1 * c2
        return LaurentPoly(self.zvars, self.qvars, merged)

    __rmul__ = __mul__

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def log_derivative(self, j: int) -> "LaurentPoly":
        """z_j * d/dz_j, computed exactly term by term."""
        out = {}
        for zexp, coeff in self.terms.items():
            if zexp[j]:
                out[zexp] = coeff * zexp[j]
        return LaurentPoly(self.zvars, self.qvars, out)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for zexp, coeff in self.sorted_terms():
            num = "*".join(
                f"z{j + 1}" if e == 1 else f"z{j + 1}^{e}"
                for j, e in enumerate(zexp) if e > 0
            )
            den = "*".join(
                f"z{j + 1}" if e == -1 else f"z{j + 1}^{-e}"
                for j, e in enumerate(zexp) if e < 0
            )
            multi = len(coeff.terms) > 1
            cstr = str(coeff)
            if not num and not den:
                body = f"({cstr})" if multi else cstr
            else:
                if cstr == "1" and num:
                    body = num
                else:
                    cpart = f"({cstr})" if multi else cstr
                    body = f"{cpart}*{num}" if num else cpart
                if den:
                    den_str = den if "*" not in den and "^" not in den else f"({den})"
                    body = f"{body}/{den_str}"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self!s})"


def _ipow(base: complex, exponent: int) -> complex:
    """Integer power by repeated squaring; negative exponents invert."""
    if exponent < 0:
        return 1.0 / _ipow(base, -exponent)
    result = 1.0 + 0.0j
    while exponent:
        if exponent & 1:
            result *= base
        base *= base
        exponent >>= 1
    return result


def evaluate(poly: LaurentPoly, z: Sequence[complex], t: Sequence[float]) -> complex:
    """Numeric value at the point z with q_j = exp(-t_j).

    Every z coordinate must be nonzero (ZeroCoordinate otherwise).
    """
    z = [complex(v) for v in z]
    if len(z) != poly.zvars:
        raise ValueError(f"need {poly.zvars} z-coordinates")
    if any(v == 0 for v in z):
        raise ZeroCoordinate("Laurent polynomials are undefined on the axes")
    t = [float(v) for v in t]
    if len(t) != poly.qvars:
        raise ValueError(f"need {poly.qvars} t-values")
    q = [math.exp(-v) for v in t]
    total = 0j
    for zexp, coeff in poly.sorted_terms():
        term = complex(coeff.numeric(q))
        for base, e in zip(z, zexp):
            if e:
                term *= _ipow(base, e)
        total += term
    return total
