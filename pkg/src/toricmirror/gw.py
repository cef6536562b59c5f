"""One-pointed genus-zero Gromov-Witten values for the correction factor.

The corrected superpotential consumes the closed invariants attached to
(fiber class + alpha) for effective classes alpha of anticanonical degree 0.
These are mathematical inputs, not something this package derives: values
come from (1) a built-in rule for fans equivalent to the Hirzebruch surface
F2, where the invariants follow from the symplectomorphism with P1 x P1, or
(2) a user-supplied table bound to the fan by fingerprint. A class covered
by neither source raises UnknownInvariant: absence of data is never silently
treated as zero (opt in via ``assume_zero``), because vanishing has to be
proved for each geometry; it is not a safe default.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import catalog
from .errors import (
    BadChernDegree,
    FingerprintMismatch,
    InconsistentTable,
    UnknownInvariant,
)
from .fan import Fan, chern_degree
from .kahler import KahlerData
from .lattice import unimodular_map_search

PROVENANCE_BUILTIN = "builtin"
PROVENANCE_TABLE = "table"
PROVENANCE_ASSUMED = "assumed-zero"
PROVENANCE_BASIC = "basic-disk"


def f2_one_point_rule(k: int) -> Fraction:
    """GW value for (fiber + k * base) on F2: 1 for k in {0, 1}, else 0.

    F2 is symplectomorphic to P1 x P1 (base |-> l1 - l2, fiber |-> l2), so
    the value equals the count of lines through a point in class
    k*l1 + (1-k)*l2, which vanishes unless both coefficients are 0 or 1.
    """
    if k < 0:
        raise ValueError("multiplicity must be nonnegative")
    return Fraction(1) if k in (0, 1) else Fraction(0)


@dataclass(frozen=True)
class GWTable:
    """Validated table of invariants keyed by basis coordinates."""

    fingerprint: str
    basis: tuple
    entries: dict  # basis-coordinate tuple -> Fraction

    def class_of(self, key) -> tuple:
        d = len(self.basis[0])
        return tuple(
            sum(c * b[i] for c, b in zip(key, self.basis)) for i in range(d)
        )


def validate_table(fingerprint: str, basis, entries, fan: Optional[Fan] = None) -> GWTable:
    """Check a parsed table: fingerprint binding, basis classes, and that
    every key has anticanonical degree 0."""
    if fan is not None:
        from .documents import fan_fingerprint

        expected = fan_fingerprint(fan)
        if fingerprint != expected:
            raise FingerprintMismatch(
                f"table is bound to fan {fingerprint[:12]}..., "
                f"current fan is {expected[:12]}..."
            )
        for b in basis:
            if not fan.is_homology_class(b):
                raise BadChernDegree(f"table basis vector {b} is not a curve class")
    table = GWTable(fingerprint=fingerprint, basis=tuple(tuple(b) for b in basis),
                    entries={tuple(k): Fraction(v) for k, v in entries.items()})
    for key in table.entries:
        cls = table.class_of(key)
        if chern_degree(cls) != 0:
            raise BadChernDegree(
                f"table key {key} names class {cls} of degree {chern_degree(cls)}; "
                f"only degree-0 classes are consumed"
            )
    return table


class GWProvider:
    """Resolves invariant lookups: built-in rule, then table, then error."""

    def __init__(self, kahler: KahlerData, table: Optional[GWTable] = None,
                 assume_zero: bool = False):
        self.kahler = kahler
        self.fan = kahler.fan
        self.table = table
        self.assume_zero = assume_zero
        if table is not None:
            self._check_table_consistency()

    @functools.cached_property
    def _f2_base_class(self) -> Optional[tuple]:
        """The degree-0 generator when the fan is equivalent to F2."""
        ref = catalog.hirzebruch2()
        if self.fan.dimension != ref.dimension:
            return None
        if unimodular_map_search(self.fan.rays, self.fan.maximal_cones,
                                 ref.rays, ref.maximal_cones) is None:
            return None
        degree_zero = [r.coords for r in self.fan.primitive_relations if r.degree == 0]
        assert len(degree_zero) == 1
        return degree_zero[0]

    def _as_base_multiple(self, alpha) -> Optional[int]:
        base = self._f2_base_class
        if base is None:
            return None
        k = None
        for a, b in zip(alpha, base):
            if b == 0:
                if a != 0:
                    return None
                continue
            ratio = Fraction(a, b)
            if k is None:
                k = ratio
            elif ratio != k:
                return None
        if k is None:
            k = Fraction(0)
        if k.denominator != 1 or k < 0:
            return None
        return int(k)

    def _check_table_consistency(self):
        if self._f2_base_class is None:
            return
        for key, value in self.table.entries.items():
            cls = self.table.class_of(key)
            k = self._as_base_multiple(cls)
            if k is None:
                continue
            if value != f2_one_point_rule(k):
                raise InconsistentTable(
                    f"table value {value} for class {cls} contradicts the "
                    f"built-in F2 rule value {f2_one_point_rule(k)}"
                )

    def lookup(self, alpha) -> tuple:
        """(value, provenance) for GW(fiber + alpha); UnknownInvariant when no
        source covers the class."""
        alpha = tuple(int(a) for a in alpha)
        if chern_degree(alpha) != 0:
            raise BadChernDegree(
                f"class {alpha} has degree {chern_degree(alpha)}; the correction "
                f"factor only consumes degree-0 classes"
            )
        k = self._as_base_multiple(alpha)
        if k is not None:
            return f2_one_point_rule(k), PROVENANCE_BUILTIN
        if self.table is not None:
            try:
                key = self._table_key(alpha)
            except UnknownInvariant:
                key = None
            if key is not None and key in self.table.entries:
                return self.table.entries[key], PROVENANCE_TABLE
        if self.assume_zero:
            return Fraction(0), PROVENANCE_ASSUMED
        raise UnknownInvariant(
            f"no Gromov-Witten value available for class {alpha}; supply a table "
            f"or pass assume_zero to zero-fill"
        )

    def _table_key(self, alpha) -> tuple:
        from .lattice import solve_unique

        basis = self.table.basis
        cols = [[b[i] for b in basis] for i in range(len(alpha))]
        coords = solve_unique(cols, list(alpha))
        if coords is None or any(c.denominator != 1 for c in coords):
            raise UnknownInvariant(f"class {alpha} is outside the table basis span")
        return tuple(int(c) for c in coords)

    def gw_one_point(self, alpha) -> Fraction:
        return self.lookup(alpha)[0]

    def open_invariant(self, alpha) -> Fraction:
        """Open disk count for (zero-section disk class + alpha), reported via
        the open/closed equality; alpha = 0 is the basic disk count 1."""
        alpha = tuple(int(a) for a in alpha)
        if not any(alpha):
            return Fraction(1)
        return self.gw_one_point(alpha)

    def open_invariant_with_provenance(self, alpha) -> tuple:
        alpha = tuple(int(a) for a in alpha)
        if not any(alpha):
            return Fraction(1), PROVENANCE_BASIC
        return self.lookup(alpha)
