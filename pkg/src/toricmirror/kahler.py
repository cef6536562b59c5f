"""Kahler parameters, the moment polytope, and symplectic areas.

The polytope is P = {x : <x, v_i> >= lambda_i}. Support constants lambda_i
may be exact rationals or symbolic linear forms in named parameters
(typically t1, t2, ...), and all areas are stored in 2*pi-normalized units:

* the affine support function  l_i(x) = <x, v_i> - lambda_i,
* disk classes have area sum(b_i * l_i(x))  (Cho-Oh formula),
* sphere classes have area -sum(a_i * lambda_i), independent of x.

q-variables are attached to a chosen homology basis: the weight of a class
is the monomial prod(q_j^c_j) of its basis coordinates, with numeric value
exp(-area).
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .bundle import default_q_basis
from .errors import (
    EmptyInterior,
    LambdaNotQExpressible,
    NotInBasisSpan,
)
from .fan import Fan
from .lattice import matrix_det, solve_unique
from .linform import LinForm, parse_linear_form
from .polyhedra import cone_is_trivial, max_min_slack, polytope_vertices


def boundary_vector(fan: Fan, beta) -> tuple:
    """Boundary of a disk class sum(b_i * beta_i): the lattice vector
    sum(b_i * v_i)."""
    return tuple(
        sum(b * fan.rays[j][i] for j, b in enumerate(beta))
        for i in range(fan.dimension)
    )


def maslov_index(beta) -> int:
    """Twice the coordinate sum; the basic disk classes each have index 2."""
    return 2 * sum(beta)


class KahlerData:
    """A fan with support constants and a named q-variable basis."""

    def __init__(self, fan: Fan, lambdas: Sequence, q_basis=None):
        self.fan = fan
        lams = []
        for lam in lambdas:
            if isinstance(lam, LinForm):
                lams.append(lam)
            else:
                lams.append(parse_linear_form(lam))
        if len(lams) != fan.nrays:
            raise ValueError(
                f"need one support constant per ray ({fan.nrays}), got {len(lams)}"
            )
        self.lambdas = tuple(lams)

        if q_basis is None:
            q_basis = default_q_basis(fan)
            if q_basis is None:
                q_basis = fan.homology_basis
        q_basis = tuple(tuple(int(x) for x in b) for b in q_basis)
        for b in q_basis:
            if not fan.is_homology_class(b):
                raise ValueError(f"q-basis vector {b} is not a curve class")
        self._check_basis(q_basis)
        self.q_basis = q_basis

        self._check_polytope()

    # -- construction checks --

    def _check_basis(self, q_basis):
        canonical = self.fan.homology_basis
        if len(q_basis) != len(canonical):
            raise ValueError(
                f"q-basis has {len(q_basis)} classes; homology rank is {len(canonical)}"
            )
        if not canonical:
            return
        cols = [[b[i] for b in canonical] for i in range(self.fan.nrays)]
        change = []
        for vec in q_basis:
            coords = solve_unique(cols, list(vec))
            if coords is None or any(c.denominator != 1 for c in coords):
                raise ValueError(f"{vec} is not an integral combination of homology classes")
            change.append([int(c) for c in coords])
        if abs(matrix_det(change)) != 1:
            raise ValueError("q-basis does not span the homology lattice")

    def _check_polytope(self):
        # bounded: the recession cone {x : <x, v_i> >= 0} must be {0}
        if not cone_is_trivial([list(r) for r in self.fan.rays]):
            raise ValueError("moment polytope is unbounded")
        # full-dimensional: positive max-min slack; symbolic constants are
        # spot-checked at all parameters equal to 1
        probe = {name: Fraction(1) for name in self.parameter_names}
        offsets = [lam.subs(probe) for lam in self.lambdas]
        eps, _ = max_min_slack(self.fan.rays, offsets)
        if eps <= 0:
            raise EmptyInterior(
                "moment polytope has empty interior"
                + (" at unit parameters" if probe else "")
            )

    @functools.cached_property
    def parameter_names(self) -> tuple:
        names = set()
        for lam in self.lambdas:
            names |= lam.variables
        return tuple(sorted(names))

    @property
    def rank(self) -> int:
        return len(self.q_basis)

    # -- support function and areas --

    def support_value(self, i: int, x: Sequence) -> LinForm:
        """l_i(x) = <x, v_i> - lambda_i; x entries may be numbers or LinForms."""
        ray = self.fan.rays[i]
        total = LinForm(0)
        for xj, vj in zip(x, ray):
            total += LinForm.coerce(xj) * vj
        return total - self.lambdas[i]

    def disk_area(self, beta, x) -> LinForm:
        """Area of the disk class sum(b_i beta_i) over the fiber at x."""
        total = LinForm(0)
        for i, b in enumerate(beta):
            if b:
                total += self.support_value(i, x) * b
        return total

    def sphere_area(self, alpha) -> LinForm:
        """Area of a curve class; equals -sum(a_i lambda_i) and is
        x-independent because the class pairs to zero with the ray map."""
        if not self.fan.is_homology_class(alpha):
            raise ValueError(f"{tuple(alpha)} is not a curve class of the fan")
        total = LinForm(0)
        for a, lam in zip(alpha, self.lambdas):
            if a:
                total += lam * (-a)
        return total

    # -- q-weights --

    def q_coordinates(self, alpha) -> tuple:
        """Integer coordinates of a curve class in the q-basis."""
        if not self.fan.is_homology_class(alpha):
            raise NotInBasisSpan(f"{tuple(alpha)} is not a curve class of the fan")
        if not self.q_basis:
            if any(alpha):
                raise NotInBasisSpan("nonzero class with trivial homology")
            return ()
        cols = [[b[i] for b in self.q_basis] for i in range(self.fan.nrays)]
        coords = solve_unique(cols, list(alpha))
        if coords is None or any(c.denominator != 1 for c in coords):
            raise NotInBasisSpan(
                f"{tuple(alpha)} has no integer coordinates in the q-basis"
            )
        return tuple(int(c) for c in coords)

    q_weight = q_coordinates  # the weight is the monomial with these exponents

    def q_weight_numeric(self, alpha, params: Mapping) -> float:
        """exp(-area) of the class at numeric parameter values."""
        return math.exp(-float(self.sphere_area(alpha).subs(params)))

    def basis_areas(self) -> tuple:
        return tuple(self.sphere_area(b) for b in self.q_basis)

    def lambda_q_exponents(self, i: int) -> tuple:
        """Write exp(lambda_i) as a q-monomial: solve
        lambda_i = -sum(e_j * area(basis_j)) for nonnegative integers e_j."""
        lam = self.lambdas[i]
        areas = self.basis_areas()
        names = sorted(set(self.parameter_names)
                       | {n for a in areas for n in a.variables})
        rows = [[a.coefficient(n) for a in areas] for n in names]
        rows.append([a.const for a in areas])
        rhs = [-lam.coefficient(n) for n in names] + [-lam.const]
        if not areas:
            if lam == LinForm(0):
                return ()
            raise LambdaNotQExpressible(f"lambda_{i} = {lam} with no q-variables")
        try:
            sol = solve_unique(rows, rhs)
        except Exception as exc:
            raise LambdaNotQExpressible(
                f"basis areas are degenerate; cannot express exp(lambda_{i})"
            ) from exc
        if sol is None or any(c.denominator != 1 for c in sol) or any(c < 0 for c in sol):
            raise LambdaNotQExpressible(
                f"lambda_{i} = {lam} is not -1 times a nonnegative integer "
                f"combination of the basis areas"
            )
        return tuple(int(c) for c in sol)

    # -- polytope geometry --

    def numeric_offsets(self, params: Optional[Mapping] = None) -> list:
        values = dict(params or {})
        missing = [n for n in self.parameter_names if n not in values]
        if missing:
            raise ValueError(f"need numeric values for parameters {missing}")
        return [lam.subs(values) for lam in self.lambdas]

    def interior_point(self, params: Optional[Mapping] = None) -> tuple:
        """A strictly interior point of the moment polytope (max-min-slack
        center); raises EmptyInterior when the interior is empty."""
        offsets = self.numeric_offsets(params)
        eps, point = max_min_slack(self.fan.rays, offsets)
        if point is None:
            raise EmptyInterior(f"polytope interior is empty (max slack {eps})")
        return point

    def vertices(self, params: Optional[Mapping] = None) -> list:
        return polytope_vertices(self.fan.rays, self.numeric_offsets(params))
