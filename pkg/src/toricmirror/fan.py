"""Smooth complete toric fans and their curve-class combinatorics.

A fan is stored as primitive ray generators plus maximal cone index sets.
Validation enforces smoothness (unimodular cones), that pairwise cone
intersections are common faces, and the facet-pairing condition (every facet
of a maximal cone shared by exactly two) as a completeness proxy. On top of
the validated structure this module computes the degree-2 homology lattice,
primitive collections and relations, anticanonical degrees, the
Fano/semi-Fano/non-nef trichotomy, and truncated cones of effective classes.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    BadFaceIntersection,
    DimensionMismatch,
    FocusNotFound,
    IncompleteFan,
    NonPrimitiveRay,
    NonUnimodularCone,
)
from .lattice import (
    cone_coefficients,
    invert_unimodular,
    is_primitive,
    kernel_basis,
    matrix_det,
)
from .polyhedra import cone_extreme_rays


class Positivity(enum.Enum):
    FANO = "Fano"
    SEMI_FANO_NOT_FANO = "SemiFanoNotFano"
    NOT_NEF = "NotNef"


@dataclass(frozen=True)
class PrimitiveRelation:
    """sum(rays in collection) = sum(multiplicity * ray in focus)."""

    collection: tuple
    focus: tuple
    multiplicities: tuple
    coords: tuple  # curve class in ray coordinates: +1 / -n_j / 0
    degree: int  # anticanonical pairing = sum of coords


def chern_degree(coords) -> int:
    """Anticanonical degree of a curve class in ray coordinates."""
    return sum(coords)


def forced_divisors(coords) -> tuple:
    """Ray indices i with negative pairing: every irreducible curve in this
    class lies inside the corresponding toric prime divisor."""
    return tuple(i for i, a in enumerate(coords) if a < 0)


@dataclass(frozen=True)
class Fan:
    """A validated smooth complete fan. Build via :func:`validate_fan`."""

    dimension: int
    rays: tuple
    maximal_cones: tuple

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def ray_matrix(self):
        """Rays as columns: the map Z^d -> Z^n."""
        return [[self.rays[j][i] for j in range(self.nrays)] for i in range(self.dimension)]

    @functools.cached_property
    def _cone_index_sets(self):
        return tuple(frozenset(c) for c in self.maximal_cones)

    def spans_cone(self, subset) -> bool:
        """A ray subset spans a cone of the fan iff it sits inside some
        maximal cone (faces of simplicial cones are generator subsets)."""
        s = frozenset(subset)
        return any(s <= c for c in self._cone_index_sets)

    @functools.cached_property
    def faces_by_dimension(self):
        """All cones of the fan grouped by dimension, 0 (the origin) up to n."""
        out = {0: ((),)}
        for k in range(1, self.dimension + 1):
            faces = set()
            for cone in self.maximal_cones:
                faces.update(combinations(cone, k))
            out[k] = tuple(sorted(faces))
        return out

    @functools.cached_property
    def homology_basis(self):
        """Canonical Z-basis of the kernel of the ray map (degree-2 homology)."""
        return tuple(kernel_basis(self.ray_matrix()))

    def is_homology_class(self, coords) -> bool:
        if len(coords) != self.nrays:
            return False
        return all(
            sum(a * self.rays[j][i] for j, a in enumerate(coords)) == 0
            for i in range(self.dimension)
        )

    @functools.cached_property
    def primitive_collections(self):
        """Minimal ray subsets spanning no cone, every proper subset spanning one.

        Breadth-first over subset size: a candidate that is not a face and
        contains no smaller collection is automatically minimal, because any
        non-face proper subset would contain a smaller minimal non-face
        already found.
        """
        found = []
        indices = range(self.nrays)
        for size in range(2, self.nrays + 1):
            for subset in combinations(indices, size):
                s = set(subset)
                if any(set(c) <= s for c in found):
                    continue
                if self.spans_cone(subset):
                    continue
                found.append(subset)
        return tuple(found)

    def primitive_relation(self, collection) -> PrimitiveRelation:
        """Locate the focus (smallest cone containing the collection's ray sum)
        and assemble the induced relation and curve class."""
        collection = tuple(sorted(collection))
        if collection not in self.primitive_collections:
            raise ValueError(f"{collection} is not a primitive collection of this fan")
        s = [sum(self.rays[i][k] for i in collection) for k in range(self.dimension)]
        for dim in range(0, self.dimension + 1):
            for face in self.faces_by_dimension[dim]:
                gens = [self.rays[j] for j in face]
                coeffs = cone_coefficients(s, gens)
                if coeffs is None:
                    continue
                mults = []
                for c in coeffs:
                    if Fraction(c).denominator != 1:
                        raise FocusNotFound(
                            f"focus coefficients of {collection} are not integers"
                        )
                    mults.append(int(c))
                if any(m <= 0 for m in mults):
                    # would have been found in a lower-dimensional face
                    raise FocusNotFound(
                        f"non-minimal focus located for {collection}"
                    )
                if set(face) & set(collection):
                    raise FocusNotFound(
                        f"focus of {collection} meets the collection itself"
                    )
                coords = [0] * self.nrays
                for i in collection:
                    coords[i] = 1
                for j, m in zip(face, mults):
                    coords[j] = -m
                coords = tuple(coords)
                assert self.is_homology_class(coords)
                return PrimitiveRelation(
                    collection=collection,
                    focus=tuple(face),
                    multiplicities=tuple(mults),
                    coords=coords,
                    degree=chern_degree(coords),
                )
        raise FocusNotFound(f"no cone of the fan contains the sum over {collection}")

    @functools.cached_property
    def primitive_relations(self):
        return tuple(self.primitive_relation(c) for c in self.primitive_collections)


# --- validation ---

def _angular_order_2d(rays):
    """Indices of 2D rays in counterclockwise order starting in the closed
    upper half plane; exact (cross-product comparator, no floats)."""
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def cross(u, w):
        return u[0] * w[1] - u[1] * w[0]

    def cmp(i, j):
        u, w = rays[i], rays[j]
        hu, hw = half(u), half(w)
        if hu != hw:
            return -1 if hu < hw else 1
        c = cross(u, w)
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return sorted(range(len(rays)), key=functools.cmp_to_key(cmp))


def infer_cones_2d(rays):
    """Maximal cones of a complete 2D fan as consecutive pairs in angular
    order. Raises IncompleteFan when consecutive rays fail to advance by an
    angle in (0, pi), i.e. the rays leave an uncovered gap."""
    if len(rays) < 3:
        raise IncompleteFan("a complete 2D fan needs at least 3 rays")
    order = _angular_order_2d(rays)
    cones = []
    for k in range(len(order)):
        i, j = order[k], order[(k + 1) % len(order)]
        u, w = rays[i], rays[j]
        if u[0] * w[1] - u[1] * w[0] <= 0:
            raise IncompleteFan(
                f"rays {u} and {w} span an angle of at least pi; fan has a gap"
            )
        cones.append(tuple(sorted((i, j))))
    return sorted(cones)


def _membership_rows(fan: Fan, cone):
    """Rows M with cone(x) membership given by M @ x >= 0 (inverse of the
    unimodular generator matrix)."""
    cols = [[fan.rays[j][i] for j in cone] for i in range(fan.dimension)]
    return invert_unimodular(cols)


def _check_common_faces(fan: Fan):
    rows_cache = {c: _membership_rows(fan, c) for c in fan.maximal_cones}
    for ca, cb in combinations(fan.maximal_cones, 2):
        shared = set(ca) & set(cb)
        allowed = {fan.rays[i] for i in shared}
        system = [tuple(r) for r in rows_cache[ca]] + [tuple(r) for r in rows_cache[cb]]
        for ray in cone_extreme_rays(system):
            if ray not in allowed:
                raise BadFaceIntersection(
                    f"cones {ca} and {cb} overlap beyond their common face "
                    f"(direction {ray})"
                )


def _check_facets(fan: Fan):
    counts = {}
    for cone in fan.maximal_cones:
        for facet in combinations(cone, fan.dimension - 1):
            counts[facet] = counts.get(facet, 0) + 1
    bad = {f: c for f, c in counts.items() if c != 2}
    if bad:
        raise IncompleteFan(
            f"facets not shared by exactly two maximal cones: {sorted(bad.items())}"
        )


def validate_fan(dimension, rays, maximal_cones=None) -> Fan:
    """Validate fan data and return an immutable Fan.

    For dimension 2 the maximal cones may be omitted and are inferred from
    the counterclockwise order of the rays. Raises NonPrimitiveRay,
    NonUnimodularCone, BadFaceIntersection, or IncompleteFan.
    """
    n = int(dimension)
    if n < 1:
        raise DimensionMismatch("fan dimension must be at least 1")
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    if not rays:
        raise IncompleteFan("a fan needs rays")
    for r in rays:
        if len(r) != n:
            raise DimensionMismatch(f"ray {r} does not have length {n}")
        if not any(r):
            raise NonPrimitiveRay("the zero vector is not a ray")
        if not is_primitive(r):
            raise NonPrimitiveRay(f"ray {r} is not primitive")
    if len(set(rays)) != len(rays):
        raise NonPrimitiveRay("duplicate rays")

    if maximal_cones is None:
        if n != 2:
            raise IncompleteFan("maximal cones are required except in dimension 2")
        cones = infer_cones_2d(rays)
    else:
        cones = []
        for c in maximal_cones:
            cone = tuple(sorted(int(i) for i in c))
            if len(set(cone)) != len(cone):
                raise NonUnimodularCone(f"cone {c} repeats a ray")
            if any(i < 0 or i >= len(rays) for i in cone):
                raise NonUnimodularCone(f"cone {c} references a missing ray")
            cones.append(cone)
        cones = sorted(cones)
    if not cones:
        raise IncompleteFan("a fan needs maximal cones")
    if len(set(cones)) != len(cones):
        raise IncompleteFan("duplicate maximal cones")
    for cone in cones:
        if len(cone) != n:
            raise NonUnimodularCone(f"maximal cone {cone} must have {n} rays")
        det = matrix_det([[rays[j][i] for j in cone] for i in range(n)])
        if abs(det) != 1:
            raise NonUnimodularCone(f"cone {cone} has determinant {det}")
    used = {i for cone in cones for i in cone}
    if used != set(range(len(rays))):
        raise IncompleteFan(f"rays {sorted(set(range(len(rays))) - used)} lie in no cone")

    fan = Fan(dimension=n, rays=rays, maximal_cones=tuple(cones))
    _check_common_faces(fan)
    _check_facets(fan)
    return fan


# --- positivity and effective classes ---

def classify_positivity(fan: Fan) -> Positivity:
    """Batyrev-style trichotomy from primitive-relation degrees: Fano iff all
    positive, nef iff all nonnegative."""
    degrees = [rel.degree for rel in fan.primitive_relations]
    if all(d > 0 for d in degrees):
        return Positivity.FANO
    if all(d >= 0 for d in degrees):
        return Positivity.SEMI_FANO_NOT_FANO
    return Positivity.NOT_NEF


def effective_classes_up_to(fan: Fan, cutoff: int):
    """All nonnegative integer combinations of primitive-relation classes with
    multiplicity sum at most *cutoff*, deduplicated and sorted."""
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    gens = [rel.coords for rel in fan.primitive_relations]
    d = fan.nrays
    classes = set()

    def rec(idx, budget, acc):
        if idx == len(gens):
            classes.add(tuple(acc))
            return
        rec(idx + 1, budget, acc)
        g = gens[idx]
        cur = list(acc)
        for m in range(1, budget + 1):
            cur = [a + b for a, b in zip(cur, g)]
            rec(idx + 1, budget - m, cur)

    rec(0, cutoff, [0] * d)
    return sorted(classes)
