"""The projectivized canonical bundle P(K_Y + O_Y) of a toric Fano base.

Given the fan of a Fano base Y with rays w_1..w_m, the total space X has
rays v_0 = e_n, v_i = w_i + e_n, v_{m+1} = -e_n, and every maximal cone of Y
doubles into one cone with v_0 and one with v_{m+1}. The ray order
(v_0, middles, v_{m+1}) is fixed so the distinguished disk classes keep
stable indices downstream.

The reverse direction (recognizing such a fan after an arbitrary GL(n, Z)
change of coordinates) matters because input documents need not use the
construction's coordinates; recognition solves for the grading functional u
with <u, v_0> = 1, <u, v_i> = 1, <u, v_{m+1}> = -1 and reprojects the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidFan, NotBundleShaped, NotFano
from .fan import Fan, Positivity, classify_positivity, validate_fan
from .lattice import hermite_normal_form, matrix_det, solve_unique


def projectivize_canonical(fan_y: Fan) -> Fan:
    """Fan of P(K_Y + O_Y) over a Fano base Y, validated."""
    if classify_positivity(fan_y) is not Positivity.FANO:
        raise NotFano("the base of the canonical-bundle construction must be Fano")
    n = fan_y.dimension + 1
    m = fan_y.nrays
    zero = (0,) * (n - 1)
    rays = [zero + (1,)]
    rays += [tuple(w) + (1,) for w in fan_y.rays]
    rays.append(zero + (-1,))
    cones = []
    for cone in fan_y.maximal_cones:
        lifted = tuple(i + 1 for i in cone)
        cones.append(tuple(sorted(lifted + (0,))))
        cones.append(tuple(sorted(lifted + (m + 1,))))
    return validate_fan(n, rays, cones)


def fiber_class(fan_x: Fan):
    """Curve class of the P1 fiber: the relation v_0 + v_last = 0."""
    first, last = fan_x.rays[0], fan_x.rays[-1]
    if any(a + b != 0 for a, b in zip(first, last)):
        raise NotBundleShaped("first and last rays are not opposite")
    coords = [0] * fan_x.nrays
    coords[0] = coords[-1] = 1
    return tuple(coords)


def push_h2(fan_y: Fan, gamma):
    """Image of a base curve class under the zero-section embedding, in the
    ray coordinates of the bundle fan: (-sum(gamma), gamma..., 0)."""
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != fan_y.nrays:
        raise ValueError("class length does not match the base ray count")
    if not fan_y.is_homology_class(gamma):
        raise ValueError(f"{gamma} is not a curve class of the base fan")
    return (-sum(gamma),) + gamma + (0,)


@dataclass(frozen=True)
class BundleDecomposition:
    """Recognized P(K_Y + O_Y) structure of a fan.

    ``grading`` is the integral functional u with value 1 on v_0 and every
    middle ray and -1 on the last ray; ``base`` is the reprojected fan of Y
    (middle ray i of the bundle fan corresponds to base ray i-1).
    """

    fan: Fan
    base: Fan
    grading: tuple


def decompose_bundle(fan_x: Fan) -> Optional[BundleDecomposition]:
    """Recognize a fan of the shape produced by :func:`projectivize_canonical`
    in arbitrary unimodular coordinates, or return None.

    Conventions: ray 0 is the zero section's ray, the last ray is its
    opposite. The base fan is recovered by projecting the middle rays along
    ray 0 and is itself validated.
    """
    n = fan_x.dimension
    d = fan_x.nrays
    if d < n + 2:
        return None
    if any(a + b != 0 for a, b in zip(fan_x.rays[0], fan_x.rays[-1])):
        return None
    # grading functional: value 1 on ray 0 and all middle rays
    mat = [list(r) for r in fan_x.rays[:-1]]
    rhs = [1] * (d - 1)
    try:
        u = solve_unique(mat, rhs)
    except Exception:
        return None
    if u is None or any(x.denominator != 1 for x in u):
        return None
    u = tuple(int(x) for x in u)
    # change coordinates so ray 0 becomes e_n, then drop the last coordinate
    col = [[x] for x in fan_x.rays[0]]
    _, transform = hermite_normal_form(col)
    # transform @ ray0 = e_1; rotate rows so it becomes e_n
    change = transform[1:] + transform[:1]
    assert [sum(change[i][j] * fan_x.rays[0][j] for j in range(n)) for i in range(n)] \
        == [0] * (n - 1) + [1]
    base_rays = []
    for ray in fan_x.rays[1:-1]:
        img = [sum(change[i][j] * ray[j] for j in range(n)) for i in range(n)]
        base_rays.append(tuple(img[: n - 1]))
    base_cones = []
    for cone in fan_x.maximal_cones:
        if 0 in cone:
            base_cones.append(tuple(sorted(i - 1 for i in cone if i != 0)))
    try:
        base = validate_fan(n - 1, base_rays, base_cones)
    except InvalidFan:
        return None
    return BundleDecomposition(fan=fan_x, base=base, grading=u)


def require_bundle(fan_x: Fan) -> BundleDecomposition:
    """Decompose or raise; additionally insists the base is Fano, which is
    the standing hypothesis for the corrected superpotential."""
    dec = decompose_bundle(fan_x)
    if dec is None:
        raise NotBundleShaped(
            "fan is not a projectivized canonical bundle in the expected ray order"
        )
    if classify_positivity(dec.base) is not Positivity.FANO:
        raise NotFano("recognized bundle structure, but the base fan is not Fano")
    return dec


def default_q_basis(fan_x: Fan) -> Optional[tuple]:
    """Preferred homology basis for a bundle fan: the degree-0 relation
    classes (the base curve classes) sorted canonically, then the fiber
    class. Returns None when these do not form a Z-basis."""
    try:
        fiber = fiber_class(fan_x)
    except NotBundleShaped:
        return None
    lifts = sorted(
        rel.coords for rel in fan_x.primitive_relations if rel.degree == 0
    )
    basis = tuple(lifts) + (fiber,)
    canonical = fan_x.homology_basis
    if len(basis) != len(canonical):
        return None
    # integer change of basis with determinant +-1
    cols = [[b[i] for b in canonical] for i in range(fan_x.nrays)]
    change = []
    for vec in basis:
        coords = solve_unique(cols, list(vec))
        if coords is None or any(c.denominator != 1 for c in coords):
            return None
        change.append([int(c) for c in coords])
    if abs(matrix_det(change)) != 1:
        return None
    return basis
