"""Shared fixtures and independent oracles for the test suite."""

import math
import random
from itertools import combinations

import pytest

from toricmirror import catalog
from toricmirror.fan import Fan, validate_fan
from toricmirror.laurent import evaluate


@pytest.fixture
def p1():
    return catalog.projective_line()


@pytest.fixture
def p2():
    return catalog.projective_plane()


@pytest.fixture
def p1xp1():
    return catalog.p1_times_p1()


@pytest.fixture
def f2():
    return catalog.hirzebruch2()


@pytest.fixture
def f2_kahler():
    return catalog.hirzebruch2_kahler()


@pytest.fixture
def f3():
    return validate_fan(2, [(1, 0), (0, 1), (-1, -3), (0, -1)])


# --- independent oracles ---

def brute_force_primitive_collections(fan: Fan):
    """Direct definition over every subset: spans no cone while every
    maximal proper subset does. Kept dumb on purpose."""
    out = []
    d = fan.nrays
    for size in range(1, d + 1):
        for subset in combinations(range(d), size):
            if fan.spans_cone(subset):
                continue
            proper = [subset[:i] + subset[i + 1:] for i in range(size)]
            if all(fan.spans_cone(p) for p in proper):
                out.append(subset)
    return sorted(out, key=lambda s: (len(s), s))


_BASE_BUILDERS = [
    lambda: [(1, 0), (0, 1), (-1, -1)],          # plane
    lambda: [(1, 0), (-1, 0), (0, 1), (0, -1)],  # product of lines
    lambda: [(1, 0), (0, 1), (-1, 0), (0, -1)],  # same, listed differently
    lambda: [(1, 0), (0, 1), (-1, -1), (0, -1)],  # one blowup
    lambda: [(1, 0), (0, 1), (-1, -2), (0, -1)],  # Hirzebruch a=2
    lambda: [(1, 0), (0, 1), (-1, -3), (0, -1)],  # Hirzebruch a=3
]


def random_smooth_2d_fan(rng: random.Random, max_rays: int = 10) -> Fan:
    """Random smooth complete 2D fan: a base surface refined by random
    stellar subdivisions (insert the sum of an adjacent unimodular pair,
    which preserves smoothness and completeness)."""
    rays = list(rng.choice(_BASE_BUILDERS)())
    # keep rays in ccw order during subdivision

    def ccw_sorted(vectors):
        def key(v):
            return math.atan2(v[1], v[0]) % (2 * math.pi)
        return sorted(vectors, key=key)

    rays = ccw_sorted(rays)
    target = rng.randint(len(rays), max_rays)
    while len(rays) < target:
        k = rng.randrange(len(rays))
        u = rays[k]
        w = rays[(k + 1) % len(rays)]
        # a wrap-around insert lands at the end, which is still ccw order
        rays.insert(k + 1, (u[0] + w[0], u[1] + w[1]))
    rng.shuffle(rays)
    return validate_fan(2, rays)


def fd_log_gradient(poly, z, t, h=1e-5):
    """Central finite differences of W in log coordinates: approximates
    (z_1 dW/dz_1, ..., z_n dW/dz_n) without touching the derivative code."""
    out = []
    for j in range(len(z)):
        zp = list(z)
        zm = list(z)
        zp[j] = z[j] * math.exp(h)
        zm[j] = z[j] * math.exp(-h)
        out.append((evaluate(poly, zp, t) - evaluate(poly, zm, t)) / (2 * h))
    return tuple(out)
