"""Shared test oracles, kept independent of the implementation paths they
check: facet enumeration by exhaustive hyperplane-candidate subsets, and
random rational point generators."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from bellpoly.geometry import affine_hull
from bellpoly.linalg import rref
from bellpoly.scenario import Behavior


def _entries(point):
    return point.entries if isinstance(point, Behavior) else tuple(
        map(Fraction, point))


def naive_facet_keys(points):
    """Facets of conv(points) by brute force over vertex subsets.

    For every subset of size = affine dimension, solve for the hyperplane
    through it; keep hyperplanes that support the polytope and whose tight
    set spans dimension one less than the hull.  Returns normalized
    (coefficients, bound) keys in ambient coordinates (reduced onto the
    hull's pivot coordinates), for set comparison against enumerate_facets.
    """
    rows = [_entries(p) for p in points]
    hull = affine_hull(rows)
    r = hull.dim
    if r == 0:
        return set()
    ambient = len(rows[0])
    reduced_pts = sorted({tuple(row[j] for j in hull.pivots) for row in rows})

    keys = set()
    for subset in itertools.combinations(range(len(reduced_pts)), r):
        system = [list(reduced_pts[i]) + [Fraction(-1)] for i in subset]
        reduced, pivots = rref(system)
        if len(pivots) != r:
            continue
        free = next(c for c in range(r + 1) if c not in pivots)
        normal = [Fraction(0)] * (r + 1)
        normal[free] = Fraction(1)
        for k, pc in enumerate(pivots):
            normal[pc] = -reduced[k][free]
        coeffs, bound = tuple(normal[:r]), normal[r]

        values = [sum(c * x for c, x in zip(coeffs, pt)) - bound
                  for pt in reduced_pts]
        if all(v <= 0 for v in values):
            pass
        elif all(v >= 0 for v in values):
            coeffs = tuple(-c for c in coeffs)
            bound = -bound
            values = [-v for v in values]
        else:
            continue
        tight = [reduced_pts[i] for i, v in enumerate(values) if v == 0]
        if affine_hull(tight).dim != r - 1:
            continue
        full = [Fraction(0)] * ambient
        for k, j in enumerate(hull.pivots):
            full[j] = coeffs[k]
        keys.add(_normalized_key(full, bound))
    return keys


def _normalized_key(coefficients, bound):
    from bellpoly.inequality import _primitive_pair

    coeffs, b = _primitive_pair(tuple(coefficients), Fraction(bound))
    return coeffs, b


def random_rational_points(rng: random.Random, count: int, dim: int,
                           denominator: int = 6, span: int = 2):
    """Random rational vectors with entries k/denominator, |k| <= span*denominator."""
    pts = []
    for _ in range(count):
        pts.append(tuple(
            Fraction(rng.randint(-span * denominator, span * denominator),
                     denominator)
            for _ in range(dim)))
    return pts
