"""Exact rational convex geometry for vertex-described polytopes.

Everything here is Fraction arithmetic: facet identity is discrete, so there
are no epsilons anywhere.  Facets are enumerated by the double description
method (incremental halfspace insertion with an algebraic rank adjacency
test), membership is an exact phase-1 LP whose Outside answer carries a
Farkas separating hyperplane.

Polytopes that are not full-dimensional (e.g. full-probability behaviors,
whose coordinates are constrained by normalization and no-signaling) are
handled by working inside the affine hull: the hull's equality system lets
every non-pivot coordinate be substituted out, so facet inequalities are
reported in a unique reduced form supported on the pivot coordinates.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import linalg
from .errors import (
    CapExceeded,
    DimensionMismatch,
    InternalInvariantError,
    LimitExceeded,
)
from .inequality import Inequality
from .scenario import (
    DEFAULT_STRATEGY_CAP,
    Behavior,
    Representation,
    Scenario,
    enumerate_strategies,
    enumerate_vertices,
    strategy_to_behavior,
)
from .simplex import solve_equality_feasibility

DEFAULT_VERTEX_LIMIT = 256
DEFAULT_DIM_LIMIT = 30


class FacetStatus(enum.Enum):
    FACET = "facet"
    VALID_NOT_FACET = "valid-not-facet"
    INVALID = "invalid"


class Verdict(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class AffineHull:
    """Affine hull of a point set: offset + span of basis rows.

    pivots are coordinate positions whose projection is an affine
    isomorphism of the hull onto Q^dim; on the hull every non-pivot
    coordinate is an affine function of the pivot coordinates.
    """

    dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]
    pivots: tuple[int, ...]

    def contains(self, entries) -> bool:
        residual = [Fraction(x) - o for x, o in zip(entries, self.offset)]
        if len(residual) != len(self.offset):
            raise DimensionMismatch("point length does not match hull")
        for k, row in enumerate(self.basis):
            f = residual[self.pivots[k]]
            if f != 0:
                residual = [a - f * b for a, b in zip(residual, row)]
        return all(x == 0 for x in residual)

    def reduce(self, coefficients, bound):
        """Rewrite f.x <= b, modulo the hull's equalities, onto the pivots.

        Substitutes every non-pivot coordinate by its affine expression in
        the pivot coordinates; the result is the unique equivalent form
        supported on pivot coordinates.
        """
        ambient = len(self.offset)
        if len(coefficients) != ambient:
            raise DimensionMismatch("coefficient length does not match hull")
        coeffs = [Fraction(c) for c in coefficients]
        new_bound = Fraction(bound)
        reduced = [Fraction(0)] * ambient
        pivot_set = set(self.pivots)
        for k, j in enumerate(self.pivots):
            reduced[j] = coeffs[j]
        for j in range(ambient):
            if j in pivot_set or coeffs[j] == 0:
                continue
            # x_j = e_j + sum_k basis[k][j] * x_{pivot_k} on the hull
            e_j = self.offset[j] - sum(
                self.offset[p] * self.basis[k][j]
                for k, p in enumerate(self.pivots)
            )
            new_bound -= coeffs[j] * e_j
            for k, p in enumerate(self.pivots):
                reduced[p] += coeffs[j] * self.basis[k][j]
        return tuple(reduced), new_bound


@dataclass(frozen=True)
class MembershipCertificate:
    """Self-verifying answer to a convex hull membership query."""

    verdict: Verdict
    weights: tuple[Fraction, ...] | None
    separating: Inequality | None

    @property
    def inside(self) -> bool:
        return self.verdict is Verdict.INSIDE


@dataclass(frozen=True)
class PolytopeDescription:
    vertices: tuple[Behavior, ...]
    affine_dim: int
    facets: tuple[Inequality, ...]

    @classmethod
    def from_vertices(cls, vertices, max_vertices: int = DEFAULT_VERTEX_LIMIT,
                      max_affine_dim: int = DEFAULT_DIM_LIMIT):
        hull = affine_hull(vertices)
        facets = enumerate_facets(vertices, max_vertices=max_vertices,
                                  max_affine_dim=max_affine_dim)
        return cls(tuple(vertices), hull.dim, tuple(facets))


def _entry_rows(vertices):
    if not vertices:
        raise DimensionMismatch("empty vertex list")
    rows = [v.entries if isinstance(v, Behavior) else tuple(map(Fraction, v))
            for v in vertices]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("vertices of mixed lengths")
    return rows


def affine_hull(vertices) -> AffineHull:
    """Exact affine hull: dimension, spanning basis, offset, pivot columns."""
    rows = _entry_rows(vertices)
    offset = rows[0]
    diffs = [[x - o for x, o in zip(row, offset)] for row in rows[1:]]
    basis, pivots = linalg.rref(diffs) if diffs else ([], [])
    return AffineHull(len(pivots), tuple(basis), offset, tuple(pivots))


def is_valid(ineq: Inequality, vertices) -> bool:
    """True iff every vertex satisfies the inequality exactly."""
    rows = _entry_rows(vertices)
    return all(ineq.evaluate(row) <= ineq.bound for row in rows)


def is_facet(ineq: Inequality, vertices) -> FacetStatus:
    """Classify an inequality against the hull of the given vertices.

    Facet means: valid, and the tight vertices span affine dimension
    exactly one less than the polytope itself (the tight equations then
    determine the inequality uniquely within the affine hull).
    """
    rows = _entry_rows(vertices)
    tight = []
    for row in rows:
        value = ineq.evaluate(row)
        if value > ineq.bound:
            return FacetStatus.INVALID
        if value == ineq.bound:
            tight.append(row)
    hull_dim = affine_hull(rows).dim
    if not tight:
        return FacetStatus.VALID_NOT_FACET
    tight_dim = affine_hull(tight).dim
    return (FacetStatus.FACET if tight_dim == hull_dim - 1
            else FacetStatus.VALID_NOT_FACET)


def membership(point, vertices) -> MembershipCertificate:
    """Exact LP test for point in conv(vertices), with certificate.

    Inside: convex weights over the vertices reproducing the point exactly.
    Outside: a separating inequality satisfied by every vertex and violated
    by the point (Farkas certificate from the infeasible LP).
    """
    rows = _entry_rows(vertices)
    entries = point.entries if isinstance(point, Behavior) else tuple(
        map(Fraction, point))
    dim = len(rows[0])
    if len(entries) != dim:
        raise DimensionMismatch("point length does not match vertices")

    matrix = [[row[r] for row in rows] for r in range(dim)]
    matrix.append([Fraction(1)] * len(rows))
    rhs = list(entries) + [Fraction(1)]
    result = solve_equality_feasibility(matrix, rhs)

    if result.feasible:
        return MembershipCertificate(Verdict.INSIDE, result.solution, None)

    y = result.certificate
    coeffs = tuple(y[:dim])
    bound = -y[dim]
    if isinstance(point, Behavior):
        ineq = Inequality(point.scenario, point.representation, coeffs,
                          bound).normalize()
    else:
        ineq = _bare_inequality(coeffs, bound)
    for row in rows:
        if ineq.evaluate(row) > ineq.bound:
            raise InternalInvariantError("separating hyperplane cuts a vertex")
    if ineq.evaluate(entries) <= ineq.bound:
        raise InternalInvariantError("separating hyperplane misses the point")
    return MembershipCertificate(Verdict.OUTSIDE, None, ineq)


def _bare_inequality(coeffs, bound) -> Inequality:
    # for raw point lists with no scenario attached: a synthetic scenario of
    # one party with len(coeffs) settings keeps Inequality's length check happy
    scenario = Scenario(1, len(coeffs), 2)
    return Inequality(scenario, Representation.FULL_CORRELATION,
                      tuple(coeffs), bound).normalize()


@lru_cache(maxsize=32)
def _cached_vertex_entries(scenario: Scenario, rep: Representation):
    return tuple(v.entries for v in enumerate_vertices(scenario, rep))


def classical_bound(coefficients, scenario: Scenario, rep: Representation,
                    cap: int = DEFAULT_STRATEGY_CAP) -> Fraction:
    """Tight classical bound: max of coefficients . vertex over all
    deterministic strategies."""
    rep.validate(scenario)
    if scenario.strategy_count() > cap:
        raise CapExceeded(
            f"{scenario.strategy_count()} strategies exceed the cap of {cap}"
        )
    coeffs = [Fraction(c) for c in coefficients]
    if len(coeffs) != rep.length(scenario):
        raise DimensionMismatch("coefficient length does not match scenario")
    best = None
    for entries in _cached_vertex_entries(scenario, rep):
        value = sum(c * x for c, x in zip(coeffs, entries))
        if best is None or value > best:
            best = value
    return best


# ---------------------------------------------------------------------------
# facet enumeration: double description on the polar cone
# ---------------------------------------------------------------------------

def enumerate_facets(vertices, max_vertices: int = DEFAULT_VERTEX_LIMIT,
                     max_affine_dim: int = DEFAULT_DIM_LIMIT,
                     progress=None) -> list[Inequality]:
    """All facets of conv(vertices) within its affine hull, normalized.

    The facet normals are the extreme rays of the polar cone
    {(b, f) : b + f.u_i >= 0 for all lifted vertices u_i}, computed by
    incremental double description.  Output is duplicate-free and sorted.

    progress, if given, is called as progress(inserted, total, n_rays).
    """
    rows = _entry_rows(vertices)
    if len(rows) > max_vertices:
        raise LimitExceeded(
            f"{len(rows)} vertices exceed the limit of {max_vertices}; "
            "consider a symmetry-reduced workflow"
        )
    hull = affine_hull(rows)
    if hull.dim > max_affine_dim:
        raise LimitExceeded(
            f"affine dimension {hull.dim} exceeds the limit of {max_affine_dim}"
        )
    if hull.dim == 0:
        return []

    # project to pivot coordinates (affine iso onto Q^dim), lift with a
    # leading 1, and clear denominators: positive row scaling fixes the cone
    lifted = []
    for row in rows:
        vec = [Fraction(1)] + [row[j] for j in hull.pivots]
        lifted.append(linalg.primitive(vec))
    lifted = list(dict.fromkeys(lifted))  # distinct points, stable order

    rays = _extreme_rays(lifted, progress=progress)

    scenario = None
    rep = None
    first = vertices[0]
    if isinstance(first, Behavior):
        scenario, rep = first.scenario, first.representation

    facets = []
    for ray in rays:
        coeffs = [Fraction(0)] * len(hull.offset)
        for k, j in enumerate(hull.pivots):
            coeffs[j] = Fraction(-ray[1 + k])
        bound = Fraction(ray[0])
        if scenario is not None:
            ineq = Inequality(scenario, rep, tuple(coeffs), bound)
        else:
            ineq = _bare_inequality(tuple(coeffs), bound)
        facets.append(ineq.normalize())
    facets.sort(key=Inequality.key)
    return facets


def _extreme_rays(rows, progress=None):
    """Extreme rays of the pointed cone {y : r . y >= 0 for r in rows}.

    rows are integer vectors of full column rank.  Incremental double
    description: start from an independent subset (a simplicial cone), insert
    the remaining halfspaces one at a time, combining adjacent ray pairs
    across the new hyperplane.  Adjacency is the algebraic test: the common
    tight constraints must have rank dim-2 (robust in degenerate cases).
    """
    dim = len(rows[0])
    chosen, chosen_idx = [], []
    for idx, row in enumerate(rows):
        if linalg.rank_int(chosen + [list(row)]) > len(chosen):
            chosen.append(list(row))
            chosen_idx.append(idx)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise InternalInvariantError(
            "constraint matrix rank below dimension: cone is not pointed"
        )

    inverse = linalg.invert(chosen)
    rays = [linalg.primitive([inverse[i][j] for i in range(dim)])
            for j in range(dim)]
    processed = list(chosen_idx)
    tights = [
        {i for i in processed if _idot(rows[i], ray) == 0} for ray in rays
    ]

    remaining = [i for i in range(len(rows)) if i not in set(chosen_idx)]
    for step, idx in enumerate(remaining):
        constraint = rows[idx]
        values = [_idot(constraint, ray) for ray in rays]
        negatives = [k for k, v in enumerate(values) if v < 0]
        if not negatives:
            for k, v in enumerate(values):
                if v == 0:
                    tights[k].add(idx)
            processed.append(idx)
            continue
        positives = [k for k, v in enumerate(values) if v > 0]
        zeros = [k for k, v in enumerate(values) if v == 0]

        new_rays, new_tights = [], []
        needed = dim - 2
        for p in positives:
            tight_p = tights[p]
            for n in negatives:
                common = tight_p & tights[n]
                if len(common) < needed:
                    continue
                if needed > 0 and linalg.rank_int(
                        [rows[i] for i in common]) != needed:
                    continue
                combo = tuple(values[p] * rn - values[n] * rp
                              for rp, rn in zip(rays[p], rays[n]))
                ray = _iprimitive(combo)
                tight = {i for i in processed if _idot(rows[i], ray) == 0}
                tight.add(idx)
                new_rays.append(ray)
                new_tights.append(tight)

        kept_rays, kept_tights = [], []
        for k in positives:
            kept_rays.append(rays[k])
            kept_tights.append(tights[k])
        for k in zeros:
            tights[k].add(idx)
            kept_rays.append(rays[k])
            kept_tights.append(tights[k])
        seen = set(kept_rays)
        for ray, tight in zip(new_rays, new_tights):
            if ray not in seen:
                seen.add(ray)
                kept_rays.append(ray)
                kept_tights.append(tight)
        rays, tights = kept_rays, kept_tights
        processed.append(idx)
        if progress is not None:
            progress(step + 1, len(remaining), len(rays))
    return rays


def _idot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _iprimitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)
