import random
from fractions import Fraction

import pytest

from bellpoly.errors import DimensionMismatch, LimitExceeded
from bellpoly.geometry import (
    FacetStatus,
    PolytopeDescription,
    Verdict,
    affine_hull,
    classical_bound,
    enumerate_facets,
    is_facet,
    is_valid,
    membership,
)
from bellpoly.inequality import Inequality
from bellpoly.scenario import (
    Behavior,
    Representation,
    Scenario,
    enumerate_vertices,
)

from helpers import naive_facet_keys, random_rational_points

CORR = Representation.FULL_CORRELATION
PROB = Representation.FULL_PROBABILITY
SC22 = Scenario(2, 2, 2)


def fr(*values):
    return tuple(Fraction(v) for v in values)


def chsh(bound=2):
    return Inequality(SC22, CORR, fr(1, 1, 1, -1), Fraction(bound))


# ---------------------------------------------------------------------------
# affine hull
# ---------------------------------------------------------------------------

def test_affine_hull_single_vertex():
    vs = enumerate_vertices(Scenario(1, 1, 2), PROB)
    assert affine_hull(vs[:1]).dim == 0


def test_affine_hull_dimensions():
    assert affine_hull(enumerate_vertices(SC22, CORR)).dim == 4
    assert affine_hull(enumerate_vertices(SC22, PROB)).dim == 8


def test_affine_hull_contains_and_reduce():
    vs = enumerate_vertices(SC22, PROB)
    hull = affine_hull(vs)
    for v in vs[:4]:
        assert hull.contains(v.entries)
    outside = list(vs[0].entries)
    outside[0] += 1
    assert not hull.contains(outside)
    # reduction keeps values on the hull: test on an arbitrary functional
    coeffs = fr(*range(16))
    reduced, bound = hull.reduce(coeffs, Fraction(3))
    for v in vs:
        lhs = sum(c * x for c, x in zip(coeffs, v.entries)) - Fraction(3)
        lhs_reduced = sum(c * x for c, x in zip(reduced, v.entries)) - bound
        assert lhs == lhs_reduced
    nonpivot = set(range(16)) - set(hull.pivots)
    assert all(reduced[j] == 0 for j in nonpivot)


def test_affine_hull_empty_raises():
    with pytest.raises(DimensionMismatch):
        affine_hull([])


# ---------------------------------------------------------------------------
# facet enumeration
# ---------------------------------------------------------------------------

def test_square_facets():
    vs = enumerate_vertices(Scenario(1, 2, 2), CORR)
    facets = enumerate_facets(vs)
    keys = {(f.coefficients, f.bound) for f in facets}
    assert keys == {
        (fr(1, 0), Fraction(1)), (fr(-1, 0), Fraction(1)),
        (fr(0, 1), Fraction(1)), (fr(0, -1), Fraction(1)),
    }


def test_corr_facet_count():
    facets = enumerate_facets(enumerate_vertices(SC22, CORR))
    assert len(facets) == 16
    assert len({f.key() for f in facets}) == 16


def test_prob_facet_count():
    facets = enumerate_facets(enumerate_vertices(SC22, PROB))
    assert len(facets) == 24


def test_facets_round_trip_is_facet():
    for rep in (CORR, PROB):
        vs = enumerate_vertices(SC22, rep)
        for facet in enumerate_facets(vs):
            assert is_facet(facet, vs) is FacetStatus.FACET


def test_facets_match_naive_oracle_222():
    for rep in (CORR, PROB):
        vs = enumerate_vertices(SC22, rep)
        keys = {f.key() for f in enumerate_facets(vs)}
        assert keys == naive_facet_keys(vs)


def test_facets_match_naive_oracle_random_points():
    rng = random.Random(2024)
    for trial in range(25):
        dim = rng.randint(2, 4)
        count = rng.randint(3, 5)
        pts = random_rational_points(rng, count, dim)
        keys = {f.key() for f in enumerate_facets(pts)}
        assert keys == naive_facet_keys(pts), (trial, pts)


def test_facets_independent_of_vertex_order():
    vs = enumerate_vertices(SC22, CORR)
    shuffled = list(vs)
    random.Random(5).shuffle(shuffled)
    assert ([f.key() for f in enumerate_facets(vs)]
            == [f.key() for f in enumerate_facets(shuffled)])


def test_facet_limits():
    vs = enumerate_vertices(SC22, CORR)
    with pytest.raises(LimitExceeded):
        enumerate_facets(vs, max_vertices=4)
    with pytest.raises(LimitExceeded):
        enumerate_facets(vs, max_affine_dim=3)


def test_single_point_has_no_facets():
    vs = enumerate_vertices(SC22, CORR)
    assert enumerate_facets(vs[:1]) == []


def test_segment_facets_are_endpoints():
    pts = [(Fraction(0),), (Fraction(1),)]
    facets = enumerate_facets(pts)
    assert {(f.coefficients, f.bound) for f in facets} == {
        (fr(1), Fraction(1)), (fr(-1), Fraction(0)),
    }


def test_polytope_description():
    desc = PolytopeDescription.from_vertices(enumerate_vertices(SC22, CORR))
    assert desc.affine_dim == 4
    assert len(desc.facets) == 16
    for facet in desc.facets:
        assert is_valid(facet, desc.vertices)


# ---------------------------------------------------------------------------
# validity / facet status
# ---------------------------------------------------------------------------

def test_chsh_is_valid_and_facet():
    vs = enumerate_vertices(SC22, CORR)
    assert is_valid(chsh(), vs)
    assert is_facet(chsh(), vs) is FacetStatus.FACET


def test_chsh_bound_one_invalid():
    vs = enumerate_vertices(SC22, CORR)
    assert not is_valid(chsh(1), vs)
    assert is_facet(chsh(1), vs) is FacetStatus.INVALID


def test_zero_inequality_valid_not_facet():
    vs = enumerate_vertices(SC22, CORR)
    zero = Inequality(SC22, CORR, fr(0, 0, 0, 0), Fraction(0))
    assert is_valid(zero, vs)
    assert is_facet(zero, vs) is FacetStatus.VALID_NOT_FACET


def test_single_correlation_is_facet():
    vs = enumerate_vertices(SC22, CORR)
    e11 = Inequality(SC22, CORR, fr(1, 0, 0, 0), Fraction(1))
    assert is_facet(e11, vs) is FacetStatus.FACET


def test_face_but_not_facet():
    vs = enumerate_vertices(SC22, CORR)
    face = Inequality(SC22, CORR, fr(1, 1, 0, 0), Fraction(2))
    assert is_facet(face, vs) is FacetStatus.VALID_NOT_FACET


def test_chsh_bound_three_valid_not_tight():
    vs = enumerate_vertices(SC22, CORR)
    assert is_valid(chsh(3), vs)
    assert is_facet(chsh(3), vs) is FacetStatus.VALID_NOT_FACET


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def test_vertex_membership_weight_one():
    vs = enumerate_vertices(SC22, CORR)
    cert = membership(vs[3], vs)
    assert cert.verdict is Verdict.INSIDE
    assert sorted(cert.weights, reverse=True)[0] == 1
    assert sum(cert.weights) == 1


def test_origin_inside():
    vs = enumerate_vertices(SC22, CORR)
    origin = Behavior(SC22, CORR, fr(0, 0, 0, 0))
    assert membership(origin, vs).verdict is Verdict.INSIDE


def test_quantum_point_outside_with_chsh_certificate():
    vs = enumerate_vertices(SC22, CORR)
    q = Fraction(985, 1393)
    point = Behavior(SC22, CORR, (q, q, q, -q))
    cert = membership(point, vs)
    assert cert.verdict is Verdict.OUTSIDE
    separating = cert.separating
    assert separating.evaluate(point) > separating.bound
    for v in vs:
        assert separating.evaluate(v) <= separating.bound


def test_inside_weights_reconstruct_point():
    vs = enumerate_vertices(SC22, CORR)
    point = Behavior(SC22, CORR, fr(*[Fraction(1, 2), 0, 0, Fraction(1, 2)]))
    cert = membership(point, vs)
    assert cert.verdict is Verdict.INSIDE
    mix = [Fraction(0)] * 4
    for w, v in zip(cert.weights, vs):
        mix = [m + w * x for m, x in zip(mix, v.entries)]
    assert tuple(mix) == point.entries


def test_membership_duality_beyond_each_facet():
    # a point strictly beyond any facet must come back Outside
    vs = enumerate_vertices(SC22, CORR)
    facets = enumerate_facets(vs)
    for facet in facets[:6]:
        norm_sq = sum(c * c for c in facet.coefficients)
        center = Behavior(SC22, CORR, fr(0, 0, 0, 0))
        step = (facet.bound + 1) / norm_sq
        beyond = tuple(c * step for c in facet.coefficients)
        cert = membership(Behavior(SC22, CORR, beyond), vs)
        assert cert.verdict is Verdict.OUTSIDE


# ---------------------------------------------------------------------------
# classical bounds
# ---------------------------------------------------------------------------

def test_chsh_classical_bound():
    assert classical_bound(fr(1, 1, 1, -1), SC22, CORR) == 2


def test_bound_agrees_between_strategies_and_vertices():
    # definitional agreement: max over strategy images == max over dedup set
    from bellpoly.scenario import enumerate_strategies, strategy_to_behavior

    rng = random.Random(7)
    for _ in range(10):
        coeffs = fr(*[rng.randint(-3, 3) for _ in range(4)])
        via_vertices = classical_bound(coeffs, SC22, CORR)
        via_strategies = max(
            sum(c * x for c, x in
                zip(coeffs, strategy_to_behavior(s, CORR).entries))
            for s in enumerate_strategies(SC22))
        assert via_vertices == via_strategies


PAPER_242_FIRST = [
    [2, 1, -1, 0],
    [1, -1, 1, 1],
    [-1, 1, -1, 1],
    [0, 1, 1, 0],
]
PAPER_242_SECOND = [
    [1, 1, 2, 2],
    [1, 2, 1, -2],
    [2, 1, -2, 1],
    [2, -2, 1, -1],
]


def paper_242_inequalities():
    sc = Scenario(2, 4, 2)
    out = []
    for table, bound in ((PAPER_242_FIRST, 6), (PAPER_242_SECOND, 10)):
        coeffs = fr(*[table[x][y] for x in range(4) for y in range(4)])
        out.append(Inequality(sc, CORR, coeffs, Fraction(bound)))
    return out


def test_paper_242_bounds():
    sc = Scenario(2, 4, 2)
    first, second = paper_242_inequalities()
    assert classical_bound(first.coefficients, sc, CORR) == 6
    assert classical_bound(second.coefficients, sc, CORR) == 10


def test_paper_242_are_facets():
    sc = Scenario(2, 4, 2)
    vs = enumerate_vertices(sc, CORR)
    assert len(vs) == 128
    for ineq in paper_242_inequalities():
        assert is_facet(ineq, vs) is FacetStatus.FACET


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def test_normalize_idempotent():
    rng = random.Random(11)
    for _ in range(50):
        coeffs = fr(*[Fraction(rng.randint(-12, 12), rng.randint(1, 9))
                      for _ in range(4)])
        ineq = Inequality(SC22, CORR, coeffs,
                          Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
        once = ineq.normalize()
        assert once.normalize() == once


def test_normalize_integer_gcd_one():
    ineq = Inequality(SC22, CORR, fr(Fraction(2, 3), Fraction(4, 3), 0, 2),
                      Fraction(8, 3))
    norm = ineq.normalize()
    values = list(norm.coefficients) + [norm.bound]
    assert all(v.denominator == 1 for v in values)
    from math import gcd
    g = 0
    for v in values:
        g = gcd(g, abs(int(v)))
    assert g == 1


def test_normalize_preserves_halfspace():
    vs = enumerate_vertices(SC22, PROB)
    for facet in enumerate_facets(vs):
        assert is_valid(facet.normalize(), vs)
