import random
from fractions import Fraction

import pytest

from bellpoly.errors import CapExceeded
from bellpoly.geometry import classical_bound, enumerate_facets
from bellpoly.inequality import Inequality
from bellpoly.scenario import Representation, Scenario, enumerate_vertices
from bellpoly.symmetry import (
    Relabeling,
    apply,
    canonical_form,
    classify,
    group_order,
    inequality_orbit,
    relabeling_group,
)

CORR = Representation.FULL_CORRELATION
PROB = Representation.FULL_PROBABILITY
SC22 = Scenario(2, 2, 2)


def fr(*values):
    return tuple(Fraction(v) for v in values)


CHSH = Inequality(SC22, CORR, fr(1, 1, 1, -1), Fraction(2))


@pytest.fixture(scope="module")
def group222():
    return list(relabeling_group(SC22))


def test_group_order_formula():
    assert group_order(SC22) == 2 * 4 * 16
    assert group_order(Scenario(3, 2, 2)) == 6 * 8 * 64


def test_group_enumeration_complete_and_distinct(group222):
    assert len(group222) == 128
    assert len(set(group222)) == 128


def test_group_cap():
    with pytest.raises(CapExceeded):
        list(relabeling_group(Scenario(3, 3, 3), cap=10))


def test_identity_action(group222):
    ident = Relabeling.identity(SC22)
    assert apply(ident, CHSH) == CHSH
    for v in enumerate_vertices(SC22, CORR):
        assert apply(ident, v) == v


def test_group_axioms_random_sample(group222):
    rng = random.Random(0)
    vertices = enumerate_vertices(SC22, CORR)
    prob_vertices = enumerate_vertices(SC22, PROB)
    for _ in range(60):
        g, h = rng.choice(group222), rng.choice(group222)
        x = rng.choice(vertices if rng.random() < 0.5 else prob_vertices)
        assert apply(g.compose(h), x) == apply(g, apply(h, x))
        assert apply(g.compose(g.inverse()), x) == x


def test_vertex_set_invariance(group222):
    rng = random.Random(1)
    for rep in (CORR, PROB):
        vertices = enumerate_vertices(SC22, rep)
        vset = {v.entries for v in vertices}
        for g in rng.sample(group222, 20):
            assert {apply(g, v).entries for v in vertices} == vset


def test_facet_set_invariance(group222):
    rng = random.Random(2)
    for rep in (CORR, PROB):
        vertices = enumerate_vertices(SC22, rep)
        facets = enumerate_facets(vertices)
        from bellpoly.symmetry import _reduced_normalized

        keys = {_reduced_normalized(f).key() for f in facets}
        for g in rng.sample(group222, 12):
            moved = {_reduced_normalized(apply(g, f)).key() for f in facets}
            assert moved == keys


def test_party_swap_on_chsh(group222):
    swap = Relabeling(
        SC22, (1, 0),
        ((0, 1), (0, 1)),
        (((0, 1), (0, 1)), ((0, 1), (0, 1))),
    )
    moved = apply(swap, CHSH)
    # transposed coefficient pattern, still CHSH-type
    assert sorted(moved.coefficients) == sorted(CHSH.coefficients)
    assert canonical_form(moved) == canonical_form(CHSH)


def test_sign_flip_observable():
    # flipping outcomes of party 1 setting 1 negates E12 and E22
    flip = Relabeling(
        SC22, (0, 1),
        ((0, 1), (0, 1)),
        (((0, 1), (0, 1)), ((0, 1), (1, 0))),
    )
    moved = apply(flip, CHSH)
    assert moved.coefficients == fr(1, -1, 1, 1)
    assert moved.bound == 2


def test_canonical_constant_on_orbit(group222):
    rng = random.Random(3)
    base = canonical_form(CHSH)
    for g in rng.sample(group222, 25):
        assert canonical_form(apply(g, CHSH)) == base


def test_chsh_sign_variants_share_canonical():
    # all 8 one-sign-flip patterns of CHSH are equivalent
    variants = []
    for pos in range(4):
        coeffs = [Fraction(1)] * 4
        coeffs[pos] = Fraction(-1)
        variants.append(Inequality(SC22, CORR, tuple(coeffs), Fraction(2)))
        coeffs = [Fraction(-1)] * 4
        coeffs[pos] = Fraction(1)
        variants.append(Inequality(SC22, CORR, tuple(coeffs), Fraction(2)))
    canon = {canonical_form(v).key() for v in variants}
    assert len(canon) == 1


def test_single_correlation_canonicals_match():
    e11 = Inequality(SC22, CORR, fr(1, 0, 0, 0), Fraction(1))
    e22 = Inequality(SC22, CORR, fr(0, 0, 0, 1), Fraction(1))
    assert canonical_form(e11) == canonical_form(e22)
    assert canonical_form(e11) != canonical_form(CHSH)


def test_orbit_sizes_divide_group_order():
    for ineq in (CHSH, Inequality(SC22, CORR, fr(1, 0, 0, 0), Fraction(1))):
        orbit = inequality_orbit(ineq)
        assert group_order(SC22) % len(orbit) == 0


def test_classical_bound_invariant(group222):
    rng = random.Random(4)
    for _ in range(12):
        coeffs = fr(*[rng.randint(-3, 3) for _ in range(4)])
        ineq = Inequality(SC22, CORR, coeffs, Fraction(0))
        bound = classical_bound(coeffs, SC22, CORR)
        g = rng.choice(group222)
        moved = apply(g, ineq)
        assert classical_bound(moved.coefficients, SC22, CORR) == bound


def test_classify_corr_two_types():
    facets = enumerate_facets(enumerate_vertices(SC22, CORR))
    classes = classify(facets)
    assert len(classes) == 2
    assert sorted((c.orbit_size, c.members_seen) for c in classes) == [
        (8, 8), (8, 8)]
    assert sum(c.members_seen for c in classes) == 16


def test_classify_prob_two_types_fine():
    facets = enumerate_facets(enumerate_vertices(SC22, PROB))
    classes = classify(facets)
    assert len(classes) == 2
    assert sorted((c.orbit_size, c.members_seen) for c in classes) == [
        (8, 8), (16, 16)]
    assert sum(c.members_seen for c in classes) == 24


def test_classify_empty():
    assert classify([]) == []


def test_classify_single_inequality():
    classes = classify([CHSH])
    assert len(classes) == 1
    assert classes[0].members_seen == 1
    assert classes[0].orbit_size >= 1
